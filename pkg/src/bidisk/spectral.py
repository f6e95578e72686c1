"""Spectral factorization of trigonometric matrix polynomials.

A matrix trigonometric polynomial A(z) that is positive definite on the unit
circle factors as A(z) = M(z) M(1/conj(z))^* with M a stable matrix
polynomial of the same degree.  Normalizing M(0) to be lower triangular with
positive diagonal makes the factor unique.  The factor is computed by the
Bauer method: the trailing block rows of the Cholesky factor of a large
banded block Toeplitz section converge to the factor coefficients.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg as la

from .errors import NoConvergence, NotPositiveOnCircle
from .linalg import (
    as_block,
    circle_points,
    eval_matrix_poly,
    max_abs,
    right_unitary_for_lower,
    symmetrize,
)


@dataclass(frozen=True)
class TrigMatrixPolynomial:
    """Coefficients A[-n] .. A[n] of A(z) = sum A[k] z^k with A[-k] = A[k]^*."""

    block_dim: int
    degree: int
    blocks: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != 2 * self.degree + 1:
            raise ValueError("expected %d blocks" % (2 * self.degree + 1))
        coerced = tuple(as_block(b, self.block_dim) for b in self.blocks)
        scale = max(1.0, max(max_abs(b) for b in coerced))
        for k in range(self.degree + 1):
            dev = np.max(
                np.abs(coerced[self.degree - k] - coerced[self.degree + k].conj().T)
            )
            if dev > 1e-12 * scale:
                raise ValueError("blocks violate A[-k] = A[k]^* at k=%d" % k)
        object.__setattr__(self, "blocks", coerced)

    @classmethod
    def from_one_sided(cls, blocks):
        """Build from A[0] .. A[n]; A[0] is symmetrized, negatives mirrored."""
        pos = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks]
        dim = pos[0].shape[0]
        pos[0] = symmetrize(pos[0])
        neg = [b.conj().T for b in pos[1:]][::-1]
        return cls(dim, len(pos) - 1, tuple(neg + pos))

    def block(self, k):
        if abs(k) > self.degree:
            raise IndexError("block index %d outside band" % k)
        return self.blocks[k + self.degree]

    def eval_on_circle(self, points):
        z = np.asarray(points, dtype=complex)
        powers = z[:, None] ** np.arange(-self.degree, self.degree + 1)[None, :]
        stacked = np.stack(self.blocks)
        return np.einsum("zk,kij->zij", powers, stacked)

    def min_eig_on_circle(self, grid_n=256):
        vals = self.eval_on_circle(circle_points(grid_n))
        vals = 0.5 * (vals + np.conj(np.swapaxes(vals, -1, -2)))
        return float(np.min(np.linalg.eigvalsh(vals)))


def _banded_toeplitz(trig, n_blocks):
    """Lower banded storage of the (A[i-j]) section with n_blocks block rows."""
    d = trig.block_dim
    deg = trig.degree
    size = n_blocks * d
    bw = (deg + 1) * d - 1
    ab = np.zeros((bw + 1, size), dtype=complex)
    for o in range(deg + 1):
        blk = trig.block(o)
        stop = (n_blocks - o) * d
        for s in range(d):
            for t in range(d):
                q = o * d + s - t
                if q < 0:
                    continue
                ab[q, t:stop:d] = blk[s, t]
    return ab


def _trailing_rows(c_band, n_blocks, d, deg):
    """Blocks L[i, i-k] for k = 0..deg from the banded Cholesky factor."""
    bw = c_band.shape[0] - 1

    def row(i_blk):
        out = []
        for k in range(deg + 1):
            g = np.zeros((d, d), dtype=complex)
            if i_blk - k >= 0:
                for s in range(d):
                    for t in range(d):
                        off = k * d + s - t
                        if 0 <= off <= bw:
                            g[s, t] = c_band[off, (i_blk - k) * d + t]
            out.append(g)
        return out

    return row(n_blocks - 1), row(n_blocks - 2)


def _left_residual(trig, coeffs, grid_n):
    pts = circle_points(grid_n)
    mv = eval_matrix_poly(coeffs, pts)
    av = trig.eval_on_circle(pts)
    prod = np.einsum("zij,zkj->zik", mv, mv.conj())
    return float(max(np.linalg.norm(prod[i] - av[i], 2) for i in range(grid_n)))


def left_stable_factor(a, bauer_size=None, tol=1e-8, grid_n=256):
    """Left stable factor M(z) with A(z) = M(z) M(1/conj(z))^* on the circle.

    Parameters
    ----------
    a : TrigMatrixPolynomial
        Must be positive definite on the circle (checked on a grid of
        ``grid_n`` points).
    bauer_size : int, optional
        Number of block rows of the Toeplitz section; defaults to
        64 * (degree + 1).  One doubling retry happens automatically before
        giving up.
    tol : float
        Gate for both the row-to-row convergence metric and the residual
        max_z ||M(z) M(z)^* - A(z)|| on the circle grid.

    Returns the coefficients M[0] .. M[n] as an array of shape (n+1, D, D);
    M[0] is lower triangular with positive diagonal.
    """
    if a.min_eig_on_circle(grid_n) <= 0.0:
        raise NotPositiveOnCircle(
            "trigonometric polynomial is not positive definite on the circle"
        )
    d = a.block_dim
    deg = a.degree
    base = bauer_size if bauer_size is not None else 64 * (deg + 1)
    base = max(base, deg + 2)

    best = None
    for size in (base, 2 * base):
        ab = _banded_toeplitz(a, size)
        try:
            c_band = la.cholesky_banded(ab, lower=True)
        except np.linalg.LinAlgError as exc:
            raise NoConvergence(
                "banded Cholesky failed at section size %d; positivity is marginal" % size
            ) from exc
        last, prev = _trailing_rows(c_band, size, d, deg)
        scale = max(np.linalg.norm(last[0]), 1e-300)
        change = max(
            np.linalg.norm(lk - pk) / scale for lk, pk in zip(last, prev)
        )
        coeffs = np.stack(last)
        residual = _left_residual(a, coeffs, grid_n)
        best = (change, residual)
        if change <= tol and residual <= tol:
            return coeffs
    raise NoConvergence(
        "Bauer iteration stalled: row change %.3e, circle residual %.3e at size %d"
        % (best[0], best[1], 2 * base)
    )


def right_stable_factor(a, bauer_size=None, tol=1e-8, grid_n=256):
    """Right stable factor N(z) with A(z) = N(1/conj(z))^* N(z) on the circle.

    Computed from the left factor of the flip-transposed polynomial
    B[k] = F A[k]^T F (F the exchange matrix), which preserves the
    lower-triangular positive-diagonal normalization at z = 0.
    """
    f = np.eye(a.block_dim)[::-1]
    flipped = TrigMatrixPolynomial.from_one_sided(
        [f @ a.block(k).T @ f for k in range(a.degree + 1)]
    )
    m = left_stable_factor(flipped, bauer_size=bauer_size, tol=tol, grid_n=grid_n)
    coeffs = np.stack([f @ mk.T @ f for mk in m])

    pts = circle_points(grid_n)
    nv = eval_matrix_poly(coeffs, pts)
    av = a.eval_on_circle(pts)
    prod = np.einsum("zji,zjk->zik", nv.conj(), nv)
    residual = float(max(np.linalg.norm(prod[i] - av[i], 2) for i in range(grid_n)))
    if residual > tol:
        raise NoConvergence("right factor residual %.3e exceeds tol" % residual)
    return coeffs


def normalize_left_factor(coeffs):
    """Right-multiply by the unitary making the constant term lower triangular
    with positive diagonal; the factorization identity is unchanged."""
    arr = np.asarray(coeffs, dtype=complex)
    u = right_unitary_for_lower(arr[0])
    return np.einsum("kij,jl->kil", arr, u)
