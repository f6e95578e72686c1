"""One-variable block autoregressive filters.

Given a positive definite block Toeplitz matrix of correlations, the first
(or last) block column of its inverse yields, after a Cholesky
normalization, a stable (or antistable) matrix polynomial whose inverse
spectral density reproduces the correlations.  The same inverse also drives
the covariance extension recursion beyond the given band.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np
import scipy.linalg as la

from .errors import DegenerateDeterminant, NotPositiveDefinite
from .linalg import (
    as_block,
    circle_points,
    eval_matrix_poly,
    lower_cholesky,
    max_abs,
    symmetrize,
    upper_cholesky,
)


@dataclass(frozen=True)
class BlockToeplitz1D:
    """Symbol blocks A[-n] .. A[n] of a Hermitian block Toeplitz matrix.

    ``blocks`` stores the 2n+1 coefficients in ascending index order and must
    satisfy A[-k] = A[k]^*.
    """

    block_dim: int
    n: int
    blocks: Tuple[np.ndarray, ...]

    def __post_init__(self):
        if len(self.blocks) != 2 * self.n + 1:
            raise ValueError("expected %d blocks" % (2 * self.n + 1))
        coerced = tuple(as_block(b, self.block_dim) for b in self.blocks)
        scale = max(1.0, max(max_abs(b) for b in coerced))
        for k in range(self.n + 1):
            dev = np.max(np.abs(coerced[self.n - k] - coerced[self.n + k].conj().T))
            if dev > 1e-12 * scale:
                raise ValueError("blocks violate A[-k] = A[k]^* at k=%d" % k)
        object.__setattr__(self, "blocks", coerced)

    @classmethod
    def from_one_sided(cls, blocks):
        """Build from A[0] .. A[n]; negative blocks are filled in by symmetry."""
        pos = [np.atleast_2d(np.asarray(b, dtype=complex)) for b in blocks]
        dim = pos[0].shape[0]
        pos[0] = symmetrize(pos[0])
        neg = [b.conj().T for b in pos[1:]][::-1]
        return cls(dim, len(pos) - 1, tuple(neg + pos))

    def block(self, k):
        if abs(k) > self.n:
            raise IndexError("block index %d outside band" % k)
        return self.blocks[k + self.n]

    def toeplitz(self, size=None):
        """Dense (A[i-j]) for i, j < size (default n+1; size may not exceed n+1)."""
        size = self.n + 1 if size is None else size
        if not 1 <= size <= self.n + 1:
            raise ValueError("size must be in 1..n+1")
        d = self.block_dim
        out = np.zeros((size * d, size * d), dtype=complex)
        for i in range(size):
            for j in range(size):
                out[i * d : (i + 1) * d, j * d : (j + 1) * d] = self.block(i - j)
        return out


@dataclass(frozen=True)
class Ar1Solution:
    """Solution of a one-variable block Yule-Walker system.

    direction 'left' holds P[0..n] and R[i] = P[i] B^{-*} with P[0] = B B^*
    (B lower triangular, positive diagonal); R(z) = sum R[i] z^i is stable.
    direction 'right' holds Q[-n..0] and S[i] = Q[i] C^{-*} with Q[0] = C C^*
    (C upper triangular, positive diagonal); S(z) = sum S[i] z^i is
    antistable.  ``prediction`` and ``coeffs`` are stored in ascending power
    order in both cases.
    """

    direction: str
    prediction: Tuple[np.ndarray, ...]
    coeffs: Tuple[np.ndarray, ...]
    normalizer: np.ndarray

    def stable_poly(self):
        """Coefficients of the stable polynomial associated to this solution.

        For the left solution it is R(z) itself; for the right one it is the
        reversed conjugate S(1/conj(z))^*, which is stable exactly when S is
        antistable.
        """
        if self.direction == "left":
            return np.stack(self.coeffs)
        return np.stack([c.conj().T for c in self.coeffs[::-1]])


def _solve_block_column(t, which, tol):
    big = t.toeplitz()
    try:
        factor = la.cho_factor(symmetrize(big), lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("block Toeplitz matrix is not positive definite") from exc
    d = t.block_dim
    rhs = np.zeros((big.shape[0], d), dtype=complex)
    if which == "first":
        rhs[:d] = np.eye(d)
    else:
        rhs[-d:] = np.eye(d)
    sol = la.cho_solve(factor, rhs)
    return [sol[i * d : (i + 1) * d] for i in range(t.n + 1)]


def solve_yule_walker_left(t, tol=1e-10):
    """Stable filter from the first block column of the inverse.

    Solves (A[i-j]) col(P[0]..P[n]) = col(I, 0, .., 0), factors
    P[0] = B B^* with B lower triangular and positive diagonal, and returns
    R[i] = P[i] B^{-*}.
    """
    p_blocks = _solve_block_column(t, "first", tol)
    p0 = symmetrize(p_blocks[0])
    b = lower_cholesky(p0, what="P[0]")
    b_inv_star = la.solve_triangular(b, np.eye(t.block_dim), lower=True).conj().T
    r_blocks = [p @ b_inv_star for p in p_blocks]
    return Ar1Solution("left", tuple(p_blocks), tuple(r_blocks), b)


def solve_yule_walker_right(t, tol=1e-10):
    """Antistable filter from the last block column of the inverse.

    Solves (A[i-j]) col(Q[-n]..Q[0]) = col(0, .., 0, I), factors
    Q[0] = C C^* with C upper triangular and positive diagonal, and returns
    S[i] = Q[i] C^{-*} for i = -n..0.
    """
    q_blocks = _solve_block_column(t, "last", tol)
    q0 = symmetrize(q_blocks[-1])
    c = upper_cholesky(q0, what="Q[0]")
    c_inv_star = la.solve_triangular(c, np.eye(t.block_dim), lower=False).conj().T
    s_blocks = [q @ c_inv_star for q in q_blocks]
    return Ar1Solution("right", tuple(q_blocks), tuple(s_blocks), c)


def extend_covariance_1d(t, r_max, tol=1e-10):
    """Extend the correlation blocks to indices n+1 .. r_max.

    Each new block satisfies
    A[-r] = (A[-1] .. A[-n]) inv((A[i-j])_{i,j<n}) col(A[-r+1] .. A[-r+n]),
    with A[r] = A[-r]^*.  Returns the list [A[n+1], .., A[r_max]].
    """
    if r_max <= t.n:
        return []
    inner = t.toeplitz(t.n)
    try:
        factor = la.cho_factor(symmetrize(inner), lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("leading block Toeplitz minor is not positive definite") from exc

    known = {k: t.block(k) for k in range(-t.n, t.n + 1)}
    row = np.hstack([known[-k] for k in range(1, t.n + 1)])
    out = []
    for r in range(t.n + 1, r_max + 1):
        col = np.vstack([known[-r + k] for k in range(1, t.n + 1)])
        neg = row @ la.cho_solve(factor, col)
        known[-r] = neg
        known[r] = neg.conj().T
        out.append(known[r])
    return out


def _coerce_poly(coeffs):
    arr = np.asarray(coeffs, dtype=complex)
    if arr.ndim == 1:
        arr = arr[:, None, None]
    if arr.ndim != 3 or arr.shape[1] != arr.shape[2]:
        raise ValueError("expected coefficients of shape (deg+1, D, D)")
    return arr


def stability_check_1d(coeffs, margin=1e-9):
    """Locate the determinant roots of a matrix polynomial.

    The determinant polynomial is recovered exactly by evaluating
    det A(z) on deg*D + 1 roots of unity and applying a discrete Fourier
    transform; its roots then come from the companion matrix.  Returns
    (stable, min_root_modulus) where stable means every root modulus
    exceeds 1 + margin.  A polynomial whose determinant never vanishes
    reports an infinite modulus.
    """
    c = _coerce_poly(coeffs)
    deg = c.shape[0] - 1
    dim = c.shape[1]
    det_deg = deg * dim
    coeff_scale = max(1.0, max_abs(c)) ** dim

    if det_deg == 0:
        val = complex(np.linalg.det(c[0]))
        if abs(val) <= 1e-12 * coeff_scale:
            raise DegenerateDeterminant("determinant of a constant polynomial is zero")
        return True, float("inf")

    pts = circle_points(det_deg + 1)
    vals = np.linalg.det(eval_matrix_poly(c, pts))
    if np.max(np.abs(vals)) <= 1e-12 * coeff_scale:
        raise DegenerateDeterminant("det A(z) vanishes identically within tolerance")

    dcoef = np.fft.fft(vals) / (det_deg + 1)
    mags = np.abs(dcoef)
    keep = np.nonzero(mags > 1e-13 * mags.max())[0]
    top = int(keep.max())
    if top == 0:
        return True, float("inf")
    roots = np.roots(dcoef[: top + 1][::-1])
    min_mod = float(np.min(np.abs(roots)))
    return min_mod > 1.0 + margin, min_mod
