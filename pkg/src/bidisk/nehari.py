"""Truncated suboptimal Nehari solvers in one and two variables.

One variable: given Hankel coefficients G[0], G[1], ... whose Hankel section
is a strict contraction, a pinned Yule-Walker solve against
[[I, H], [H*, I]] produces recursion coefficients that extend the symbol to
negative indices with sup-norm below one.  Two variables: the data lifts to
operator Hankel blocks (Hankels of Hankels); when a commutation identity
between three compressions of the lifted band matrix holds, the
one-variable machinery extends the first variable, the extended blocks are
again Hankel, and a regrouped second pass extends the remaining variable.

Hankel sections are stored in column-reversed (Toeplitz-like) layout: the
block at (row i, column c) of an N-section is G[i - c + N - 1], so entries
are constant along storage diagonals.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

import numpy as np
import scipy.linalg as la

from .errors import (
    CommutationViolation,
    IllConditioned,
    NoConvergence,
    NormAtLeastOne,
    NotPositiveDefinite,
    StructureViolation,
)
from .linalg import as_block, max_abs, operator_norm, pd_probe


@dataclass(frozen=True)
class HankelData1D:
    """One-variable Hankel data: blocks G[0..K] plus the truncation length.

    block_rows / block_cols are the dimensions of each block; trunc_n is the
    number of block rows and columns of the finite section used in solves.
    Blocks beyond K are treated as zero.
    """

    block_rows: int
    block_cols: int
    gammas: Tuple[np.ndarray, ...]
    trunc_n: int

    def __post_init__(self):
        coerced = []
        for g in self.gammas:
            arr = np.asarray(g, dtype=complex)
            if arr.ndim == 0:
                arr = arr.reshape(1, 1)
            if arr.shape != (self.block_rows, self.block_cols):
                raise ValueError(
                    "block shape %s, expected (%d, %d)"
                    % (arr.shape, self.block_rows, self.block_cols)
                )
            coerced.append(arr)
        if self.trunc_n < 2:
            raise ValueError("truncation length must be at least 2")
        object.__setattr__(self, "gammas", tuple(coerced))

    def gamma(self, idx):
        if idx < 0:
            raise IndexError("negative index")
        if idx < len(self.gammas):
            return self.gammas[idx]
        return np.zeros((self.block_rows, self.block_cols), dtype=complex)

    def section(self, size=None):
        """Column-reversed N x N block section; block (i, c) = G[i - c + N - 1]."""
        size = self.trunc_n if size is None else size
        h, k = self.block_rows, self.block_cols
        out = np.zeros((size * h, size * k), dtype=complex)
        for i in range(size):
            for c in range(size):
                idx = i - c + size - 1
                if idx < len(self.gammas):
                    out[i * h : (i + 1) * h, c * k : (c + 1) * k] = self.gammas[idx]
        return out

    def with_trunc(self, size):
        return HankelData1D(self.block_rows, self.block_cols, self.gammas, size)


@dataclass(frozen=True)
class NehariSolution1D:
    """Pinned Yule-Walker solutions and the extended symbol coefficients.

    d_blocks[j] holds D[-j] (j = 1..N-1) from the system with the last block
    of the D stack pinned to the identity; a_blocks[j] holds A[j] from the
    mirrored system with the first block of the A stack pinned.  extension
    lists G[-1] .. G[-J] from the recursion through the D blocks;
    extension_alt is the same through the A blocks, and mismatch is their
    largest entrywise disagreement.  convergence_gap compares the extension
    against a doubled-truncation rerun (NaN when the check is skipped).
    """

    hankel_norm: float
    b_blocks: Tuple[np.ndarray, ...]
    d_blocks: Dict[int, np.ndarray]
    delta0: np.ndarray
    a_blocks: Dict[int, np.ndarray]
    c_blocks: Tuple[np.ndarray, ...]
    alpha0: np.ndarray
    extension: Tuple[np.ndarray, ...]
    extension_alt: Tuple[np.ndarray, ...]
    mismatch: float
    convergence_gap: float


def _solve_pinned(h_mat, hdim, kdim, size):
    """Solve the two pinned systems for the section ``h_mat``.

    Returns (b_blocks, d_blocks, delta0, a_blocks, c_blocks, alpha0) where
    b_blocks has ``size`` entries, d_blocks maps j=1..size-1 to D[-j],
    a_blocks maps j=1..size-1 to A[j], c_blocks has ``size`` entries C[-j]
    keyed by position (index 0 is C[-(size-1)], last is C[0]).
    """
    # System 1: B + H (D_top, I) = 0 ; (H* B + D)_rows<last = 0.
    top = h_mat[:, : -kdim]
    last_col = h_mat[:, -kdim:]
    n_b = size * hdim
    n_d = (size - 1) * kdim
    sys1 = np.block(
        [
            [np.eye(n_b), top],
            [top.conj().T, np.eye(n_d)],
        ]
    )
    rhs1 = np.vstack([-last_col, np.zeros((n_d, kdim), dtype=complex)])
    sol1 = la.cho_solve(la.cho_factor(sys1, lower=True), rhs1)
    b_stack = sol1[:n_b]
    d_top = sol1[n_b:]
    b_blocks = tuple(b_stack[i * hdim : (i + 1) * hdim] for i in range(size))
    d_blocks = {}
    for j in range(1, size):
        row = (size - 1 - j) * kdim
        d_blocks[j] = d_top[row : row + kdim]
    delta0 = last_col.conj().T @ b_stack + np.eye(kdim)

    # System 2: (A_rest + H C)_rows>0 = 0 ; H* (I, A_rest) + C = 0.
    below = h_mat[hdim:, :]
    first_rows = h_mat[:hdim, :]
    n_a = (size - 1) * hdim
    n_c = size * kdim
    sys2 = np.block(
        [
            [np.eye(n_a), below],
            [below.conj().T, np.eye(n_c)],
        ]
    )
    rhs2 = np.vstack(
        [np.zeros((n_a, hdim), dtype=complex), -first_rows.conj().T]
    )
    sol2 = la.cho_solve(la.cho_factor(sys2, lower=True), rhs2)
    a_rest = sol2[:n_a]
    c_stack = sol2[n_a:]
    a_blocks = {}
    for j in range(1, size):
        a_blocks[j] = a_rest[(j - 1) * hdim : j * hdim]
    c_blocks = tuple(c_stack[i * kdim : (i + 1) * kdim] for i in range(size))
    alpha0 = np.eye(hdim) + first_rows @ c_stack
    return b_blocks, d_blocks, delta0, a_blocks, c_blocks, alpha0


def _extend_d(data, d_blocks, j_count, size):
    ext = {}
    for j in range(-1, -j_count - 1, -1):
        acc = np.zeros((data.block_rows, data.block_cols), dtype=complex)
        for k in range(1, size):
            idx = j + k
            g = data.gamma(idx) if idx >= 0 else ext[idx]
            acc -= g @ d_blocks[k]
        ext[j] = acc
    return tuple(ext[j] for j in range(-1, -j_count - 1, -1))


def _extend_a(data, a_blocks, j_count, size):
    ext = {}
    for j in range(-1, -j_count - 1, -1):
        acc = np.zeros((data.block_rows, data.block_cols), dtype=complex)
        for k in range(1, size):
            idx = j + k
            g = data.gamma(idx) if idx >= 0 else ext[idx]
            acc -= a_blocks[k].conj().T @ g
        ext[j] = acc
    return tuple(ext[j] for j in range(-1, -j_count - 1, -1))


def _solve_at(data, j_count, size):
    h_mat = data.section(size)
    b, d, delta0, a, c, alpha0 = _solve_pinned(
        h_mat, data.block_rows, data.block_cols, size
    )
    ext = _extend_d(data, d, j_count, size)
    ext_alt = _extend_a(data, a, j_count, size)
    return h_mat, b, d, delta0, a, c, alpha0, ext, ext_alt


def solve_nehari_1d(h, j_count, tol=1e-6, check_convergence=True, min_gap=1e-6):
    """Extend one-variable Hankel data to a symbol with sup-norm below one.

    Requires the section to be a strict contraction with 1 - ||H|| at least
    ``min_gap``.  Both pinned systems are solved; the symbol extension is
    produced by the D-recursion and cross-checked against the A-recursion.
    When ``check_convergence`` is set, the solve is repeated at doubled
    truncation and the extensions must agree within 10 * tol.
    """
    size = h.trunc_n
    h_mat = h.section(size)
    nrm = operator_norm(h_mat)
    if nrm >= 1.0:
        raise NormAtLeastOne("Hankel section norm %.6f is not below one" % nrm)
    if 1.0 - nrm < min_gap:
        raise IllConditioned("contraction gap %.3e below %.1e" % (1.0 - nrm, min_gap))

    _, b, d, delta0, a, c, alpha0, ext, ext_alt = _solve_at(h, j_count, size)
    mismatch = max(
        (float(np.max(np.abs(x - y))) for x, y in zip(ext, ext_alt)), default=0.0
    )

    gap = float("nan")
    if check_convergence:
        _, _, _, _, _, _, _, ext2, _ = _solve_at(h, j_count, 2 * size)
        gap = max(
            (float(np.max(np.abs(x - y))) for x, y in zip(ext, ext2)), default=0.0
        )
        if gap > 10.0 * tol:
            raise NoConvergence(
                "doubling the truncation moves the extension by %.3e (> 10 tol)" % gap
            )
    return NehariSolution1D(
        nrm, b, d, delta0, a, c, alpha0, ext, ext_alt, mismatch, gap
    )


@dataclass(frozen=True)
class LittleHankelData:
    """Two-variable Hankel data gamma[i, j] for 0 <= i, j <= K.

    ``values`` has shape (K+1, K+1, d, d).  inner_n is the truncation of the
    inner (second variable) Hankel sections; outer_m the truncation of the
    outer solve, defaulting to inner_n.
    """

    d: int
    values: np.ndarray
    inner_n: int
    outer_m: Optional[int] = None

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=complex)
        if arr.ndim == 2:
            arr = arr[:, :, None, None]
        if arr.ndim != 4 or arr.shape[2] != self.d or arr.shape[3] != self.d:
            raise ValueError("values must have shape (K+1, K+1, d, d)")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)
        if self.outer_m is None:
            object.__setattr__(self, "outer_m", self.inner_n)
        if self.inner_n < 2 or self.outer_m < 2:
            raise ValueError("truncations must be at least 2")

    @property
    def support(self):
        return self.values.shape[0] - 1

    def gamma(self, i, j):
        if i < 0 or j < 0:
            raise IndexError("given data lives on nonnegative indices")
        if i <= self.support and j <= self.values.shape[1] - 1:
            return self.values[i, j]
        return np.zeros((self.d, self.d), dtype=complex)

    def inner_section(self, i):
        """Column-reversed inner Hankel section of row i, size inner_n."""
        n, d = self.inner_n, self.d
        out = np.zeros((n * d, n * d), dtype=complex)
        for r in range(n):
            for c in range(n):
                idx = r - c + n - 1
                blk = self.gamma(i, idx) if i >= 0 else None
                if blk is not None:
                    out[r * d : (r + 1) * d, c * d : (c + 1) * d] = blk
        return out

    def little_hankel_section(self):
        """The outer_m x outer_m block section of the full two-variable Hankel."""
        m = self.outer_m
        blocks = [self.inner_section(i) for i in range(2 * m - 1)]
        size = self.inner_n * self.d
        out = np.zeros((m * size, m * size), dtype=complex)
        for i in range(m):
            for c in range(m):
                out[i * size : (i + 1) * size, c * size : (c + 1) * size] = blocks[
                    i - c + m - 1
                ]
        return out


def _index_pairs(r1, r2):
    return [(i1, i2) for i1 in r1 for i2 in r2]


def _compression(g, row_pos, row_neg, col_pos, col_neg):
    d = g.d

    def delta(rows, cols):
        out = np.zeros((len(rows) * d, len(cols) * d), dtype=complex)
        pos = {p: b for b, p in enumerate(cols)}
        for a, p in enumerate(rows):
            b = pos.get(p)
            if b is not None:
                out[a * d : (a + 1) * d, b * d : (b + 1) * d] = np.eye(d)
        return out

    def hank(rows, cols):
        out = np.zeros((len(rows) * d, len(cols) * d), dtype=complex)
        for a, (i1, i2) in enumerate(rows):
            for b, (j1, j2) in enumerate(cols):
                out[a * d : (a + 1) * d, b * d : (b + 1) * d] = g.gamma(i1 - j1, i2 - j2)
        return out

    def hank_star(rows, cols):
        out = np.zeros((len(rows) * d, len(cols) * d), dtype=complex)
        for a, (j1, j2) in enumerate(rows):
            for b, (i1, i2) in enumerate(cols):
                out[a * d : (a + 1) * d, b * d : (b + 1) * d] = (
                    g.gamma(i1 - j1, i2 - j2).conj().T
                )
        return out

    return np.block(
        [
            [delta(row_pos, col_pos), hank(row_pos, col_neg)],
            [hank_star(row_neg, col_pos), delta(row_neg, col_neg)],
        ]
    )


def build_compressions(g):
    """The three truncated compressions of the lifted band matrix.

    Each infinite quadrant index set is truncated to length inner_n in both
    coordinates.  Each compression has two equivalent definitions that must
    produce identical matrices on the truncated sections; this equality is
    asserted here.

    Returns (phi, phi1, phi2), square matrices of side 2 * inner_n^2 * d.
    """
    n = g.inner_n
    nn0 = range(0, n)  # truncation of {0, 1, ...}
    nn1 = range(1, n + 1)  # truncation of {1, 2, ...}
    mn0 = range(-(n - 1), 1)  # truncation of {..., -1, 0}
    mn1 = range(-n, 0)  # truncation of {..., -2, -1}

    phi = _compression(
        g, _index_pairs(nn0, nn1), _index_pairs(mn1, mn0),
        _index_pairs(nn0, nn1), _index_pairs(mn1, mn0),
    )
    phi_alt = _compression(
        g, _index_pairs(nn1, nn0), _index_pairs(mn0, mn1),
        _index_pairs(nn1, nn0), _index_pairs(mn0, mn1),
    )
    phi1 = _compression(
        g, _index_pairs(nn0, nn0), _index_pairs(mn1, mn1),
        _index_pairs(nn1, nn0), _index_pairs(mn0, mn1),
    )
    phi1_alt = _compression(
        g, _index_pairs(nn0, nn1), _index_pairs(mn1, mn0),
        _index_pairs(nn1, nn1), _index_pairs(mn0, mn0),
    )
    phi2 = _compression(
        g, _index_pairs(nn0, nn0), _index_pairs(mn1, mn1),
        _index_pairs(nn0, nn1), _index_pairs(mn1, mn0),
    )
    phi2_alt = _compression(
        g, _index_pairs(nn1, nn0), _index_pairs(mn0, mn1),
        _index_pairs(nn1, nn1), _index_pairs(mn0, mn0),
    )
    for name, first, second in (
        ("phi", phi, phi_alt),
        ("phi1", phi1, phi1_alt),
        ("phi2", phi2, phi2_alt),
    ):
        if not np.array_equal(first, second):
            raise AssertionError("the two compression recipes disagree for %s" % name)
    return phi, phi1, phi2


def check_comm_2d(phi, phi1, phi2, pd_tol=1e-10):
    """Relative Frobenius residual of the commutation identity.

    Computes || phi1 phi^{-1} phi2^* - phi2^* phi^{-1} phi1 ||_F divided by
    the larger of the two product norms.  Raises when phi is not positive
    definite.
    """
    ok, min_eig = pd_probe(phi, pd_tol)
    if not ok:
        raise NotPositiveDefinite(
            "compressed band matrix is not positive definite (min eig %.3e)" % min_eig
        )
    factor = la.cho_factor(0.5 * (phi + phi.conj().T), lower=True)
    left = phi1 @ la.cho_solve(factor, phi2.conj().T)
    right = phi2.conj().T @ la.cho_solve(factor, phi1)
    denom = max(np.linalg.norm(left), np.linalg.norm(right), 1e-300)
    return float(np.linalg.norm(left - right) / denom)


def _diagonal_profile(mat, d, offsets):
    """Mean block and max deviation along each block storage diagonal."""
    count = mat.shape[0] // d
    means = {}
    deviation = 0.0
    for off in offsets:
        blocks = [
            mat[r * d : (r + 1) * d, (r - off) * d : (r - off + 1) * d]
            for r in range(count)
            if 0 <= r - off < count
        ]
        mean = sum(blocks) / len(blocks)
        deviation = max(
            deviation, max(float(np.max(np.abs(b - mean))) for b in blocks)
        )
        means[off] = mean
    return means, deviation


@dataclass(frozen=True)
class Nehari2DSolution:
    """Extension and certificates of the two-variable suboptimal problem."""

    extension: Dict[Tuple[int, int], np.ndarray]
    comm_residual: float
    hankel_norm: float
    claim_zero_d: float
    claim_zero_a: float
    hankel_deviation: float
    toeplitz_deviation: float
    sup_norm: float
    round1: NehariSolution1D
    round2: NehariSolution1D


def _symbol_sup_norm(terms, d, grid_n=256):
    """Sup over the torus grid of the symbol sum of the given coefficients."""
    acc = np.zeros((grid_n, grid_n, d, d), dtype=complex)
    for (i, j), blk in terms.items():
        acc[i % grid_n, j % grid_n] += blk
    vals = np.fft.ifft2(acc, axes=(0, 1)) * grid_n**2
    if d == 1:
        return float(np.max(np.abs(vals)))
    return float(np.max(np.linalg.svd(vals, compute_uv=False)))


def solve_nehari_2d(g, j_count, tol=1e-6, check_convergence=True, grid_n=256):
    """Extend little-Hankel data to a torus symbol with sup-norm below one.

    The commutation identity of the compressions must hold within ``tol``
    (relative Frobenius).  A first one-variable pass over the lifted inner
    Hankel sections extends the first index to -1 .. -2*j_count; the
    recursion blocks must then show the predicted zero rows and the extended
    sections must be Hankel, both within 100 * tol.  A second pass over the
    regrouped (Toeplitz-in-first-variable) sections extends the second
    index.  The final certificate evaluates the extended symbol on a
    ``grid_n`` x ``grid_n`` torus grid and requires sup-norm < 1.

    Returns a Nehari2DSolution whose extension maps (i, j) with
    min(i, j) < 0 and |i|, |j| <= j_count to coefficient blocks.
    """
    n, m, d = g.inner_n, g.outer_m, g.d
    if j_count < 1:
        raise ValueError("j_count must be positive")
    if j_count > 2 * n - 2:
        raise ValueError("j_count may not exceed 2 * inner_n - 2")

    phi, phi1, phi2 = build_compressions(g)
    comm_residual = check_comm_2d(phi, phi1, phi2)
    if comm_residual > tol:
        raise CommutationViolation(
            "commutation residual %.3e exceeds tolerance %.1e" % (comm_residual, tol)
        )

    structure_tol = 100.0 * tol
    width = n * d
    lifted = HankelData1D(
        width, width, tuple(g.inner_section(i) for i in range(g.support + 1)), m
    )
    deep = 2 * j_count
    round1 = solve_nehari_1d(
        lifted, deep, tol=tol, check_convergence=check_convergence
    )

    claim_zero_d = max(
        (max_abs(blk[(n - 1) * d :, : (n - 1) * d]) for blk in round1.d_blocks.values()),
        default=0.0,
    )
    claim_zero_a = max(
        (max_abs(blk[:d, d:]) for blk in round1.a_blocks.values()), default=0.0
    )
    if max(claim_zero_d, claim_zero_a) > structure_tol:
        raise StructureViolation(
            "recursion blocks violate the predicted zero rows "
            "(D: %.3e, A: %.3e)" % (claim_zero_d, claim_zero_a),
            magnitude=max(claim_zero_d, claim_zero_a),
        )

    # Read gamma[i, t] for i < 0 off the storage diagonals of the extended
    # sections; diagonal offset q corresponds to inner index t = q + n - 1.
    negative_rows = {}
    hankel_deviation = 0.0
    offsets = range(-(n - 1), n)
    for pos, blk in enumerate(round1.extension):
        i = -(pos + 1)
        means, dev = _diagonal_profile(blk, d, offsets)
        hankel_deviation = max(hankel_deviation, dev)
        negative_rows[i] = {off + n - 1: mean for off, mean in means.items()}
    if hankel_deviation > structure_tol:
        raise StructureViolation(
            "extended sections deviate from Hankel shape by %.3e" % hankel_deviation,
            magnitude=hankel_deviation,
        )

    def gamma_hat(i, t):
        if i >= 0:
            return g.gamma(i, t) if t <= g.values.shape[1] - 1 else np.zeros((d, d), complex)
        row = negative_rows.get(i)
        if row is None or t not in row:
            return np.zeros((d, d), dtype=complex)
        return row[t]

    # Second pass: regroup so the second variable is outer.  Sections are
    # Toeplitz in the first variable over a window wide enough to read
    # indices |i| <= j_count back off the diagonals.
    half = j_count
    window = range(-half, half + 1)
    wlen = 2 * half + 1

    def toeplitz_section(t):
        out = np.zeros((wlen * d, wlen * d), dtype=complex)
        for a, pa in enumerate(window):
            for b, pb in enumerate(window):
                out[a * d : (a + 1) * d, b * d : (b + 1) * d] = gamma_hat(pa - pb, t)
        return out

    regrouped = HankelData1D(
        wlen * d, wlen * d, tuple(toeplitz_section(t) for t in range(n)), m
    )
    round2 = solve_nehari_1d(
        regrouped, j_count, tol=tol, check_convergence=check_convergence
    )

    toeplitz_deviation = 0.0
    negative_cols = {}
    for pos, blk in enumerate(round2.extension):
        t = -(pos + 1)
        means, dev = _diagonal_profile(blk, d, range(-(wlen - 1), wlen))
        toeplitz_deviation = max(toeplitz_deviation, dev)
        negative_cols[t] = means
    if toeplitz_deviation > structure_tol:
        raise StructureViolation(
            "regrouped extension deviates from Toeplitz shape by %.3e"
            % toeplitz_deviation,
            magnitude=toeplitz_deviation,
        )

    extension = {}
    for i in range(-j_count, j_count + 1):
        for j in range(-j_count, j_count + 1):
            if i >= 0 and j >= 0:
                continue
            if j >= 0:
                extension[(i, j)] = gamma_hat(i, j)
            else:
                extension[(i, j)] = negative_cols[j][i]

    terms = {}
    support = g.values.shape[0] - 1
    for i in range(support + 1):
        for j in range(support + 1):
            terms[(i, j)] = g.gamma(i, j)
    terms.update(extension)
    sup = _symbol_sup_norm(terms, d, grid_n=grid_n)
    if sup >= 1.0:
        raise NormAtLeastOne("extended symbol sup-norm %.6f is not below one" % sup)

    return Nehari2DSolution(
        extension,
        comm_residual,
        round1.hankel_norm,
        claim_zero_d,
        claim_zero_a,
        hankel_deviation,
        toeplitz_deviation,
        sup,
        round1,
        round2,
    )
