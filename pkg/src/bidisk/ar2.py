"""Two-variable autoregressive filter design and certification.

Feasibility of the filter problem over a corner-free correlation band is
decided by a commutation identity between compressions of the band matrix
together with two positivity conditions over punctured rectangles.  When
feasible, a pair of stable polynomials p(z, w) and r(z, w) is constructed by
block Yule-Walker solves over the completed rectangle, certified to be
invertible on the closed bidisk, and used to extend the correlation data to
the whole plane by Fourier inversion of (p p^*)^{-1}.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.linalg as la

from . import completion
from .ar1 import stability_check_1d
from .errors import (
    Infeasible,
    NotPositiveDefinite,
    SingularSection,
    StructureViolation,
    Unstable,
)
from .grids import CorrelationGrid, IndexRect, assemble_block_matrix, band_indices
from .linalg import (
    left_unitary_for_hpd,
    max_abs,
    pd_probe,
    right_unitary_for_hpd,
    solve_pd,
    symmetrize,
    circle_points,
)
from .spectral import TrigMatrixPolynomial, left_stable_factor, normalize_left_factor


@dataclass(frozen=True)
class MatrixPolynomial2D:
    """p(z, w) = sum p[i, j] z^i w^j with d x d coefficient blocks."""

    d: int
    n: int
    m: int
    coeffs: np.ndarray  # shape (n+1, m+1, d, d)

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=complex)
        expected = (self.n + 1, self.m + 1, self.d, self.d)
        if arr.shape != expected:
            raise ValueError("coefficients shape %s, expected %s" % (arr.shape, expected))
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_scalar(cls, table):
        arr = np.atleast_2d(np.asarray(table, dtype=complex))
        return cls(1, arr.shape[0] - 1, arr.shape[1] - 1, arr[:, :, None, None])

    @classmethod
    def identity(cls, d=1, n=0, m=0):
        coeffs = np.zeros((n + 1, m + 1, d, d), dtype=complex)
        coeffs[0, 0] = np.eye(d)
        return cls(d, n, m, coeffs)

    def coefficient(self, i, j):
        return self.coeffs[i, j]

    def scalar_table(self):
        if self.d != 1:
            raise ValueError("scalar table only defined for d = 1")
        return self.coeffs[:, :, 0, 0]

    def eval_grid(self, zs, ws):
        """Values on the product grid; returns (len(zs), len(ws), d, d)."""
        zs = np.asarray(zs, dtype=complex)
        ws = np.asarray(ws, dtype=complex)
        zp = zs[:, None] ** np.arange(self.n + 1)[None, :]
        wp = ws[:, None] ** np.arange(self.m + 1)[None, :]
        return np.einsum("ijrc,ai,bj->abrc", self.coeffs, zp, wp)

    def w_coefficients_at(self, zs):
        """Coefficient functions of powers of w; returns (len(zs), m+1, d, d)."""
        zs = np.asarray(zs, dtype=complex)
        zp = zs[:, None] ** np.arange(self.n + 1)[None, :]
        return np.einsum("ijrc,ai->ajrc", self.coeffs, zp)

    def z_coefficients_at(self, ws):
        ws = np.asarray(ws, dtype=complex)
        wp = ws[:, None] ** np.arange(self.m + 1)[None, :]
        return np.einsum("ijrc,bj->birc", self.coeffs, wp)

    def swap_variables(self):
        return MatrixPolynomial2D(self.d, self.m, self.n, self.coeffs.transpose(1, 0, 2, 3))


@dataclass(frozen=True)
class FeasibilityReport:
    """Verdict and diagnostics of the two feasibility conditions."""

    comm_residual: float
    corner_minus_nm: np.ndarray
    pd_min_eig_1: float
    pd_min_eig_2: float
    feasible: bool
    tol_comm: float
    tol_pd: float


@dataclass(frozen=True)
class StabilityCertificate:
    """Grid-sampled root-location certificate on the bidisk boundary.

    min_root_z is the smallest modulus among roots in z of p(., w) over w on
    the circle grid; min_root_w swaps the roles.  The certificate passes when
    both exceed 1 + margin.  This is a sampled certificate, not a proof.
    """

    stable: bool
    min_root_z: float
    min_root_w: float
    grid_n: int
    margin: float


def check_conditions(grid, tol_comm=1e-8, tol_pd=1e-10):
    """Evaluate both solvability conditions for the filter problem.

    Builds the interior compressions, measures the relative Frobenius
    residual of the commutation identity, installs the forced corner
    c[-n, m] (and its conjugate at (n, -m)), and tests positive definiteness
    of the doubly Toeplitz matrices over the full rectangle punctured at
    (n, m) and at (0, 0).
    """
    n, m, d = grid.n, grid.m, grid.d
    inner = IndexRect(0, n - 1, 0, m - 1).pairs()
    phi = assemble_block_matrix(grid.entries, inner, inner, d)
    phi1 = assemble_block_matrix(
        grid.entries, inner, IndexRect(1, n, 0, m - 1).pairs(), d
    )
    phi2 = assemble_block_matrix(
        grid.entries, inner, IndexRect(0, n - 1, 1, m).pairs(), d
    )

    left = phi1 @ solve_pd(phi, phi2.conj().T, what="interior doubly Toeplitz matrix")
    right = phi2.conj().T @ solve_pd(phi, phi1, what="interior doubly Toeplitz matrix")
    denom = max(np.linalg.norm(left), np.linalg.norm(right), 1e-300)
    comm_residual = float(np.linalg.norm(left - right) / denom)

    corner = completion.corner_c_minus_nm(grid, tol=tol_pd)
    lookup = dict(grid.entries)
    lookup[(-n, m)] = corner
    lookup[(n, -m)] = corner.conj().T

    full = IndexRect(0, n, 0, m).pairs()
    punct_top = [p for p in full if p != (n, m)]
    punct_zero = [p for p in full if p != (0, 0)]
    m1 = assemble_block_matrix(lookup, punct_top, punct_top, d)
    m2 = assemble_block_matrix(lookup, punct_zero, punct_zero, d)
    ok1, eig1 = pd_probe(m1, tol_pd)
    ok2, eig2 = pd_probe(m2, tol_pd)

    feasible = comm_residual <= tol_comm and ok1 and ok2
    return FeasibilityReport(comm_residual, corner, eig1, eig2, feasible, tol_comm, tol_pd)


def _completed_lookup(grid, report, tol_pd):
    n, m = grid.n, grid.m
    lookup = dict(grid.entries)
    lookup[(-n, m)] = report.corner_minus_nm
    lookup[(n, -m)] = report.corner_minus_nm.conj().T
    c_nm = completion.corner_c_nm(grid, report.corner_minus_nm, tol=tol_pd)
    lookup[(n, m)] = c_nm
    lookup[(-n, -m)] = c_nm.conj().T
    return lookup


def design_filters(
    grid,
    tol_comm=1e-8,
    tol_pd=1e-10,
    structure_tol=1e-9,
    certify=True,
    grid_n=512,
    margin=1e-6,
):
    """Construct the stable filter pair (p, r) from a feasible band.

    After installing both corners, the full-rectangle doubly Toeplitz matrix
    is assembled and its inverse's first and last block columns are solved
    for.  The left solve yields p through a lower Cholesky normalization of
    the leading block; the right solve yields r through an upper one.  The
    block coefficients must exhibit structural zeros in their first (last)
    block rows; a violation means the feasibility conditions do not actually
    hold at solve tolerance.  p is normalized so that p[0, 0] is Hermitian
    positive definite, and r likewise.

    Returns (p, r) as MatrixPolynomial2D values.  When ``certify`` is true,
    both polynomials must pass the bidisk stability certificate.
    """
    report = check_conditions(grid, tol_comm=tol_comm, tol_pd=tol_pd)
    if not report.feasible:
        raise Infeasible(
            "conditions fail: comm residual %.3e, punctured min eigs %.3e / %.3e"
            % (report.comm_residual, report.pd_min_eig_1, report.pd_min_eig_2)
        )
    n, m, d = grid.n, grid.m, grid.d
    lookup = _completed_lookup(grid, report, tol_pd)
    full = IndexRect(0, n, 0, m).pairs()
    gamma = assemble_block_matrix(lookup, full, full, d)
    try:
        factor = la.cho_factor(symmetrize(gamma), lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(
            "completed full-rectangle matrix is not positive definite"
        ) from exc

    width = (m + 1) * d
    size = (n + 1) * width

    rhs = np.zeros((size, width), dtype=complex)
    rhs[:width] = np.eye(width)
    sol = la.cho_solve(factor, rhs)
    q_blocks = [sol[i * width : (i + 1) * width] for i in range(n + 1)]
    q0 = symmetrize(q_blocks[0])
    ell = np.linalg.cholesky(q0)
    ell_inv_star = la.solve_triangular(ell, np.eye(width), lower=True).conj().T
    p_big = [q @ ell_inv_star for q in q_blocks]

    scale = max(1.0, max(max_abs(p) for p in p_big))
    zero_mag = max(max_abs(p[:d, d:]) for p in p_big)
    if zero_mag > structure_tol * scale:
        raise StructureViolation(
            "left factor zero pattern fails: magnitude %.3e (conditions not met at "
            "solve tolerance)" % zero_mag,
            magnitude=zero_mag,
        )
    p_coeffs = np.stack(
        [np.stack([p[j * d : (j + 1) * d, :d] for j in range(m + 1)]) for p in p_big]
    )

    rhs = np.zeros((size, width), dtype=complex)
    rhs[-width:] = np.eye(width)
    sol = la.cho_solve(factor, rhs)
    r_blocks = [sol[i * width : (i + 1) * width] for i in range(n + 1)]
    r0 = symmetrize(r_blocks[-1])
    g = np.linalg.cholesky(r0[::-1, ::-1])
    upper = g[::-1, ::-1]
    upper_inv_star = la.solve_triangular(upper, np.eye(width), lower=False).conj().T
    s_big = [rb @ upper_inv_star for rb in r_blocks]  # s_big[a] = S[a - n]

    scale = max(1.0, max(max_abs(s) for s in s_big))
    zero_mag = max(max_abs(s[m * d :, : m * d]) for s in s_big)
    if zero_mag > structure_tol * scale:
        raise StructureViolation(
            "right factor zero pattern fails: magnitude %.3e" % zero_mag,
            magnitude=zero_mag,
        )
    # r[i, j] = (last block column of S[-i], row m-j)^*
    r_coeffs = np.stack(
        [
            np.stack(
                [
                    s_big[n - i][(m - j) * d : (m - j + 1) * d, m * d :].conj().T
                    for j in range(m + 1)
                ]
            )
            for i in range(n + 1)
        ]
    )

    u = right_unitary_for_hpd(p_coeffs[0, 0])
    p_coeffs = np.einsum("ijrc,cl->ijrl", p_coeffs, u)
    v = left_unitary_for_hpd(r_coeffs[0, 0])
    r_coeffs = np.einsum("rc,ijcl->ijrl", v, r_coeffs)

    p = MatrixPolynomial2D(d, n, m, p_coeffs)
    r = MatrixPolynomial2D(d, n, m, r_coeffs)
    if certify:
        for name, poly in (("p", p), ("r", r)):
            cert = stability_check_2d(poly, grid_n=grid_n, margin=margin)
            if not cert.stable:
                raise Unstable(
                    "designed %s fails the stability certificate "
                    "(min root moduli %.6f / %.6f)" % (name, cert.min_root_z, cert.min_root_w)
                )
    return p, r


def stability_check_2d(p, grid_n=512, margin=1e-6):
    """Sampled bidisk stability certificate for a two-variable polynomial.

    For each of grid_n points w on the circle the roots in z of p(., w) are
    located, and symmetrically for each z the roots in w of p(z, .).  The
    polynomial passes when every root modulus exceeds 1 + margin.
    """
    pts = circle_points(grid_n)

    min_root_w = float("inf")
    w_polys = p.w_coefficients_at(pts)
    for a in range(grid_n):
        _, mod = stability_check_1d(w_polys[a], margin=margin)
        min_root_w = min(min_root_w, mod)

    min_root_z = float("inf")
    z_polys = p.z_coefficients_at(pts)
    for b in range(grid_n):
        _, mod = stability_check_1d(z_polys[b], margin=margin)
        min_root_z = min(min_root_z, mod)

    stable = min_root_z > 1.0 + margin and min_root_w > 1.0 + margin
    return StabilityCertificate(stable, min_root_z, min_root_w, grid_n, margin)


def _inverse_spectrum_grid(p, fft_n):
    pts = circle_points(fft_n)
    vals = p.eval_grid(pts, pts)
    gram = np.einsum("abij,abkj->abik", vals, vals.conj())
    if p.d == 1:
        return 1.0 / gram
    return np.linalg.inv(gram)


def extend_covariance_2d(p, rect, fft_n=512, margin=1e-6, cert_grid_n=512):
    """Fourier coefficients of (p p^*)^{-1} over an index rectangle.

    The polynomial must pass the stability certificate first; extension from
    an uncertified polynomial is refused.  Coefficients are extracted by a
    2-D discrete Fourier transform on an fft_n x fft_n torus grid and
    Hermitian symmetry is enforced by averaging c[i, j] with c[-i, -j]^*.

    Returns a dict mapping (i, j) to d x d arrays.
    """
    cert = stability_check_2d(p, grid_n=cert_grid_n, margin=margin)
    if not cert.stable:
        raise Unstable(
            "cannot extend covariance from an uncertified polynomial "
            "(min root moduli %.6f / %.6f)" % (cert.min_root_z, cert.min_root_w)
        )
    f = _inverse_spectrum_grid(p, fft_n)
    chat = np.fft.fft2(f, axes=(0, 1)) / fft_n**2
    pairs = rect.pairs() if isinstance(rect, IndexRect) else list(rect)
    out = {}
    for (i, j) in pairs:
        a = chat[i % fft_n, j % fft_n]
        b = chat[(-i) % fft_n, (-j) % fft_n]
        out[(i, j)] = 0.5 * (a + b.conj().T)
    return out


def grid_from_filter(p, n=None, m=None, fft_n=512, margin=1e-6, cert_grid_n=512):
    """Correlation band of a stable filter, as a CorrelationGrid.

    Convenience wrapper over `extend_covariance_2d` restricted to the
    corner-free band of half-widths (n, m), defaulting to the filter's own
    degrees.
    """
    n = p.n if n is None else n
    m = p.m if m is None else m
    values = extend_covariance_2d(
        p, band_indices(n, m), fft_n=fft_n, margin=margin, cert_grid_n=cert_grid_n
    )
    return CorrelationGrid(p.d, n, m, values)


def _lower_block_toeplitz(blocks_by_offset, count, d):
    """(count x count) block lower triangular Toeplitz from offset -> block."""
    size = count * d
    out = np.zeros((size, size), dtype=complex)
    for off, blk in blocks_by_offset.items():
        for i in range(off, count):
            out[i * d : (i + 1) * d, (i - off) * d : (i - off + 1) * d] = blk
    return out


def inverse_formula_check(p, r, k, grid_n=128, fft_n=512):
    """Residual of the finite-section inverse identity on the circle.

    For each z on the circle grid the (k+1)-section Toeplitz matrix T_k(z)
    of the w-coefficient functions of f = (p p^*)^{-1} is assembled, along
    with the two-term product expression E_k(z) built from triangular
    stacks of the w-coefficients of p and r.  Returns
    max_z || T_k(z) E_k(z) - I ||.  Requires k >= m - 1.
    """
    if k < p.m - 1:
        raise ValueError("section index k must be at least m - 1")
    d = p.d
    zs = circle_points(grid_n)
    ws = circle_points(fft_n)
    vals = p.eval_grid(zs, ws)
    gram = np.einsum("abij,abkj->abik", vals, vals.conj())
    f_grid = 1.0 / gram if d == 1 else np.linalg.inv(gram)
    fw = np.fft.fft(f_grid, axis=1) / fft_n  # coefficient a at index a mod fft_n

    pw = p.w_coefficients_at(zs)
    rw = r.w_coefficients_at(zs)
    count = k + 1
    eye = np.eye(count * d)
    worst = 0.0
    for a in range(grid_n):
        t_k = np.zeros((count * d, count * d), dtype=complex)
        for i in range(count):
            for j in range(count):
                t_k[i * d : (i + 1) * d, j * d : (j + 1) * d] = fw[a, (i - j) % fft_n]
        ok, min_eig = pd_probe(t_k, 1e-13)
        if not ok:
            raise SingularSection(
                "Toeplitz section is numerically singular (min eig %.3e)" % min_eig
            )
        lower_p = _lower_block_toeplitz(
            {off: pw[a, off] for off in range(min(p.m, k) + 1)}, count, d
        )
        r_offsets = {}
        for off in range(count):
            widx = k + 1 - off  # block (i, j) holds r_{k+1+j-i}(z)^*, off = i - j
            if 0 <= widx <= r.m:
                r_offsets[off] = rw[a, widx].conj().T
        lower_r = _lower_block_toeplitz(r_offsets, count, d)
        e_k = lower_p @ lower_p.conj().T - lower_r @ lower_r.conj().T
        worst = max(worst, np.linalg.norm(t_k @ e_k - eye, 2))
    return worst


def _section_symbol(p, r, k):
    """z-coefficients of E_k(z) as a TrigMatrixPolynomial of block dim (k+1)d."""
    d = p.d
    n = p.n
    count = k + 1

    def l1(a):
        return _lower_block_toeplitz(
            {off: p.coeffs[a, off] for off in range(min(p.m, k) + 1)}, count, d
        )

    def l2(a):
        offsets = {}
        for off in range(count):
            widx = k + 1 - off
            if 0 <= widx <= r.m:
                offsets[off] = r.coeffs[a, widx].conj().T
        return _lower_block_toeplitz(offsets, count, d)

    l1s = [l1(a) for a in range(n + 1)]
    l2s = [l2(a) for a in range(n + 1)]
    blocks = []
    for c in range(n + 1):
        acc = np.zeros_like(l1s[0])
        for a in range(c, n + 1):
            acc += l1s[a] @ l1s[a - c].conj().T
        for a in range(0, n + 1 - c):
            acc += -(l2s[a] @ l2s[a + c].conj().T)
        blocks.append(acc)
    return TrigMatrixPolynomial.from_one_sided(blocks)


def nested_factor_check(p, r, k, tol=1e-8):
    """Deviation of successive section factors from the bordered form.

    The left stable factors M_k and M_{k+1} of the section symbols E_k and
    E_{k+1} are computed independently; M_{k+1} must equal the bordered
    matrix [[p_0(z), 0], [col(p_l(z)), M_k(z)]] up to the factor
    normalization.  Returns the max coefficientwise deviation.  Requires
    k >= m - 1.
    """
    if k < p.m - 1:
        raise ValueError("section index k must be at least m - 1")
    d = p.d
    m_k = left_stable_factor(_section_symbol(p, r, k), tol=tol)
    m_k1 = left_stable_factor(_section_symbol(p, r, k + 1), tol=tol)

    bordered = np.zeros_like(m_k1)
    for a in range(p.n + 1):
        bordered[a, :d, :d] = p.coeffs[a, 0]
        for l in range(1, k + 2):
            if l <= p.m:
                bordered[a, l * d : (l + 1) * d, :d] = p.coeffs[a, l]
        bordered[a, d:, d:] = m_k[a]
    bordered = normalize_left_factor(bordered)
    return float(np.max(np.abs(m_k1 - bordered)))
