"""Dense linear-algebra helpers shared across the library.

Everything here operates on plain complex numpy arrays.  Matrices that are
mathematically Hermitian are re-symmetrized before factorizations so that
round-off asymmetry never leaks into eigenvalue or Cholesky routines.
"""

import numpy as np
import scipy.linalg as la

from .errors import NotHermitian, NotPositiveDefinite


def as_block(value, dim=None):
    """Coerce a scalar or array-like to a square complex matrix."""
    arr = np.asarray(value, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (arr.shape,))
    if dim is not None and arr.shape != (dim, dim):
        raise ValueError("expected a %dx%d matrix, got %s" % (dim, dim, arr.shape))
    return arr


def hermitian_deviation(m):
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m - m.conj().T)))


def symmetrize(m):
    return 0.5 * (m + np.asarray(m).conj().T)


def check_hermitian(m, tol, what="matrix"):
    """Return the Hermitian part of ``m``; raise if the deviation exceeds tol."""
    dev = hermitian_deviation(m)
    scale = max(1.0, float(np.max(np.abs(m)))) if np.asarray(m).size else 1.0
    if dev > tol * scale:
        raise NotHermitian("%s deviates from Hermitian symmetry by %.3e" % (what, dev))
    return symmetrize(m)


def pd_probe(m, tol):
    """Smallest-eigenvalue test: PD iff min eig > tol * spectral norm.

    Returns (is_pd, min_eigenvalue).  The input is symmetrized first.
    """
    w = np.linalg.eigvalsh(symmetrize(m))
    min_eig = float(w[0])
    spec = float(max(abs(w[0]), abs(w[-1])))
    return min_eig > tol * spec, min_eig


def require_pd(m, tol=1e-10, what="matrix"):
    ok, mn = pd_probe(m, tol)
    if not ok:
        raise NotPositiveDefinite(
            "%s is not positive definite (min eigenvalue %.3e)" % (what, mn)
        )


def pd_factor(m, what="matrix"):
    """Cholesky factorization of a Hermitian PD matrix, as a cho_solve handle."""
    try:
        return la.cho_factor(symmetrize(m), lower=True)
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("%s is not positive definite" % what) from exc


def solve_pd(m, rhs, what="matrix"):
    """Solve m @ x = rhs for Hermitian positive definite m."""
    return la.cho_solve(pd_factor(m, what=what), rhs)


def lower_cholesky(m, what="matrix"):
    """Factor m = L @ L* with L lower triangular, positive diagonal."""
    try:
        return np.linalg.cholesky(symmetrize(m))
    except np.linalg.LinAlgError as exc:
        raise NotPositiveDefinite("%s is not positive definite" % what) from exc


def upper_cholesky(m, what="matrix"):
    """Factor m = U @ U* with U upper triangular, positive diagonal."""
    g = lower_cholesky(np.asarray(m)[::-1, ::-1], what=what)
    return g[::-1, ::-1]


def right_unitary_for_lower(m0):
    """Unitary u such that m0 @ u is lower triangular with positive diagonal."""
    m0 = np.asarray(m0, dtype=complex)
    ell = lower_cholesky(m0 @ m0.conj().T)
    return np.linalg.solve(m0, ell)


def right_unitary_for_hpd(m0):
    """Unitary u such that m0 @ u is Hermitian positive definite."""
    m0 = np.asarray(m0, dtype=complex)
    w, v = np.linalg.eigh(symmetrize(m0 @ m0.conj().T))
    h = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return np.linalg.solve(m0, h)


def left_unitary_for_hpd(m0):
    """Unitary u such that u @ m0 is Hermitian positive definite."""
    m0 = np.asarray(m0, dtype=complex)
    w, v = np.linalg.eigh(symmetrize(m0.conj().T @ m0))
    h = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    return h @ np.linalg.inv(m0)


def circle_points(n):
    """n equispaced points on the unit circle, starting at 1."""
    return np.exp(2j * np.pi * np.arange(n) / n)


def eval_matrix_poly(coeffs, z):
    """Evaluate sum_k coeffs[k] z^k; returns an array of shape (len(z), D, D)."""
    c = np.asarray(coeffs, dtype=complex)
    z = np.asarray(z, dtype=complex)
    powers = z[:, None] ** np.arange(c.shape[0])[None, :]
    return np.einsum("zk,kij->zij", powers, c)


def operator_norm(m):
    return float(np.linalg.norm(np.asarray(m), 2))


def max_abs(m):
    m = np.asarray(m)
    return float(np.max(np.abs(m))) if m.size else 0.0
