"""Scratch probe of core numerics (not part of the deliverable)."""
import numpy as np

from bidisk import (
    BlockToeplitz1D, CorrelationGrid, IndexRect, TrigMatrixPolynomial,
    band_indices, check_conditions, corner_c_minus_nm, corner_c_nm,
    design_filters, extend_covariance_2d, grid_from_filter,
    inverse_formula_check, left_stable_factor, nested_factor_check,
    right_stable_factor, solve_yule_walker_left, solve_yule_walker_right,
    stability_check_1d, stability_check_2d, extend_covariance_1d,
    MatrixPolynomial2D,
)

def separable_c(i, j):
    return np.array([[0.5 ** abs(i) * 0.4 ** abs(j) / (0.75 * 0.84)]], dtype=complex)

def separable_grid(n=1, m=1):
    return CorrelationGrid(1, n, m, {idx: separable_c(*idx) for idx in band_indices(n, m)})

# --- 1. corner formulas on separable grid
g = separable_grid()
c = corner_c_minus_nm(g)
print("corner -nm:", c[0, 0], "expected", 0.2 / 0.63, "err", abs(c[0,0] - 0.2/0.63))
cnm = corner_c_nm(g, c)
print("corner +nm:", cnm[0, 0], "err", abs(cnm[0,0] - 0.2/0.63))

# --- 2. check_conditions + design on separable
rep = check_conditions(g)
print("separable feasible:", rep.feasible, "comm:", rep.comm_residual,
      "eigs:", rep.pd_min_eig_1, rep.pd_min_eig_2)
p, r = design_filters(g)
print("p table:\n", p.scalar_table())
print("r table:\n", r.scalar_table())
truth = np.array([[1, -0.4], [-0.5, 0.2]])
print("p err:", np.max(np.abs(p.scalar_table() / p.scalar_table()[0,0] - truth)))

# --- 3. 1-var YW
t = BlockToeplitz1D.from_one_sided([np.array([[1.0]]), np.array([[0.5]])])
left = solve_yule_walker_left(t)
print("P:", [float(x.real) for x in np.ravel(left.prediction)],
      "R:", [float(x.real) for x in np.ravel(left.coeffs)])
right = solve_yule_walker_right(t)
print("Q:", [float(x.real) for x in np.ravel(right.prediction)],
      "S:", [float(x.real) for x in np.ravel(right.coeffs)])
ext = extend_covariance_1d(t, 10)
print("ext err:", max(abs(e[0,0] - 0.5**r) for r, e in zip(range(2, 11), ext)))
print("stab 1-0.5z:", stability_check_1d(np.array([[[1.]],[[-0.5]]])))

# --- 4. Bauer
a = TrigMatrixPolynomial.from_one_sided([np.array([[1.25]]), np.array([[-0.5]])])
mfac = left_stable_factor(a)
print("bauer:", np.ravel(mfac).real, "err", np.max(np.abs(mfac - np.array([[[1.0]], [[-0.5]]]))))
nfac = right_stable_factor(a)
print("right:", np.ravel(nfac).real)

# --- 5. grid from p = 1 - 0.3z - 0.3w, design round-trip
p03 = MatrixPolynomial2D.from_scalar(np.array([[1.0, -0.3], [-0.3, 0.0]]))
g03 = grid_from_filter(p03, fft_n=512)
rep03 = check_conditions(g03)
print("p03 comm residual:", rep03.comm_residual, "feasible", rep03.feasible)
pd03, rd03 = design_filters(g03)
print("p03 recovery err:",
      np.max(np.abs(pd03.scalar_table()/pd03.scalar_table()[0,0] - p03.scalar_table())))

# --- 6. inverse formula + nested factor on separable design
print("invformula sep k=0:", inverse_formula_check(p, r, 0, grid_n=64))
print("invformula sep k=1:", inverse_formula_check(p, r, 1, grid_n=64))
print("invformula sep k=2:", inverse_formula_check(p, r, 2, grid_n=64))
print("invformula p03 k=1:", inverse_formula_check(pd03, rd03, 1, grid_n=64))
print("invformula p03 k=2:", inverse_formula_check(pd03, rd03, 2, grid_n=64))
print("nested sep k=0:", nested_factor_check(p, r, 0))
print("nested sep k=1:", nested_factor_check(p, r, 1))
print("nested p03 k=1:", nested_factor_check(pd03, rd03, 1))

# --- 7. two-sided identity p/r
pts = np.exp(2j*np.pi*np.arange(256)/256)
PV = p.eval_grid(pts, pts); RV = r.eval_grid(pts, pts)
fp = 1.0/np.einsum("abij,abkj->abik", PV, PV.conj())
fr_ = 1.0/np.einsum("abji,abjk->abik", RV.conj(), RV)
print("two-sided identity:", np.max(np.abs(fp - fr_)))
