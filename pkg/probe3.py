"""Probe: design band round-trip, enlarged-window recovery, nehari numerics."""
import time
import numpy as np

from bidisk import (
    CorrelationGrid, HankelData1D, LittleHankelData, MatrixPolynomial2D,
    band_indices, build_compressions, check_comm_2d, check_conditions,
    design_filters, extend_covariance_2d, grid_from_filter, solve_nehari_1d,
    solve_nehari_2d, stability_check_2d,
)

def separable_c(i, j):
    return 0.5 ** abs(i) * 0.4 ** abs(j) / (0.75 * 0.84)

def separable_grid(n=1, m=1):
    return CorrelationGrid(1, n, m, {idx: [[separable_c(*idx)]] for idx in band_indices(n, m)})

# --- A. designed filter reproduces its own band (n=m=1, canonical corner)
g = separable_grid()
p, r = design_filters(g)
ext = extend_covariance_2d(p, band_indices(1, 1), fft_n=512)
err = max(abs(ext[idx][0, 0] - separable_c(*idx)) for idx in band_indices(1, 1))
print("A. band round-trip err (n=m=1):", err, " p11:", abs(p.coefficient(1, 1)[0, 0]))

# --- B. enlarged window (n=m=2) recovers the true generator exactly
g2 = separable_grid(2, 2)
rep2 = check_conditions(g2)
print("B. window-2 feasible:", rep2.feasible, "comm:", rep2.comm_residual)
p2, r2 = design_filters(g2)
tab = p2.scalar_table() / p2.scalar_table()[0, 0]
truth = np.zeros((3, 3), dtype=complex)
truth[0, 0], truth[0, 1], truth[1, 0], truth[1, 1] = 1, -0.4, -0.5, 0.2
print("B. window-2 recovery err:", np.max(np.abs(tab - truth)))

# --- C. infeasibility: perturbed p03 band at window n=m=2
p03 = MatrixPolynomial2D.from_scalar([[1.0, -0.3], [-0.3, 0.0]])
g03w2 = grid_from_filter(p03, n=2, m=2, fft_n=512)
ent = dict(g03w2.entries)
ent[(1, 0)] = ent[(1, 0)] + 0.05
ent[(-1, 0)] = ent[(-1, 0)] + 0.05
bad = CorrelationGrid(1, 2, 2, ent)
repb = check_conditions(bad)
print("C. perturbed comm residual:", repb.comm_residual, "feasible:", repb.feasible)

# --- D. stability examples
ptest = MatrixPolynomial2D.from_scalar([[1.0, -0.4], [-0.5, 0.2]])
cert = stability_check_2d(ptest, grid_n=128)
print("D. (1-0.5z)(1-0.4w):", cert.stable, cert.min_root_z, cert.min_root_w)
pzw = MatrixPolynomial2D.from_scalar([[1.0, 0.0], [0.0, -1.0]])
cert2 = stability_check_2d(pzw, grid_n=64)
print("D. 1-zw:", cert2.stable, cert2.min_root_z, cert2.min_root_w)

# --- E. extension closed form on rect {-3..3}^2
rect = [(i, j) for i in range(-3, 4) for j in range(-3, 4)]
extv = extend_covariance_2d(ptest, rect, fft_n=512)
errE = max(abs(extv[idx][0, 0] - separable_c(*idx)) for idx in rect)
print("E. extension closed-form err:", errE)

# --- F. nehari 1d: gamma0 = 0.5
h = HankelData1D(1, 1, (np.array([[0.5]]),), 20)
sol = solve_nehari_1d(h, 5)
print("F. delta0:", sol.delta0[0, 0], "ext:", [abs(e[0, 0]) for e in sol.extension[:3]],
      "mismatch:", sol.mismatch, "gap:", sol.convergence_gap)

# --- G. nehari 1d: (0.3, 0.2) at N=40
h2 = HankelData1D(1, 1, (np.array([[0.3]]), np.array([[0.2]])), 40)
sol2 = solve_nehari_1d(h2, 10)
print("G. norm:", sol2.hankel_norm, "mismatch:", sol2.mismatch, "gap:", sol2.convergence_gap)
print("G. ext[:4]:", [round(float(e[0, 0].real), 8) for e in sol2.extension[:4]])
sup = np.max(np.abs(sum(
    (0.3 if k == 0 else 0.2 if k == 1 else 0) * np.exp(2j * np.pi * k * np.arange(1024) / 1024)
    for k in range(2)
) + sum(sol2.extension[j - 1][0, 0] * np.exp(-2j * np.pi * j * np.arange(1024) / 1024)
        for j in range(1, 11))))
print("G. 1d sup norm:", sup)

# --- H. 2d compressions: gamma00 = 0.5 only
g05 = LittleHankelData(1, np.array([[0.5]]), 3)
phi, phi1, phi2 = build_compressions(g05)
print("H. phi == I:", np.allclose(phi, np.eye(phi.shape[0])), "comm:",
      check_comm_2d(phi, phi1, phi2))
t0 = time.perf_counter()
sol05 = solve_nehari_2d(LittleHankelData(1, np.array([[0.5]]), 6), 4)
print("H. gamma00=0.5 solve: sup:", sol05.sup_norm,
      "ext max:", max(abs(v[0, 0]) for v in sol05.extension.values()),
      "t=%.2fs" % (time.perf_counter() - t0))

# --- I. 2d separable comm residual at N=6 and N=12
def sep_gamma(K):
    vals = np.zeros((K + 1, K + 1))
    for i in range(K + 1):
        for j in range(K + 1):
            vals[i, j] = 0.3 * 0.4 ** (i + j)
    return vals

for N in (6, 12):
    gsep = LittleHankelData(1, sep_gamma(2 * N), N)
    ph, p1, p2_ = build_compressions(gsep)
    t0 = time.perf_counter()
    resid = check_comm_2d(ph, p1, p2_)
    print("I. separable comm residual N=%d: %.3e  (%.2fs, size %d)"
          % (N, resid, time.perf_counter() - t0, ph.shape[0]))

# --- J. 2d separable full solve N=6, J=4
t0 = time.perf_counter()
gsep = LittleHankelData(1, sep_gamma(12), 6)
sol_sep = solve_nehari_2d(gsep, 4)
print("J. separable: comm %.2e  zeros D %.2e A %.2e  hankel dev %.2e  toeplitz dev %.2e  sup %.4f  (%.1fs)"
      % (sol_sep.comm_residual, sol_sep.claim_zero_d, sol_sep.claim_zero_a,
         sol_sep.hankel_deviation, sol_sep.toeplitz_deviation, sol_sep.sup_norm,
         time.perf_counter() - t0))

# --- K. non-separable pattern gamma00=0.3, gamma11=0.25
vals = np.zeros((2, 2)); vals[0, 0] = 0.3; vals[1, 1] = 0.25
gns = LittleHankelData(1, vals, 6)
ph, p1, p2_ = build_compressions(gns)
print("K. nonseparable comm residual:", check_comm_2d(ph, p1, p2_))
