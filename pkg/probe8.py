"""Probe: which little-Hankel families satisfy the commutation condition."""
import numpy as np
from bidisk import LittleHankelData, build_compressions, check_comm_2d, solve_nehari_2d
from bidisk.nehari import solve_nehari_1d, HankelData1D

# 1. w-only scalar data: gamma[0, t] = 0.3 * 0.45^t
K = 14
vals = np.zeros((K + 1, K + 1))
vals[0, :] = 0.3 * 0.45 ** np.arange(K + 1)
g = LittleHankelData(1, vals, 6)
print("w-only comm residual:", check_comm_2d(*build_compressions(g)))
sol = solve_nehari_2d(g, 4)
print("w-only: hankel dev %.2e toeplitz dev %.2e sup %.4f" %
      (sol.hankel_deviation, sol.toeplitz_deviation, sol.sup_norm))
# cross-check against plain 1d solve of the same sequence
h1 = HankelData1D(1, 1, tuple(np.array([[v]]) for v in vals[0]), 6)
sol1 = solve_nehari_1d(h1, 4)
for j in range(1, 5):
    a = sol.extension[(0, -j)][0, 0]
    b = sol1.extension[j - 1][0, 0]
    print("  j=-%d: 2d %.8f vs 1d %.8f  (diff %.1e)" % (j, a.real, b.real, abs(a - b)))
print("  off-axis max:", max(abs(v[0, 0]) for (i, jj), v in sol.extension.items() if i != 0))

# 2. z-only scalar data
vals2 = np.zeros((K + 1, K + 1))
vals2[:, 0] = 0.3 * 0.45 ** np.arange(K + 1)
g2 = LittleHankelData(1, vals2, 6)
print("z-only comm residual:", check_comm_2d(*build_compressions(g2)))

# 3. d=2 operator data: gamma[s,0] = u_s E11, gamma[0,t] = v_t E22 (t>=1)
d = 2
vals3 = np.zeros((K + 1, K + 1, d, d))
for s in range(K + 1):
    vals3[s, 0, 0, 0] = 0.4 * 0.5 ** s
for t in range(1, K + 1):
    vals3[0, t, 1, 1] = 0.35 * 0.5 ** t
g3 = LittleHankelData(2, vals3, 6)
phi3, p13, p23 = build_compressions(g3)
print("d=2 structured comm residual:", check_comm_2d(phi3, p13, p23))
sol3 = solve_nehari_2d(g3, 3)
print("d=2: hankel dev %.2e toeplitz dev %.2e sup %.4f" %
      (sol3.hankel_deviation, sol3.toeplitz_deviation, sol3.sup_norm))

# 4. separable with loose gate: what do the certificates look like?
def sep_gamma(K, c=0.3, a=0.4, b=0.4):
    i = np.arange(K + 1)
    return c * np.outer(a ** i, b ** i)
gs = LittleHankelData(1, sep_gamma(12), 6)
try:
    sols = solve_nehari_2d(gs, 4, tol=1e-1)
    print("separable(loose): hankel dev %.2e  sup %.4f  claim zeros %.2e / %.2e" %
          (sols.hankel_deviation, sols.sup_norm, sols.claim_zero_d, sols.claim_zero_a))
except Exception as exc:
    print("separable(loose) raised:", type(exc).__name__, exc)

# 5. nonseparable two-corner pattern
vals5 = np.zeros((2, 2)); vals5[0, 0] = 0.3; vals5[1, 1] = 0.25
print("g00=.3,g11=.25 comm residual:", check_comm_2d(*build_compressions(LittleHankelData(1, vals5, 6))))
