"""Probe: structural correctness of the compressions via tiny-support symbols."""
import numpy as np
from bidisk import LittleHankelData, build_compressions, check_comm_2d

def resid(vals, N):
    g = LittleHankelData(1, np.asarray(vals, dtype=float), N)
    return check_comm_2d(*build_compressions(g))

print("w-only (g00=.3,g01=.2)  N=6 :", resid([[0.3, 0.2]], 6))
print("z-only (g00=.3,g10=.2)  N=6 :", resid([[0.3], [0.2]], 6))
print("corner (g00=.5)         N=6 :", resid([[0.5]], 6))
print("g11 only (=.3)          N=6 :", resid([[0.0, 0.0], [0.0, 0.3]], 6))
print("rank1 2x2 sep           N=6 :", resid(np.outer([0.5, 0.2], [0.5, 0.2]), 6))
print("rank1 2x2 sep           N=8 :", resid(np.outer([0.5, 0.2], [0.5, 0.2]), 8))

# where does the product deviate from the anchor compression?
g = LittleHankelData(1, np.outer([0.5, 0.2], [0.5, 0.2]), 6)
phi, phi1, phi2 = build_compressions(g)
X = phi1 @ np.linalg.solve(phi, phi2.conj().T)
Y = phi2.conj().T @ np.linalg.solve(phi, phi1)
D = np.abs(X - Y)
print("max dev:", D.max(), "at", np.unravel_index(D.argmax(), D.shape))
n = g.inner_n
# index maps of the row/col spaces of X (rows: S_A = NN0 x NN0 + (-N x -N))
rows = [(i1, i2) for i1 in range(n) for i2 in range(n)] + \
       [(j1, j2) for j1 in range(-n, 0) for j2 in range(-n, 0)]
r, c = np.unravel_index(D.argmax(), D.shape)
print("row idx", rows[r], "col idx", rows[c])
big = D > 0.5 * D.max()
locs = [(rows[a], rows[b]) for a, b in zip(*np.nonzero(big))]
print("large-deviation entries:", locs[:12])
