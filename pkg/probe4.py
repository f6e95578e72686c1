"""Probe: entry structure of phi1 inv(phi) phi2^* on a consistent window-2 grid."""
import numpy as np
from bidisk import IndexRect, MatrixPolynomial2D, grid_from_filter
from bidisk.grids import assemble_block_matrix

p = MatrixPolynomial2D.from_scalar([[1.0, -0.4], [-0.5, 0.2]])  # separable generator
n = m = 2
g = grid_from_filter(p, n=n, m=m, fft_n=1024)

# true coefficients incl. all corners, from closed form
def true_c(i, j):
    return 0.5 ** abs(i) * 0.4 ** abs(j) / (0.75 * 0.84)

inner = IndexRect(0, n - 1, 0, m - 1).pairs()
phi = assemble_block_matrix(g.entries, inner, inner, 1)
phi1 = assemble_block_matrix(g.entries, inner, IndexRect(1, n, 0, m - 1).pairs(), 1)
phi2 = assemble_block_matrix(g.entries, inner, IndexRect(0, n - 1, 1, m).pairs(), 1)
prod = phi1 @ np.linalg.solve(phi, phi2.conj().T)

worst = 0.0
for a, (k1, k2) in enumerate(inner):
    for b, (q1, q2) in enumerate(inner):
        claim = true_c(k1 - q1 - 1, k2 - q2 + 1)
        worst = max(worst, abs(prod[a, b] - claim))
print("max |prod - c[k1-k1'-1, k2-k2'+1]| =", worst)
pos_row = inner.index((0, m - 1))
pos_col = inner.index((n - 1, 0))
print("corner entry:", prod[pos_row, pos_col].real, " true c[-2,2]:", true_c(-2, 2))
