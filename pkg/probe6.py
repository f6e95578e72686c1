"""Probe: compare both truncated products against the anchor compression pattern."""
import numpy as np
from bidisk import LittleHankelData, build_compressions

g = LittleHankelData(1, np.outer([0.5, 0.2], [0.5, 0.2]), 6)
n = g.inner_n
phi, phi1, phi2 = build_compressions(g)
X = phi1 @ np.linalg.solve(phi, phi2.conj().T)
Y = phi2.conj().T @ np.linalg.solve(phi, phi1)

def gam(i, j):
    if 0 <= i <= g.support and 0 <= j <= g.support:
        return g.values[i, j, 0, 0]
    return 0.0

# anchor: R over rows (N0 x N  |  -N x -N0), cols (N x N0  |  -N0 x -N)
rows = [(i1, i2) for i1 in range(0, n) for i2 in range(1, n + 1)] + \
       [(j1, j2) for j1 in range(-n, 0) for j2 in range(-(n - 1), 1)]
cols = [(i1, i2) for i1 in range(1, n + 1) for i2 in range(0, n)] + \
       [(j1, j2) for j1 in range(-(n - 1), 1) for j2 in range(-n, 0)]
half = n * n
R = np.zeros((2 * half, 2 * half), dtype=complex)
for a, ra in enumerate(rows):
    for b, cb in enumerate(cols):
        if a < half and b < half:
            R[a, b] = 1.0 if ra == cb else 0.0
        elif a < half <= b:
            R[a, b] = gam(ra[0] - cb[0], ra[1] - cb[1])
        elif b < half <= a:
            R[a, b] = np.conj(gam(cb[0] - ra[0], cb[1] - ra[1]))
        else:
            R[a, b] = 1.0 if ra == cb else 0.0

print("||X - R||_max:", np.max(np.abs(X - R)))
print("||Y - R||_max:", np.max(np.abs(Y - R)))
dX = np.abs(X - R); dY = np.abs(Y - R)
print("X deviations > 1e-10 at:", [(rows[a], cols[b], round(float(dX[a,b]),5))
      for a, b in zip(*np.nonzero(dX > 1e-10))][:8])
print("Y deviations > 1e-10 at:", [(rows[a], cols[b], round(float(dY[a,b]),5))
      for a, b in zip(*np.nonzero(dY > 1e-10))][:8])
print("X[0,0]:", X[0,0], " Y[0,0]:", Y[0,0], " R[0,0]:", R[0,0])
