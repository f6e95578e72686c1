"""Probe: N-dependence of the distinguished-entry deviation, geometric family."""
import numpy as np
from bidisk import LittleHankelData, build_compressions, check_comm_2d

def sep_gamma(K, c=0.3, a=0.4, b=0.4):
    i = np.arange(K + 1)
    return c * np.outer(a ** i, b ** i)

for N in (4, 6, 8, 10, 12, 16, 20):
    g = LittleHankelData(1, sep_gamma(2 * N), N)
    phi, phi1, phi2 = build_compressions(g)
    X = phi1 @ np.linalg.solve(phi, phi2.conj().T)
    Y = phi2.conj().T @ np.linalg.solve(phi, phi1)
    dev = np.max(np.abs(X - Y))
    rel = check_comm_2d(phi, phi1, phi2)
    print("N=%2d  max-entry |X-Y| = %.3e   relative fro = %.3e" % (N, dev, rel))
