"""Probe: does the p11=0 filter share the separable grid's band?"""
import numpy as np
from bidisk import MatrixPolynomial2D, band_indices

def band_fft(p, n, m, N=1024):
    pts = np.exp(2j * np.pi * np.arange(N) / N)
    vals = p.eval_grid(pts, pts)[:, :, 0, 0]
    f = 1.0 / (np.abs(vals) ** 2)
    chat = np.fft.fft2(f) / N**2
    return {idx: chat[idx[0] % N, idx[1] % N].real for idx in band_indices(n, m)}

p_true = MatrixPolynomial2D.from_scalar([[1.0, -0.4], [-0.5, 0.2]])
p_alt = MatrixPolynomial2D.from_scalar([[1.0, -0.4375], [-0.3125, 0.0]])

b1 = band_fft(p_true, 1, 1)
b2 = band_fft(p_alt, 1, 1)
for idx in sorted(b1):
    print(idx, "true %.10f" % b1[idx], "alt %.10f" % b2[idx], "diff %.2e" % abs(b1[idx]-b2[idx]))

# scale-normalized comparison: the alt filter has a different c00 scale
s = b1[(0, 0)] / b2[(0, 0)]
print("scale-normalized diffs:", {idx: "%.2e" % abs(b1[idx] - s * b2[idx]) for idx in sorted(b1)})

# corner values of each
N = 1024
pts = np.exp(2j*np.pi*np.arange(N)/N)
for name, p in (("true", p_true), ("alt", p_alt)):
    vals = p.eval_grid(pts, pts)[:, :, 0, 0]
    f = 1.0/np.abs(vals)**2
    chat = np.fft.fft2(f)/N**2
    print(name, "c11 = %.10f  c-11 = %.10f" % (chat[1,1].real, chat[-1,1].real))
