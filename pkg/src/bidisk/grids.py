"""Correlation bands and doubly Toeplitz block matrices.

A two-variable correlation band stores d x d coefficients c[i, j] over the
index band {-n..n} x {-m..m} with the four extreme corners (+/-n, +/-m)
removed.  Coefficients obey the symmetry c[-i, -j] = c[i, j]^*.  Block
matrices indexed by integer pairs use a fixed lexicographic layout, first
coordinate major, which every other module inherits.
"""

from dataclasses import dataclass
from typing import Mapping, Optional, Tuple

import numpy as np

from .errors import MissingIndex, NotHermitian
from .linalg import as_block, hermitian_deviation, max_abs, pd_probe


def band_indices(n, m):
    """All pairs of {-n..n} x {-m..m} with the four corners removed, lex order."""
    return [
        (i, j)
        for i in range(-n, n + 1)
        for j in range(-m, m + 1)
        if (abs(i), abs(j)) != (n, m)
    ]


def band_corners(n, m):
    return [(n, m), (-n, m), (n, -m), (-n, -m)]


@dataclass(frozen=True)
class CorrelationGrid:
    """Correlation coefficients c[i, j] on the corner-free band.

    Parameters
    ----------
    d : int
        Dimension of each coefficient block.
    n, m : int
        Band half-widths in the two variables.
    entries : mapping
        (i, j) -> d x d complex matrix.  The constructor coerces values and
        freezes them; structural completeness is checked by `validate_grid`,
        not here, so that broken documents can still be loaded and reported.
    """

    d: int
    n: int
    m: int
    entries: Mapping[Tuple[int, int], np.ndarray]

    def __post_init__(self):
        if self.d < 1 or self.n < 1 or self.m < 1:
            raise ValueError("d, n, m must all be positive")
        coerced = {}
        for key, value in self.entries.items():
            i, j = key
            arr = as_block(value, self.d)
            arr.setflags(write=False)
            coerced[(int(i), int(j))] = arr
        object.__setattr__(self, "entries", coerced)

    def coefficient(self, i, j):
        try:
            return self.entries[(i, j)]
        except KeyError:
            raise MissingIndex((i, j)) from None

    @classmethod
    def from_function(cls, d, n, m, fn):
        """Build a grid by evaluating ``fn(i, j)`` over the corner-free band."""
        return cls(d, n, m, {idx: fn(*idx) for idx in band_indices(n, m)})


@dataclass(frozen=True)
class IndexRect:
    """Ordered integer rectangle [i_lo..i_hi] x [j_lo..j_hi].

    Pairs are ordered lexicographically with the first coordinate major:
    position((k1, k2)) = (k1 - i_lo) * (j_hi - j_lo + 1) + (k2 - j_lo).
    """

    i_lo: int
    i_hi: int
    j_lo: int
    j_hi: int

    def __post_init__(self):
        if self.i_hi < self.i_lo or self.j_hi < self.j_lo:
            raise ValueError("empty index rectangle")

    @property
    def i_count(self):
        return self.i_hi - self.i_lo + 1

    @property
    def j_count(self):
        return self.j_hi - self.j_lo + 1

    def __len__(self):
        return self.i_count * self.j_count

    def __contains__(self, pair):
        k1, k2 = pair
        return self.i_lo <= k1 <= self.i_hi and self.j_lo <= k2 <= self.j_hi

    def pairs(self):
        return [
            (k1, k2)
            for k1 in range(self.i_lo, self.i_hi + 1)
            for k2 in range(self.j_lo, self.j_hi + 1)
        ]

    def position(self, pair):
        if pair not in self:
            raise ValueError("pair %s outside rectangle %s" % (pair, self))
        k1, k2 = pair
        return (k1 - self.i_lo) * self.j_count + (k2 - self.j_lo)


@dataclass(frozen=True)
class BlockMatrix:
    """Dense complex matrix whose block rows/columns are indexed by rectangles."""

    row_rect: IndexRect
    col_rect: IndexRect
    d: int
    data: np.ndarray

    def __post_init__(self):
        expected = (len(self.row_rect) * self.d, len(self.col_rect) * self.d)
        data = np.asarray(self.data, dtype=complex)
        if data.shape != expected:
            raise ValueError("data shape %s, expected %s" % (data.shape, expected))
        object.__setattr__(self, "data", data)

    def block(self, row_pair, col_pair):
        a = self.row_rect.position(row_pair) * self.d
        b = self.col_rect.position(col_pair) * self.d
        return self.data[a : a + self.d, b : b + self.d]


def assemble_block_matrix(lookup, row_pairs, col_pairs, d):
    """Dense block matrix with block (k, l) = lookup[k - l].

    Raises MissingIndex when a required difference is absent from ``lookup``.
    """
    data = np.zeros((len(row_pairs) * d, len(col_pairs) * d), dtype=complex)
    for a, k in enumerate(row_pairs):
        for b, l in enumerate(col_pairs):
            diff = (k[0] - l[0], k[1] - l[1])
            try:
                blk = lookup[diff]
            except KeyError:
                raise MissingIndex(diff) from None
            data[a * d : (a + 1) * d, b * d : (b + 1) * d] = blk
    return data


def build_doubly_toeplitz(grid, rows, cols):
    """Block matrix (c[k - l]) over the given row/column rectangles.

    The result is doubly Toeplitz by construction: constant along block
    diagonals in the outer (first-coordinate) layer, and each block layer is
    again Toeplitz in the second coordinate.
    """
    data = assemble_block_matrix(grid.entries, rows.pairs(), cols.pairs(), grid.d)
    return BlockMatrix(rows, cols, grid.d, data)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of structural validation of a correlation grid."""

    hermitian_deviation: float
    worst_pair: Optional[Tuple[int, int]]
    missing: Tuple[Tuple[int, int], ...]
    extra: Tuple[Tuple[int, int], ...]
    c00_min_eig: float
    c00_is_pd: bool
    valid: bool


def validate_grid(grid, tol=1e-10):
    """Check band completeness, Hermitian symmetry, and positivity of c[0, 0].

    Symmetry is reported as the largest entrywise deviation
    |c[-i, -j] - c[i, j]^*| over stored pairs.  The grid is valid when the
    band is exactly the corner-free rectangle, the deviation is within
    tol * scale, and c[0, 0] is positive definite at tolerance ``tol``.
    """
    expected = set(band_indices(grid.n, grid.m))
    present = set(grid.entries)
    missing = tuple(sorted(expected - present))
    extra = tuple(sorted(present - expected))

    scale = max(1.0, max((max_abs(v) for v in grid.entries.values()), default=0.0))
    worst = 0.0
    worst_pair = None
    for (i, j), value in grid.entries.items():
        partner = grid.entries.get((-i, -j))
        if partner is None:
            continue
        dev = float(np.max(np.abs(partner - value.conj().T)))
        if dev > worst:
            worst = dev
            worst_pair = (i, j)

    c00 = grid.entries.get((0, 0))
    if c00 is None:
        c00_ok, c00_min = False, float("nan")
    elif hermitian_deviation(c00) > tol * scale:
        c00_ok, c00_min = False, float("nan")
    else:
        c00_ok, c00_min = pd_probe(c00, tol)

    valid = not missing and not extra and worst <= tol * scale and c00_ok
    return ValidationReport(worst, worst_pair, missing, extra, c00_min, c00_ok, valid)


def is_positive_definite(matrix, tol=1e-10):
    """Positive definiteness test with an explicit spectral margin.

    Accepts a BlockMatrix or a plain square array.  Returns
    (is_pd, min_eigenvalue) where the verdict is min eig > tol * ||M||.
    Raises NotHermitian when the asymmetry exceeds tol (relative).
    """
    data = matrix.data if isinstance(matrix, BlockMatrix) else np.asarray(matrix, dtype=complex)
    if data.ndim != 2 or data.shape[0] != data.shape[1]:
        raise ValueError("expected a square matrix")
    dev = hermitian_deviation(data)
    scale = max(1.0, max_abs(data))
    if dev > tol * scale:
        raise NotHermitian("matrix deviates from Hermitian symmetry by %.3e" % dev)
    return pd_probe(data, tol)
