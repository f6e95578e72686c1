"""Positive definite completion of 3x3 block matrices and band corners.

The central completion of a partially specified 3x3 positive definite block
matrix fixes the unknown corner block so that the (1,3) block of the inverse
vanishes.  Both forced corner coefficients of a correlation band are
instances of this completion.
"""

from dataclasses import dataclass

import numpy as np

from .grids import IndexRect, assemble_block_matrix
from .linalg import require_pd, solve_pd


@dataclass(frozen=True)
class Corner3x3:
    """Data [[a, b, X], [b*, c, d], [X*, d*, e]] with X to be completed.

    The two nested principal blocks [[a, b], [b*, c]] and [[c, d], [d*, e]]
    must be Hermitian positive definite for a completion to exist.
    """

    a: np.ndarray
    b: np.ndarray
    c: np.ndarray
    d: np.ndarray
    e: np.ndarray

    def __post_init__(self):
        for name in "abcde":
            object.__setattr__(
                self, name, np.atleast_2d(np.asarray(getattr(self, name), dtype=complex))
            )
        pa, qa = self.a.shape[0], self.c.shape[0]
        ra = self.e.shape[0]
        if self.b.shape != (pa, qa) or self.d.shape != (qa, ra):
            raise ValueError("incompatible block dimensions")

    def upper_left(self):
        return np.block([[self.a, self.b], [self.b.conj().T, self.c]])

    def lower_right(self):
        return np.block([[self.c, self.d], [self.d.conj().T, self.e]])

    def assemble(self, x):
        x = np.atleast_2d(np.asarray(x, dtype=complex))
        return np.block(
            [
                [self.a, self.b, x],
                [self.b.conj().T, self.c, self.d],
                [x.conj().T, self.d.conj().T, self.e],
            ]
        )


def complete_center(corner, tol=1e-10):
    """Central completion X0 = b @ inv(c) @ d of a 3x3 block corner.

    X0 is the unique choice making the completed matrix positive definite
    with a vanishing (1,3) block in its inverse.
    """
    require_pd(corner.upper_left(), tol, "upper-left 2x2 block")
    require_pd(corner.lower_right(), tol, "lower-right 2x2 block")
    return corner.b @ solve_pd(corner.c, corner.d, what="center block")


def corner_c_minus_nm(grid, tol=1e-10):
    """Forced value of the band corner coefficient c[-n, m].

    The interior of the band determines this corner uniquely as the extreme
    entry of the product of the two shifted compressions against the inverse
    of the interior matrix: row @ inv(Phi) @ col, where Phi is the doubly
    Toeplitz matrix over {0..n-1} x {0..m-1}, the row collects c[k - l] for
    k = (0, m-1) and l in {1..n} x {0..m-1}, and the column collects
    c[k - l]^* for k = (n-1, 0) and l in {0..n-1} x {1..m}.
    """
    n, m, d = grid.n, grid.m, grid.d
    inner = IndexRect(0, n - 1, 0, m - 1).pairs()
    phi = assemble_block_matrix(grid.entries, inner, inner, d)
    require_pd(phi, tol, "interior doubly Toeplitz matrix")

    row = np.hstack(
        [grid.coefficient(-l1, m - 1 - l2) for (l1, l2) in IndexRect(1, n, 0, m - 1).pairs()]
    )
    col = np.vstack(
        [
            grid.coefficient(n - 1 - l1, -l2).conj().T
            for (l1, l2) in IndexRect(0, n - 1, 1, m).pairs()
        ]
    )
    return row @ solve_pd(phi, col, what="interior doubly Toeplitz matrix")


def corner_c_nm(grid, c_minus_nm, tol=1e-10):
    """Value of c[n, m] that zeroes the top-degree filter coefficient.

    With c[-n, m] installed (and c[n, -m] = c[-n, m]^*), this is the central
    completion of the full rectangle {0..n} x {0..m} partitioned as
    {(0,0)} | middle | {(n,m)}: a Schur-type product of the boundary row,
    the inverse of the punctured doubly Toeplitz matrix, and the boundary
    column.
    """
    n, m, d = grid.n, grid.m, grid.d
    lookup = dict(grid.entries)
    lookup[(-n, m)] = np.asarray(c_minus_nm, dtype=complex)
    lookup[(n, -m)] = lookup[(-n, m)].conj().T

    full = IndexRect(0, n, 0, m).pairs()
    middle = [p for p in full if p not in ((0, 0), (n, m))]
    center = assemble_block_matrix(lookup, middle, middle, d)
    require_pd(center, tol, "punctured doubly Toeplitz matrix")

    row = np.hstack([lookup[(n - l1, m - l2)] for (l1, l2) in middle])
    col = np.vstack([lookup[(k1, k2)] for (k1, k2) in middle])
    return row @ solve_pd(center, col, what="punctured doubly Toeplitz matrix")
