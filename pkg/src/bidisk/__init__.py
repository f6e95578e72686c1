"""Two-variable autoregressive filter design and truncated Nehari solvers.

The library decides solvability of the matrix-valued two-variable filter
problem from a finite correlation band, constructs the stable filter pair,
extends the covariance to the full plane, and solves truncated one- and
two-variable suboptimal Nehari problems, with sampled numerical certificates
throughout.
"""

from .ar1 import (
    Ar1Solution,
    BlockToeplitz1D,
    extend_covariance_1d,
    solve_yule_walker_left,
    solve_yule_walker_right,
    stability_check_1d,
)
from .ar2 import (
    FeasibilityReport,
    MatrixPolynomial2D,
    StabilityCertificate,
    check_conditions,
    design_filters,
    extend_covariance_2d,
    grid_from_filter,
    inverse_formula_check,
    nested_factor_check,
    stability_check_2d,
)
from .completion import Corner3x3, complete_center, corner_c_minus_nm, corner_c_nm
from .errors import (
    BidiskError,
    CommutationViolation,
    DegenerateDeterminant,
    IllConditioned,
    Infeasible,
    MissingIndex,
    NoConvergence,
    NormAtLeastOne,
    NotHermitian,
    NotPositiveDefinite,
    NotPositiveOnCircle,
    SingularSection,
    StructureViolation,
    Unstable,
)
from .grids import (
    BlockMatrix,
    CorrelationGrid,
    IndexRect,
    ValidationReport,
    band_indices,
    build_doubly_toeplitz,
    is_positive_definite,
    validate_grid,
)
from .nehari import (
    HankelData1D,
    LittleHankelData,
    Nehari2DSolution,
    NehariSolution1D,
    build_compressions,
    check_comm_2d,
    solve_nehari_1d,
    solve_nehari_2d,
)
from .spectral import TrigMatrixPolynomial, left_stable_factor, right_stable_factor

__version__ = "0.1.0"

__all__ = [
    "Ar1Solution",
    "BidiskError",
    "BlockMatrix",
    "BlockToeplitz1D",
    "CommutationViolation",
    "Corner3x3",
    "CorrelationGrid",
    "DegenerateDeterminant",
    "FeasibilityReport",
    "HankelData1D",
    "IllConditioned",
    "IndexRect",
    "Infeasible",
    "LittleHankelData",
    "MatrixPolynomial2D",
    "MissingIndex",
    "Nehari2DSolution",
    "NehariSolution1D",
    "NoConvergence",
    "NormAtLeastOne",
    "NotHermitian",
    "NotPositiveDefinite",
    "NotPositiveOnCircle",
    "SingularSection",
    "StabilityCertificate",
    "StructureViolation",
    "TrigMatrixPolynomial",
    "Unstable",
    "ValidationReport",
    "band_indices",
    "build_compressions",
    "build_doubly_toeplitz",
    "check_comm_2d",
    "check_conditions",
    "complete_center",
    "corner_c_minus_nm",
    "corner_c_nm",
    "design_filters",
    "extend_covariance_1d",
    "extend_covariance_2d",
    "grid_from_filter",
    "inverse_formula_check",
    "is_positive_definite",
    "left_stable_factor",
    "nested_factor_check",
    "right_stable_factor",
    "solve_nehari_1d",
    "solve_nehari_2d",
    "solve_yule_walker_left",
    "solve_yule_walker_right",
    "stability_check_1d",
    "stability_check_2d",
    "validate_grid",
]
