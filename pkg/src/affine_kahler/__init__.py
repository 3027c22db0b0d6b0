"""Curvature models with Kahler symmetry on R^(2*m_bar).

Classification of curvature-type tensors, the twelve-module orthogonal
decomposition of the admissible space, polynomial Kahler connections, and
realization of any admissible tensor as a curvature at the origin.
"""
from .connections import (
    AffineConnection,
    HolomorphyKind,
    HolomorphyType,
    ThetaField,
    connection_from_theta,
    curvature_at,
    holomorphy_type,
    linear_curvature_at_zero,
    nabla_j_residual,
    torsion_residual,
)
from .decomposition import (
    BilinearDecomposition,
    DimensionTable,
    WDecomposition,
    bilinear_decompose,
    bilinear_subspaces,
    computed_dimension_table,
    kahler_parity_subspaces,
    kahler_space_basis,
    module_dimension_table,
    w_project,
    w_subspaces,
)
from .errors import DomainViolation, InternalCheckFailure, SchemaViolation
from .linalg import (
    Subspace,
    complement_within,
    least_squares_solve,
    nullspace,
    orthonormalize,
)
from .polynomials import ComplexPoly, PolyScalar
from .realization import (
    CurvatureCoefficientMap,
    RealizationResult,
    curvature_coefficient_map,
    realize,
    split_components,
    theta_from_coefficients,
    verify_realization,
)
from .selfcheck import run_selftest
from .witnesses import run_witness_case, witness_suite, witness_theta
from .tensors import (
    DEFAULT_TOL,
    Bilinear2,
    SpaceConfig,
    SymmetryReport,
    Tensor4,
    TraceSet,
    apply_as_operator,
    classify_symmetries,
    j_parity_split,
    kahler_form,
    metric,
    ricci_traces,
    standard_complex_structure,
)

__all__ = [name for name in dir() if not name.startswith("_")]
