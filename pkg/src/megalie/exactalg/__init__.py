"""Exact rational linear algebra and Lie algebras given by structure constants."""

from .closure import (
    ClosureResult,
    StabilityEntry,
    megaideal_closure,
    stability_report,
    truncation_pattern,
)
from .io import FormatError, dump_algebra, dump_matrix, load_algebra, load_matrix
from .lie import (
    AntisymmetryError,
    JacobiError,
    LieAlgebra,
    LieAlgebraError,
    bracket_element,
    bracket_subspace,
    center,
    center_of,
    centralizer,
    commutator_stabilizer,
    derived_series,
    is_semisimple,
    killing_form,
    lower_central_series,
    radical,
    subalgebra,
    upper_central_series,
)
from .linalg import (
    DimensionError,
    Subspace,
    det,
    nullspace,
    rank,
    rref,
    subspace_intersect,
    subspace_sum,
)
from .maps import (
    ConstraintCoefficients,
    ConstraintSchemaError,
    ConstraintViolation,
    LinearMap,
    MapCheck,
    extract_constraint_coefficients,
    is_automorphism,
    is_homomorphism,
    preserves_subspace,
)

__all__ = [
    "AntisymmetryError",
    "ClosureResult",
    "ConstraintCoefficients",
    "ConstraintSchemaError",
    "ConstraintViolation",
    "DimensionError",
    "FormatError",
    "JacobiError",
    "LieAlgebra",
    "LieAlgebraError",
    "LinearMap",
    "MapCheck",
    "StabilityEntry",
    "Subspace",
    "bracket_element",
    "bracket_subspace",
    "center",
    "center_of",
    "centralizer",
    "commutator_stabilizer",
    "derived_series",
    "det",
    "dump_algebra",
    "dump_matrix",
    "extract_constraint_coefficients",
    "is_automorphism",
    "is_homomorphism",
    "is_semisimple",
    "killing_form",
    "load_algebra",
    "load_matrix",
    "lower_central_series",
    "megaideal_closure",
    "nullspace",
    "preserves_subspace",
    "radical",
    "rank",
    "rref",
    "stability_report",
    "subalgebra",
    "subspace_intersect",
    "subspace_sum",
    "truncation_pattern",
    "upper_central_series",
]
