"""The vorticity equation on the sphere: generators, symmetries, residuals and verification."""

from .constraints import (
    RotationDomainError,
    RotationReport,
    SeriesTerm,
    series_stability,
    stabilizer_series,
    tower_stabilizer_series,
    verify_rotation_constraints,
)
from .generators import (
    MIN_TRUNCATION,
    GeneratorSet,
    NonClosureError,
    TruncationError,
    build_truncated_algebra,
    generator_labels,
    generators,
)
from .transforms import (
    FactorGroupTable,
    PushforwardMatrixError,
    SymmetryParams,
    SymmetryParamsError,
    discrete_symmetries,
    factor_group_table,
    general_symmetry,
    omega_elimination,
    pushforward_matrix,
)
from .vorticity import (
    DEFAULT_GRID,
    Grid,
    GridError,
    GridResidual,
    Solution,
    UnsupportedTransformation,
    harmonic,
    phase_speed,
    residual,
    residual_on_grid,
    rossby_haurwitz,
    solution_catalogue,
    standard_test_solution,
    transform_solution,
    vorticity_operator,
)

__all__ = [
    "DEFAULT_GRID",
    "FactorGroupTable",
    "GeneratorSet",
    "Grid",
    "GridError",
    "GridResidual",
    "MIN_TRUNCATION",
    "NonClosureError",
    "PushforwardMatrixError",
    "RotationDomainError",
    "RotationReport",
    "SeriesTerm",
    "Solution",
    "SymmetryParams",
    "SymmetryParamsError",
    "TruncationError",
    "UnsupportedTransformation",
    "build_truncated_algebra",
    "discrete_symmetries",
    "factor_group_table",
    "general_symmetry",
    "generator_labels",
    "generators",
    "harmonic",
    "omega_elimination",
    "phase_speed",
    "pushforward_matrix",
    "residual",
    "residual_on_grid",
    "rossby_haurwitz",
    "series_stability",
    "solution_catalogue",
    "stabilizer_series",
    "standard_test_solution",
    "tower_stabilizer_series",
    "transform_solution",
    "verify_rotation_constraints",
    "vorticity_operator",
]
