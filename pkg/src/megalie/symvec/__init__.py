"""Symbolic expressions, vector fields and point transformations on ``(t, λ, μ, ψ)``."""

from .expr import (
    D,
    I,
    PI,
    S,
    VARIABLES,
    Expr,
    Node,
    NotInClass,
    Poly,
    as_expr,
    const,
    cos,
    diff,
    expi,
    lam,
    mu,
    psi,
    render,
    sin,
    sqrt,
    symbol,
    t,
)
from .fields import (
    AmbiguousDecomposition,
    ContractError,
    DecompositionError,
    InverseCheck,
    PointTransformation,
    VectorField,
    decompose_in_basis,
    pushforward,
    verify_inverse,
    vf_commutator,
)
from .zero import ZeroTest, get_seed, is_zero, sample_points, set_seed

differentiate = diff

__all__ = [
    "AmbiguousDecomposition",
    "ContractError",
    "D",
    "DecompositionError",
    "Expr",
    "I",
    "InverseCheck",
    "Node",
    "NotInClass",
    "PI",
    "PointTransformation",
    "Poly",
    "S",
    "VARIABLES",
    "VectorField",
    "ZeroTest",
    "as_expr",
    "const",
    "cos",
    "decompose_in_basis",
    "diff",
    "differentiate",
    "expi",
    "get_seed",
    "is_zero",
    "lam",
    "mu",
    "psi",
    "pushforward",
    "render",
    "sample_points",
    "set_seed",
    "sin",
    "sqrt",
    "symbol",
    "t",
    "verify_inverse",
    "vf_commutator",
]
