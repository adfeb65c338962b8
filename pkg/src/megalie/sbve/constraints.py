"""The rotation-block constraints on ``(Λ, M)`` and series stability across truncations."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..exactalg.closure import truncation_pattern
from ..exactalg.lie import LieAlgebra, commutator_stabilizer, derived_series, lower_central_series
from ..exactalg.linalg import Subspace
from ..symvec import as_expr, cos, is_zero, sample_points, sin, sqrt
from .generators import generators


class RotationDomainError(ValueError):
    pass


@dataclass(frozen=True)
class EquationCheck:
    name: str
    ok: bool
    certainty: str
    witness: dict | None = None


@dataclass(frozen=True)
class RotationReport:
    checks: tuple[EquationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def __bool__(self) -> bool:
        return self.ok

    def first_failure(self) -> EquationCheck | None:
        return next((c for c in self.checks if not c.ok), None)


def verify_rotation_constraints(Lam, M, seed: int | None = None) -> RotationReport:
    """Check the six equations tying ``(Λ, M)`` to the rotation generators.

    With ``J1, J2, J3`` the ``Ω = 0`` rotations acting as derivations and
    ``r = sqrt(1 - M²)``::

        J1 Λ = 1,   J2 Λ = (M/r) sin Λ,   J3 Λ = (M/r) cos Λ
        J1 M = 0,   J2 M = r cos Λ,       J3 M = -r sin Λ
    """
    Lam, M = as_expr(Lam), as_expr(M)
    for name, e in (("Λ", Lam), ("M", M)):
        extra = e.free_symbols() & {"t", "psi"}
        if extra:
            raise RotationDomainError(f"{name} must depend on (λ, μ) only, found {sorted(extra)}")
    for point in sample_points(M.free_symbols() | {"mu"}, seed=seed):
        value = M.evaluate_complex(point)
        if abs(value.imag) > 1e-12 or abs(value.real) >= 1:
            raise RotationDomainError(f"M = {M} leaves (-1, 1) at {point}")
    gs = generators(0, 2)
    J1, J2, J3 = gs["J1"], gs["J2"], gs["J3"]
    r = sqrt(1 - M * M)
    equations = [
        ("J1Λ = 1", J1(Lam) - 1),
        ("J2Λ = M sinΛ/√(1-M²)", J2(Lam) - M * sin(Lam) / r),
        ("J3Λ = M cosΛ/√(1-M²)", J3(Lam) - M * cos(Lam) / r),
        ("J1M = 0", J1(M)),
        ("J2M = √(1-M²) cosΛ", J2(M) - r * cos(Lam)),
        ("J3M = -√(1-M²) sinΛ", J3(M) + r * sin(Lam)),
    ]
    checks = []
    for name, e in equations:
        z = is_zero(e, seed=seed)
        checks.append(EquationCheck(name, z.zero, z.certainty, None if z.zero else z.witness))
    return RotationReport(tuple(checks))


# series across truncation orders ---------------------------------------------


@dataclass(frozen=True)
class SeriesTerm:
    subspace: Subspace
    stable: bool
    pattern: tuple


def _compare(g_small: LieAlgebra, small: Sequence[Subspace], g_big: LieAlgebra, big: Sequence[Subspace]):
    out = []
    for k, s in enumerate(small):
        pat = truncation_pattern(g_small, s)
        ok = k < len(big) and truncation_pattern(g_big, big[k]) == pat
        out.append(SeriesTerm(s, ok, pat))
    return out


def stabilizer_series(g: LieAlgebra, i0: Subspace, i1: Subspace, start: Subspace) -> list[Subspace]:
    """Iterate ``i2 <- {z in i0 : [z, i1] ⊆ i2}`` from ``start`` to a fixpoint.

    The result lists the produced terms (``start`` excluded); the last entry
    is the fixpoint.
    """
    out = []
    cur = start
    while True:
        nxt = commutator_stabilizer(g, i0, i1, cur)
        if nxt == cur:
            return out
        out.append(nxt)
        cur = nxt


def _pz(g: LieAlgebra) -> Subspace:
    return g.span("P", *[lab for lab in g.labels if lab.startswith("Z")])


def tower_stabilizer_series(g_small: LieAlgebra, g_big: LieAlgebra) -> list[SeriesTerm]:
    """Stabilizer series with ``i0 = i1 = ⟨P, Z⟩`` from ``⟨Z0⟩``, flagged by truncation stability.

    Step ``k`` is term ``k`` of the series on ``g_small`` and is stable when
    the same step on ``g_big`` has the same label pattern.
    """
    small = stabilizer_series(g_small, _pz(g_small), _pz(g_small), g_small.span("Z0"))
    big = stabilizer_series(g_big, _pz(g_big), _pz(g_big), g_big.span("Z0"))
    return _compare(g_small, small, g_big, big)


def series_stability(g_small: LieAlgebra, g_big: LieAlgebra, kind: str = "derived") -> list[SeriesTerm]:
    """Derived or lower central series on ``g_small``, each term flagged by truncation stability."""
    fn = {"derived": derived_series, "lower": lower_central_series}[kind]
    return _compare(g_small, fn(g_small), g_big, fn(g_big))
