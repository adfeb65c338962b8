"""Lie symmetry generators of the spherical vorticity equation and their algebra."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exactalg.lie import LieAlgebra
from ..symvec import (
    S,
    DecompositionError,
    VectorField,
    cos,
    decompose_in_basis,
    lam,
    mu,
    psi,
    sin,
    t,
    vf_commutator,
)

MIN_TRUNCATION = 2


class TruncationError(ValueError):
    pass


class NonClosureError(ValueError):
    def __init__(self, pair: tuple[str, str], residual):
        self.pair = pair
        self.residual = residual
        super().__init__(f"[{pair[0]}, {pair[1]}] leaves the span of the generators: {residual}")


@dataclass(frozen=True)
class GeneratorSet:
    omega: Fraction
    n_max: int
    labels: tuple[str, ...]
    fields: tuple[VectorField, ...]

    def __getitem__(self, label: str) -> VectorField:
        return self.fields[self.labels.index(label)]

    def __iter__(self):
        return iter(zip(self.labels, self.fields))

    def __len__(self) -> int:
        return len(self.fields)


def generator_labels(n_max: int) -> tuple[str, ...]:
    return ("D", "P", "J1", "J2", "J3") + tuple(f"Z{n}" for n in range(n_max + 1))


def generators(omega=0, n_max: int = 4) -> GeneratorSet:
    """``D, P, J1, J2, J3, Z0..Z_{n_max}`` with ``Z_n = t^n ∂ψ``.

    For angular velocity ``Ω``::

        D  = t∂t - Ωt∂λ - (ψ - Ωμ)∂ψ
        P  = ∂t
        J1 = ∂λ
        J2 = μ sin(λ+Ωt)/s ∂λ + cos(λ+Ωt) s (∂μ + Ω∂ψ)
        J3 = μ cos(λ+Ωt)/s ∂λ - sin(λ+Ωt) s (∂μ + Ω∂ψ)

    where ``s = sqrt(1-μ²)``.  The ``∂ψ`` parts of ``J2, J3`` are the ones
    obtained by conjugating the rest-frame rotations with the Ω-elimination
    map; a ``1/s`` factor there would break closure under ``[D, ·]``.
    """
    if n_max < MIN_TRUNCATION:
        raise TruncationError(f"n_max must be at least {MIN_TRUNCATION}, got {n_max}")
    omega = Fraction(omega)
    phase = lam + omega * t
    inv_s = 1 / S
    fields = [
        VectorField(t, -omega * t, 0, -(psi - omega * mu)),
        VectorField(1, 0, 0, 0),
        VectorField(0, 1, 0, 0),
        VectorField(0, mu * sin(phase) * inv_s, cos(phase) * S, omega * cos(phase) * S),
        VectorField(0, mu * cos(phase) * inv_s, -sin(phase) * S, -omega * sin(phase) * S),
    ]
    fields += [VectorField(0, 0, 0, t**n) for n in range(n_max + 1)]
    return GeneratorSet(omega, n_max, generator_labels(n_max), tuple(fields))


def build_truncated_algebra(gs: GeneratorSet) -> LieAlgebra:
    """Structure constants from the realized commutators.

    Every commutator is decomposed in the generator basis; one that falls
    outside the span raises :class:`NonClosureError` naming the pair.
    """
    n = len(gs)
    upper = {}
    for i in range(n):
        for j in range(i + 1, n):
            comm = vf_commutator(gs.fields[i], gs.fields[j])
            try:
                coords = decompose_in_basis(comm, gs.fields)
            except DecompositionError as exc:
                raise NonClosureError((gs.labels[i], gs.labels[j]), exc.residual) from exc
            row = {k: v for k, v in enumerate(coords) if v}
            if row:
                upper[(i, j)] = row
    return LieAlgebra.from_upper(gs.labels, upper)
