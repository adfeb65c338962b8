"""Point transformations of the vorticity equation and their push-forward matrices."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ..exactalg.maps import LinearMap
from ..symvec import (
    DecompositionError,
    PointTransformation,
    decompose_in_basis,
    lam,
    mu,
    psi,
    pushforward,
    symbol,
    t,
)
from .generators import GeneratorSet

OMEGA = symbol("Omega")


def omega_elimination(omega=None) -> PointTransformation:
    """``λ̃ = λ + Ωt, ψ̃ = ψ - Ωμ`` (moves to the rotating frame's rest frame).

    With ``omega=None`` the angular velocity stays a symbolic parameter
    named ``Omega``; use :meth:`PointTransformation.instantiate` to fix it.
    """
    w = OMEGA if omega is None else Fraction(omega)
    params = ("Omega",) if omega is None else ()
    return PointTransformation(
        (t, lam + w * t, mu, psi - w * mu),
        (t, lam - w * t, mu, psi + w * mu),
        params,
        "E",
    )


def discrete_symmetries() -> tuple[PointTransformation, PointTransformation]:
    """The two independent discrete symmetries, both involutions."""
    s1 = PointTransformation((-t, -lam, mu, psi), (-t, -lam, mu, psi), name="σ1")
    s2 = PointTransformation((t, lam, -mu, -psi), (t, lam, -mu, -psi), name="σ2")
    return s1, s2


class SymmetryParamsError(ValueError):
    pass


@dataclass(frozen=True)
class SymmetryParams:
    """Parameters of ``t̃ = a1 t + a0, μ̃ = ε μ, ψ̃ = (ε/a1) ψ + f(t)``."""

    a0: Fraction = Fraction(0)
    a1: Fraction = Fraction(1)
    epsilon: int = 1
    f_coeffs: tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "a0", Fraction(self.a0))
        object.__setattr__(self, "a1", Fraction(self.a1))
        object.__setattr__(self, "f_coeffs", tuple(Fraction(x) for x in self.f_coeffs))
        if self.a1 == 0:
            raise SymmetryParamsError("a1 = 0 makes the transformation degenerate (zero Jacobian)")
        if self.epsilon not in (1, -1):
            raise SymmetryParamsError(f"epsilon must be +1 or -1, got {self.epsilon}")

    @property
    def c(self) -> Fraction:
        """Scaling of ``ψ`` forced by the equation."""
        return Fraction(self.epsilon) / self.a1


def _poly_in(var, coeffs: Sequence[Fraction]):
    out = 0 * var
    for k, a in enumerate(coeffs):
        out = out + a * var**k
    return out


def general_symmetry(p: SymmetryParams) -> PointTransformation:
    """Member of the symmetry family with rotations factored out."""
    eps, a1, a0 = p.epsilon, p.a1, p.a0
    f_old = _poly_in(t, p.f_coeffs)
    t_back = (t - a0) / a1
    f_new = _poly_in(t_back, p.f_coeffs)
    forward = (a1 * t + a0, lam, eps * mu, p.c * psi + f_old)
    inverse = (t_back, lam, eps * mu, (psi - f_new) / p.c)
    return PointTransformation(forward, inverse, name=f"G(a0={a0}, a1={a1}, ε={eps})")


class PushforwardMatrixError(ValueError):
    def __init__(self, label: str, residual):
        self.label = label
        self.residual = residual
        super().__init__(f"push-forward of {label} leaves the generator span: {residual}")


def pushforward_matrix(
    gs: GeneratorSet, tr: PointTransformation, target: GeneratorSet | None = None
) -> LinearMap:
    """Matrix of ``T_*`` from the span of ``gs`` to the span of ``target``.

    Column ``j`` holds the coordinates of the image of generator ``j``.
    ``target`` defaults to ``gs`` itself.
    """
    target = gs if target is None else target
    if tr.params:
        raise ValueError(f"instantiate parameters {list(tr.params)} first")
    images = []
    for label, x in gs:
        try:
            images.append(decompose_in_basis(pushforward(x, tr), target.fields))
        except DecompositionError as exc:
            raise PushforwardMatrixError(label, exc.residual) from exc
    return LinearMap.from_images(images)


@dataclass(frozen=True)
class FactorGroupTable:
    names: tuple[str, ...]
    table: tuple[tuple[str, ...], ...]  # table[i][j] = name of names[i] ∘ names[j]

    def is_klein_four(self) -> bool:
        """Abelian, four elements, identity first, every element its own inverse."""
        n = len(self.names)
        if n != 4:
            return False
        e = self.names[0]
        for i in range(n):
            if self.table[0][i] != self.names[i] or self.table[i][0] != self.names[i]:
                return False
            if self.table[i][i] != e:
                return False
            for j in range(n):
                if self.table[i][j] != self.table[j][i]:
                    return False
        return len({row for row in self.table}) == n

    def __str__(self) -> str:
        w = max(len(x) for x in self.names) + 2
        lines = ["∘".ljust(w) + "".join(x.ljust(w) for x in self.names)]
        for name, row in zip(self.names, self.table):
            lines.append(name.ljust(w) + "".join(x.ljust(w) for x in row))
        return "\n".join(line.rstrip() for line in lines)


def factor_group_table() -> FactorGroupTable:
    """Composition table of ``{id, σ1, σ2, σ1∘σ2}``.

    Each product is matched against the representatives by exact comparison
    of forward coordinates; an unmatched product raises.
    """
    s1, s2 = discrete_symmetries()
    reps = {"id": PointTransformation.identity(), "σ1": s1, "σ2": s2, "σ1σ2": s1 @ s2}
    names = tuple(reps)
    rows = []
    for a in names:
        row = []
        for b in names:
            prod = reps[a] @ reps[b]
            match = [n for n in names if reps[n].same_map(prod)]
            if len(match) != 1:
                raise AssertionError(f"{a}∘{b} is not one of the representatives")
            row.append(match[0])
        rows.append(tuple(row))
    return FactorGroupTable(names, tuple(rows))
