"""Vector fields on ``(t, λ, μ, ψ)`` and invertible point transformations."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from ..exactalg.linalg import rref_with_pivots
from .expr import VARIABLES, Expr, NotInClass, Poly, as_expr, render
from .zero import ZeroTest, is_zero

NAMES = {"t": "∂t", "lambda": "∂λ", "mu": "∂μ", "psi": "∂ψ"}


class VectorField:
    """``xi_t ∂t + xi_λ ∂λ + xi_μ ∂μ + xi_ψ ∂ψ``."""

    __slots__ = ("components",)

    def __init__(self, xi_t=0, xi_lambda=0, xi_mu=0, xi_psi=0):
        self.components = tuple(as_expr(c) for c in (xi_t, xi_lambda, xi_mu, xi_psi))

    @classmethod
    def from_components(cls, comps: Sequence) -> VectorField:
        if len(comps) != 4:
            raise ValueError("a vector field has four components")
        return cls(*comps)

    def __getitem__(self, var: str) -> Expr:
        return self.components[VARIABLES.index(var)]

    def __call__(self, f) -> Expr:
        """Apply the field to a function as a derivation."""
        f = as_expr(f)
        total: Expr = Poly.const(0)
        for xi, v in zip(self.components, VARIABLES):
            if isinstance(xi, Poly) and xi.is_zero():
                continue
            total = total + xi * f.diff(v)
        return total

    apply = __call__

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(*(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(*(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> VectorField:
        return VectorField(*(-a for a in self.components))

    def __mul__(self, k) -> VectorField:
        return VectorField(*(a * k for a in self.components))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        return isinstance(other, VectorField) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def subs(self, mapping: Mapping) -> VectorField:
        return VectorField(*(c.subs(mapping) for c in self.components))

    def is_zero(self, seed: int | None = None) -> ZeroTest:
        """Zero test over all components; the weakest certainty wins."""
        certainty = "symbolic"
        for c in self.components:
            r = is_zero(c, seed=seed)
            if not r:
                return r
            if r.certainty == "numeric":
                certainty = "numeric"
        return ZeroTest(True, certainty)

    def __str__(self) -> str:
        parts = []
        for c, v in zip(self.components, VARIABLES):
            if isinstance(c, Poly) and c.is_zero():
                continue
            text = render(c) if isinstance(c, Poly) else str(c)
            parts.append(f"({text}){NAMES[v]}")
        return " + ".join(parts) if parts else "0"

    __repr__ = __str__


def vf_commutator(x: VectorField, y: VectorField) -> VectorField:
    """``[x, y]^a = x(y^a) - y(x^a)``."""
    return VectorField(*(x(b) - y(a) for a, b in zip(x.components, y.components)))


@dataclass(frozen=True)
class PointTransformation:
    """``(t̃, λ̃, μ̃, ψ̃) = forward(t, λ, μ, ψ)`` with an explicit inverse.

    Both charts use the symbol names ``t, lambda, mu, psi``; ``inverse``
    expresses the old coordinates through the new ones.  ``params`` lists
    symbolic parameters that may be fixed later with :meth:`instantiate`.
    """

    forward: tuple[Expr, ...]
    inverse: tuple[Expr, ...]
    params: tuple[str, ...] = ()
    name: str = ""
    _checked: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "forward", tuple(as_expr(e) for e in self.forward))
        object.__setattr__(self, "inverse", tuple(as_expr(e) for e in self.inverse))
        if len(self.forward) != 4 or len(self.inverse) != 4:
            raise ValueError("forward and inverse need four components each")

    @classmethod
    def identity(cls) -> PointTransformation:
        coords = [Poly.symbol(v) for v in VARIABLES]
        return cls(tuple(coords), tuple(coords), name="id")

    def instantiate(self, **values) -> PointTransformation:
        mapping = {k: Fraction(v) for k, v in values.items()}
        unknown = set(mapping) - set(self.params)
        if unknown:
            raise KeyError(f"unknown parameters {sorted(unknown)}")
        return PointTransformation(
            tuple(e.subs(mapping) for e in self.forward),
            tuple(e.subs(mapping) for e in self.inverse),
            tuple(p for p in self.params if p not in mapping),
            self.name,
        )

    def inverted(self) -> PointTransformation:
        name = f"{self.name}^-1" if self.name else ""
        return PointTransformation(self.inverse, self.forward, self.params, name)

    def compose(self, first: PointTransformation) -> PointTransformation:
        """``self ∘ first``: apply ``first``, then ``self``."""
        fwd = tuple(e.subs(dict(zip(VARIABLES, first.forward))) for e in self.forward)
        inv = tuple(e.subs(dict(zip(VARIABLES, self.inverse))) for e in first.inverse)
        params = tuple(dict.fromkeys(first.params + self.params))
        name = f"{self.name}∘{first.name}" if self.name and first.name else ""
        return PointTransformation(fwd, inv, params, name)

    __matmul__ = compose

    def same_map(self, other: PointTransformation) -> bool:
        """Exact comparison of forward components."""
        return self.forward == other.forward

    def __str__(self) -> str:
        comps = ", ".join(render(e) if isinstance(e, Poly) else str(e) for e in self.forward)
        return f"(t, λ, μ, ψ) ↦ ({comps})"


@dataclass(frozen=True)
class InverseCheck:
    ok: bool
    certainty: str
    witness: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def verify_inverse(tr: PointTransformation, seed: int | None = None) -> InverseCheck:
    """Check ``forward ∘ inverse`` and ``inverse ∘ forward`` are the identity."""
    certainty = "symbolic"
    for outer, inner, label in ((tr.forward, tr.inverse, "forward∘inverse"), (tr.inverse, tr.forward, "inverse∘forward")):
        mapping = dict(zip(VARIABLES, inner))
        for comp, v in zip(outer, VARIABLES):
            r = is_zero(comp.subs(mapping) - Poly.symbol(v), seed=seed)
            if not r:
                return InverseCheck(False, r.certainty, f"{label}: {v}-component at {r.witness}")
            if r.certainty == "numeric":
                certainty = "numeric"
    return InverseCheck(True, certainty)


class ContractError(ValueError):
    pass


def pushforward(x: VectorField, tr: PointTransformation, check: bool = True) -> VectorField:
    """Push ``x`` forward along ``tr`` and express it in the new chart.

    ``(T_* x)^a = sum_b ∂F^a/∂x^b · x^b``, evaluated at ``x = inverse(x̃)``.
    """
    if check:
        key = "inverse"
        if key not in tr._checked:
            tr._checked[key] = verify_inverse(tr)
        if not tr._checked[key]:
            raise ContractError(f"inverse check failed: {tr._checked[key].witness}")
    back = dict(zip(VARIABLES, tr.inverse))
    comps = [x(F).subs(back) for F in tr.forward]
    return VectorField(*comps)


class DecompositionError(ValueError):
    def __init__(self, message: str, residual: VectorField | None = None):
        self.residual = residual
        super().__init__(message)


class AmbiguousDecomposition(DecompositionError):
    pass


def _coordinates(fields: Sequence[VectorField]) -> tuple[list[dict], int]:
    den = 0
    for f in fields:
        for c in f.components:
            if not isinstance(c, Poly):
                raise NotInClass("decomposition needs in-class components")
            den = max(den, c.den)
    coords = []
    for f in fields:
        d = {}
        for a, c in enumerate(f.components):
            for key, v in c.numerator_at(den).items():
                d[(a, key)] = v
        coords.append(d)
    return coords, den


def decompose_in_basis(x: VectorField, basis: Sequence[VectorField]) -> list[Fraction]:
    """Rational coordinates of ``x`` in the span of ``basis``.

    The fields are compared monomial by monomial on their canonical
    numerators, so the answer is exact.  Raises
    :class:`AmbiguousDecomposition` when ``basis`` is dependent and
    :class:`DecompositionError` (carrying the residual) when ``x`` lies
    outside the span.
    """
    basis = list(basis)
    coords, _ = _coordinates(basis + [x])
    target = coords.pop()
    keys = sorted(set().union(target, *coords), key=repr)
    n = len(basis)
    rows = [[c.get(k, Fraction(0)) for c in coords] + [target.get(k, Fraction(0))] for k in keys]
    reduced, pivots = rref_with_pivots(rows) if rows else ([], [])
    basis_pivots = [p for p in pivots if p < n]
    if len(basis_pivots) < n:
        raise AmbiguousDecomposition("basis fields are linearly dependent")
    k = [Fraction(0)] * n
    for r, p in enumerate(pivots):
        if p < n:
            k[p] = reduced[r][n]
    if n in pivots:
        residual = x
        for coef, b in zip(k, basis):
            if coef:
                residual = residual - b * coef
        raise DecompositionError(f"field lies outside the span; residual {residual}", residual)
    return k
