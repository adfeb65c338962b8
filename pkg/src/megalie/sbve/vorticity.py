"""The vorticity equation on the sphere, exact solutions and residual checks."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import mpmath

from ..symvec import (
    D,
    S,
    Expr,
    PointTransformation,
    Poly,
    as_expr,
    cos,
    diff,
    is_zero,
    lam,
    mu,
    sin,
    t,
)
from ..symvec.expr import VARIABLES

MU_LIMIT = 0.95
FD_STEP = 1e-4
FD_ORDER = 4


def vorticity_operator(f) -> Expr:
    """``ζ = f_λλ / (1-μ²) + ((1-μ²) f_μ)_μ``, the Laplacian on the unit sphere."""
    f = as_expr(f)
    return diff(diff(f, "lambda"), "lambda") / D + diff(D * diff(f, "mu"), "mu")


def residual(f, omega=0) -> Expr:
    """Left-hand side ``ζ_t + f_λ ζ_μ - f_μ ζ_λ + 2Ω f_λ`` for the stream function ``f``."""
    f = as_expr(f)
    z = vorticity_operator(f)
    f_lam = diff(f, "lambda")
    return diff(z, "t") + f_lam * diff(z, "mu") - diff(f, "mu") * diff(z, "lambda") + 2 * Fraction(omega) * f_lam


class GridError(ValueError):
    pass


@dataclass(frozen=True)
class Grid:
    t: tuple[float, ...] = (0.0, 0.3, 0.7)
    lam: tuple[float, ...] = tuple(2 * math.pi * k / 8 for k in range(8))
    mu: tuple[float, ...] = (-0.8, -0.4, -0.1, 0.1, 0.4, 0.8)

    def __post_init__(self):
        if any(abs(m) > MU_LIMIT for m in self.mu):
            raise GridError(f"grid touches |μ| > {MU_LIMIT}")
        if any(not 0 <= x < 2 * math.pi for x in self.lam):
            raise GridError("λ samples must lie in [0, 2π)")
        if len(self.t) * len(self.lam) * len(self.mu) < 3 * 8 * 6:
            raise GridError("grid needs at least 3×8×6 points")

    def points(self):
        for a in self.t:
            for b in self.lam:
                for c in self.mu:
                    yield a, b, c


DEFAULT_GRID = Grid()


@dataclass(frozen=True)
class GridResidual:
    max_abs: float
    method: str  # "symbolic", "analytic" or "finite-difference"
    where: tuple[float, float, float] | None = None

    def __str__(self) -> str:
        return f"{self.max_abs:.3e} ({self.method})"


# centered stencils: offsets (in units of h) and weights
_D1 = {2: ((-1, Fraction(-1, 2)), (1, Fraction(1, 2))),
       4: ((-2, Fraction(1, 12)), (-1, Fraction(-2, 3)), (1, Fraction(2, 3)), (2, Fraction(-1, 12)))}
_D2 = {2: ((-1, 1), (0, -2), (1, 1)),
       4: ((-2, Fraction(-1, 12)), (-1, Fraction(4, 3)), (0, Fraction(-5, 2)), (1, Fraction(4, 3)), (2, Fraction(-1, 12)))}


def _fd_residual(f: Callable, omega: float, point, h: float, order: int) -> float:
    """Nested centered differences evaluated in 30-digit arithmetic.

    Stencil points are addressed by integer offsets from ``point`` so that
    the nested stencils share function values.
    """
    with mpmath.workdps(30):
        h = mpmath.mpf(h)
        base = [mpmath.mpf(v) for v in point]
        cache: dict = {}

        def F(k):
            if k not in cache:
                cache[k] = mpmath.mpf(f(*(b + i * h for b, i in zip(base, k))))
            return cache[k]

        def stencil(g, axis, weights, power):
            def out(k):
                total = mpmath.mpf(0)
                for step, w in weights:
                    w = Fraction(w)
                    y = list(k)
                    y[axis] += step
                    total += mpmath.mpf(w.numerator) / w.denominator * g(tuple(y))
                return total / h**power

            return out

        def d1(g, axis):
            return stencil(g, axis, _D1[order], 1)

        def d2(g, axis):
            return stencil(g, axis, _D2[order], 2)

        def zeta(k):
            m = base[2] + k[2] * h
            return d2(F, 1)(k) / (1 - m * m) + (1 - m * m) * d2(F, 2)(k) - 2 * m * d1(F, 2)(k)

        o = (0, 0, 0)
        value = (
            d1(zeta, 0)(o)
            + d1(F, 1)(o) * d1(zeta, 2)(o)
            - d1(F, 2)(o) * d1(zeta, 1)(o)
            + 2 * mpmath.mpf(omega) * d1(F, 1)(o)
        )
        return float(abs(value))


def _mp_callable(e: Expr) -> Callable:
    def f(tv, lv, mv):
        return e.evaluate_complex({"t": tv, "lambda": lv, "mu": mv}, mp=True).real

    return f


def residual_on_grid(
    f,
    omega=0,
    grid: Grid = DEFAULT_GRID,
    method: str = "analytic",
    h: float = FD_STEP,
    order: int = FD_ORDER,
) -> GridResidual:
    """Largest ``|residual|`` over the grid.

    ``f`` is an :class:`Expr` or a plain callable ``f(t, λ, μ)``.  Exprs use
    exact derivatives (``method="analytic"``) unless ``method="fd"`` is
    requested; callables always use centered differences with spacing ``h``
    and accuracy ``order`` (2 or 4).  Callables receive mpmath numbers and
    should stay in mpmath; with plain floats the nested third derivatives
    are dominated by roundoff of order ``1e-16 / h**3``.
    """
    if isinstance(f, (Expr, int, Fraction)) and method == "analytic":
        r = residual(f, omega)
        if isinstance(r, Poly) and r.is_zero():
            return GridResidual(0.0, "symbolic")
        worst, where = 0.0, None
        for x in grid.points():
            v = abs(r.evaluate_complex(dict(zip(VARIABLES, x))))
            if v > worst or where is None:
                worst, where = v, x
        return GridResidual(worst, "analytic", where)
    if method not in ("analytic", "fd"):
        raise ValueError(f"unknown method {method!r}")
    if order not in _D1:
        raise ValueError(f"order must be 2 or 4, got {order}")
    func = _mp_callable(as_expr(f)) if isinstance(f, (Expr, int, Fraction)) else f
    worst, where = 0.0, None
    for x in grid.points():
        v = _fd_residual(func, float(Fraction(omega)), x, h, order)
        if v > worst or where is None:
            worst, where = v, x
    return GridResidual(worst, "finite-difference", where)


class UnsupportedTransformation(ValueError):
    pass


def transform_solution(f, tr: PointTransformation) -> Expr:
    """Image of the solution ``ψ = f(t, λ, μ)`` under ``tr``, in the new chart.

    Requires the ``ψ̃`` component to be affine in ``ψ`` and the inverse of
    ``(t, λ, μ)`` not to involve ``ψ̃``.
    """
    f = as_expr(f)
    if "psi" in f.free_symbols():
        raise UnsupportedTransformation("solution must not depend on psi")
    new_psi = tr.forward[3]
    second = diff(diff(new_psi, "psi"), "psi")
    if not is_zero(second):
        raise UnsupportedTransformation("ψ̃ is not affine in ψ")
    for comp, v in zip(tr.inverse[:3], VARIABLES[:3]):
        if "psi" in comp.free_symbols():
            raise UnsupportedTransformation(f"inverse {v} depends on ψ̃")
    along = new_psi.subs({"psi": f})
    return along.subs(dict(zip(VARIABLES[:3], tr.inverse[:3])))


# exact solutions -----------------------------------------------------------

# radial factors of real spherical harmonics, keyed by (degree, order)
RADIAL = {
    (1, 0): mu,
    (1, 1): S,
    (2, 0): 3 * mu**2 - 1,
    (2, 1): mu * S,
    (2, 2): D,
    (3, 0): 5 * mu**3 - 3 * mu,
    (3, 1): (5 * mu**2 - 1) * S,
    (3, 2): mu * D,
    (3, 3): D * S,
}


@dataclass(frozen=True)
class Solution:
    name: str
    psi: Expr
    omega: Fraction


def phase_speed(n: int, omega) -> Fraction:
    """Longitudinal drift ``-2Ω / (n(n+1))`` of a degree-``n`` wave."""
    return Fraction(-2) * Fraction(omega) / (n * (n + 1))


def harmonic(n: int, m: int, kind: str = "cos") -> Expr:
    trig = cos if kind == "cos" else sin
    r = RADIAL[(n, m)]
    return r if m == 0 else r * trig(m * lam)


def rossby_haurwitz(n: int, m: int, omega, kind: str = "cos") -> Expr:
    """``R_n^m(μ) cos(m(λ - c t))`` with the degree-``n`` phase speed."""
    trig = cos if kind == "cos" else sin
    c = phase_speed(n, omega)
    r = RADIAL[(n, m)]
    return r if m == 0 else r * trig(m * (lam - c * t))


STANDARD_OMEGA = 3


def standard_test_solution() -> Expr:
    """Time-dependent solution for ``Ω = 0``.

    The degree-2 wave ``μ s cos(λ + t)`` of the ``Ω = 3`` equation seen in
    the non-rotating frame: ``μ s cos(λ - 2t) - 3μ``.
    """
    return mu * S * cos(lam - 2 * t) - STANDARD_OMEGA * mu


def solution_catalogue(omega=0) -> list[Solution]:
    """Exact solutions used by the residual suite for a given ``Ω``."""
    omega = Fraction(omega)
    out = []
    for (n, m) in sorted(RADIAL):
        kinds = ("cos",) if m == 0 else ("cos", "sin")
        for kind in kinds:
            label = f"Y{n}{m}" + ("" if m == 0 else kind[0])
            if omega == 0:
                out.append(Solution(label, harmonic(n, m, kind), omega))
            else:
                out.append(Solution(f"RH-{label}", rossby_haurwitz(n, m, omega, kind), omega))
    if omega == 0:
        out.append(Solution("standard", standard_test_solution(), omega))
    return out
