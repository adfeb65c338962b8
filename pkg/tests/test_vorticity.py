import math
from fractions import Fraction

import mpmath
import pytest

from megalie.sbve import (
    DEFAULT_GRID,
    Grid,
    GridError,
    UnsupportedTransformation,
    discrete_symmetries,
    harmonic,
    omega_elimination,
    phase_speed,
    residual,
    residual_on_grid,
    rossby_haurwitz,
    solution_catalogue,
    standard_test_solution,
    transform_solution,
    vorticity_operator,
)
from megalie.symvec import S, PointTransformation, cos, lam, mu, psi, t

S1, S2 = discrete_symmetries()


def test_vorticity_examples():
    assert vorticity_operator(mu) == -2 * mu
    assert vorticity_operator(3 * mu**2 - 1) == -6 * (3 * mu**2 - 1)
    assert vorticity_operator(5 + 0 * mu).is_zero()


@pytest.mark.parametrize("n, m", [(1, 0), (1, 1), (2, 1), (2, 2), (3, 0), (3, 2), (3, 3)])
def test_harmonics_are_laplacian_eigenfunctions(n, m):
    for kind in ("cos", "sin"):
        y = harmonic(n, m, kind)
        assert vorticity_operator(y) == -n * (n + 1) * y


def test_residual_examples():
    assert residual(mu**3 - 2 * mu, 0).is_zero()
    assert residual(mu * S * cos(lam), 0).is_zero()
    w = Fraction(5)
    assert residual(mu * S * cos(lam - phase_speed(2, w) * t), w).is_zero()
    assert phase_speed(2, w) == Fraction(-5, 3)


def test_wrong_phase_speed_is_not_a_solution():
    assert not residual(mu * S * cos(lam + t), 1).is_zero()


def test_catalogue_residuals_are_symbolic_zero():
    for w in (0, 1, Fraction(7, 3)):
        cat = solution_catalogue(w)
        assert len(cat) == (16 if w == 0 else 15)
        for sol in cat:
            assert residual_on_grid(sol.psi, w).method == "symbolic", sol.name


def test_standard_solution():
    star = standard_test_solution()
    assert residual(star, 0).is_zero()
    assert star.free_symbols() >= {"t", "lambda", "mu"}


def test_grid_contract():
    with pytest.raises(GridError):
        Grid(mu=(-0.96, -0.4, -0.1, 0.1, 0.4, 0.8))
    with pytest.raises(GridError):
        Grid(lam=tuple(2 * math.pi * k / 8 for k in range(1, 9)))
    with pytest.raises(GridError):
        Grid(t=(0.0, 0.3))
    assert len(list(DEFAULT_GRID.points())) == 144


def test_analytic_nonzero_residual():
    r = residual_on_grid(mu * S * cos(lam + t), 1)
    assert r.method == "analytic" and r.max_abs > 1e-2 and r.where is not None


def test_finite_differences_on_callable():
    def rh(tv, lv, mv):
        return mv * mpmath.sqrt(1 - mv * mv) * mpmath.cos(lv - 2 * tv) - 3 * mv

    small = Grid(t=(0.0, 0.3, 0.7), mu=(-0.8, -0.4, -0.1, 0.1, 0.4, 0.8))
    r = residual_on_grid(rh, 0, small)
    assert r.method == "finite-difference" and r.max_abs < 1e-8


def test_finite_differences_see_a_non_solution():
    r = residual_on_grid(mu * S * cos(lam + t), 1, method="fd")
    assert r.max_abs > 1e-2


def test_second_order_stencil_is_selectable():
    r = residual_on_grid(mu * S * cos(lam), 0, method="fd", order=2)
    assert r.method == "finite-difference" and r.max_abs < 1e-5
    with pytest.raises(ValueError):
        residual_on_grid(mu, 0, method="fd", order=3)
    with pytest.raises(ValueError):
        residual_on_grid(lambda a, b, c: 0.0, 0, method="spectral")


def test_transform_solution_examples():
    ident = PointTransformation.identity()
    assert transform_solution(mu, ident) == mu
    assert transform_solution(mu, S2) == mu
    y = mu * S * cos(lam)
    moved = transform_solution(y, omega_elimination(2).inverted())
    assert residual_on_grid(moved, 2).max_abs < 1e-8


def test_transform_solution_rejects_nonaffine():
    sq = PointTransformation((t, lam, mu, psi**3), (t, lam, mu, psi**3))
    with pytest.raises(UnsupportedTransformation):
        transform_solution(mu, sq)
    mix = PointTransformation((t + psi, lam, mu, psi), (t - psi, lam, mu, psi))
    with pytest.raises(UnsupportedTransformation):
        transform_solution(mu, mix)


def test_symmetry_images_stay_solutions():
    star = standard_test_solution()
    for tr in (S1, S2, S1 @ S2):
        assert residual_on_grid(transform_solution(star, tr), 0).max_abs < 1e-10
    rh = rossby_haurwitz(3, 2, 1)
    for tr in (S1, S2, S1 @ S2):
        assert residual_on_grid(transform_solution(rh, tr), 1).max_abs < 1e-10


def test_negative_control():
    star = standard_test_solution()
    stretch = PointTransformation((2 * t, lam, mu, psi), (t / 2, lam, mu, psi))
    assert residual_on_grid(transform_solution(star, stretch), 0).max_abs > 1e-2
