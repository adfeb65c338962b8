from fractions import Fraction

import pytest

from megalie.exactalg import (
    AntisymmetryError,
    DimensionError,
    JacobiError,
    LieAlgebra,
    Subspace,
    bracket_element,
    bracket_subspace,
    center,
    center_of,
    centralizer,
    commutator_stabilizer,
    derived_series,
    is_semisimple,
    lower_central_series,
    radical,
    subalgebra,
    upper_central_series,
)


def so3():
    return LieAlgebra.from_upper(["J1", "J2", "J3"], {(0, 1): {2: 1}, (0, 2): {1: -1}, (1, 2): {0: 1}})


def dp():
    return LieAlgebra.from_upper(["D", "P"], {(0, 1): {1: -1}})


def heisenberg():
    return LieAlgebra.from_upper(["x", "y", "z"], {(0, 1): {2: 1}})


def dims(terms):
    return [s.dim for s in terms]


def test_antisymmetry_is_enforced():
    with pytest.raises(AntisymmetryError):
        LieAlgebra(["a", "b"], {(0, 1): {1: 1}, (1, 0): {1: 1}})


def test_jacobi_failure_names_triple():
    with pytest.raises(JacobiError) as info:
        LieAlgebra.from_upper(["e1", "e2", "e3"], {(0, 1): {2: 1}, (0, 2): {0: 1}})
    assert info.value.triple == (0, 1, 2)
    assert info.value.value == [0, 0, 1]


def test_table_with_vanishing_cyclic_sum_is_accepted():
    # [e1,e2]=e1, [e2,e3]=e1: the cyclic sum reduces to [e3,e1] = 0
    g = LieAlgebra.from_upper(["e1", "e2", "e3"], {(0, 1): {0: 1}, (1, 2): {0: 1}})
    assert g.jacobi(0, 1, 2) == [0, 0, 0]


def test_structure_constant_roundtrip():
    g = so3()
    h = LieAlgebra.from_structure_constants(g.labels, g.structure_constants())
    assert g == h


def test_bracket_element_examples(g4):
    D, P, Z1, Z2 = (g4.unit(g4.index(x)) for x in ("D", "P", "Z1", "Z2"))
    assert bracket_element(g4, D, P) == [-x for x in P]
    assert bracket_element(g4, P, Z2) == [2 * x for x in Z1]
    x = [Fraction(k, 3) for k in range(10)]
    assert not any(bracket_element(g4, x, x))
    with pytest.raises(DimensionError):
        bracket_element(g4, [1, 0], [0, 1])


def test_bracket_subspace(g4):
    full = g4.full()
    gp = bracket_subspace(g4, full, full)
    assert gp.dim == 9 and gp == g4.span("P", "J1", "J2", "J3", "Z0", "Z1", "Z2", "Z3", "Z4")
    assert bracket_subspace(g4, full, g4.zero()) == g4.zero()
    j = g4.span("J1", "J2", "J3")
    assert bracket_subspace(g4, j, j) == j


def test_derived_series():
    assert dims(derived_series(LieAlgebra.abelian(3))) == [3, 0]
    assert dims(derived_series(so3())) == [3, 3]


def test_derived_series_b4(g4):
    terms = derived_series(g4)
    assert dims(terms) == [10, 9, 7, 3, 3]
    assert terms[2] == g4.span("J1", "J2", "J3", "Z0", "Z1", "Z2", "Z3")
    assert terms[3] == g4.span("J1", "J2", "J3")


def test_lower_central_series():
    assert dims(lower_central_series(LieAlgebra.abelian(2))) == [2, 0]
    terms = lower_central_series(dp())
    assert dims(terms) == [2, 1, 1]
    assert terms[-1] == dp().span("P")


def test_lower_central_series_b4_not_nilpotent(g4):
    terms = lower_central_series(g4)
    assert terms[-1] == terms[-2] and terms[-1].dim > 0


def test_upper_central_series():
    h = heisenberg()
    assert dims(upper_central_series(h)) == [0, 1, 3, 3]
    assert dims(upper_central_series(so3())) == [0, 0]


def test_center():
    assert center(LieAlgebra.abelian(3)) == LieAlgebra.abelian(3).full()
    assert center(heisenberg()) == heisenberg().span("z")
    assert center(so3()).dim == 0


def test_center_b4_is_trivial(g4):
    assert center(g4) == g4.zero()


def test_center_of_derived_algebra(g4):
    full = g4.full()
    gp = bracket_subspace(g4, full, full)
    assert center_of(g4, gp) == g4.span("Z0")
    standalone = subalgebra(g4, gp)
    assert center(standalone).dim == 1


def test_centralizers_b4(g4):
    full = g4.full()
    so = g4.span("J1", "J2", "J3")
    c = centralizer(g4, full, so)
    assert c == g4.span("D", "P", "Z0", "Z1", "Z2", "Z3", "Z4") and c.dim == 7
    gp = bracket_subspace(g4, full, full)
    assert centralizer(g4, full, gp) == g4.span("Z0")
    assert centralizer(g4, full, g4.zero()) == full


def pz(g):
    return g.span("P", *[x for x in g.labels if x.startswith("Z")])


def test_stabilizer_examples(g4):
    i0 = pz(g4)
    assert commutator_stabilizer(g4, i0, i0, g4.span("Z0")) == g4.span("Z0", "Z1")
    assert commutator_stabilizer(g4, i0, i0, g4.span("Z0", "Z1")) == g4.span("Z0", "Z1", "Z2")
    assert commutator_stabilizer(g4, i0, i0, i0) == i0
    so = g4.span("J1", "J2", "J3")
    assert commutator_stabilizer(g4, i0, so, g4.zero()) == i0


def test_stabilizer_contained_in_i0_and_contains_centralizer(g4):
    full = g4.full()
    for i1 in (pz(g4), g4.span("J1", "J2", "J3"), full):
        for i2 in (g4.zero(), g4.span("Z0"), pz(g4)):
            s = commutator_stabilizer(g4, pz(g4), i1, i2)
            assert s <= pz(g4)
            assert centralizer(g4, pz(g4), i1) <= s
            if bracket_subspace(g4, pz(g4), i1) <= i2:
                assert s == pz(g4)


def test_semisimple_and_radical():
    assert is_semisimple(so3())
    assert not is_semisimple(dp())
    assert radical(dp()) == dp().full()
    assert radical(so3()).dim == 0


def test_subalgebra_requires_closure():
    with pytest.raises(ValueError):
        subalgebra(so3(), Subspace.coordinate(3, [0, 1]))


def test_describe_and_format(g4):
    assert g4.describe(g4.span("P", "Z0")) == "<P, Z0>"
    v = [0] * 10
    v[1], v[2] = 1, Fraction(-7, 3)
    assert g4.format(v) == "P - 7/3*J1"
