import itertools
from fractions import Fraction

import pytest

from megalie.sbve import discrete_symmetries, generators, omega_elimination
from megalie.symvec import (
    AmbiguousDecomposition,
    ContractError,
    DecompositionError,
    PointTransformation,
    VectorField,
    decompose_in_basis,
    lam,
    mu,
    psi,
    pushforward,
    t,
    verify_inverse,
    vf_commutator,
)

G0 = generators(0, 4)


def test_commutator_j1_j2():
    assert vf_commutator(G0["J1"], G0["J2"]) == G0["J3"]


@pytest.mark.parametrize("n", range(5))
def test_commutator_d_z(n):
    assert vf_commutator(G0["D"], G0[f"Z{n}"]) == G0[f"Z{n}"] * (n + 1)


def test_self_commutator_vanishes():
    for _, x in G0:
        assert vf_commutator(x, x).is_zero()


def test_antisymmetry_and_bilinearity():
    x, y, z = G0["D"], G0["J2"], G0["Z3"]
    assert vf_commutator(x, y) == -vf_commutator(y, x)
    assert vf_commutator(x * 2 + z, y) == vf_commutator(x, y) * 2 + vf_commutator(z, y)


@pytest.mark.parametrize("omega", [0, 1])
def test_jacobi_over_generator_triples(omega):
    gs = generators(omega, 3)
    for (_, a), (_, b), (_, c) in itertools.combinations(list(gs), 3):
        cyc = (
            vf_commutator(a, vf_commutator(b, c))
            + vf_commutator(b, vf_commutator(c, a))
            + vf_commutator(c, vf_commutator(a, b))
        )
        z = cyc.is_zero()
        assert z and z.certainty == "symbolic"


def test_pushforward_identity():
    ident = PointTransformation.identity()
    for _, x in G0:
        assert pushforward(x, ident) == x


def test_pushforward_p_under_sigma1():
    s1, _ = discrete_symmetries()
    assert pushforward(G0["P"], s1) == -G0["P"]


def test_pushforward_p_under_omega_elimination():
    w = Fraction(7, 3)
    gw = generators(w, 4)
    img = pushforward(gw["P"], omega_elimination(w))
    assert img == G0["P"] + G0["J1"] * w


def test_symbolic_omega_elimination():
    e = omega_elimination()
    assert e.params == ("Omega",)
    assert e.instantiate(Omega=0).same_map(PointTransformation.identity())
    assert verify_inverse(e).certainty == "symbolic"


def test_functoriality():
    s1, s2 = discrete_symmetries()
    e = omega_elimination(2)
    gs = generators(2, 3)
    for tr1, tr2 in [(s1, s2), (s2, s1), (e, s1), (e, s2)]:
        src = gs if tr1 is e else G0
        for _, x in src:
            assert pushforward(x, tr2 @ tr1) == pushforward(pushforward(x, tr1), tr2)


def test_pushforward_preserves_commutators():
    for tr in discrete_symmetries():
        for (_, x), (_, y) in itertools.combinations(list(G0), 2):
            lhs = pushforward(vf_commutator(x, y), tr)
            rhs = vf_commutator(pushforward(x, tr), pushforward(y, tr))
            assert lhs == rhs


def test_verify_inverse():
    assert verify_inverse(PointTransformation.identity()).certainty == "symbolic"
    e = omega_elimination(Fraction(5))
    chk = verify_inverse(e)
    assert chk and chk.certainty == "symbolic"
    bad = PointTransformation((t, lam, -mu, -psi), (t, lam, mu, -psi), name="bad")
    chk = verify_inverse(bad)
    assert not chk and chk.witness
    with pytest.raises(ContractError):
        pushforward(G0["J2"], bad)


def test_decompose():
    basis = [G0["J1"], G0["J2"], G0["J3"]]
    assert decompose_in_basis(G0["J3"], basis) == [0, 0, 1]
    _, s2 = discrete_symmetries()
    assert decompose_in_basis(pushforward(G0["J2"], s2), basis) == [0, -1, 0]
    with pytest.raises(DecompositionError) as info:
        decompose_in_basis(G0["D"], basis)
    assert info.value.residual is not None and not info.value.residual.is_zero()
    with pytest.raises(AmbiguousDecomposition):
        decompose_in_basis(G0["J1"], basis + [G0["J1"] * 2])


def test_vector_field_acts_as_derivation():
    x = VectorField(0, 1, 0, 0)
    assert x(mu * lam) == mu
