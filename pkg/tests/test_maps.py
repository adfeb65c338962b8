import random
from fractions import Fraction

import pytest

from megalie.exactalg import (
    ConstraintSchemaError,
    ConstraintViolation,
    DimensionError,
    LieAlgebra,
    LinearMap,
    Subspace,
    extract_constraint_coefficients,
    is_automorphism,
    preserves_subspace,
)


def sigma1_matrix():
    # D, P, J1, J2, J3, Z0..Z4
    return LinearMap.diagonal([1, -1, -1, 1, -1, 1, -1, 1, -1, 1])


def sigma2_matrix():
    return LinearMap.diagonal([1, 1, 1, -1, -1, -1, -1, -1, -1, -1])


def test_identity_is_automorphism(g4):
    assert is_automorphism(g4, LinearMap.identity(10))


def test_sigma2_is_automorphism(g4):
    assert is_automorphism(g4, sigma2_matrix())


def test_scaling_p_alone_breaks_brackets(g4):
    d = [1] * 10
    d[1] = 2
    check = is_automorphism(g4, LinearMap.diagonal(d))
    assert not check and check.reason == "bracket"
    i, j = check.witness
    assert {g4.labels[i], g4.labels[j]} & {"P"}


def test_singular_map_is_reported(g4):
    d = [1] * 10
    d[0] = 0
    assert is_automorphism(g4, LinearMap.diagonal(d)).reason == "singular"


def test_preserves_subspace():
    m = LinearMap([[0, 1], [1, 0]])
    assert preserves_subspace(m, Subspace.full(2))
    assert not preserves_subspace(m, Subspace.coordinate(2, [0]))
    with pytest.raises(DimensionError):
        preserves_subspace(m, Subspace.full(3))


def test_sigma1_preserves_z0(g4):
    assert preserves_subspace(sigma1_matrix(), g4.span("Z0"))


def test_constraints_identity(g4):
    cc = extract_constraint_coefficients(g4, LinearMap.identity(10))
    assert (cc.c, cc.d0, cc.d1, cc.a1) == (1, 0, 1, 1)
    assert cc.B == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_constraints_sigma1(g4):
    cc = extract_constraint_coefficients(g4, sigma1_matrix())
    assert (cc.c, cc.d0, cc.d1, cc.a1) == (1, 0, -1, -1)
    assert cc.B == ((-1, 0, 0), (0, 1, 0), (0, 0, -1))
    assert cc.a1 * cc.d1 == cc.c


def _with_image(j, image):
    m = [[Fraction(int(r == c)) for c in range(10)] for r in range(10)]
    for r in range(10):
        m[r][j] = Fraction(image[r])
    return LinearMap(m)


def test_z0_scaling_violation(g4):
    img = [0] * 10
    img[5] = img[6] = 1
    with pytest.raises(ConstraintViolation) as info:
        extract_constraint_coefficients(g4, _with_image(5, img))
    assert info.value.condition == "Z0-scaling"


def test_violation_order(g4):
    img = [0] * 10
    img[6], img[1] = 1, 1  # Z1 -> Z1 + P
    with pytest.raises(ConstraintViolation) as info:
        extract_constraint_coefficients(g4, _with_image(6, img))
    assert info.value.condition == "Z1-affine"
    img = [0] * 10
    img[1], img[0] = 1, 1  # P -> P + D
    with pytest.raises(ConstraintViolation) as info:
        extract_constraint_coefficients(g4, _with_image(1, img))
    assert info.value.condition == "P-image"


def test_rotation_block_must_be_special_orthogonal(g4):
    d = [1] * 10
    d[2] = -1  # det B = -1
    with pytest.raises(ConstraintViolation) as info:
        extract_constraint_coefficients(g4, LinearMap.diagonal(d))
    assert info.value.condition == "rotation-block"
    d = [1] * 10
    d[2] = d[3] = 2
    d[4] = Fraction(1, 4)
    with pytest.raises(ConstraintViolation) as info:
        extract_constraint_coefficients(g4, LinearMap.diagonal(d))
    assert info.value.condition == "rotation-block"


def test_bracket_relation(g4):
    d = [1] * 10
    d[1] = 2  # a1 = 2 but c = d1 = 1
    with pytest.raises(ConstraintViolation) as info:
        extract_constraint_coefficients(g4, LinearMap.diagonal(d))
    assert info.value.condition == "bracket-relation"


def test_schema_error():
    g = LieAlgebra.abelian(3)
    with pytest.raises(ConstraintSchemaError):
        extract_constraint_coefficients(g, LinearMap.identity(3))


def test_random_non_automorphisms_carry_witness(g4):
    rng = random.Random(7)
    found = 0
    while found < 20:
        m = LinearMap([[rng.randint(-1, 1) for _ in range(10)] for _ in range(10)])
        if not m.is_invertible():
            continue
        check = is_automorphism(g4, m)
        if check:
            continue
        found += 1
        i, j = check.witness
        lhs = m(g4.bracket(g4.unit(i), g4.unit(j)))
        rhs = g4.bracket(m.image(i), m.image(j))
        assert lhs != rhs


def test_composition_and_images():
    a = LinearMap.from_images([[0, 1], [1, 0]])
    assert a.image(0) == [0, 1]
    assert (a @ a) == LinearMap.identity(2)
    with pytest.raises(DimensionError):
        LinearMap([[1, 0]])
