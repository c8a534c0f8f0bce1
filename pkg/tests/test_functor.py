import pytest

from defcat.category import vec_group
from defcat.errors import (HexagonViolation, MiddleHexagonViolation, NotAssociative, NotUnital,
                           RightHexagonViolation, UnitSquareViolation)
from defcat.exact import GF, Q
from defcat.functor import (BimoduleData, algebra_to_functor, check_algebra, identity_functor,
                            induced_bimodule, make_algebra, nat_transformation_check, regular_bimodule,
                            standard_algebras, verify_bimodule, verify_functor)


@pytest.fixture
def z2():
    return vec_group(Q, 2)


def character(c, values):
    f = c.field
    return {((a,), a): f.array([[values[a]]]) for a in range(c.rank)}


def test_identity_functor(z2):
    r = verify_functor(identity_functor(z2))
    assert r == {"hexagon": "ok", "unit_squares": "ok", "strong": True}


@pytest.mark.parametrize("c", [3, -2])
def test_rescaled_multiplication_with_inverse_unit(z2, c):
    assert verify_functor(identity_functor(z2, c, Q.inv(Q.coerce(c))))["unit_squares"] == "ok"


def test_rescaled_multiplication_without_unit_fix(z2):
    with pytest.raises(UnitSquareViolation):
        verify_functor(identity_functor(z2, 3))


def test_broken_hexagon_is_located(z2):
    f = identity_functor(z2)
    ft = dict(f.Ft)
    # F~_{1,1} alone may be changed (that is a cocycle), F~_{0,1} may not
    ft[((0, 1), 1)] = Q.array([[2]])
    bad = type(f)(f.source, f.target, f.mult, ft, f.F0)
    with pytest.raises(HexagonViolation) as e:
        verify_functor(bad)
    assert e.value.index is not None


def test_regular_bimodule(z2):
    assert verify_bimodule(regular_bimodule(identity_functor(z2)))["middle_hexagon"] == "ok"


def test_scaled_right_action_fails(z2):
    f = identity_functor(z2)
    m = regular_bimodule(f)
    mur = {k: Q.scale(2, v) for k, v in m.mur.items()}
    with pytest.raises((MiddleHexagonViolation, RightHexagonViolation)):
        verify_bimodule(BimoduleData(f, f, m.mult, m.mul, mur))


def test_characters_are_monoidal(z2):
    f = identity_functor(z2)
    assert nat_transformation_check(character(z2, [1, 1]), f, f)
    assert nat_transformation_check(character(z2, [1, -1]), f, f)
    assert not nat_transformation_check(character(z2, [1, 2]), f, f)
    # rescaling breaks the unit condition
    assert not nat_transformation_check(character(z2, [3, 3]), f, f)


def test_induced_bimodule_is_a_bimodule(z2):
    f = identity_functor(z2)
    m = induced_bimodule(f, f, character(z2, [1, -1]))
    assert verify_bimodule(m)["units"] == "ok"


@pytest.mark.parametrize("name,field", [("k", Q), ("dual", Q), ("dual", GF(2)), ("mat2", GF(3))])
def test_standard_algebras_give_functors(name, field):
    a = standard_algebras(field, name)
    r = verify_functor(algebra_to_functor(a))
    assert r["hexagon"] == "ok"
    assert r["strong"] is (name == "k")


def test_broken_associativity():
    a = standard_algebras(GF(3), "mat2")
    m = a.m.copy()
    m[0, 0, 0] = 2      # E11 E11 = 2 E11
    with pytest.raises(NotAssociative):
        check_algebra(make_algebra(GF(3), m.tolist(), [1, 0, 0, 1]))


def test_wrong_unit():
    with pytest.raises(NotUnital):
        check_algebra(make_algebra(Q, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], [0, 1]))
