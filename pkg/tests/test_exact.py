from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from defcat.errors import DivisionByZero, FieldMismatch, NotInvertible, OrderMismatch
from defcat.exact import (GF, Q, Scalar, TruncatedSeries, field_from_json, is_prime, mseries_inv,
                          mseries_mul, scalar_arith, series_arith, series_invert)

fractions = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 12))
primes = st.sampled_from([2, 3, 5, 7, 19, 101])


def test_rational_sum():
    s = scalar_arith(Scalar(Q, Fraction(1, 2)), Scalar(Q, Fraction(1, 3)), "add")
    assert s.value == Fraction(5, 6)
    assert s.to_json() == "5/6"


def test_residue_product():
    f = GF(5)
    assert scalar_arith(Scalar(f, 3), Scalar(f, 4), "mul").value == 2


def test_format():
    assert Q.format(Q.one) == "1/1"
    assert Q.format(Fraction(-3, 4)) == "-3/4"
    assert GF(7).format(GF(7).coerce(10)) == 3


def test_zero_has_no_inverse():
    with pytest.raises((DivisionByZero, NotInvertible)):
        Scalar(Q, 0).inverse()
    with pytest.raises((DivisionByZero, NotInvertible)):
        Scalar(GF(3), 6).inverse()


def test_fields_do_not_mix():
    with pytest.raises(FieldMismatch):
        Scalar(GF(5), 1) + Scalar(GF(7), 1)
    with pytest.raises(FieldMismatch):
        Scalar(Q, 1) + Scalar(GF(7), 1)


def test_field_from_json():
    assert field_from_json({"type": "Q"}) == Q
    assert field_from_json({"type": "Fp", "p": 5}) == GF(5)


@pytest.mark.parametrize("n,expected", [(1, False), (2, True), (4, False), (19, True), (91, False)])
def test_is_prime(n, expected):
    assert is_prime(n) is expected


def test_series_product():
    a = TruncatedSeries.of(Q, [1, 1], 1)
    b = TruncatedSeries.of(Q, [1, -1], 1)
    assert series_arith(a, b, "mul").coeffs == (1, 0)


def test_series_inverse_order_two():
    inv = series_invert(TruncatedSeries.of(Q, [1, 1], 2))
    assert inv.coeffs == (1, -1, 1)


def test_series_orders_must_agree():
    with pytest.raises(OrderMismatch):
        TruncatedSeries.of(Q, [1], 1) + TruncatedSeries.of(Q, [1], 2)


def test_series_with_nilpotent_constant_is_not_invertible():
    with pytest.raises((NotInvertible, DivisionByZero)):
        TruncatedSeries.of(GF(3), [0, 1], 2).invert()


@given(fractions, fractions, fractions)
def test_rational_field_axioms(a, b, c):
    x, y, z = (Scalar(Q, v) for v in (a, b, c))
    assert (x + y) * z == x * z + y * z
    assert (x * y) * z == x * (y * z)
    if b != 0:
        assert (x / y) * y == x


@given(primes, st.integers(-1000, 1000), st.integers(-1000, 1000))
def test_residue_inverse(p, a, b):
    f = GF(p)
    x, y = Scalar(f, a), Scalar(f, b)
    assert (x + y).value == (a + b) % p
    if a % p:
        assert (x * x.inverse()).value == 1


@given(st.lists(fractions, min_size=3, max_size=3), st.lists(fractions, min_size=3, max_size=3))
def test_series_ring(a, b):
    sa, sb = TruncatedSeries.of(Q, a), TruncatedSeries.of(Q, b)
    assert sa * sb == sb * sa
    if a[0] != 0:
        assert (sa * sa.invert()).coeffs == (1, 0, 0)


@given(primes, st.integers(0, 2**31))
def test_matrix_series_inverse(p, seed):
    f = GF(p)
    rng = np.random.default_rng(seed)
    import random
    r = random.Random(seed)
    a0 = f.eye(2)
    a0[0, 1] = f.coerce(int(rng.integers(0, p)))
    a = [a0, f.random_array(r, (2, 2)), f.random_array(r, (2, 2))]
    b = mseries_inv(f, a)
    prod = mseries_mul(f, a, b)
    assert np.array_equal(prod[0], f.eye(2))
    assert all(f.is_zero_array(m) for m in prod[1:])


def test_rational_matmul_matches_fraction_arithmetic():
    a = Q.array([[Fraction(1, 2), 3], [-1, Fraction(2, 3)]])
    b = Q.array([[1, Fraction(1, 5)], [4, 0]])
    got = Q.matmul(a, b)
    assert got[0, 0] == Fraction(25, 2) and got[1, 1] == Fraction(-1, 5)
    ints = Q.array([[1, 2], [3, 4]])
    assert Q.matmul(ints, ints)[1, 0] == 15
