import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from defcat.category import deligne_product, vec_group
from defcat.cochains import (Cochain, ComplexSpec, bracket, build_complex, category_coeff, coboundary,
                             coboundary_matrix, composition_product, cup_product, diagonal_matrix,
                             functor_image_matrix, obstruction_category, obstruction_total,
                             pentagon_defect, prelie_component)
from defcat.errors import DegreeOverflow, IndexOutOfRange, KindMismatch, LowerOrderNotDeformation
from defcat.exact import GF, Q
from defcat.functor import algebra_to_functor, identity_functor, regular_bimodule, standard_algebras

from oracles import group_differential

seeds = st.integers(0, 2**32 - 1)


@pytest.fixture(scope="module")
def z2_gf2():
    return vec_group(GF(2), 2)


def test_pointed_dimensions():
    cx = build_complex(ComplexSpec("category", vec_group(Q, 2), 4))
    assert [cx.complex.dim(n) for n in range(5)] == [1, 2, 4, 8, 16]


@pytest.mark.parametrize("order,p", [(2, 0), (2, 5), (3, 0), (3, 3)])
def test_differential_is_the_group_differential(order, p):
    f = Q if p == 0 else GF(p)
    co = category_coeff(vec_group(f, order))
    for n in range(4):
        assert np.array_equal(coboundary_matrix(co, n), f.array(group_differential([order], n, p)))


def test_fibred_cone_dimensions():
    c = vec_group(GF(2), 2)
    cx = build_complex(ComplexSpec("fibred", identity_functor(c), 3))
    assert cx.complex.dim(3) == 8 + 16
    for n in range(cx.complex.lo, cx.complex.hi + 1):
        fdim = 2 ** n if n >= 0 else 0
        assert cx.complex.dim(n) == fdim + 2 ** (n + 1)


def test_coarse_cone_dimensions():
    c = vec_group(GF(2), 2)
    cx = build_complex(ComplexSpec("coarse", c, 3))
    for n in range(0, cx.complex.hi + 1):
        # X^n(tensor) has one block per n-tuple of simples of C x C
        assert cx.complex.dim(n) == 4 ** n + 2 ** (n + 1)


def test_algebra_functor_dimensions():
    a = standard_algebras(Q, "dual")
    cx = build_complex(ComplexSpec("functor", algebra_to_functor(a), 3))
    # Hom(A^(x)n, A): d^(n+1)
    assert [cx.complex.dim(n) for n in range(4)] == [2, 4, 8, 16]


def test_coboundary_beyond_the_maximum(z2_gf2, monkeypatch):
    monkeypatch.setenv("DEFCAT_MAX_DEGREE", "2")
    phi = category_coeff(z2_gf2).space(3).zero()
    with pytest.raises(DegreeOverflow):
        coboundary(phi)


def test_cup_of_one_cochains(z2_gf2):
    co = category_coeff(z2_gf2)
    f = z2_gf2.field
    for fv, gv in itertools.product(itertools.product(range(2), repeat=2), repeat=2):
        g = Cochain(co.space(1), f.array(list(fv)))
        h = Cochain(co.space(1), f.array(list(gv)))
        cup = cup_product(g, h)
        for a, b in itertools.product(range(2), repeat=2):
            assert cup.vec[2 * a + b] == fv[a] * gv[b] % 2


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(0, 2), st.integers(0, 2))
def test_cup_product_properties(seed, p, q):
    c = vec_group(GF(5), 2)
    co = category_coeff(c)
    rng = random.Random(seed)
    g, h = co.space(p).random(rng), co.space(q).random(rng)
    cup = cup_product(g, h)
    assert cup.degree == p + q
    assert cup_product(g, co.space(q).zero()).is_zero()
    dg, dh = coboundary(g), coboundary(h)
    rhs = cup_product(dg, h) + (cup_product(g, dh) if p % 2 == 0 else -cup_product(g, dh))
    assert coboundary(cup) == rhs


def test_products_reject_bimodule_cochains():
    m = regular_bimodule(identity_functor(vec_group(Q, 2)))
    cx = build_complex(ComplexSpec("bimodule", m, 2))
    g = cx.space(1).zero()
    with pytest.raises(KindMismatch):
        cup_product(g, g)


def test_prelie_slot_range(z2_gf2):
    co = category_coeff(z2_gf2)
    g = co.space(2).zero()
    with pytest.raises(IndexOutOfRange):
        prelie_component(g, g, 2)
    assert prelie_component(g, co.space(3).zero(), 1).degree == 4


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_bracket_graded_antisymmetry(seed):
    co = category_coeff(vec_group(GF(5), 2))
    rng = random.Random(seed)
    g, h = co.space(2).random(rng), co.space(3).random(rng)
    assert prelie_component(g, co.space(2).zero(), 1).is_zero()
    # [g, h] = -(-1)^((m-1)(n-1)) [h, g] with m = 2, n = 3
    assert bracket(g, h) == -bracket(h, g)
    assert composition_product(g, h).degree == 4


@settings(max_examples=10, deadline=None)
@given(seeds, st.integers(0, 2))
def test_diagonal_commutes_with_delta(seed, n):
    c = vec_group(GF(5), 2)
    co, cc = category_coeff(c), category_coeff(deligne_product(c, c))
    f = c.field
    rng = random.Random(seed)
    phi = co.space(n).random(rng)
    d0 = diagonal_matrix(co.space(n), cc.space(n), c)
    d1 = diagonal_matrix(co.space(n + 1), cc.space(n + 1), c)
    lhs = f.matmul(d1, coboundary(phi).vec.reshape(-1, 1))
    rhs = f.matmul(coboundary_matrix(cc, n), f.matmul(d0, phi.vec.reshape(-1, 1)))
    assert np.array_equal(lhs, rhs)
    assert f.is_zero_array(f.matmul(d0, co.space(n).zero().vec.reshape(-1, 1)))


def test_cochain_json_roundtrip(z2_gf2):
    rng = random.Random(5)
    c = vec_group(Q, 3)
    sp = category_coeff(c).space(2)
    phi = sp.random(rng)
    doc = phi.to_json()
    assert doc["degree"] == 2
    keys = [(b["tuple"], b["out"]) for b in doc["blocks"]]
    assert keys == sorted(keys)
    assert Cochain.from_json(sp, doc) == phi


def test_obstruction_of_zero_is_zero(z2_gf2):
    co = category_coeff(z2_gf2)
    zero = co.space(3).zero()
    assert obstruction_category([], co).is_zero()
    assert obstruction_category([zero, zero], co).is_zero()


def generator(c):
    cx = build_complex(ComplexSpec("category", c, 4))
    _, reps = cx.complex.cohomology(3)
    return cx, Cochain(cx.space(3), reps[0])


def test_obstruction_of_the_generator_is_closed(z2_gf2):
    cx, a1 = generator(z2_gf2)
    co = cx.coeffs["C"]
    om = obstruction_category([a1], co)
    assert coboundary(om).is_zero()
    assert om == pentagon_defect(co, [a1], 2)


def test_lower_order_failure_is_reported(z2_gf2):
    co = category_coeff(z2_gf2)
    bad = Cochain(co.space(3), z2_gf2.field.array([0, 1, 0, 0, 0, 0, 0, 0]))
    with pytest.raises(LowerOrderNotDeformation) as e:
        obstruction_category([bad], co)
    assert e.value.index == 1


def test_trivial_total_obstruction_vanishes():
    f = identity_functor(vec_group(GF(2), 2))
    cx = build_complex(ComplexSpec("total", f, 3))
    out = obstruction_total([], [], [], cx)
    assert all(v.is_zero() for v in out.values())


def test_fibred_order_one_condition():
    # cone cocycles of degree 2 are the pairs with delta(F1) = F(alpha1) and delta(alpha1) = 0;
    # over Q so that the sign is visible
    f = identity_functor(vec_group(Q, 2, lambda g, h, k: -1 if g[0] and h[0] and k[0] else 1))
    cx = build_complex(ComplexSpec("fibred", f, 3))
    fld = cx.field
    image = functor_image_matrix(cx.coeffs["F"], cx.coeffs["C"], 3)
    cycles = cx.complex.cycles(2)
    assert cycles.shape[0] > 0
    for row in cycles:
        parts = cx.split(2, row)
        assert coboundary(parts["C"]).is_zero()
        fa = fld.matmul(image, parts["C"].vec.reshape(-1, 1)).reshape(-1)
        assert np.array_equal(coboundary(parts["F"]).vec, fa)
