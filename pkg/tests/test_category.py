import itertools
import random

import numpy as np
import pytest

from defcat.category import (Part, deligne_product, degree3_nat, fibonacci, left_tree, make_fusion,
                             nat_equal, pad_compose, reassociate, right_tree, route_by_moves,
                             unit_commuting_check, validate_fusion, verify_coherence, vec_group)
from defcat.errors import PentagonViolation, ShapeError, SingularF, TriangleViolation
from defcat.exact import GF, Q
from defcat.shapes import T, leaf


def sign(g, h, k):
    return -1 if g[0] and h[0] and k[0] else 1


def corrupt(c, key, value):
    F = dict(c.F)
    F[key] = c.field.array([[value]])
    return type(c)(c.field, c.names, c.unit, c.N, F, c.lam, c.rho)


@pytest.mark.parametrize("c", [
    vec_group(Q, 2), vec_group(Q, 2, sign), vec_group(Q, 3), vec_group(GF(2), 2), fibonacci(GF(19)),
], ids=["z2", "z2-sign", "z3", "z2-gf2", "fib"])
def test_coherent_fixtures(c):
    r = verify_coherence(c)
    assert r["pentagon"] == "ok" and r["triangle"] == "ok"


def test_z2_has_sixteen_pentagon_instances():
    assert verify_coherence(vec_group(Q, 2))["pentagon_instances"] == 16


def test_singular_entry():
    c = corrupt(vec_group(Q, 2), (1, 1, 1, 1), 0)
    with pytest.raises(SingularF) as e:
        validate_fusion(c)
    assert tuple(e.value.index) == ("1", "1", "1", "1")


def test_corrupted_entry_breaks_pentagon():
    c = corrupt(vec_group(Q, 2), (1, 1, 1, 1), 2)
    with pytest.raises(PentagonViolation) as e:
        verify_coherence(c)
    assert e.value.index is not None


def test_fibonacci_corruption_is_located():
    c = fibonacci(GF(19))
    F = dict(c.F)
    m = F[(1, 1, 1, 1)].copy()
    m[1, 1] = GF(19).coerce(m[1, 1] + 1)
    bad = type(c)(c.field, c.names, c.unit, c.N, F | {(1, 1, 1, 1): m}, c.lam, c.rho)
    with pytest.raises(PentagonViolation) as e:
        verify_coherence(bad)
    assert all(x in c.names for x in e.value.index)


def test_unitor_mismatch_breaks_triangle():
    c = vec_group(Q, 2)
    bad = type(c)(c.field, c.names, c.unit, c.N, dict(c.F), (Q.one, Q.coerce(2)), c.rho)
    with pytest.raises(TriangleViolation):
        verify_coherence(bad)


def test_make_fusion_fills_unit_entries():
    c = make_fusion(Q, ["0", "1"], "0",
                    [("0", "0", "0", 1), ("0", "1", "1", 1), ("1", "0", "1", 1), ("1", "1", "0", 1)],
                    {("1", "1", "1", "1"): [[-1]]})
    assert verify_coherence(c)["pentagon"] == "ok"
    assert c.F[(0, 1, 1, 0)][0, 0] == 1


def test_wrong_shape_is_rejected():
    c = vec_group(Q, 2)
    F = dict(c.F)
    F[(1, 1, 1, 1)] = Q.eye(2)
    with pytest.raises(ShapeError):
        validate_fusion(type(c)(c.field, c.names, c.unit, c.N, F, c.lam, c.rho))


@pytest.mark.parametrize("c", [vec_group(Q, 2, sign), fibonacci(GF(19))], ids=["z2-sign", "fib"])
def test_reassociate_three_is_F(c):
    for a, b, cc in itertools.product(range(c.rank), repeat=3):
        got = reassociate((a, b, cc), left_tree(3), right_tree(3), c)
        for d, m in got.items():
            assert np.array_equal(m, c.F[(a, b, cc, d)])
        same = reassociate((a, b, cc), left_tree(3), left_tree(3), c)
        for m in same.values():
            assert np.array_equal(m, c.field.eye(m.shape[0]))


def test_two_routes_agree_for_fibonacci():
    c = fibonacci(GF(19))
    short = [((), 1), ((), 1)]
    long = [((0,), 1), ((), 1), ((1,), 1)]
    for word in itertools.product(range(2), repeat=4):
        m1, e1 = route_by_moves(word, left_tree(4), short, c)
        m2, e2 = route_by_moves(word, left_tree(4), long, c)
        assert e1 == e2
        assert m1.keys() == m2.keys()
        assert all(np.array_equal(m1[z], m2[z]) for z in m1)


def test_pad_compose_of_normalized_part():
    c = vec_group(GF(5), 2)
    rng = random.Random(0)
    blocks = {q: c.field.random_array(rng, (1, 1)) for q in c.F}
    nat = degree3_nat(c, blocks)
    out = pad_compose([Part(nat, T(T(leaf(0), leaf(1)), leaf(2)))], c.ctx)
    assert nat_equal(out, nat)


def test_unit_commuting_identities():
    c = vec_group(GF(5), 2)
    assert unit_commuting_check(c.F, c.F, c)
    rng = random.Random(3)
    for _ in range(5):
        psi = {q: c.field.random_array(rng, (1, 1)) for q in c.F}
        phi = {q: c.field.random_array(rng, (1, 1)) for q in c.F}
        assert unit_commuting_check(psi, phi, c)
        assert unit_commuting_check(psi, {q: c.field.scale(3, m) for q, m in phi.items()}, c)


def test_deligne_product_of_pointed_categories():
    p = deligne_product(vec_group(Q, 2), vec_group(Q, 2))
    assert p.rank == 4
    assert verify_coherence(p)["pentagon"] == "ok"
    # Z/2 x Z/2: every product is a single simple and every simple squares to the unit
    for a, b in itertools.product(range(4), repeat=2):
        assert sum(p.N[a][b]) == 1
    assert all(p.N[a][a][p.unit] == 1 for a in range(4))


def test_deligne_product_with_fibonacci():
    p = deligne_product(fibonacci(GF(19)), vec_group(GF(19), 2))
    assert p.rank == 4
    assert verify_coherence(p)["pentagon"] == "ok"
