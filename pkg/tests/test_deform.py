import random

import pytest

from defcat.category import vec_group
from defcat.cochains import Cochain, ComplexSpec, coboundary
from defcat.deform import (DeformationState, EquivalenceWitness, NotEquivalent, Obstructed,
                           check_deformation, classify_first_order, complex_for, equation_failure,
                           equivalence_check, extend_order, nat_transf_first_order, obstruction,
                           unit_transport)
from defcat.errors import CoherenceFailure, KindDegreeMismatch, KindMismatch, NotMonoidalTransformation
from defcat.exact import GF, Q
from defcat.functor import algebra_to_functor, identity_functor, standard_algebras


@pytest.fixture(scope="module")
def z2():
    return vec_group(GF(2), 2)


def generator_state(c, kind="category"):
    base = c if kind == "category" else identity_functor(c)
    cx = complex_for(kind, base)
    r = classify_first_order(cx)
    assert r["dim"] >= 1
    pieces = r["representatives"][0]
    return DeformationState.trivial(kind, base).extended(pieces)


def test_trivial_state(z2):
    s = DeformationState.trivial("category", z2, 2)
    assert check_deformation(s) == {"coherent": True, "kind": "category", "order": 2}
    assert obstruction(s) is None
    assert extend_order(s).order == 3


def test_generator_is_obstructed_at_order_two(z2):
    s = generator_state(z2)
    assert check_deformation(s)["order"] == 1
    assert equation_failure(s) is None
    r = extend_order(s)
    assert isinstance(r, Obstructed)
    assert r.order == 2 and [int(x) for x in r.coordinates] == [1]
    assert obstruction(s).to_json()["class"] == [1]


def test_non_cocycle_is_rejected(z2):
    cx = complex_for("category", z2)
    bad = Cochain(cx.space(3), z2.field.array([0, 1, 0, 0, 0, 0, 0, 0]))
    s = DeformationState("category", z2, [bad])
    with pytest.raises(CoherenceFailure) as e:
        check_deformation(s)
    assert e.value.index[0] == 1
    assert equation_failure(s) == 1


def test_no_deformations_in_characteristic_zero():
    c = vec_group(Q, 3)
    assert classify_first_order(complex_for("category", c))["dim"] == 0
    s = DeformationState.trivial("category", c)
    for _ in range(3):
        s = extend_order(s)
    assert s.order == 3 and all(x.is_zero() for x in s.alpha)


def test_classify_checks_degree(z2):
    with pytest.raises(KindDegreeMismatch):
        classify_first_order(ComplexSpec("category", z2, 4), degree=2)
    assert classify_first_order(ComplexSpec("category", z2, 4), degree=3)["dim"] == 1


def test_equivalence(z2):
    s = generator_state(z2)
    cx = s.complex
    rng = random.Random(1)
    phi = cx.space(2).random(rng)
    moved = DeformationState("category", z2, [s.alpha[0] + coboundary(phi)])
    w = equivalence_check(moved, s)
    assert isinstance(w, EquivalenceWitness)
    assert coboundary(w.pieces["C"]) == moved.alpha[0] - s.alpha[0]
    ne = equivalence_check(s, DeformationState.trivial("category", z2, 1))
    assert isinstance(ne, NotEquivalent)
    assert ne.to_json()["equivalent"] is False


def test_unit_transport(z2):
    s = generator_state(z2)
    for nus in ([], [1]):
        r = unit_transport(s, nus)
        assert r["triangle"] == "ok" and r["bigon"] == "ok"
        assert r["lambda"]["0"] == r["rho"]["0"]


def test_unit_transport_is_for_categories(z2):
    with pytest.raises(KindMismatch):
        unit_transport(DeformationState.trivial("functor", identity_functor(z2), 1))


@pytest.mark.parametrize("kind,dim", [("functor", 1), ("fibred", 0), ("total", 1)])
def test_functor_kinds_classify(z2, kind, dim):
    r = classify_first_order(complex_for(kind, identity_functor(z2)))
    assert r["degree"] == 2 and r["dim"] == dim


def test_functor_generator_extends_and_total_is_obstructed(z2):
    s = generator_state(z2, "functor")
    nxt = extend_order(s)
    assert not isinstance(nxt, Obstructed)
    assert equation_failure(nxt) is None
    t = generator_state(z2, "total")
    assert isinstance(extend_order(t), Obstructed)


def test_frozen_pieces_are_enforced(z2):
    f = identity_functor(z2)
    cx = complex_for("category", z2)
    alpha = Cochain(cx.space(3), z2.field.array([1] * 8))
    with pytest.raises(KindMismatch):
        DeformationState("functor", f, alpha=[alpha])


def test_state_json(z2):
    s = generator_state(z2)
    doc = s.to_json()
    assert doc["kind"] == "category" and doc["order"] == 1 and len(doc["alpha"]) == 1
    assert "Ftilde" not in doc


def test_truncation_pads_and_cuts(z2):
    s = generator_state(z2)
    assert s.truncated(0).order == 0
    assert s.truncated(3).order == 3


def test_nat_transformations():
    c = vec_group(GF(2), 2)
    f = identity_functor(c)
    phi = {((a,), a): c.field.array([[1]]) for a in range(2)}
    r = nat_transf_first_order(f, f, phi)
    assert (r["H1"], r["H2"]) == (1, 1)
    cq = vec_group(Q, 2)
    fq = identity_functor(cq)
    sign = {((a,), a): Q.array([[(-1) ** a]]) for a in range(2)}
    r = nat_transf_first_order(fq, fq, sign)
    assert (r["H1"], r["H2"]) == (0, 0)
    with pytest.raises(NotMonoidalTransformation):
        nat_transf_first_order(fq, fq, {((a,), a): Q.array([[2]]) for a in range(2)})


def test_nat_on_the_dual_numbers():
    a = standard_algebras(Q, "dual")
    f = algebra_to_functor(a)
    phi = {((0,), 0): Q.eye(2)}
    assert nat_transf_first_order(f, f, phi)["H1"] == 1
