import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from defcat.complexes import ComplexMap, GradedComplex, cone, les_rank_check
from defcat.errors import NotAChainMap, NotAComplex
from defcat.exact import GF, Q
from defcat.linalg import kernel

from oracles import group_differential


def two_term(f):
    return GradedComplex(f, {0: 1, 1: 1}, {0: f.eye(1)}, bounded=True)


def test_identity_differential_is_acyclic():
    c = two_term(Q)
    assert c.cohomology(0)[0] == 0 and c.cohomology(1)[0] == 0


def test_zero_differentials():
    f = GF(3)
    c = GradedComplex(f, {0: 2, 1: 3}, {0: f.zeros((3, 2))}, bounded=True)
    assert [c.cohomology(n)[0] for n in (0, 1)] == [2, 3]


def test_group_complex_of_z2_mod_2():
    f = GF(2)
    dims = {n: 2 ** n for n in range(5)}
    diffs = {n: f.array(group_differential([2], n, 2)) for n in range(4)}
    c = GradedComplex(f, dims, diffs)
    assert [c.cohomology(n)[0] for n in range(4)] == [1, 1, 1, 1]


def test_d_squared_is_checked():
    f = Q
    with pytest.raises(NotAComplex):
        GradedComplex(f, {0: 1, 1: 1, 2: 1}, {0: f.eye(1), 1: f.eye(1)})


def test_non_chain_map_rejected():
    f = Q
    a = two_term(f)
    b = GradedComplex(f, {0: 1, 1: 1}, {0: f.zeros((1, 1))}, bounded=True)
    with pytest.raises(NotAChainMap):
        ComplexMap(a, b, {0: f.eye(1), 1: f.eye(1)})


def random_complex(f, rng, dims):
    """A bounded complex built as d_n = s_n p_n with p_(n+1) s_n = 0."""
    degs = sorted(dims)
    diffs = {}
    for n in degs[:-1]:
        a, b = dims[n], dims[n + 1]
        prev = diffs.get(n - 1)
        m = f.random_array(rng, (b, a), 2)
        if prev is not None and prev.size:
            # project away the image of the previous differential
            k = kernel(f, prev.T.copy())
            if k.shape[0] == 0:
                m = f.zeros((b, a))
            else:
                m = f.matmul(f.random_array(rng, (b, k.shape[0]), 2), k)
        diffs[n] = m
    return GradedComplex(f, dims, diffs, bounded=True)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([0, 2, 5]))
def test_cone_of_identity_is_acyclic(seed, p):
    f = Q if p == 0 else GF(p)
    rng = random.Random(seed)
    c = random_complex(f, rng, {0: rng.randint(0, 3), 1: rng.randint(0, 3), 2: rng.randint(0, 3)})
    u = ComplexMap(c, c, {n: f.eye(c.dim(n)) for n in range(c.lo, c.hi + 1)})
    cc = cone(u).complex
    assert all(cc.cohomology(n)[0] == 0 for n in range(cc.lo, cc.hi + 1))
    assert all(cc.dim(n) == c.dim(n) + c.dim(n + 1) for n in range(cc.lo, cc.hi + 1))
    assert les_rank_check(u)["ok"]


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_cone_of_zero_map_splits(seed):
    f = GF(3)
    rng = random.Random(seed)
    a = random_complex(f, rng, {0: rng.randint(0, 3), 1: rng.randint(0, 3), 2: rng.randint(0, 3)})
    b = random_complex(f, rng, {0: rng.randint(0, 3), 1: rng.randint(0, 3), 2: rng.randint(0, 3)})
    u = ComplexMap(a, b, {n: f.zeros((b.dim(n), a.dim(n))) for n in range(0, 3)})
    cc = cone(u).complex
    for n in range(cc.lo, cc.hi + 1):
        assert cc.cohomology(n)[0] == b.cohomology(n)[0] + a.cohomology(n + 1)[0]
    assert les_rank_check(u)["ok"]


def test_cone_block_shape():
    f = GF(5)
    rng = random.Random(1)
    a = random_complex(f, rng, {0: 2, 1: 3, 2: 2})
    u = ComplexMap(a, a, {n: f.eye(a.dim(n)) for n in range(3)})
    cc = cone(u).complex
    d0 = cc.d(0)
    nb0, nb1 = a.dim(0), a.dim(1)
    assert np.array_equal(d0[:nb1, :nb0], a.d(0))
    assert np.array_equal(d0[:nb1, nb0:], f.eye(nb1))
    assert np.array_equal(d0[nb1:, nb0:], f.scale(f.neg(f.one), a.d(1)))
    assert f.is_zero_array(d0[nb1:, :nb0])
