import numpy as np
from hypothesis import given, settings, strategies as st

from defcat.exact import GF, Q
from defcat.linalg import (MatrixK, NoSolution, kernel, rank, rank_kernel_image, reduce_against, rref,
                           solve, solve_linear)

from oracles import rank as oracle_rank


def test_rank_of_dependent_rows():
    assert rank(Q, Q.array([[1, 2], [2, 4]])) == 1


def test_solve_consistent():
    x = solve_linear(MatrixK.of(Q, [[1, 1]]), [2])
    assert not isinstance(x, NoSolution)
    assert x[0] + x[1] == 2


def test_solve_inconsistent_has_certificate():
    r = solve_linear(MatrixK.of(Q, [[0]]), [1])
    assert isinstance(r, NoSolution)
    assert [int(v) for v in r.certificate] == [1]


def test_rank_kernel_image_splits():
    m = MatrixK.of(GF(3), [[1, 2, 0], [2, 1, 0]])
    rk, ker, img = rank_kernel_image(m)
    assert rk == 1 and ker.rows == 2 and img.rows == 1


def test_reduce_against_boundary_gives_zero():
    f = GF(5)
    r, piv = rref(f, f.array([[1, 2, 3], [0, 1, 4]]))
    # the sum of the two rows
    assert f.is_zero_array(reduce_against(f, f.array([1, 3, 7]), r, piv))


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-3, 3), min_size=c, max_size=c), min_size=r, max_size=r)))


@settings(max_examples=60)
@given(matrices, st.sampled_from([0, 2, 5]))
def test_rank_matches_oracle(rows, p):
    f = Q if p == 0 else GF(p)
    m = f.array(rows)
    assert rank(f, m) == oracle_rank(rows, p)
    k = kernel(f, m)
    assert k.shape[0] == m.shape[1] - rank(f, m)
    if k.shape[0]:
        assert f.is_zero_array(f.matmul(m, k.T.copy()))


@settings(max_examples=60)
@given(matrices, st.sampled_from([0, 3]), st.data())
def test_solve_agrees_with_certificate(rows, p, data):
    f = Q if p == 0 else GF(p)
    m = f.array(rows)
    b = f.array(data.draw(st.lists(st.integers(-3, 3), min_size=len(rows), max_size=len(rows))))
    x = solve(f, m, b)
    if isinstance(x, NoSolution):
        y = x.certificate
        assert f.is_zero_array(f.matmul(y.reshape(1, -1), m))
        assert not f.is_zero(f.matmul(y.reshape(1, -1), b.reshape(-1, 1))[0, 0])
    else:
        assert np.array_equal(f.matmul(m, x.reshape(-1, 1)).reshape(-1), b)
