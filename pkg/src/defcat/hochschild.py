"""Classical Hochschild cochains of a finite-dimensional algebra.

A degree-n cochain phi: A^(x)n -> M is stored as a vector indexed by
(j_1, ..., j_n, k) in row-major order: the coefficient of m_k in
phi(e_j1, ..., e_jn).  Action matrices follow the row convention of the rest
of the package, so ``a . v`` is ``v @ left[a]``.

This module deliberately shares nothing with the categorical cochain code
beyond exact arithmetic and linear algebra, so that it can serve as an oracle.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cochains import ComplexSpec, build_complex
from .complexes import GradedComplex
from .errors import MismatchAt, NotBimodule
from .exact import Field
from .functor import AlgebraData, algebra_to_functor, check_algebra, regular_bimodule
from .linalg import kernel, rank, rref

DEFAULT_MAX_DEGREE = 3


@dataclass(eq=False)
class AlgebraBimodule:
    """A finite-dimensional A-bimodule given by action matrices on a basis of M."""

    algebra: AlgebraData
    dim: int
    left: list      # left[a]: (dim x dim), v -> e_a . v is v @ left[a]
    right: list     # right[b]: v -> v . e_b is v @ right[b]

    @property
    def field(self) -> Field:
        return self.algebra.field


def regular(a: AlgebraData) -> AlgebraBimodule:
    return AlgebraBimodule(a, a.dim, [a.left(i) for i in range(a.dim)],
                           [a.right(i) for i in range(a.dim)])


def _combo(f: Field, coeffs, mats):
    out = f.zeros(mats[0].shape)
    for c, m in zip(coeffs, mats):
        if not f.is_zero(c):
            out = f.plus(out, f.scale(c, m))
    return out


def check_bimodule(m: AlgebraBimodule) -> None:
    a = m.algebra
    f = a.field
    d = a.dim
    eye = f.eye(m.dim)
    if len(m.left) != d or len(m.right) != d:
        raise NotBimodule("one action matrix per algebra basis element is required")
    for x in m.left + m.right:
        if x.shape != (m.dim, m.dim):
            raise NotBimodule(f"action matrix of shape {x.shape}, expected {(m.dim, m.dim)}")
    for i in range(d):
        for j in range(d):
            prod = a.m[i, j]
            # e_i (e_j v) = (e_i e_j) v
            if not np.array_equal(f.matmul(m.left[j], m.left[i]), _combo(f, prod, m.left)):
                raise NotBimodule("left action is not associative", index=[i, j])
            if not np.array_equal(f.matmul(m.right[i], m.right[j]), _combo(f, prod, m.right)):
                raise NotBimodule("right action is not associative", index=[i, j])
            if not np.array_equal(f.matmul(m.left[i], m.right[j]), f.matmul(m.right[j], m.left[i])):
                raise NotBimodule("left and right actions do not commute", index=[i, j])
    if not (np.array_equal(_combo(f, a.unit, m.left), eye)
            and np.array_equal(_combo(f, a.unit, m.right), eye)):
        raise NotBimodule("the unit does not act as the identity")


def _kron(f: Field, *ms):
    out = ms[0]
    for m in ms[1:]:
        out = f.kron(out, m)
    return out


def hochschild_differential(m: AlgebraBimodule, n: int) -> np.ndarray:
    """Matrix of d: C^n -> C^(n+1), shape (d^(n+1) dim M, d^n dim M)."""
    a = m.algebra
    f = a.field
    d, dm = a.dim, m.dim
    mult = a.m.reshape(d * d, d)
    I_M = f.eye(dm)
    # a_0 . phi(a_1, ..., a_n)
    out = np.vstack([_kron(f, f.eye(d ** n), m.left[i].T.copy()) for i in range(d)])
    for i in range(1, n + 1):
        term = _kron(f, f.eye(d ** (i - 1)), mult, f.eye(d ** (n - i)), I_M)
        out = f.plus(out, term) if i % 2 == 0 else f.minus(out, term)
    last = _kron(f, f.eye(d ** n), np.vstack([m.right[j].T.copy() for j in range(d)]))
    return f.plus(out, last) if (n + 1) % 2 == 0 else f.minus(out, last)


def build_hochschild(a: AlgebraData, m: AlgebraBimodule | None = None,
                     max_degree: int = DEFAULT_MAX_DEGREE) -> GradedComplex:
    """Hochschild cochains C^0..C^(max_degree+1) with explicit differentials."""
    check_algebra(a)
    m = m or regular(a)
    check_bimodule(m)
    top = max_degree + 1
    dims = {n: a.dim ** n * m.dim for n in range(top + 1)}
    diffs = {n: hochschild_differential(m, n) for n in range(top)}
    return GradedComplex(a.field, dims, diffs, bounded=False)


def _categorical(a: AlgebraData, max_degree: int):
    fa = algebra_to_functor(a)
    return build_complex(ComplexSpec("bimodule", regular_bimodule(fa), max_degree))


def basis_iso(cx, n: int, d: int) -> np.ndarray:
    """Permutation matrix from categorical to classical coordinates in degree n.

    Categorical coordinates are (tuple, output, row, column); for the one-object
    bridge the row enumerates the fusion-tree basis of F(*)^(x)n, in which the
    factors appear in reading order, and the column is the output basis vector.
    """
    f = cx.field
    labels = cx.basis_labels(n)
    p = f.zeros((len(labels), len(labels)))
    for pos, label in enumerate(labels):
        _, _, row, col = label[-4:]
        digits = np.unravel_index(row, (d,) * n) if n else ()
        target = int(np.ravel_multi_index(tuple(digits) + (col,), (d,) * n + (d,)))
        p[target, pos] = f.one
    return p


def compare_with_categorical(a: AlgebraData, degrees=range(0, DEFAULT_MAX_DEGREE + 1)) -> dict:
    """Match dimensions and differentials of X(F_A, F_A) against HH(A, A)."""
    degrees = list(degrees)
    top = max(degrees)
    f = a.field
    cx = _categorical(a, top)
    hh = build_hochschild(a, max_degree=top)
    rows = []
    for n in degrees:
        if cx.complex.dim(n) != hh.dim(n):
            raise MismatchAt(f"cochain dimensions differ in degree {n}: "
                             f"{cx.complex.dim(n)} vs {hh.dim(n)}", index=n)
        p0 = basis_iso(cx, n, a.dim)
        p1 = basis_iso(cx, n + 1, a.dim)
        if not np.array_equal(f.matmul(p1, cx.d(n)), f.matmul(hh.d(n), p0)):
            raise MismatchAt(f"differentials do not intertwine in degree {n}", index=n)
        h_cat = cx.complex.cohomology(n)[0]
        h_cl = hh.cohomology(n)[0]
        if h_cat != h_cl:
            raise MismatchAt(f"cohomology differs in degree {n}: {h_cat} vs {h_cl}", index=n)
        rows.append({"degree": n, "dim": hh.dim(n), "H": h_cl})
    return {"match": True, "degrees": rows}


# -- the bimodule-inducing subcomplex ----------------------------------------

def inducing_conditions(m: AlgebraBimodule, n: int) -> np.ndarray:
    """Rows cutting out cochains with phi(a x_1, ...) = a phi(...) and phi(..., x_n b) = phi(...) b."""
    a = m.algebra
    f = a.field
    d, dm = a.dim, m.dim
    if n == 0:
        return f.zeros((0, dm))
    I_M = f.eye(dm)
    blocks = []
    for i in range(d):
        blocks.append(f.minus(_kron(f, a.left(i), f.eye(d ** (n - 1)), I_M),
                              _kron(f, f.eye(d ** n), m.left[i].T.copy())))
        blocks.append(f.minus(_kron(f, f.eye(d ** (n - 1)), a.right(i), I_M),
                              _kron(f, f.eye(d ** n), m.right[i].T.copy())))
    return np.vstack(blocks)


def insert_unit(a: AlgebraData, dm: int, n: int) -> np.ndarray:
    """h: C^(n+1) -> C^n, h(phi)(x_1, ..., x_n) = phi(x_1, 1, x_2, ..., x_n)."""
    f = a.field
    d = a.dim
    if n == 0:
        raise ValueError("insert_unit needs n >= 1")
    # x_1 (x) x_2 .. -> x_1 (x) 1 (x) x_2 .., shape (d^n, d^(n+1))
    ins = _kron(f, f.eye(d), a.unit.reshape(1, d), f.eye(d ** (n - 1)))
    return _kron(f, ins, f.eye(dm))


@dataclass
class _Restricted:
    basis: np.ndarray     # rows span the subspace of C^n
    free: list            # coordinates: values at these columns


def _restricted(m: AlgebraBimodule, n: int) -> _Restricted:
    f = m.field
    cond = inducing_conditions(m, n)
    if not cond.shape[0]:
        return _Restricted(f.eye(cond.shape[1]), list(range(cond.shape[1])))
    pivots = set(rref(f, cond)[1])
    # kernel() returns one row per free column, with a one there and zeros at the other free columns
    free = [c for c in range(cond.shape[1]) if c not in pivots]
    return _Restricted(kernel(f, cond), free)


def bimodule_subcomplex_exactness(a: AlgebraData, m: AlgebraBimodule | None = None,
                                  degrees=range(1, DEFAULT_MAX_DEGREE + 1)) -> dict:
    """Check the resolution claims on the subcomplex of bimodule-inducing cochains.

    (a) every restricted 2-cochain is a cocycle;
    (b) h(phi) = phi(-, 1, -, ...) satisfies d h(phi) = phi for restricted cocycles phi.
    """
    m = m or regular(a)
    degrees = [n for n in degrees if n >= 1]
    f = a.field
    hh = build_hochschild(a, m, max(degrees))
    sub = {n: _restricted(m, n) for n in range(1, max(degrees) + 2)}
    report = {"claim_a": None, "claim_b": {}, "restricted_dims": {}, "restricted_H": {},
              "failures": []}
    rdiff = {}
    for n in range(1, max(degrees) + 1):
        src, dst = sub[n], sub[n + 1]
        img = f.matmul(hh.d(n), src.basis.T.copy())          # columns in C^(n+1)
        coords = img[dst.free, :] if dst.free else f.zeros((0, img.shape[1]))
        back = f.matmul(dst.basis.T.copy(), coords) if dst.free else f.zeros(img.shape)
        if not np.array_equal(back, img):
            raise AssertionError(f"d does not preserve the restricted subspace in degree {n}")
        rdiff[n] = coords
    for n in degrees:
        report["restricted_dims"][n] = len(sub[n].free)
    if 2 in degrees:
        bad = [i for i in range(rdiff[2].shape[1]) if not f.is_zero_array(rdiff[2][:, i])]
        report["claim_a"] = not bad
        if bad:
            report["failures"].append({"claim": "a", "degree": 2,
                                       "cochain": [f.format(x) for x in sub[2].basis[bad[0]]]})
    for n in degrees:
        if n < 2:
            continue
        z = kernel(f, rdiff[n]) if rdiff[n].shape[1] else f.zeros((0, 0))
        ok = True
        h = insert_unit(a, m.dim, n - 1)
        for zc in z:
            phi = f.matmul(zc.reshape(1, -1), sub[n].basis).reshape(-1)
            hphi = f.matmul(h, phi.reshape(-1, 1)).reshape(-1)
            dh = f.matmul(hh.d(n - 1), hphi.reshape(-1, 1)).reshape(-1)
            if not np.array_equal(dh, phi):
                ok = False
                report["failures"].append({"claim": "b", "degree": n,
                                           "cochain": [f.format(x) for x in phi]})
                break
        report["claim_b"][n] = ok
        prev = rdiff.get(n - 1)
        rank_in = rank(f, prev) if prev is not None and prev.size else 0
        report["restricted_H"][n] = z.shape[0] - rank_in
    report["ok"] = report["claim_a"] is not False and all(report["claim_b"].values())
    return report
