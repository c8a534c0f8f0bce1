"""Lax monoidal functors, bimodules over them, and the algebra bridge.

Functors live in a :class:`~defcat.shapes.Ctx` with two levels: ``C`` for the
source category and ``E`` for the target.  Structure maps are Nats:

    F~      T(A(F,L0), A(F,L1)) -> A(F, T(L0,L1))      blocks ((a,b), z)
    F0      1 -> A(F, 1)                               block  ((), unit)
    mu_l    T(A(F,L0), A(M,L1)) -> A(M, T(L0,L1))
    mu_r    T(A(M,L0), A(G,L1)) -> A(M, T(L0,L1))

Block rows and columns follow the element order of :mod:`defcat.shapes`; for
F~ at (a, b) and output z the rows are (x, y, j1, j2, mu) and the columns
(c, mu', j).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .category import FusionData
from .errors import (HexagonViolation, LeftHexagonViolation, MiddleHexagonViolation,
                     NotAssociative, NotUnital, RightHexagonViolation, UnitSquareViolation,
                     UnitViolation)
from .exact import Field, mseries_mul
from .shapes import UNIT, A, Ctx, FunctorSpec, Nat, T, leaf, nat_from_function

L0, L1, L2 = leaf(0), leaf(1), leaf(2)


@dataclass(eq=False)
class FunctorData:
    source: FusionData
    target: FusionData
    mult: tuple                # mult[c][z]
    Ft: dict                   # ((a, b), z) -> array
    F0: np.ndarray             # 1 x mult[unit_C][unit_E]

    @property
    def field(self) -> Field:
        return self.target.field

    def spec(self, src="C", tgt="E") -> FunctorSpec:
        return FunctorSpec(src, tgt, self.mult)

    def ctx(self) -> Ctx:
        return Ctx(self.field, {"C": self.source, "E": self.target}, {"F": self.spec()})


def ft_nat(blocks: dict, fname="F", level="E", name=None) -> Nat:
    return Nat(T(A(fname, L0), A(fname, L1)), A(fname, T(L0, L1)), level, dict(blocks),
               name=name or f"{fname}~")


def f0_nat(f0: np.ndarray, unit_e: int, fname="F", level="E") -> Nat:
    return Nat(UNIT, A(fname, UNIT), level, {((), unit_e): f0}, name=f"{fname}0")


def mul_nat(blocks: dict, fname="F", mname="M", level="E") -> Nat:
    return Nat(T(A(fname, L0), A(mname, L1)), A(mname, T(L0, L1)), level, dict(blocks), name="mu_l")


def mur_nat(blocks: dict, mname="M", gname="F", level="E") -> Nat:
    return Nat(T(A(mname, L0), A(gname, L1)), A(mname, T(L0, L1)), level, dict(blocks), name="mu_r")


def _series(x):
    return x if isinstance(x, list) else [x]


def series_route(ctx: Ctx, steps, shape, labels, z, level, order: int, cache=True):
    """Compose steps whose Nats are given as series (lists indexed by order).

    Each step is (nats, path); ``nats[k]`` may be None for a zero coefficient.
    Returns the list of coefficient matrices of the composite.
    """
    f = ctx.field
    cur = shape
    acc = None
    for nats, path in steps:
        nats = _series(nats)
        base = next(n for n in nats if n is not None)
        new = ctx.step_shape(base, cur, path)
        mats = []
        for k in range(order + 1):
            n = nats[k] if k < len(nats) else None
            if n is None:
                mats.append(f.zeros((ctx.dim(cur, labels, z, level), ctx.dim(new, labels, z, level))))
            else:
                mats.append(ctx.step_matrix(n, cur, path, labels, z, level, cache=cache)[0])
        acc = mats if acc is None else mseries_mul(f, acc, mats)
        cur = new
    if acc is None:
        d = ctx.dim(shape, labels, z, level)
        acc = [f.eye(d)] + [f.zeros((d, d)) for _ in range(order)]
    return acc, cur


def _first_diff(a, b):
    for k, (x, y) in enumerate(zip(a, b)):
        if not np.array_equal(x, y):
            return k
    return None


def hexagon_failures(ctx: Ctx, ft, alpha_c, alpha_e, order=0, fname="F", first_only=True,
                     cache=True):
    """Hexagon (F(a)F(b))F(c) -> F(a(bc)) for every (a, b, c) and output.

    ``ft``, ``alpha_c``, ``alpha_e`` are Nats or series (lists of Nats).
    Returns a list of (order, (a, b, c, z)).
    """
    cats = ctx.levels
    src = T(T(A(fname, L0), A(fname, L1)), A(fname, L2))
    lhs_steps = [(alpha_e, ()), (ft, (1,)), (ft, ())]
    rhs_steps = [(ft, (0,)), (ft, ()), (alpha_c, (0,))]
    out = []
    rc = cats[ctx.functors[fname].src].rank
    for a in range(rc):
        for b in range(rc):
            for c in range(rc):
                labels = (a, b, c)
                for z in range(cats["E"].rank):
                    if not ctx.dim(src, labels, z, "E"):
                        continue
                    lhs, _ = series_route(ctx, lhs_steps, src, labels, z, "E", order, cache)
                    rhs, _ = series_route(ctx, rhs_steps, src, labels, z, "E", order, cache)
                    k = _first_diff(lhs, rhs)
                    if k is not None:
                        out.append((k, (a, b, c, z)))
                        if first_only:
                            return out
    return out


def unit_square_failures(ctx: Ctx, ft, f0, fname="F"):
    e = ctx.levels["E"]
    lam_e, rho_e = ctx.structural("E", "lam"), ctx.structural("E", "rho")
    lam_c, rho_c = ctx.structural("C", "lam"), ctx.structural("C", "rho")
    out = []
    for a in range(ctx.levels["C"].rank):
        for z in range(e.rank):
            for side, shape, steps, ref in (
                    ("left", T(UNIT, A(fname, L0)), [(f0, (0,)), (ft, ()), (lam_c, (0,))], lam_e),
                    ("right", T(A(fname, L0), UNIT), [(f0, (1,)), (ft, ()), (rho_c, (0,))], rho_e)):
                if not ctx.dim(shape, (a,), z, "E"):
                    continue
                m1, _ = ctx.route_matrix(steps, shape, (a,), z, "E")
                m2, _ = ctx.route_matrix([(ref, ())], shape, (a,), z, "E")
                if not np.array_equal(m1, m2):
                    out.append((a, side))
    return out


def verify_functor(f: FunctorData) -> dict:
    ctx = f.ctx()
    ft = ft_nat(f.Ft)
    f0 = f0_nat(f.F0, f.target.unit)
    src_n, tgt_n = f.source.names, f.target.names
    bad = hexagon_failures(ctx, ft, ctx.structural("C", "alpha"), ctx.structural("E", "alpha"))
    if bad:
        _, (a, b, c, z) = bad[0]
        idx = (src_n[a], src_n[b], src_n[c])
        raise HexagonViolation(f"hexagon fails at {idx} (output {tgt_n[z]})", index=idx)
    bad = unit_square_failures(ctx, ft, f0)
    if bad:
        a, side = bad[0]
        raise UnitSquareViolation(f"{side} unit square fails at {src_n[a]}", index=(src_n[a], side))
    return {"hexagon": "ok", "unit_squares": "ok", "strong": is_strong(f)}


def is_strong(f: FunctorData) -> bool:
    fld = f.field
    for m in list(f.Ft.values()) + [f.F0]:
        if m.shape[0] != m.shape[1]:
            return False
        try:
            fld.inverse_matrix(m)
        except Exception:
            return False
    return True


def identity_functor(c: FusionData, scale=None, f0=None) -> FunctorData:
    """Id_C with F~ = scale * id (default 1) and F0 as given (default 1)."""
    fld = c.field
    s = fld.one if scale is None else fld.coerce(scale)
    mult = tuple(tuple(1 if a == z else 0 for z in range(c.rank)) for a in range(c.rank))
    tmp = FunctorData(c, c, mult, {}, fld.array([[1]]))
    ctx = tmp.ctx()
    src = T(A("F", L0), A("F", L1))
    dst = A("F", T(L0, L1))
    blocks = {}
    for a in range(c.rank):
        for b in range(c.rank):
            for z in range(c.rank):
                r, k = ctx.dim(src, (a, b), z, "E"), ctx.dim(dst, (a, b), z, "E")
                if r:
                    assert r == k
                    blocks[((a, b), z)] = fld.scale(s, fld.eye(r))
    f0v = fld.array([[fld.one if f0 is None else fld.coerce(f0)]])
    return FunctorData(c, c, mult, blocks, f0v)


# -- bimodules ---------------------------------------------------------------

@dataclass(eq=False)
class BimoduleData:
    """An F,G-bimodule M: left action of F, right action of G."""

    F: FunctorData
    G: FunctorData
    mult: tuple
    mul: dict        # ((a, x), z) -> array
    mur: dict        # ((x, b), z) -> array

    def ctx(self) -> Ctx:
        fs = {"F": self.F.spec(), "M": FunctorSpec("C", "E", self.mult)}
        if self.G is not self.F:
            fs["G"] = self.G.spec()
        return Ctx(self.F.field, {"C": self.F.source, "E": self.F.target}, fs)

    @property
    def gname(self) -> str:
        return "F" if self.G is self.F else "G"


def regular_bimodule(f: FunctorData) -> BimoduleData:
    """M = F with mu_l = mu_r = F~."""
    return BimoduleData(f, f, f.mult, dict(f.Ft), dict(f.Ft))


def verify_bimodule(m: BimoduleData) -> dict:
    ctx = m.ctx()
    g = m.gname
    ftF = ft_nat(m.F.Ft, "F")
    ftG = ft_nat(m.G.Ft, g) if g != "F" else ftF
    f0F = f0_nat(m.F.F0, m.F.target.unit, "F")
    f0G = f0_nat(m.G.F0, m.G.target.unit, g) if g != "F" else f0F
    mul = mul_nat(m.mul, "F", "M")
    mur = mur_nat(m.mur, "M", g)
    aE, aC = ctx.structural("E", "alpha"), ctx.structural("C", "alpha")
    names = m.F.source.names
    rc, re = m.F.source.rank, m.F.target.rank

    def check(shape, r1, r2, labels):
        for z in range(re):
            if not ctx.dim(shape, labels, z, "E"):
                continue
            x1, e1 = ctx.route_matrix(r1, shape, labels, z, "E")
            x2, e2 = ctx.route_matrix(r2, shape, labels, z, "E")
            assert e1 == e2, (e1, e2)
            if not np.array_equal(x1, x2):
                return False
        return True

    triples = [(a, b, c) for a in range(rc) for b in range(rc) for c in range(rc)]
    left = T(T(A("F", L0), A("F", L1)), A("M", L2))
    for t in triples:
        if not check(left, [(aE, ()), (mul, (1,)), (mul, ())],
                     [(ftF, (0,)), (mul, ()), (aC, (0,))], t):
            raise LeftHexagonViolation(f"left hexagon fails at {tuple(names[i] for i in t)}",
                                       index=tuple(names[i] for i in t))
    for x in range(rc):
        shape = T(UNIT, A("M", L0))
        if not check(shape, [(f0F, (0,)), (mul, ()), (ctx.structural("C", "lam"), (0,))],
                     [(ctx.structural("E", "lam"), ())], (x,)):
            raise UnitViolation(f"left unit square fails at {names[x]}", index=(names[x], "left"))
    right = T(T(A("M", L0), A(g, L1)), A(g, L2))
    for t in triples:
        if not check(right, [(mur, (0,)), (mur, ()), (aC, (0,))],
                     [(aE, ()), (ftG, (1,)), (mur, ())], t):
            raise RightHexagonViolation(f"right hexagon fails at {tuple(names[i] for i in t)}",
                                        index=tuple(names[i] for i in t))
    for x in range(rc):
        shape = T(A("M", L0), UNIT)
        if not check(shape, [(f0G, (1,)), (mur, ()), (ctx.structural("C", "rho"), (0,))],
                     [(ctx.structural("E", "rho"), ())], (x,)):
            raise UnitViolation(f"right unit square fails at {names[x]}", index=(names[x], "right"))
    middle = T(T(A("F", L0), A("M", L1)), A(g, L2))
    for t in triples:
        if not check(middle, [(mul, (0,)), (mur, ()), (aC, (0,))],
                     [(aE, ()), (mur, (1,)), (mul, ())], t):
            raise MiddleHexagonViolation(f"middle hexagon fails at {tuple(names[i] for i in t)}",
                                         index=tuple(names[i] for i in t))
    return {"left_hexagon": "ok", "right_hexagon": "ok", "middle_hexagon": "ok", "units": "ok"}


# -- monoidal natural transformations ----------------------------------------

def nat_transformation_check(phi: dict, f: FunctorData, g: FunctorData) -> bool:
    """phi[((a,), z)]: F(a) -> G(a).  Checks F~ phi = (phi (x) phi) G~ and F0 phi_I = G0."""
    ctx = Ctx(f.field, {"C": f.source, "E": f.target}, {"F": f.spec(), "G": g.spec()})
    p = Nat(A("F", L0), A("G", L0), "E", dict(phi), name="phi")
    ftF, ftG = ft_nat(f.Ft, "F"), ft_nat(g.Ft, "G")
    shape = T(A("F", L0), A("F", L1))
    for a in range(f.source.rank):
        for b in range(f.source.rank):
            for z in range(f.target.rank):
                if not ctx.dim(shape, (a, b), z, "E"):
                    continue
                m1, _ = ctx.route_matrix([(ftF, ()), (p, ())], shape, (a, b), z, "E")
                m2, _ = ctx.route_matrix([(p, (0,)), (p, (1,)), (ftG, ())], shape, (a, b), z, "E")
                if not np.array_equal(m1, m2):
                    return False
    u = f.target.unit
    m1, _ = ctx.route_matrix([(f0_nat(f.F0, u, "F"), ()), (p, ())], UNIT, (), u, "E")
    return bool(np.array_equal(m1, g.F0))


def induced_bimodule(f: FunctorData, g: FunctorData, phi: dict) -> BimoduleData:
    """G as an F,F-bimodule: mu_l = (phi (x) id) G~, mu_r = (id (x) phi) G~."""
    ctx = Ctx(f.field, {"C": f.source, "E": f.target},
              {"F": f.spec(), "M": FunctorSpec("C", "E", g.mult)})
    p = Nat(A("F", L0), A("M", L0), "E", dict(phi), name="phi")
    gt = ft_nat(g.Ft, "M")
    ml = nat_from_function(
        ctx, T(A("F", L0), A("M", L1)), A("M", T(L0, L1)), "E",
        lambda lb, z: ctx.route_matrix([(p, (0,)), (gt, ())], T(A("F", L0), A("M", L1)), lb, z, "E")[0])
    mr = nat_from_function(
        ctx, T(A("M", L0), A("F", L1)), A("M", T(L0, L1)), "E",
        lambda lb, z: ctx.route_matrix([(p, (1,)), (gt, ())], T(A("M", L0), A("F", L1)), lb, z, "E")[0])
    return BimoduleData(f, f, g.mult, ml.blocks, mr.blocks)


# -- algebras ----------------------------------------------------------------

@dataclass(eq=False)
class AlgebraData:
    field: Field
    dim: int
    m: np.ndarray        # m[i, j, k]: coefficient of e_k in e_i e_j
    unit: np.ndarray     # length dim

    def left(self, a: int) -> np.ndarray:
        """Matrix of e_a * (-) in the row convention: rows input basis, cols output."""
        return self.m[a, :, :]

    def right(self, b: int) -> np.ndarray:
        return self.m[:, b, :]

    def mult_vec(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        f = self.field
        out = f.zeros(self.dim)
        for i in range(self.dim):
            if f.is_zero(x[i]):
                continue
            for j in range(self.dim):
                if f.is_zero(y[j]):
                    continue
                out = f.plus(out, f.scale(f.mul(x[i], y[j]), self.m[i, j]))
        return out


def make_algebra(field: Field, m, unit) -> AlgebraData:
    arr = field.array(m)
    d = arr.shape[0]
    if arr.shape != (d, d, d):
        raise ValueError(f"structure constants have shape {arr.shape}")
    return AlgebraData(field, d, arr, field.array(unit))


def check_algebra(a: AlgebraData) -> None:
    f = a.field
    d = a.dim
    e = f.eye(d)
    for i in range(d):
        for j in range(d):
            for k in range(d):
                lhs = a.mult_vec(a.mult_vec(e[i], e[j]), e[k])
                rhs = a.mult_vec(e[i], a.mult_vec(e[j], e[k]))
                if not np.array_equal(lhs, rhs):
                    raise NotAssociative(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})", index=(i, j, k))
    for i in range(d):
        if not (np.array_equal(a.mult_vec(a.unit, e[i]), e[i])
                and np.array_equal(a.mult_vec(e[i], a.unit), e[i])):
            raise NotUnital(f"unit fails on e{i}", index=(i,))


def point_category(field: Field) -> FusionData:
    """One simple object (the unit) with trivial structure."""
    return FusionData(field, ("1",), 0, (((1,),),), {(0, 0, 0, 0): field.array([[1]])},
                      (field.one,), (field.one,))


def algebra_to_functor(a: AlgebraData, check=True) -> FunctorData:
    if check:
        check_algebra(a)
    f = a.field
    d = a.dim
    src = point_category(f)
    tgt = point_category(f)
    ft = f.zeros((d * d, d))
    for i in range(d):
        for j in range(d):
            ft[i * d + j] = a.m[i, j]
    return FunctorData(src, tgt, ((d,),), {((0, 0), 0): ft}, a.unit.reshape(1, d).copy())


def standard_algebras(field: Field, name: str) -> AlgebraData:
    """Named small algebras: 'k', 'dual' (k[x]/x^2), 'mat2' (2x2 matrices)."""
    if name == "k":
        return make_algebra(field, [[[1]]], [1])
    if name == "dual":
        m = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
        return make_algebra(field, m, [1, 0])
    if name == "mat2":
        # basis E11, E12, E21, E22; E_ij E_kl = delta_jk E_il
        idx = [(0, 0), (0, 1), (1, 0), (1, 1)]
        m = [[[0] * 4 for _ in range(4)] for _ in range(4)]
        for p, (i, j) in enumerate(idx):
            for q, (k, l) in enumerate(idx):
                if j == k:
                    m[p][q][idx.index((i, l))] = 1
        return make_algebra(field, m, [1, 0, 0, 1])
    raise ValueError(f"unknown algebra {name!r}")
