"""Deformation cochain complexes as explicit matrices.

A degree-n cochain is a Nat from the left comb of the n (functor images of)
leaves to the right comb, wrapped in the coefficient functor:

    category        (..(L0 L1)..) L_{n-1}            -> L0 (L1 (.. L_{n-1}))
    functor F       (..(F L0  F L1)..) F L_{n-1}     -> F(L0 (L1 (..)))
    bimodule M      (..(F L0  F L1)..) F L_{n-1}     -> M(L0 (L1 (..)))

with degree 0 running from the unit.  Coordinates are the entries of the
blocks, keyed by (tuple of simples, output simple) in sorted order and
row-major inside each block.

The coboundary and the chain maps between complexes are assembled term by
term: every term is a route of structure maps with the variable cochain
applied once somewhere in the middle, and the contribution of each variable
coordinate is read off from the support of the route matrices.
"""
from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field

import numpy as np

from .category import FusionData, deligne_product, split_product_elem
from .complexes import ComplexMap, ConeComplex, GradedComplex, cone
from .errors import (DegreeOverflow, IndexOutOfRange, KindMismatch, LowerOrderNotDeformation,
                     ShapeError)
from .functor import (BimoduleData, FunctorData, f0_nat, ft_nat, mul_nat, mur_nat, series_route,
                      verify_functor)
from .shapes import (A, Ctx, Nat, T, graft, leaf, left_comb, put_elem, right_comb, split,
                     sub_elem)

KINDS = ("category", "functor", "bimodule", "fibred", "total", "coarse")
# name of the single piece of a plain complex
PIECE = {"category": "C", "functor": "F", "bimodule": "M"}


def default_max_degree() -> int:
    raw = os.environ.get("DEFCAT_MAX_DEGREE", "4")
    try:
        val = int(raw)
    except ValueError:
        raise DegreeOverflow(f"DEFCAT_MAX_DEGREE={raw!r} is not an integer")
    if val < 0:
        raise DegreeOverflow(f"DEFCAT_MAX_DEGREE={val} is negative")
    return val


# -- coefficient systems ----------------------------------------------------

@dataclass(eq=False)
class Coeff:
    """Where cochains live: a context, the level of values and the wrappers."""

    kind: str
    ctx: Ctx
    level: str                # level of cochain values
    src_level: str            # level of the arguments
    fname: str | None = None
    mname: str | None = None
    ft: Nat | None = None
    f0: Nat | None = None
    mul: Nat | None = None
    mur: Nat | None = None
    _spaces: dict = dc_field(default_factory=dict, repr=False)
    _diffs: dict = dc_field(default_factory=dict, repr=False)

    @property
    def field(self):
        return self.ctx.field

    def wF(self, x):
        return A(self.fname, x) if self.fname else x

    def wM(self, x):
        return A(self.mname, x) if self.mname else x

    def src(self, n: int):
        return left_comb([self.wF(leaf(k)) for k in range(n)])

    def dst(self, n: int):
        return self.wM(right_comb([leaf(k) for k in range(n)]))

    def space(self, n: int) -> "CochainSpace":
        if n not in self._spaces:
            self._spaces[n] = CochainSpace(self, n)
        return self._spaces[n]

    @property
    def names(self) -> tuple:
        return self.ctx.levels[self.src_level].names

    @property
    def out_names(self) -> tuple:
        return self.ctx.levels[self.level].names


def category_coeff(c: FusionData, ctx: Ctx | None = None, level: str = "C") -> Coeff:
    return Coeff("category", ctx or c.ctx, level, level)


def functor_coeff(f: FunctorData, ctx: Ctx | None = None) -> Coeff:
    ctx = ctx or f.ctx()
    ft = ft_nat(f.Ft)
    return Coeff("functor", ctx, "E", "C", "F", "F", ft, f0_nat(f.F0, f.target.unit), ft, ft)


def bimodule_coeff(m: BimoduleData) -> Coeff:
    if m.G is not m.F:
        raise KindMismatch("cochains with bimodule coefficients need an F,F-bimodule")
    ctx = m.ctx()
    return Coeff("bimodule", ctx, "E", "C", "F", "M", ft_nat(m.F.Ft),
                 f0_nat(m.F.F0, m.F.target.unit), mul_nat(m.mul), mur_nat(m.mur, "M", "F"))


# -- cochain spaces and cochains ---------------------------------------------

class CochainSpace:
    def __init__(self, coeff: Coeff, n: int):
        self.coeff = coeff
        self.degree = n
        self.src = coeff.src(n)
        self.dst = coeff.dst(n)
        self.template = Nat(self.src, self.dst, coeff.level, {}, name=f"X{n}")
        ctx = coeff.ctx
        rs = ctx.levels[coeff.src_level].rank
        rz = ctx.levels[coeff.level].rank
        self.keys = []
        self.shapes = {}
        self.offsets = {}
        off = 0
        for labels in itertools.product(range(rs), repeat=n):
            for z in range(rz):
                r = ctx.dim(self.src, labels, z, coeff.level)
                c = ctx.dim(self.dst, labels, z, coeff.level)
                if r and c:
                    key = (labels, z)
                    self.keys.append(key)
                    self.shapes[key] = (r, c)
                    self.offsets[key] = off
                    off += r * c
        self.dim = off

    @property
    def field(self):
        return self.coeff.field

    def block_slice(self, key) -> slice:
        r, c = self.shapes[key]
        o = self.offsets[key]
        return slice(o, o + r * c)

    def blocks(self, vec) -> dict:
        return {k: vec[self.block_slice(k)].reshape(self.shapes[k]) for k in self.keys}

    def from_blocks(self, blocks: dict) -> np.ndarray:
        f = self.field
        v = f.zeros(self.dim)
        for key, m in blocks.items():
            if key not in self.shapes:
                if f.is_zero_array(np.asarray(m)) if np.size(m) else True:
                    continue
                raise ShapeError(f"no degree-{self.degree} block at {key}", index=_jsonable_key(key))
            m = np.asarray(m)
            if m.shape != self.shapes[key]:
                raise ShapeError(f"block at {key} has shape {m.shape}, expected {self.shapes[key]}",
                                 index=_jsonable_key(key))
            v[self.block_slice(key)] = m.reshape(-1)
        return v

    def nat(self, vec, name="phi") -> Nat:
        return Nat(self.src, self.dst, self.coeff.level, self.blocks(vec), name=name)

    def zero(self) -> "Cochain":
        return Cochain(self, self.field.zeros(self.dim))

    def random(self, rng, bound: int = 3) -> "Cochain":
        return Cochain(self, self.field.random_array(rng, (self.dim,), bound))

    def basis_labels(self) -> list:
        """One (tuple, output, row, column) label per coordinate."""
        out = []
        for key in self.keys:
            r, c = self.shapes[key]
            out.extend((key[0], key[1], i, j) for i in range(r) for j in range(c))
        return out


def _jsonable_key(key):
    return [list(key[0]), key[1]]


@dataclass(eq=False)
class Cochain:
    space: CochainSpace
    vec: np.ndarray

    @property
    def degree(self) -> int:
        return self.space.degree

    @property
    def field(self):
        return self.space.field

    def blocks(self) -> dict:
        return self.space.blocks(self.vec)

    def nat(self, name="phi") -> Nat:
        return self.space.nat(self.vec, name)

    def _same(self, other: "Cochain"):
        if other.space is not self.space:
            raise KindMismatch("cochains live in different spaces")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.space, self.field.plus(self.vec, other.vec))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._same(other)
        return Cochain(self.space, self.field.minus(self.vec, other.vec))

    def __neg__(self) -> "Cochain":
        f = self.field
        return Cochain(self.space, f.scale(f.neg(f.one), self.vec))

    def scale(self, c) -> "Cochain":
        f = self.field
        return Cochain(self.space, f.scale(f.coerce(c), self.vec))

    def is_zero(self) -> bool:
        return self.field.is_zero_array(self.vec)

    def __eq__(self, other):
        return (isinstance(other, Cochain) and other.space is self.space
                and bool(np.array_equal(self.vec, other.vec)))

    __hash__ = None

    def to_json(self) -> dict:
        f = self.field
        names, out_names = self.space.coeff.names, self.space.coeff.out_names
        blocks = []
        for key, m in self.blocks().items():
            blocks.append({"tuple": [names[i] for i in key[0]], "out": out_names[key[1]],
                           "matrix": [[f.format(x) for x in row] for row in m]})
        return {"degree": self.degree, "blocks": blocks}

    @classmethod
    def from_json(cls, space: CochainSpace, doc: dict) -> "Cochain":
        f = space.field
        names, out_names = space.coeff.names, space.coeff.out_names
        if doc.get("degree", space.degree) != space.degree:
            raise ShapeError(f"cochain of degree {doc.get('degree')} where {space.degree} was expected")
        blocks = {}
        for b in doc.get("blocks", []):
            try:
                labels = tuple(names.index(str(x)) for x in b["tuple"])
                z = out_names.index(str(b["out"]))
            except ValueError as e:
                raise ShapeError(f"unknown simple in cochain block: {e}")
            mat = b["matrix"]
            blocks[(labels, z)] = f.array(mat) if len(mat) and len(mat[0]) else f.zeros((len(mat), 0))
        return cls(space, space.from_blocks(blocks))


# -- term assembly -----------------------------------------------------------

@dataclass
class Term:
    """``sign * route(post) . var@path . route(pre)`` starting from ``src``."""

    sign: int
    src: tuple
    pre: list
    path: tuple
    post: list = dc_field(default_factory=list)


def _reassoc(ctx, a, b, level) -> list:
    return [] if a == b else ctx.reassociate_steps(a, b, level)


def _item_path(k: int, n: int) -> tuple:
    """Path of item k in a left comb of n items."""
    if k == 0:
        return (0,) * (n - 1)
    return (0,) * (n - 1 - k) + (1,)


def assemble(tspace: CochainSpace, vspace: CochainSpace, terms: list, threads: int = 1) -> np.ndarray:
    """Matrix (tspace.dim x vspace.dim) of the linear map given by ``terms``."""
    coeff = tspace.coeff
    ctx, level, f = coeff.ctx, coeff.level, coeff.field
    vlevel = vspace.coeff.level
    tmpl = vspace.template
    # complete each term with the final reassociation to the target pattern
    routes = []
    for t in terms:
        s1 = ctx.route_shape(t.pre, t.src)
        s2 = ctx.step_shape(tmpl, s1, t.path)
        s3 = ctx.route_shape(t.post, s2)
        post = list(t.post) + _reassoc(ctx, s3, tspace.dst, level)
        routes.append((f.coerce(t.sign), t.src, list(t.pre), s1, t.path, s2, post))

    def block(key):
        labels, z = key
        r, c = tspace.shapes[key]
        out = f.zeros((r * c, vspace.dim))
        for sign, src, pre, s1, path, s2, post in routes:
            P, _ = ctx.route_matrix(pre, src, labels, z, level)
            Q, _ = ctx.route_matrix(post, s2, labels, z, level)
            e1s = ctx.elems(s1, labels, z, level)
            idx2 = ctx.index(s2, labels, z, level)
            for s in np.nonzero(np.any(P != 0, axis=0))[0]:
                e1 = e1s[s]
                _, se, sz = sub_elem(s1, path, e1, z)
                hl, he = {}, {}
                pe = split(tmpl.src, se, sz, hl, he)
                vkey = (tuple(hl[k] for k in range(len(hl))), sz)
                off = vspace.offsets.get(vkey)
                if off is None:
                    continue
                ri = ctx.index(tmpl.src, vkey[0], sz, vlevel)[pe]
                cols = ctx.elems(tmpl.dst, vkey[0], sz, vlevel)
                ncols = len(cols)
                pcol = f.scale(sign, P[:, s])
                for cj, ce in enumerate(cols):
                    e2 = put_elem(s1, path, e1, graft(tmpl.dst, ce, he))
                    q = Q[idx2[e2]]
                    coord = off + ri * ncols + cj
                    out[:, coord] = f.plus(out[:, coord], f.reduce(np.outer(pcol, q).reshape(-1)))
        return out

    full = f.zeros((tspace.dim, vspace.dim))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(block, tspace.keys))
    else:
        parts = [block(k) for k in tspace.keys]
    for key, part in zip(tspace.keys, parts):
        full[tspace.block_slice(key)] = part
    return full


def coboundary_terms(coeff: Coeff, n: int) -> list:
    """Terms of the coboundary X^n -> X^{n+1}."""
    ctx, level = coeff.ctx, coeff.level
    items = [coeff.wF(leaf(k)) for k in range(n + 1)]
    src = left_comb(items)
    terms = [Term(1, src, _reassoc(ctx, src, T(items[0], left_comb(items[1:])), level), (1,),
                  [(coeff.mul, ())] if coeff.mname else [])]
    for i in range(1, n + 1):
        grouped = items[:i - 1] + [T(items[i - 1], items[i])] + items[i + 1:]
        pre = _reassoc(ctx, src, left_comb(grouped), level)
        if coeff.fname:
            pre = pre + [(coeff.ft, _item_path(i - 1, n))]
        terms.append(Term((-1) ** i, src, pre, ()))
    terms.append(Term((-1) ** (n + 1), src, _reassoc(ctx, src, T(left_comb(items[:n]), items[n]), level),
                      (0,), [(coeff.mur, ())] if coeff.mname else []))
    return terms


def coboundary_matrix(coeff: Coeff, n: int, threads: int = 1) -> np.ndarray:
    if n not in coeff._diffs:
        coeff._diffs[n] = assemble(coeff.space(n + 1), coeff.space(n), coboundary_terms(coeff, n), threads)
    return coeff._diffs[n]


def _merge_left(coeff: Coeff, n: int) -> list:
    """Steps left_comb(F L_k) -> F(left_comb(L_k))."""
    if n == 0:
        return [(coeff.f0, ())]
    return [(coeff.ft, (0,) * (n - 2 - j)) for j in range(n - 1)]


def _merge_right(coeff: Coeff, n: int) -> list:
    """Steps right_comb(F L_k) -> F(right_comb(L_k))."""
    if n == 0:
        return [(coeff.f0, ())]
    return [(coeff.ft, (1,) * (n - 2 - j)) for j in range(n - 1)]


def functor_image_matrix(fcoeff: Coeff, ccoeff: Coeff, n: int, threads: int = 1) -> np.ndarray:
    """Degree-n matrix of phi -> [F(phi)] from X(C) to X(F)."""
    src = fcoeff.src(n)
    return assemble(fcoeff.space(n), ccoeff.space(n), [Term(1, src, _merge_left(fcoeff, n), (0,))],
                    threads)


def target_pullback_matrix(fcoeff: Coeff, ecoeff: Coeff, n: int, threads: int = 1) -> np.ndarray:
    """Degree-n matrix of psi -> [psi_F] from X(E) to X(F)."""
    src = fcoeff.src(n)
    return assemble(fcoeff.space(n), ecoeff.space(n), [Term(1, src, [], (), _merge_right(fcoeff, n))],
                    threads)


# -- Deligne diagonal --------------------------------------------------------

def diagonal_matrix(src: CochainSpace, dst: CochainSpace, c: FusionData) -> np.ndarray:
    """Matrix of phi -> phi x Id + Id x phi from X^n(C) to X^n(C x C)."""
    f = src.field
    n2 = c.rank
    sctx, slev = src.coeff.ctx, src.coeff.level
    dctx, dlev = dst.coeff.ctx, dst.coeff.level
    out = f.zeros((dst.dim, src.dim))
    for key in dst.keys:
        labels, z = key
        comp = [(tuple(x // n2 for x in labels), z // n2), (tuple(x % n2 for x in labels), z % n2)]
        ids = [sctx.reassociate_matrix(src.src, src.dst, lb, zz, slev) for lb, zz in comp]
        rows = [split_product_elem(e, dst.src, c, z) for e in dctx.elems(dst.src, labels, z, dlev)]
        cols = [split_product_elem(e, dst.dst, c, z) for e in dctx.elems(dst.dst, labels, z, dlev)]
        idx = [(sctx.index(src.src, lb, zz, slev), sctx.index(src.dst, lb, zz, slev)) for lb, zz in comp]
        base = dst.offsets[key]
        nc = len(cols)
        for i, (r1, r2) in enumerate(rows):
            for j, (c1, c2) in enumerate(cols):
                pos = base + i * nc + j
                a = (idx[0][0][r1], idx[0][1][c1])
                b = (idx[1][0][r2], idx[1][1][c2])
                for which, (mine, other), oid in ((0, (a, b), ids[1]), (1, (b, a), ids[0])):
                    coef = oid[other]
                    if f.is_zero(coef):
                        continue
                    skey = comp[which]
                    if skey not in src.offsets:
                        continue
                    ncol = src.shapes[skey][1]
                    coord = src.offsets[skey] + mine[0] * ncol + mine[1]
                    out[pos, coord] = f.add(out[pos, coord], coef)
    return out


def tensor_functor(c: FusionData) -> FunctorData:
    """The tensor product C x C -> C for a pointed category with trivial associator.

    The structure map is the identity; :func:`verify_functor` is run, so a
    category where this is not coherent is rejected with a located violation.
    """
    f = c.field
    d = deligne_product(c, c)
    r = c.rank
    if any(sum(c.N[a][b]) != 1 for a in range(r) for b in range(r)):
        raise KindMismatch("the built-in tensor functor needs a pointed category")
    mult = tuple(tuple(c.N[p // r][p % r][z] for z in range(r)) for p in range(d.rank))
    tmp = FunctorData(d, c, mult, {}, f.array([[1]]))
    ctx = tmp.ctx()
    src, dst = T(A("F", leaf(0)), A("F", leaf(1))), A("F", T(leaf(0), leaf(1)))
    ft = {}
    for p in range(d.rank):
        for q in range(d.rank):
            for z in range(r):
                n = ctx.dim(src, (p, q), z, "E")
                if n:
                    assert n == ctx.dim(dst, (p, q), z, "E") == 1
                    ft[((p, q), z)] = f.array([[1]])
    phi = FunctorData(d, c, mult, ft, f.array([[1]]))
    verify_functor(phi)
    return phi


# -- complexes ---------------------------------------------------------------

@dataclass(eq=False)
class ComplexSpec:
    kind: str
    data: object
    max_degree: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise KindMismatch(f"unknown complex kind {self.kind!r}")
        want = {"category": FusionData, "functor": FunctorData, "bimodule": BimoduleData,
                "fibred": FunctorData, "total": FunctorData, "coarse": (FusionData, FunctorData)}
        if not isinstance(self.data, want[self.kind]):
            raise KindMismatch(f"{self.kind} complex built from {type(self.data).__name__}")
        if self.max_degree is None:
            self.max_degree = default_max_degree()


def direct_sum(a: GradedComplex, b: GradedComplex) -> GradedComplex:
    f = a.field
    lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    dims = {n: a.dim(n) + b.dim(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        da, db = a.d(n), b.d(n)
        if da is None or db is None:
            break
        m = f.zeros((dims[n + 1], dims[n]))
        m[:a.dim(n + 1), :a.dim(n)] = da
        m[a.dim(n + 1):, a.dim(n):] = db
        diffs[n] = m
    top = max(diffs) + 1 if diffs else lo
    dims = {n: d for n, d in dims.items() if n <= top}
    return GradedComplex(f, dims, diffs, bounded=a.bounded and b.bounded)


@dataclass(eq=False)
class DeformationComplex:
    """A built complex plus the bookkeeping to read its vectors as cochains.

    ``parts[n]`` lists (name, CochainSpace) pieces whose concatenation is the
    degree-n space: one piece for the plain kinds, and for cones the
    functor piece in degree n followed by the source pieces in degree n+1.
    """

    spec: ComplexSpec
    complex: GradedComplex
    coeffs: dict
    parts: dict
    map: ComplexMap | None = None
    cone: ConeComplex | None = None

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def field(self):
        return self.complex.field

    @property
    def is_cone(self) -> bool:
        return self.cone is not None

    def classifying_degree(self) -> int:
        return {"category": 3, "functor": 2, "bimodule": 1}.get(self.kind, 2)

    def split(self, n: int, vec) -> dict:
        out = {}
        o = 0
        for name, sp in self.parts[n]:
            out[name] = Cochain(sp, vec[o:o + sp.dim])
            o += sp.dim
        return out

    def join(self, n: int, pieces: dict) -> np.ndarray:
        f = self.field
        chunks = []
        for name, sp in self.parts[n]:
            c = pieces.get(name)
            chunks.append(f.zeros(sp.dim) if c is None else c.vec)
        return np.concatenate(chunks) if chunks else f.zeros(0)

    def d(self, n: int):
        m = self.complex.d(n)
        if m is None:
            raise DegreeOverflow(f"degree {n} exceeds the maximum degree {self.spec.max_degree}", index=n)
        return m

    def space(self, n: int) -> CochainSpace:
        if self.is_cone:
            raise KindMismatch("cone complexes have no single cochain space")
        return self.parts[n][0][1]

    def basis_labels(self, n: int) -> list:
        out = []
        for name, sp in self.parts[n]:
            out.extend((name,) + lab for lab in sp.basis_labels())
        return out


def _plain(coeff: Coeff, top: int, threads: int) -> GradedComplex:
    dims = {n: coeff.space(n).dim for n in range(top + 1)}
    diffs = {n: coboundary_matrix(coeff, n, threads) for n in range(top)}
    return GradedComplex(coeff.field, dims, diffs)


def build_complex(spec: ComplexSpec, threads: int = 1) -> DeformationComplex:
    """Build the complex; cohomology is available in degrees 0..max_degree."""
    mx = spec.max_degree
    top = mx + 1
    kind = spec.kind
    if kind in ("category", "functor", "bimodule"):
        if kind == "category":
            coeff = category_coeff(spec.data)
        elif kind == "functor":
            coeff = functor_coeff(spec.data)
        else:
            coeff = bimodule_coeff(spec.data)
        cx = _plain(coeff, top, threads)
        name = PIECE[kind]
        parts = {n: [(name, coeff.space(n))] for n in range(top + 1)}
        return DeformationComplex(spec, cx, {name: coeff}, parts)

    if kind == "coarse":
        c = spec.data if isinstance(spec.data, FusionData) else spec.data.target
        phi = tensor_functor(c) if isinstance(spec.data, FusionData) else spec.data
        fdata = phi
    else:
        fdata = spec.data
        verify_functor(fdata)
    fco = functor_coeff(fdata)
    ctx = fco.ctx
    cco = category_coeff(fdata.source, ctx, "C")
    eco = category_coeff(fdata.target, ctx, "E")
    f = fco.field
    # the cone needs the source complex one degree higher than the target
    B = _plain(fco, top, threads)
    neg = f.neg(f.one)
    if kind == "fibred":
        Acx = _plain(cco, top + 1, threads)
        maps = {n: f.scale(neg, functor_image_matrix(fco, cco, n, threads)) for n in range(top + 1)}
        src_parts = [("C", cco)]
    elif kind == "total":
        Acx = direct_sum(_plain(cco, top + 1, threads), _plain(eco, top + 1, threads))
        maps = {n: np.hstack([f.scale(neg, functor_image_matrix(fco, cco, n, threads)),
                              target_pullback_matrix(fco, eco, n, threads)])
                for n in range(top + 1)}
        src_parts = [("C", cco), ("E", eco)]
    else:
        Acx = _plain(eco, top + 1, threads)
        dco = cco
        maps = {}
        for n in range(top + 1):
            delta = diagonal_matrix(eco.space(n), dco.space(n), c)
            maps[n] = f.minus(target_pullback_matrix(fco, eco, n, threads),
                              f.matmul(functor_image_matrix(fco, dco, n, threads), delta))
        src_parts = [("C", eco)]
    u = ComplexMap(Acx, B, maps)
    cc = cone(u)
    parts = {}
    for n in range(cc.complex.lo, cc.complex.hi + 1):
        pieces = [("F", fco.space(n))] if n >= 0 else []
        pieces += [(name, co.space(n + 1)) for name, co in src_parts]
        parts[n] = pieces
    coeffs = {"F": fco, "C": cco, "E": eco}
    return DeformationComplex(spec, cc.complex, coeffs, parts, map=u, cone=cc)


def coboundary(phi: Cochain, threads: int = 1) -> Cochain:
    """delta(phi) for a cochain of a plain (non-cone) kind."""
    coeff = phi.space.coeff
    n = phi.degree
    mx = default_max_degree()
    if n > mx:
        raise DegreeOverflow(f"degree {n} exceeds the maximum degree {mx}", index=n)
    m = coboundary_matrix(coeff, n, threads)
    return Cochain(coeff.space(n + 1), phi.field.matmul(m, phi.vec.reshape(-1, 1)).reshape(-1))


# -- products ----------------------------------------------------------------

def _check_product(g: Cochain, h: Cochain) -> Coeff:
    if g.space.coeff is not h.space.coeff:
        raise KindMismatch("cochains belong to different complexes")
    co = g.space.coeff
    if co.kind == "bimodule":
        raise KindMismatch("products need category or functor cochains")
    return co


def _evaluate(space: CochainSpace, src, steps) -> Cochain:
    co = space.coeff
    ctx, f = co.ctx, co.field
    end = ctx.route_shape(steps, src)
    steps = list(steps) + _reassoc(ctx, end, space.dst, co.level)
    v = f.zeros(space.dim)
    for key in space.keys:
        m, _ = ctx.route_matrix(steps, src, key[0], key[1], co.level, cache=False)
        v[space.block_slice(key)] = m.reshape(-1)
    return Cochain(space, v)


def cup_product(g: Cochain, h: Cochain) -> Cochain:
    """[g (x) h], of degree deg g + deg h."""
    co = _check_product(g, h)
    n, m = g.degree, h.degree
    items = [co.wF(leaf(k)) for k in range(n + m)]
    src = left_comb(items)
    steps = _reassoc(co.ctx, src, T(left_comb(items[:n]), left_comb(items[n:])), co.level)
    steps += [(g.nat("g"), (0,)), (h.nat("h"), (1,))]
    if co.fname:
        steps.append((co.ft, ()))
    return _evaluate(co.space(n + m), src, steps)


def prelie_component(g: Cochain, h: Cochain, i: int) -> Cochain:
    """<g, h>^(i): h inserted into argument slot i of g."""
    co = _check_product(g, h)
    m, n = g.degree, h.degree
    if not 0 <= i < m:
        raise IndexOutOfRange(f"slot {i} outside 0..{m - 1}", index=i)
    total = m + n - 1
    args = [co.wF(leaf(k)) for k in range(total)]
    grouped = args[:i] + [left_comb(args[i:i + n])] + args[i + n:]
    src = left_comb(args)
    steps = _reassoc(co.ctx, src, left_comb(grouped), co.level)
    steps += [(h.nat("h"), _item_path(i, m)), (g.nat("g"), ())]
    return _evaluate(co.space(total), src, steps)


def composition_product(g: Cochain, h: Cochain) -> Cochain:
    """<g, h> = sum_i (-1)^(n i) <g, h>^(i) with n = deg h."""
    co = _check_product(g, h)
    n = h.degree
    out = co.space(g.degree + n - 1).zero()
    for i in range(g.degree):
        term = prelie_component(g, h, i)
        out = out + (term if (n * i) % 2 == 0 else -term)
    return out


def bracket(g: Cochain, h: Cochain) -> Cochain:
    m, n = g.degree, h.degree
    a = composition_product(g, h)
    b = composition_product(h, g)
    return a - b if ((m - 1) * (n - 1)) % 2 == 0 else a + b


# -- obstructions ------------------------------------------------------------

def _series(base: Nat, cochains: list, order: int) -> list:
    out = [base] + [c.nat(f"c{k + 1}") for k, c in enumerate(cochains)]
    return (out + [None] * (order + 1))[:order + 1]


def pentagon_defect(coeff: Coeff, alphas: list, order: int) -> Cochain:
    """Coefficient of eps^order in LHS - RHS of the pentagon, as a 4-cochain.

    ``alphas`` are the degree-3 coefficients 1..; missing ones count as zero.
    """
    ctx, level, f = coeff.ctx, coeff.level, coeff.field
    ser = _series(ctx.structural(level, "alpha"), alphas, order)
    sp = coeff.space(4)
    src = sp.src
    lhs_steps = [(ser, ()), (ser, ())]
    rhs_steps = [(ser, (0,)), (ser, ()), (ser, (1,))]
    v = f.zeros(sp.dim)
    for key in sp.keys:
        lhs, e1 = series_route(ctx, lhs_steps, src, key[0], key[1], level, order, cache=False)
        rhs, e2 = series_route(ctx, rhs_steps, src, key[0], key[1], level, order, cache=False)
        assert e1 == e2 == sp.dst
        v[sp.block_slice(key)] = f.minus(lhs[order], rhs[order]).reshape(-1)
    return Cochain(sp, v)


def hexagon_defect(fcoeff: Coeff, phis: list, alphas: list, as_: list, order: int) -> Cochain:
    """Coefficient of eps^order in LHS - RHS of the functor hexagon, as a 3-cochain of X(F)."""
    ctx, f = fcoeff.ctx, fcoeff.field
    ft = _series(fcoeff.ft, phis, order)
    ac = _series(ctx.structural("C", "alpha"), alphas, order)
    ae = _series(ctx.structural("E", "alpha"), as_, order)
    sp = fcoeff.space(3)
    lhs_steps = [(ae, ()), (ft, (1,)), (ft, ())]
    rhs_steps = [(ft, (0,)), (ft, ()), (ac, (0,))]
    v = f.zeros(sp.dim)
    for key in sp.keys:
        lhs, e1 = series_route(ctx, lhs_steps, sp.src, key[0], key[1], "E", order, cache=False)
        rhs, e2 = series_route(ctx, rhs_steps, sp.src, key[0], key[1], "E", order, cache=False)
        assert e1 == e2 == sp.dst
        v[sp.block_slice(key)] = f.minus(lhs[order], rhs[order]).reshape(-1)
    return Cochain(sp, v)


def obstruction_category(alphas: list, coeff: Coeff, check: bool = True) -> Cochain:
    """omega^(M) for M = len(alphas) + 1, with the order-M coefficient set to zero.

    The order-M pentagon reads delta(alpha^(M)) = omega^(M).
    """
    if isinstance(coeff, FusionData):
        coeff = category_coeff(coeff)
    M = len(alphas) + 1
    f = coeff.field
    if check:
        for N in range(1, M):
            om = pentagon_defect(coeff, alphas[:N - 1], N)
            if not np.array_equal(coboundary(alphas[N - 1]).vec, om.vec):
                raise LowerOrderNotDeformation(f"order {N} coefficient does not satisfy "
                                               f"delta(alpha) = omega", index=N)
    om = pentagon_defect(coeff, alphas, M)
    if check and default_max_degree() >= 4:
        assert f.is_zero_array(coboundary(om).vec), "obstruction is not a cocycle"
    return om


def obstruction_total(phis: list, alphas: list, as_: list, cx: DeformationComplex,
                      check: bool = True) -> dict:
    """(Omega, omega, o) at order M = len(phis) + 1 as cochains of the total cone.

    Together they satisfy d(Phi^(M), alpha^(M), a^(M)) = -(Omega, omega, o);
    for the fibred and purely functorial cases pass empty lists for the
    frozen pieces.
    """
    fco, cco, eco = cx.coeffs["F"], cx.coeffs["C"], cx.coeffs["E"]
    M = max(len(phis), len(alphas), len(as_)) + 1

    def pad(xs, sp):
        return list(xs) + [sp.zero()] * (M - 1 - len(xs))

    phis = pad(phis, fco.space(2))
    alphas = pad(alphas, cco.space(3))
    as_ = pad(as_, eco.space(3))
    if check:
        for N in range(1, M):
            lower = _total_obstruction(fco, cco, eco, phis[:N - 1], alphas[:N - 1], as_[:N - 1], N)
            vec = cx.join(2, {"F": phis[N - 1], "C": alphas[N - 1], "E": as_[N - 1]})
            d = cx.field.matmul(cx.d(2), vec.reshape(-1, 1)).reshape(-1)
            want = cx.join(3, lower)
            if not np.array_equal(cx.field.plus(d, want), cx.field.zeros(len(d))):
                raise LowerOrderNotDeformation(f"order {N} coefficients do not solve the "
                                               f"deformation equation", index=N)
    out = _total_obstruction(fco, cco, eco, phis, alphas, as_, M)
    if check:
        v = cx.join(3, out)
        assert cx.field.is_zero_array(cx.field.matmul(cx.d(3), v.reshape(-1, 1))), \
            "obstruction is not a cone cocycle"
    return out


def _total_obstruction(fco, cco, eco, phis, alphas, as_, M) -> dict:
    return {"F": hexagon_defect(fco, phis, alphas, as_, M),
            "C": pentagon_defect(cco, alphas, M),
            "E": pentagon_defect(eco, as_, M)}
