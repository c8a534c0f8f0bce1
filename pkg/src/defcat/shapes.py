"""Shapes, fusion-tree bases and the natural-transformation engine.

A *shape* is a hashable tuple describing a tensor expression:

    ('L', k)             leaf number k (its simple label comes from a labels tuple)
    ('1',)               the unit object
    ('T', X, Y)          X (x) Y in the ambient category
    ('A', f, X)          functor f applied to X (X lives in f's source category)

For a shape, a labels tuple and an output simple z, the multiplicity space
Hom(shape, z) has a basis of *elements*:

    leaf    ()                          if the label equals z
    unit    ()                          if z is the unit
    tensor  (x, y, eL, eR, mu)          mu < N_xy^z
    apply   (c, eT, j)                  j < mult_f[c][z]

enumerated in the nesting order of those fields.  For three leaves this is
exactly the row order (e, mu, nu) of an F-matrix on ((ab)c) and the column
order (f, mu, nu) on (a(bc)).

Morphisms use the row convention: a map X -> Y at output z is a matrix of
shape (|Hom(X, z)|, |Hom(Y, z)|) and "f then g" is ``f @ g``.

A :class:`Nat` is a natural transformation between two *patterns* (shapes
whose leaves are holes).  Its blocks are indexed by (hole labels, z).  All
structure maps (associators, unitors, F~, F0, module actions) and all
cochains are Nats; applying one at a position inside a bigger shape is done
element by element: split the element into the pattern part and the hole
parts, multiply by the block row, and graft the hole parts back.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Iterable

import numpy as np

from .errors import ShapeChainBroken

UNIT = ("1",)


def leaf(k: int) -> tuple:
    return ("L", k)


def T(x, y) -> tuple:
    return ("T", x, y)


def A(f: str, x) -> tuple:
    return ("A", f, x)


def left_comb(items: list) -> tuple:
    """((x0 x1) x2) ... ; the empty product is the unit."""
    if not items:
        return UNIT
    out = items[0]
    for it in items[1:]:
        out = T(out, it)
    return out


def right_comb(items: list) -> tuple:
    if not items:
        return UNIT
    out = items[-1]
    for it in reversed(items[:-1]):
        out = T(it, out)
    return out


def leaves(shape) -> list:
    tag = shape[0]
    if tag == "L":
        return [shape[1]]
    if tag == "1":
        return []
    if tag == "T":
        return leaves(shape[1]) + leaves(shape[2])
    return leaves(shape[2])


def get_at(shape, path):
    for step in path:
        shape = shape[1 + step] if shape[0] == "T" else shape[2]
    return shape


def replace_at(shape, path, new):
    if not path:
        return new
    step, rest = path[0], path[1:]
    if shape[0] == "T":
        if step == 0:
            return T(replace_at(shape[1], rest, new), shape[2])
        return T(shape[1], replace_at(shape[2], rest, new))
    return A(shape[1], replace_at(shape[2], rest, new))


def match(pattern, shape, binding=None):
    """Bind the holes of ``pattern`` to subshapes of ``shape``; None if no match."""
    if binding is None:
        binding = {}
    tag = pattern[0]
    if tag == "L":
        k = pattern[1]
        if k in binding and binding[k] != shape:
            return None
        binding[k] = shape
        return binding
    if tag == "1":
        return binding if shape == UNIT else None
    if tag == "T":
        if shape[0] != "T":
            return None
        if match(pattern[1], shape[1], binding) is None:
            return None
        return match(pattern[2], shape[2], binding)
    if shape[0] != "A" or shape[1] != pattern[1]:
        return None
    return match(pattern[2], shape[2], binding)


def substitute(pattern, binding):
    tag = pattern[0]
    if tag == "L":
        return binding[pattern[1]]
    if tag == "1":
        return pattern
    if tag == "T":
        return T(substitute(pattern[1], binding), substitute(pattern[2], binding))
    return A(pattern[1], substitute(pattern[2], binding))


def hole_count(pattern) -> int:
    ls = leaves(pattern)
    return max(ls) + 1 if ls else 0


# -- element surgery ---------------------------------------------------------

def split(pattern, elem, z, hole_labels, hole_elems):
    """Split ``elem`` (of a shape matching ``pattern``) into the pattern part.

    Fills ``hole_labels``/``hole_elems`` (dicts keyed by hole number) and
    returns the pattern element.
    """
    tag = pattern[0]
    if tag == "L":
        hole_labels[pattern[1]] = z
        hole_elems[pattern[1]] = elem
        return ()
    if tag == "1":
        return ()
    if tag == "T":
        x, y, el, er, mu = elem
        return (x, y, split(pattern[1], el, x, hole_labels, hole_elems),
                split(pattern[2], er, y, hole_labels, hole_elems), mu)
    c, et, j = elem
    return (c, split(pattern[2], et, c, hole_labels, hole_elems), j)


def graft(pattern, pelem, hole_elems):
    tag = pattern[0]
    if tag == "L":
        return hole_elems[pattern[1]]
    if tag == "1":
        return ()
    if tag == "T":
        x, y, el, er, mu = pelem
        return (x, y, graft(pattern[1], el, hole_elems), graft(pattern[2], er, hole_elems), mu)
    c, et, j = pelem
    return (c, graft(pattern[2], et, hole_elems), j)


def sub_elem(shape, path, elem, z):
    """Descend along ``path``: return (subshape, subelement, output of subelement)."""
    for step in path:
        if shape[0] == "T":
            x, y, el, er, _ = elem
            shape, elem, z = (shape[1], el, x) if step == 0 else (shape[2], er, y)
        else:
            c, et, _ = elem
            shape, elem, z = shape[2], et, c
    return shape, elem, z


def put_elem(shape, path, elem, new):
    if not path:
        return new
    step, rest = path[0], path[1:]
    if shape[0] == "T":
        x, y, el, er, mu = elem
        if step == 0:
            return (x, y, put_elem(shape[1], rest, el, new), er, mu)
        return (x, y, el, put_elem(shape[2], rest, er, new), mu)
    c, et, j = elem
    return (c, put_elem(shape[2], rest, et, new), j)


# -- natural transformations -------------------------------------------------

_nat_ids = itertools.count()


@dataclass(eq=False)
class Nat:
    """Natural transformation between patterns ``src -> dst`` at ``level``.

    ``blocks[(labels, z)]`` is the matrix on Hom(src[labels], z) ->
    Hom(dst[labels], z); missing blocks are zero.
    """

    src: tuple
    dst: tuple
    level: str
    blocks: dict
    name: str = ""
    inverse: "Nat | None" = None
    uid: int = dc_field(default_factory=lambda: next(_nat_ids))

    def block(self, labels, z):
        return self.blocks.get((labels, z))

    @property
    def nholes(self) -> int:
        return max(hole_count(self.src), hole_count(self.dst))

    def __hash__(self):
        return self.uid

    def __eq__(self, other):
        return self is other


@dataclass(frozen=True)
class FunctorSpec:
    """Object part of a functor between two levels: mult[c][z] copies of z in f(c)."""

    src: str
    tgt: str
    mult: tuple


class Ctx:
    """Evaluation context: categories per level and functor object maps.

    Also builds and caches the structural Nats (associator, unitors) of each
    level, the normalisation routes and all matrices derived from them.
    """

    def __init__(self, field, levels: dict, functors: dict | None = None):
        self.field = field
        self.levels = dict(levels)
        self.functors = dict(functors or {})
        self._elems: dict = {}
        self._index: dict = {}
        self._norm: dict = {}
        self._step: dict = {}
        self._struct: dict = {}
        self._route: dict = {}

    # -- levels ------------------------------------------------------------
    def cat(self, level):
        return self.levels[level]

    def level_at(self, shape, path, level):
        for step in path:
            if shape[0] == "T":
                shape = shape[1 + step]
            else:
                level = self.functors[shape[1]].src
                shape = shape[2]
        return level

    # -- bases ---------------------------------------------------------------
    def elems(self, shape, labels, z, level) -> tuple:
        key = (shape, labels, z, level)
        got = self._elems.get(key)
        if got is not None:
            return got
        tag = shape[0]
        cat = self.levels[level]
        if tag == "L":
            out = ((),) if labels[shape[1]] == z else ()
        elif tag == "1":
            out = ((),) if z == cat.unit else ()
        elif tag == "T":
            out = []
            n = cat.rank
            N = cat.N
            lefts = [self.elems(shape[1], labels, x, level) for x in range(n)]
            rights = [self.elems(shape[2], labels, y, level) for y in range(n)]
            for x in range(n):
                if not lefts[x]:
                    continue
                for y in range(n):
                    m = N[x][y][z]
                    if not m or not rights[y]:
                        continue
                    for el in lefts[x]:
                        for er in rights[y]:
                            for mu in range(m):
                                out.append((x, y, el, er, mu))
            out = tuple(out)
        else:
            fs = self.functors[shape[1]]
            src = self.levels[fs.src]
            out = []
            for c in range(src.rank):
                m = fs.mult[c][z]
                if not m:
                    continue
                for et in self.elems(shape[2], labels, c, fs.src):
                    for j in range(m):
                        out.append((c, et, j))
            out = tuple(out)
        self._elems[key] = out
        return out

    def index(self, shape, labels, z, level) -> dict:
        key = (shape, labels, z, level)
        got = self._index.get(key)
        if got is None:
            got = {e: i for i, e in enumerate(self.elems(shape, labels, z, level))}
            self._index[key] = got
        return got

    def dim(self, shape, labels, z, level) -> int:
        return len(self.elems(shape, labels, z, level))

    # -- applying a Nat ------------------------------------------------------
    def apply_root(self, nat: Nat, shape, elem, z):
        """Apply ``nat`` at the root of ``shape`` to one element.

        Returns a list of (coefficient, element of the new shape).
        """
        hl, he = {}, {}
        pe = split(nat.src, elem, z, hl, he)
        labels = tuple(hl[k] for k in range(len(hl)))
        blk = nat.block(labels, z)
        if blk is None:
            return []
        row = self.index(nat.src, labels, z, nat.level)[pe]
        cols = self.elems(nat.dst, labels, z, nat.level)
        r = blk[row]
        out = []
        for c in np.nonzero(r)[0] if r.dtype != object else [i for i, v in enumerate(r) if v != 0]:
            out.append((r[c], graft(nat.dst, cols[c], he)))
        return out

    def apply_at(self, nat: Nat, shape, path, elem, z):
        sub, se, sz = sub_elem(shape, path, elem, z)
        return [(c, put_elem(shape, path, elem, ne)) for c, ne in self.apply_root(nat, sub, se, sz)]

    def step_shape(self, nat: Nat, shape, path):
        sub = get_at(shape, path)
        b = match(nat.src, sub)
        if b is None:
            raise ShapeChainBroken(f"{nat.name or 'map'} does not apply to {sub}")
        return replace_at(shape, path, substitute(nat.dst, b))

    def step_matrix(self, nat: Nat, shape, path, labels, z, level, cache=True):
        """Matrix of applying ``nat`` at ``path`` of ``shape``; returns (matrix, new shape)."""
        key = (nat.uid, shape, tuple(path), labels, z, level)
        got = self._step.get(key) if cache else None
        if got is not None:
            return got
        new = self.step_shape(nat, shape, path)
        f = self.field
        rows = self.elems(shape, labels, z, level)
        cols = self.index(new, labels, z, level)
        m = f.zeros((len(rows), len(cols)))
        for i, e in enumerate(rows):
            for c, ne in self.apply_at(nat, shape, path, e, z):
                j = cols[ne]
                m[i, j] = f.add(m[i, j], c)
        got = (m, new)
        if cache:
            self._step[key] = got
        return got

    def route_matrix(self, steps, shape, labels, z, level, cache=True):
        """Compose a list of (nat, path) steps starting at ``shape``.

        With ``cache=False`` nothing is memoised for the route or for steps
        through Nats that are not structural (use this for throwaway cochains).
        """
        key = (tuple((n.uid, tuple(p)) for n, p in steps), shape, labels, z, level)
        got = self._route.get(key) if cache else None
        if got is not None:
            return got
        f = self.field
        cur = shape
        m = f.eye(self.dim(shape, labels, z, level))
        for nat, path in steps:
            s, cur = self.step_matrix(nat, cur, path, labels, z, level,
                                      cache=cache or self._is_structural(nat))
            m = f.matmul(m, s)
        got = (m, cur)
        if cache:
            self._route[key] = got
        return got

    def _is_structural(self, nat: Nat) -> bool:
        return any(n is nat for n in self._struct.values())

    def route_shape(self, steps, shape):
        for nat, path in steps:
            shape = self.step_shape(nat, shape, path)
        return shape

    # -- structural maps -----------------------------------------------------
    def structural(self, level: str, kind: str) -> Nat:
        """kind in alpha, alpha_inv, lam, lam_inv, rho, rho_inv."""
        key = (level, kind)
        if key not in self._struct:
            self._build_structural(level)
        return self._struct[key]

    def _build_structural(self, level):
        cat = self.levels[level]
        f = self.field
        l0, l1, l2 = leaf(0), leaf(1), leaf(2)
        fw = {}
        bw = {}
        for (a, b, c, d), m in cat.F.items():
            fw[((a, b, c), d)] = m
            bw[((a, b, c), d)] = cat.F_inv[(a, b, c, d)]
        alpha = Nat(T(T(l0, l1), l2), T(l0, T(l1, l2)), level, fw, name=f"alpha[{level}]")
        alpha_inv = Nat(alpha.dst, alpha.src, level, bw, name=f"alpha_inv[{level}]")
        alpha.inverse, alpha_inv.inverse = alpha_inv, alpha
        lam_b, lami_b, rho_b, rhoi_b = {}, {}, {}, {}
        for a in range(cat.rank):
            lam_b[((a,), a)] = f.array([[cat.lam[a]]])
            lami_b[((a,), a)] = f.array([[f.inv(cat.lam[a])]])
            rho_b[((a,), a)] = f.array([[cat.rho[a]]])
            rhoi_b[((a,), a)] = f.array([[f.inv(cat.rho[a])]])
        lam = Nat(T(UNIT, l0), l0, level, lam_b, name=f"lam[{level}]")
        lam_inv = Nat(l0, T(UNIT, l0), level, lami_b, name=f"lam_inv[{level}]")
        rho = Nat(T(l0, UNIT), l0, level, rho_b, name=f"rho[{level}]")
        rho_inv = Nat(l0, T(l0, UNIT), level, rhoi_b, name=f"rho_inv[{level}]")
        lam.inverse, lam_inv.inverse = lam_inv, lam
        rho.inverse, rho_inv.inverse = rho_inv, rho
        self._struct.update({(level, "alpha"): alpha, (level, "alpha_inv"): alpha_inv,
                             (level, "lam"): lam, (level, "lam_inv"): lam_inv,
                             (level, "rho"): rho, (level, "rho_inv"): rho_inv})

    # -- canonical reassociation ---------------------------------------------
    def normalize(self, shape, level):
        """Steps taking ``shape`` to its unit-free right-comb normal form."""
        key = (shape, level)
        got = self._norm.get(key)
        if got is None:
            steps = []
            nf = self._norm_rec(shape, (), level, steps)
            got = (tuple(steps), nf)
            self._norm[key] = got
        return got

    def _norm_rec(self, shape, path, level, steps):
        tag = shape[0]
        if tag in ("L", "1"):
            return shape
        if tag == "A":
            inner = self._norm_rec(shape[2], path + (0,), self.functors[shape[1]].src, steps)
            return A(shape[1], inner)
        left = self._norm_rec(shape[1], path + (0,), level, steps)
        right = self._norm_rec(shape[2], path + (1,), level, steps)
        if left == UNIT:
            steps.append((self.structural(level, "lam"), path))
            return right
        if right == UNIT:
            steps.append((self.structural(level, "rho"), path))
            return left
        return self._rotate(left, right, path, level, steps)

    def _rotate(self, left, right, path, level, steps):
        # both arguments are in normal form
        if left[0] != "T":
            return T(left, right)
        steps.append((self.structural(level, "alpha"), path))
        inner = self._rotate(left[2], right, path + (1,), level, steps)
        return T(left[1], inner)

    def reassociate_steps(self, src, dst, level):
        """Canonical route src -> dst (through the common normal form)."""
        s1, n1 = self.normalize(src, level)
        s2, n2 = self.normalize(dst, level)
        if n1 != n2:
            raise ShapeChainBroken(f"no coherence isomorphism between {src} and {dst}")
        back = [(nat.inverse, p) for nat, p in reversed(s2)]
        return list(s1) + back

    def reassociate_matrix(self, src, dst, labels, z, level):
        steps = self.reassociate_steps(src, dst, level)
        m, end = self.route_matrix(steps, src, labels, z, level)
        assert end == dst
        return m


def all_labels(ctx: Ctx, levels: Iterable[str]):
    return itertools.product(*[range(ctx.levels[lv].rank) for lv in levels])


def hole_levels(ctx: Ctx, pattern, level) -> list:
    """Level of each hole of ``pattern`` when the pattern sits at ``level``."""
    out = {}

    def rec(s, lv):
        if s[0] == "L":
            out[s[1]] = lv
        elif s[0] == "T":
            rec(s[1], lv)
            rec(s[2], lv)
        elif s[0] == "A":
            rec(s[2], ctx.functors[s[1]].src)

    rec(pattern, level)
    return [out[k] for k in range(len(out))]


def nat_from_function(ctx: Ctx, src, dst, level, fn: Callable, name="") -> Nat:
    """Build a Nat by evaluating ``fn(labels, z)`` on every (labels, z)."""
    blocks = {}
    hl = hole_levels(ctx, src, level)
    for labels in all_labels(ctx, hl):
        labels = tuple(labels)
        for z in range(ctx.levels[level].rank):
            r = ctx.dim(src, labels, z, level)
            c = ctx.dim(dst, labels, z, level)
            if r and c:
                blocks[(labels, z)] = fn(labels, z)
    return Nat(src, dst, level, blocks, name=name)
