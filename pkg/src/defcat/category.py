"""Finite skeletal monoidal categories given by fusion data.

Simples are numbered 0..rank-1 (``names`` keeps the user labels).  ``N[a][b][c]``
is the fusion multiplicity, ``F[(a, b, c, d)]`` the associator
(ab)c -> a(bc) on the multiplicity spaces with output d: rows are the
left-tree basis (e, mu: ab->e, nu: ec->d), columns the right-tree basis
(f, mu: bc->f, nu: af->d), both in lexicographic order.  ``lam[a]`` and
``rho[a]`` are the unitors 1a -> a and a1 -> a as scalars.

The pentagon and triangle checks here are written directly in these index
conventions and do not go through the shape engine, so they can serve as an
independent oracle for it (and, with series-valued F, for deformations).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from functools import cached_property

import numpy as np

from .errors import (ArityMismatch, FieldMismatch, NotInvertible, PentagonViolation,
                     ShapeError, SingularF, TriangleViolation, UnitRuleViolation)
from .exact import Field, mseries_mul
from .shapes import UNIT, Ctx, Nat, T, leaf, leaves, left_comb, nat_from_function, right_comb


@dataclass(eq=False)
class FusionData:
    field: Field
    names: tuple
    unit: int
    N: tuple                      # N[a][b][c]
    F: dict                       # (a,b,c,d) -> array
    lam: tuple
    rho: tuple
    _inv: dict = dc_field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        return len(self.names)

    def label(self, a: int) -> str:
        return self.names[a]

    def simple(self, name) -> int:
        if isinstance(name, (int, np.integer)) and not isinstance(name, bool):
            return int(name)
        return self.names.index(name)

    # -- bases of F-matrices -------------------------------------------------
    def left_basis(self, a, b, c, d) -> list:
        N = self.N
        return [(e, mu, nu) for e in range(self.rank)
                for mu in range(N[a][b][e]) for nu in range(N[e][c][d])]

    def right_basis(self, a, b, c, d) -> list:
        N = self.N
        return [(f, mu, nu) for f in range(self.rank)
                for mu in range(N[b][c][f]) for nu in range(N[a][f][d])]

    def F_block(self, a, b, c, d) -> np.ndarray:
        m = self.F.get((a, b, c, d))
        if m is None:
            return self.field.zeros((len(self.left_basis(a, b, c, d)), len(self.right_basis(a, b, c, d))))
        return m

    @property
    def F_inv(self) -> dict:
        if not self._inv:
            for k, m in self.F.items():
                try:
                    self._inv[k] = self.field.inverse_matrix(m)
                except NotInvertible:
                    raise SingularF(f"F-matrix at {self._names(k)} is singular", index=self._names(k))
        return self._inv

    def _names(self, idx) -> tuple:
        return tuple(self.names[i] for i in idx)

    def quadruples(self):
        """All (a,b,c,d) with a nonempty F-matrix."""
        r = range(self.rank)
        for a, b, c, d in itertools.product(r, r, r, r):
            if self.left_basis(a, b, c, d):
                yield (a, b, c, d)

    @cached_property
    def ctx(self) -> Ctx:
        return Ctx(self.field, {"C": self})


def make_fusion(field: Field, names, unit, fusion, F, lam=None, rho=None) -> FusionData:
    """Build FusionData from user-level pieces.

    ``fusion`` is an iterable of (a, b, c, N) with labels; ``F`` maps label
    quadruples to nested lists.  Missing unit-involving F entries default to
    identity matrices; other missing entries with a nonzero shape are an error
    caught by :func:`validate_fusion`.
    """
    names = tuple(str(n) for n in names)
    idx = {n: i for i, n in enumerate(names)}
    r = len(names)
    N = [[[0] * r for _ in range(r)] for _ in range(r)]
    for a, b, c, m in fusion:
        N[idx[str(a)]][idx[str(b)]][idx[str(c)]] = int(m)
    u = idx[str(unit)]
    N = tuple(tuple(tuple(row) for row in plane) for plane in N)
    Fd = {}
    for key, mat in F.items():
        k = tuple(idx[str(x)] for x in key)
        Fd[k] = field.array(mat) if len(mat) else field.zeros((0, 0))
    lam = tuple(field.coerce(lam[n]) if lam else field.one for n in names) if lam else (field.one,) * r
    rho = tuple(field.coerce(rho[n]) if rho else field.one for n in names) if rho else (field.one,) * r
    cat = FusionData(field, names, u, N, Fd, lam, rho)
    for q in itertools.product(range(r), repeat=4):
        if q in Fd:
            continue
        rows = len(cat.left_basis(*q))
        cols = len(cat.right_basis(*q))
        if rows == 0 and cols == 0:
            continue
        if u in q[:3] and rows == cols:
            Fd[q] = field.eye(rows)
    return cat


def validate_fusion(c: FusionData) -> dict:
    f = c.field
    r = c.rank
    for a in range(r):
        for b in range(r):
            for x in range(r):
                want = 1 if a == x else 0
                if c.N[c.unit][a][x] != (1 if a == x else 0) or c.N[a][c.unit][x] != want:
                    raise UnitRuleViolation(f"unit fusion rule fails at {c._names((a, x))}",
                                            index=c._names((a, x)))
            for x in range(r):
                if c.N[a][b][x] < 0:
                    raise ShapeError("negative multiplicity", index=c._names((a, b, x)))
    for q in itertools.product(range(r), repeat=4):
        rows = len(c.left_basis(*q))
        cols = len(c.right_basis(*q))
        m = c.F.get(q)
        if m is None:
            if rows or cols:
                raise ShapeError(f"missing F-matrix at {c._names(q)} (expected {rows}x{cols})",
                                 index=c._names(q))
            continue
        if m.shape != (rows, cols):
            raise ShapeError(f"F-matrix at {c._names(q)} has shape {m.shape}, expected {(rows, cols)}",
                             index=c._names(q))
        if rows != cols:
            raise SingularF(f"F-matrix at {c._names(q)} is not square", index=c._names(q))
    for q, m in c.F.items():
        try:
            f.inverse_matrix(m)
        except NotInvertible:
            raise SingularF(f"F-matrix at {c._names(q)} is singular", index=c._names(q))
    for a in range(r):
        if f.is_zero(c.lam[a]) or f.is_zero(c.rho[a]):
            raise UnitRuleViolation(f"unitor at {c.names[a]} is not invertible", index=(c.names[a],))
    if c.lam[c.unit] != c.rho[c.unit]:
        raise UnitRuleViolation("bigon fails: rho_1 != lam_1", index=(c.names[c.unit],))
    return {"valid": True, "simples": r, "quadruples": sum(1 for _ in c.quadruples())}


# -- pentagon and triangle in explicit indices -------------------------------

def _zeros(f, r, c, order):
    return [f.zeros((r, c)) for _ in range(order + 1)]


def pentagon_sides(c: FusionData, Fs: dict, a, b, cc, d, o, order: int):
    """Both sides of the pentagon at (a,b,c,d) -> o as matrix series.

    ``Fs[(a,b,c,d)]`` is a list of coefficient matrices (order 0..order).
    Returns (lhs, rhs) as lists of matrices P0 -> P2.
    """
    f = c.field
    N = c.N
    R = range(c.rank)
    P0 = [(x, y, m1, m2, m3) for x in R for y in R for m1 in range(N[a][b][x])
          for m2 in range(N[x][cc][y]) for m3 in range(N[y][d][o])]
    P1 = [(x, g, m1, mcd, n) for x in R for g in R for m1 in range(N[a][b][x])
          for mcd in range(N[cc][d][g]) for n in range(N[x][g][o])]
    P2 = [(g, h, mcd, mbg, n) for g in R for h in R for mcd in range(N[cc][d][g])
          for mbg in range(N[b][g][h]) for n in range(N[a][h][o])]
    P3 = [(h, y, mbc, mah, m3) for h in R for y in R for mbc in range(N[b][cc][h])
          for mah in range(N[a][h][y]) for m3 in range(N[y][d][o])]
    P4 = [(h, g, mbc, mhd, n) for h in R for g in R for mbc in range(N[b][cc][h])
          for mhd in range(N[h][d][g]) for n in range(N[a][g][o])]
    if not P0:
        return None
    i0, i1, i2, i3, i4 = ({e: i for i, e in enumerate(P)} for P in (P0, P1, P2, P3, P4))

    def lb(q):
        return {e: i for i, e in enumerate(c.left_basis(*q))}

    def rb(q):
        return {e: i for i, e in enumerate(c.right_basis(*q))}

    def get(q, k):
        s = Fs.get(q)
        if s is None or k >= len(s):
            return None
        return s[k]

    M01 = _zeros(f, len(P0), len(P1), order)
    M12 = _zeros(f, len(P1), len(P2), order)
    M03 = _zeros(f, len(P0), len(P3), order)
    M34 = _zeros(f, len(P3), len(P4), order)
    M42 = _zeros(f, len(P4), len(P2), order)
    for k in range(order + 1):
        for (x, y, m1, m2, m3), i in i0.items():
            q = (x, cc, d, o)
            m = get(q, k)
            if m is not None:
                L, Rr = lb(q), rb(q)
                for (g, mcd, n), j in Rr.items():
                    M01[k][i, i1[(x, g, m1, mcd, n)]] = m[L[(y, m2, m3)], j]
            q = (a, b, cc, y)
            m = get(q, k)
            if m is not None:
                L, Rr = lb(q), rb(q)
                for (h, mbc, mah), j in Rr.items():
                    M03[k][i, i3[(h, y, mbc, mah, m3)]] = m[L[(x, m1, m2)], j]
        for (x, g, m1, mcd, n), i in i1.items():
            q = (a, b, g, o)
            m = get(q, k)
            if m is not None:
                L, Rr = lb(q), rb(q)
                for (h, mbg, n2), j in Rr.items():
                    M12[k][i, i2[(g, h, mcd, mbg, n2)]] = m[L[(x, m1, n)], j]
        for (h, y, mbc, mah, m3), i in i3.items():
            q = (a, h, d, o)
            m = get(q, k)
            if m is not None:
                L, Rr = lb(q), rb(q)
                for (g, mhd, n), j in Rr.items():
                    M34[k][i, i4[(h, g, mbc, mhd, n)]] = m[L[(y, mah, m3)], j]
        for (h, g, mbc, mhd, n), i in i4.items():
            q = (b, cc, d, g)
            m = get(q, k)
            if m is not None:
                L, Rr = lb(q), rb(q)
                for (g2, mcd, mbg), j in Rr.items():
                    M42[k][i, i2[(g2, g, mcd, mbg, n)]] = m[L[(h, mbc, mhd)], j]
    lhs = mseries_mul(f, M01, M12)
    rhs = mseries_mul(f, mseries_mul(f, M03, M34), M42)
    return lhs, rhs


def pentagon_failures(c: FusionData, Fs: dict, order: int, first_only=True):
    """Yield (order k, (a,b,c,d,o)) for every unbalanced pentagon coefficient."""
    out = []
    R = range(c.rank)
    for a, b, cc, d, o in itertools.product(R, R, R, R, R):
        sides = pentagon_sides(c, Fs, a, b, cc, d, o, order)
        if sides is None:
            continue
        lhs, rhs = sides
        for k in range(order + 1):
            if not np.array_equal(lhs[k], rhs[k]):
                out.append((k, (a, b, cc, d, o)))
                if first_only:
                    return out
                break
    return out


def pentagon_count(c: FusionData) -> int:
    R = range(c.rank)
    return sum(1 for a, b, cc, d in itertools.product(R, R, R, R)
               if any(pentagon_sides_nonempty(c, a, b, cc, d, o) for o in R))


def pentagon_sides_nonempty(c, a, b, cc, d, o) -> bool:
    N = c.N
    R = range(c.rank)
    return any(N[a][b][x] and N[x][cc][y] and N[y][d][o] for x in R for y in R)


def triangle_failures(c: FusionData, Fs: dict, lam_s, rho_s, order: int):
    """Check F^{a1b}_d * lam_b = rho_a * I as series; lam_s[a] / rho_s[a] are coefficient lists."""
    f = c.field
    u = c.unit
    out = []
    for a in range(c.rank):
        for b in range(c.rank):
            for d in range(c.rank):
                n = c.N[a][b][d]
                if not n:
                    continue
                F = Fs.get((a, u, b, d))
                for k in range(order + 1):
                    lhs = f.zeros((n, n))
                    for i in range(k + 1):
                        if F is not None and i < len(F) and k - i < len(lam_s[b]):
                            lhs = f.plus(lhs, f.scale(lam_s[b][k - i], F[i]))
                    rhs = f.scale(rho_s[a][k], f.eye(n)) if k < len(rho_s[a]) else f.zeros((n, n))
                    if not np.array_equal(lhs, rhs):
                        out.append((k, (a, b, d)))
                        break
    return out


def verify_coherence(c: FusionData) -> dict:
    validate_fusion(c)
    Fs = {q: [m] for q, m in c.F.items()}
    bad = pentagon_failures(c, Fs, 0)
    if bad:
        _, idx = bad[0]
        raise PentagonViolation(f"pentagon fails at {c._names(idx)}", index=c._names(idx))
    lam_s = [[x] for x in c.lam]
    rho_s = [[x] for x in c.rho]
    bad = triangle_failures(c, Fs, lam_s, rho_s, 0)
    if bad:
        _, idx = bad[0]
        raise TriangleViolation(f"triangle fails at {c._names(idx[:2])}", index=c._names(idx[:2]))
    R = range(c.rank)
    n_pent = sum(1 for a, b, cc, d, o in itertools.product(R, R, R, R, R)
                 if pentagon_sides_nonempty(c, a, b, cc, d, o))
    return {"pentagon": "ok", "triangle": "ok", "pentagon_instances": n_pent,
            "triangle_instances": c.rank * c.rank}


# -- reassociation and padded composition ------------------------------------

def tree_to_shape(tree):
    """Nested tuples of leaf positions; ``'I'`` or None marks a unit."""
    if tree is None or tree == "I":
        return UNIT
    if isinstance(tree, (int, np.integer)):
        return leaf(int(tree))
    if len(tree) == 1:
        return tree_to_shape(tree[0])
    if len(tree) != 2:
        raise ArityMismatch(f"tree node with {len(tree)} children")
    return T(tree_to_shape(tree[0]), tree_to_shape(tree[1]))


def left_tree(n: int):
    t = 0
    for k in range(1, n):
        t = (t, k)
    return t


def right_tree(n: int):
    t = n - 1
    for k in range(n - 2, -1, -1):
        t = (k, t)
    return t


def reassociate(word, src, dst, c: FusionData) -> dict:
    """Coherence isomorphism src -> dst for the given word of simples.

    Returns ``{output simple: matrix}`` over all outputs with a nonempty space.
    """
    s, t = tree_to_shape(src), tree_to_shape(dst)
    labels = tuple(c.simple(w) for w in word)
    for sh in (s, t):
        ls = leaves(sh)
        if sorted(ls) != list(range(len(labels))):
            raise ArityMismatch(f"tree leaves {ls} do not match a word of length {len(labels)}")
    ctx = c.ctx
    out = {}
    for z in range(c.rank):
        if ctx.dim(s, labels, z, "C"):
            out[z] = ctx.reassociate_matrix(s, t, labels, z, "C")
    return out


def route_by_moves(word, src, moves, c: FusionData) -> tuple:
    """Apply an explicit list of associator moves.

    ``moves`` is a list of (path, direction) with direction +1 for
    (xy)z -> x(yz) and -1 for the inverse.  Returns (matrices, final shape).
    """
    ctx = c.ctx
    shape = tree_to_shape(src)
    labels = tuple(c.simple(w) for w in word)
    steps = [(ctx.structural("C", "alpha" if d > 0 else "alpha_inv"), tuple(p)) for p, d in moves]
    out = {}
    end = ctx.route_shape(steps, shape)
    for z in range(c.rank):
        if ctx.dim(shape, labels, z, "C"):
            out[z] = ctx.route_matrix(steps, shape, labels, z, "C")[0]
    return out, end


@dataclass(frozen=True)
class Part:
    """One factor of a padded composite: ``nat`` applied at ``path`` of ``shape``."""

    nat: Nat
    shape: tuple
    path: tuple = ()


def pad_compose(parts: list, ctx: Ctx, level: str = "C", name: str = "pad") -> Nat:
    """Padded composite of ``parts`` with canonical coherence maps inserted.

    The result runs from the unit-free left comb of the atoms to the
    unit-free right comb and is returned as a Nat over all hole labels.
    """
    steps = []
    cur = None
    for p in parts:
        if cur is not None:
            steps += ctx.reassociate_steps(cur, p.shape, level)
        steps.append((p.nat, tuple(p.path)))
        cur = ctx.step_shape(p.nat, p.shape, tuple(p.path))
    _, nf0 = ctx.normalize(parts[0].shape, level)
    _, nf1 = ctx.normalize(cur, level)
    atoms0 = _atoms(nf0)
    atoms1 = _atoms(nf1)
    src = left_comb(atoms0)
    dst = right_comb(atoms1)
    full = ctx.reassociate_steps(src, parts[0].shape, level) + steps + ctx.reassociate_steps(cur, dst, level)

    def block(labels, z):
        m, end = ctx.route_matrix(full, src, labels, z, level)
        assert end == dst
        return m

    return nat_from_function(ctx, src, dst, level, block, name=name)


def _atoms(nf) -> list:
    out = []
    while nf[0] == "T":
        out.append(nf[1])
        nf = nf[2]
    out.append(nf)
    return [a for a in out if a != UNIT] or [UNIT]


def nat_equal(x: Nat, y: Nat) -> bool:
    keys = set(x.blocks) | set(y.blocks)
    for k in keys:
        a, b = x.blocks.get(k), y.blocks.get(k)
        if a is None:
            a = np.zeros_like(b)
        if b is None:
            b = np.zeros_like(a)
        if not np.array_equal(a, b):
            return False
    return True


def degree3_nat(c: FusionData, blocks: dict, name="phi") -> Nat:
    """Nat (L0 L1) L2 -> L0 (L1 L2) from F-shaped blocks keyed (a,b,c,d)."""
    return Nat(T(T(leaf(0), leaf(1)), leaf(2)), T(leaf(0), T(leaf(1), leaf(2))), "C",
               {((a, b, cc), d): m for (a, b, cc, d), m in blocks.items()}, name=name)


def unit_commuting_check(psi: dict, phi: dict, c: FusionData) -> bool:
    """Both unit-commuting identities for degree-3 families psi, phi."""
    ctx = c.ctx
    P = degree3_nat(c, psi, "psi")
    Q = degree3_nat(c, phi, "phi")
    l0, l1 = leaf(0), leaf(1)
    psi_shape = T(T(l0, UNIT), l1)
    # [phi_{A,I,I} (x) B] and psi_{A,I,B}
    phi_left = T(T(T(l0, UNIT), UNIT), l1)
    lhs = pad_compose([Part(Q, phi_left, (0,)), Part(P, psi_shape)], ctx)
    rhs = pad_compose([Part(P, psi_shape), Part(Q, phi_left, (0,))], ctx)
    # [A (x) phi_{I,I,B}] and psi_{A,I,B}
    phi_right = T(l0, T(T(UNIT, UNIT), l1))
    lhs2 = pad_compose([Part(Q, phi_right, (1,)), Part(P, psi_shape)], ctx)
    rhs2 = pad_compose([Part(P, psi_shape), Part(Q, phi_right, (1,))], ctx)
    return nat_equal(lhs, rhs) and nat_equal(lhs2, rhs2)


# -- Deligne product ---------------------------------------------------------

def deligne_product(c1: FusionData, c2: FusionData) -> FusionData:
    if c1.field != c2.field:
        raise FieldMismatch(f"{c1.field!r} vs {c2.field!r}")
    f = c1.field
    n2 = c2.rank
    r = c1.rank * n2
    names = tuple(f"{a}.{b}" for a in c1.names for b in c2.names)

    def sp(i):
        return divmod(i, n2)

    N = tuple(tuple(tuple(c1.N[sp(a)[0]][sp(b)[0]][sp(x)[0]] * c2.N[sp(a)[1]][sp(b)[1]][sp(x)[1]]
                          for x in range(r)) for b in range(r)) for a in range(r))
    prod = FusionData(f, names, c1.unit * n2 + c2.unit, N, {},
                      tuple(f.mul(c1.lam[sp(a)[0]], c2.lam[sp(a)[1]]) for a in range(r)),
                      tuple(f.mul(c1.rho[sp(a)[0]], c2.rho[sp(a)[1]]) for a in range(r)))
    for q in itertools.product(range(r), repeat=4):
        L = prod.left_basis(*q)
        Rb = prod.right_basis(*q)
        if not L and not Rb:
            continue
        q1 = tuple(sp(x)[0] for x in q)
        q2 = tuple(sp(x)[1] for x in q)
        a, b, cc, d = q
        L1 = {e: i for i, e in enumerate(c1.left_basis(*q1))}
        L2 = {e: i for i, e in enumerate(c2.left_basis(*q2))}
        R1 = {e: i for i, e in enumerate(c1.right_basis(*q1))}
        R2 = {e: i for i, e in enumerate(c2.right_basis(*q2))}
        F1, F2 = c1.F_block(*q1), c2.F_block(*q2)
        m = f.zeros((len(L), len(Rb)))
        for i, (e, mu, nu) in enumerate(L):
            e1, e2 = sp(e)
            mu1, mu2 = divmod(mu, c2.N[sp(a)[1]][sp(b)[1]][e2])
            nu1, nu2 = divmod(nu, c2.N[e2][sp(cc)[1]][sp(d)[1]])
            li1, li2 = L1[(e1, mu1, nu1)], L2[(e2, mu2, nu2)]
            for j, (g, mu_, nu_) in enumerate(Rb):
                g1, g2 = sp(g)
                m1_, m2_ = divmod(mu_, c2.N[sp(b)[1]][sp(cc)[1]][g2])
                n1_, n2_ = divmod(nu_, c2.N[sp(a)[1]][g2][sp(d)[1]])
                m[i, j] = f.mul(F1[li1, R1[(g1, m1_, n1_)]], F2[li2, R2[(g2, m2_, n2_)]])
        prod.F[q] = m
    return prod


def split_product_elem(elem, shape, c2: FusionData, z):
    """Split an element of a shape in C1 x C2 into the pair of component elements."""
    n2 = c2.rank
    tag = shape[0]
    if tag in ("L", "1"):
        return (), ()
    x, y, el, er, mu = elem
    x1, x2 = divmod(x, n2)
    y1, y2 = divmod(y, n2)
    z2 = z % n2
    mu1, mu2 = divmod(mu, c2.N[x2][y2][z2])
    l1, l2 = split_product_elem(el, shape[1], c2, x)
    r1, r2 = split_product_elem(er, shape[2], c2, y)
    return (x1, y1, l1, r1, mu1), (x2, y2, l2, r2, mu2)


# -- standard examples -------------------------------------------------------

def vec_group(field: Field, order_or_factors, omega=None) -> FusionData:
    """Vec_G for an abelian group G = Z/n1 x ... with optional 3-cocycle ``omega``.

    ``omega(a, b, c)`` receives group elements as tuples and returns a scalar.
    Simples are numbered in mixed radix, the identity is 0.
    """
    factors = [order_or_factors] if isinstance(order_or_factors, int) else list(order_or_factors)
    elems = list(itertools.product(*[range(n) for n in factors]))
    idx = {g: i for i, g in enumerate(elems)}

    def mul(g, h):
        return tuple((x + y) % n for x, y, n in zip(g, h, factors))

    r = len(elems)
    names = ["".join(str(x) for x in g) if len(factors) > 1 else str(g[0]) for g in elems]
    N = [[[0] * r for _ in range(r)] for _ in range(r)]
    for g in elems:
        for h in elems:
            N[idx[g]][idx[h]][idx[mul(g, h)]] = 1
    Fd = {}
    for g in elems:
        for h in elems:
            for k in elems:
                d = idx[mul(mul(g, h), k)]
                val = field.one if omega is None else field.coerce(omega(g, h, k))
                Fd[(idx[g], idx[h], idx[k], d)] = field.array([[val]])
    N = tuple(tuple(tuple(row) for row in plane) for plane in N)
    return FusionData(field, tuple(names), 0, N, Fd, (field.one,) * r, (field.one,) * r)


def fibonacci(field: Field, phi=None) -> FusionData:
    """Fibonacci category {1, t}, t t = 1 + t, over a field containing a root of x^2 = x + 1."""
    f = field
    if phi is None:
        phi = next((x for x in range(1, f.characteristic) if (x * x - x - 1) % f.characteristic == 0), None)
        if phi is None:
            raise ValueError(f"x^2 - x - 1 has no root in {field!r}")
    phi = f.coerce(phi)
    inv = f.inv(phi)
    names = ("1", "t")
    N = [[[0, 0], [0, 0]], [[0, 0], [0, 0]]]
    N[0][0][0] = 1
    N[0][1][1] = N[1][0][1] = 1
    N[1][1][0] = N[1][1][1] = 1
    N = tuple(tuple(tuple(row) for row in plane) for plane in N)
    cat = FusionData(f, names, 0, N, {}, (f.one, f.one), (f.one, f.one))
    for q in itertools.product(range(2), repeat=4):
        rows = len(cat.left_basis(*q))
        if rows:
            cat.F[q] = f.eye(rows)
    # the usual F^{ttt}_t with off-diagonal entries phi^(-1/2), rescaled by a vertex
    # gauge so no square root is needed; rows e in {1,t}, columns f in {1,t}
    cat.F[(1, 1, 1, 1)] = f.array([[inv, f.one], [inv, f.neg(inv)]])
    return cat
