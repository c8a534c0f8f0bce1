"""Finite cochain complexes given by explicit matrices, maps, cones, cohomology.

Convention: the differential ``d_n`` of a complex is an array of shape
``(dim C^{n+1}, dim C^n)`` acting on column vectors.  A complex built from a
truncated construction (the deformation complexes stop at some maximal
degree) is *open* at the top: cohomology is only available in degrees whose
outgoing differential is known.  A *bounded* complex is zero past ``hi``.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import DegreeOutOfRange, NotAChainMap, NotAComplex
from .exact import Field
from .linalg import kernel, rank, reduce_against, rref


@dataclass
class GradedComplex:
    field: Field
    dims: dict            # degree -> dimension, for lo..hi
    diffs: dict           # degree n -> array (dims[n+1], dims[n]), for lo..hi-1
    bounded: bool = False
    labels: dict = dc_field(default_factory=dict)   # optional basis labels per degree
    _cache: dict = dc_field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if not self.dims:
            raise NotAComplex("complex without degrees")
        self.lo = min(self.dims)
        self.hi = max(self.dims)
        for n in range(self.lo, self.hi + 1):
            if n not in self.dims:
                raise NotAComplex(f"missing dimension in degree {n}")
        for n in range(self.lo, self.hi):
            d = self.diffs.get(n)
            if d is None:
                raise NotAComplex(f"missing differential in degree {n}")
            if d.shape != (self.dims[n + 1], self.dims[n]):
                raise NotAComplex(f"differential d_{n} has shape {d.shape}", index=n)
        for n in range(self.lo, self.hi - 1):
            sq = self.field.matmul(self.diffs[n + 1], self.diffs[n])
            if not self.field.is_zero_array(sq):
                raise NotAComplex(f"d_{n + 1} d_{n} != 0", index=n)

    # -- basic accessors ---------------------------------------------------
    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> np.ndarray | None:
        """The differential out of degree n, or None if it is not known."""
        if self.lo <= n < self.hi:
            return self.diffs[n]
        if n < self.lo - 1 or (n >= self.hi and self.bounded):
            return self.field.zeros((self.dim(n + 1), self.dim(n)))
        if n == self.lo - 1:
            return self.field.zeros((self.dim(n + 1), 0))
        return None

    def has_cohomology(self, n: int) -> bool:
        return self.d(n) is not None

    # -- cycles, boundaries, cohomology -----------------------------------
    def cycles(self, n: int) -> np.ndarray:
        key = ("Z", n)
        if key not in self._cache:
            d = self.d(n)
            if d is None:
                raise DegreeOutOfRange(f"no outgoing differential in degree {n}", index=n)
            self._cache[key] = kernel(self.field, d) if self.dim(n) else self.field.zeros((0, 0))
        return self._cache[key]

    def boundaries(self, n: int) -> tuple:
        """RREF rows spanning im d_{n-1} in C^n, and their pivots."""
        key = ("B", n)
        if key not in self._cache:
            d = self.d(n - 1)
            if d is None or d.shape[1] == 0 or self.dim(n) == 0:
                self._cache[key] = (self.field.zeros((0, self.dim(n))), [])
            else:
                self._cache[key] = rref(self.field, d.T.copy())
        return self._cache[key]

    def cohomology(self, n: int):
        key = ("H", n)
        if key not in self._cache:
            self._cache[key] = cohomology(self, n)
        return self._cache[key]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * self.dims[n] for n in self.dims)


def cohomology(c: GradedComplex, n: int):
    """Return ``(dim H^n, representatives)``; representatives are rows.

    Representatives are kernel vectors reduced modulo the image and then put
    in reduced echelon form, so they are canonical.
    """
    if not c.has_cohomology(n) or n < c.lo or n > c.hi:
        if not (c.bounded and (n < c.lo or n > c.hi)):
            raise DegreeOutOfRange(f"cohomology in degree {n} is not available "
                                   f"(complex known on {c.lo}..{c.hi})", index=n)
        return 0, c.field.zeros((0, 0))
    f = c.field
    z = c.cycles(n)
    br, bp = c.boundaries(n)
    if z.shape[0] == 0:
        return 0, f.zeros((0, c.dim(n)))
    reduced = np.vstack([reduce_against(f, v, br, bp) for v in z])
    reps, _ = rref(f, reduced)
    dim = reps.shape[0]
    if dim != z.shape[0] - len(bp):
        raise AssertionError("cohomology rank bookkeeping failed")
    return dim, reps


@dataclass
class ComplexMap:
    """Cochain map ``source -> target``; ``maps[n]`` has shape (dim T^n, dim S^n)."""

    source: GradedComplex
    target: GradedComplex
    maps: dict

    def __post_init__(self):
        f = self.source.field
        for n, m in self.maps.items():
            if m.shape != (self.target.dim(n), self.source.dim(n)):
                raise NotAChainMap(f"map in degree {n} has shape {m.shape}", index=n)
        for n in self.maps:
            if n + 1 not in self.maps:
                continue
            ds, dt = self.source.d(n), self.target.d(n)
            if ds is None or dt is None:
                continue
            lhs = f.matmul(dt, self.maps[n])
            rhs = f.matmul(self.maps[n + 1], ds)
            if not np.array_equal(lhs, rhs):
                raise NotAChainMap(f"map does not commute with d in degree {n}", index=n)

    def at(self, n: int) -> np.ndarray:
        if n in self.maps:
            return self.maps[n]
        return self.source.field.zeros((self.target.dim(n), self.source.dim(n)))

    def scaled(self, c) -> "ComplexMap":
        f = self.source.field
        return ComplexMap(self.source, self.target, {n: f.scale(f.coerce(c), m) for n, m in self.maps.items()})

    @classmethod
    def identity(cls, c: GradedComplex) -> "ComplexMap":
        return cls(c, c, {n: c.field.eye(c.dim(n)) for n in c.dims})

    @classmethod
    def zero(cls, s: GradedComplex, t: GradedComplex) -> "ComplexMap":
        f = s.field
        return cls(s, t, {n: f.zeros((t.dim(n), s.dim(n))) for n in set(s.dims) | set(t.dims)})


@dataclass
class ConeComplex:
    """The cone ``C^n = B^n (+) A^{n+1}`` of a map ``u: A -> B``.

    On column vectors ``d(b, a) = (d_B b + u a, -d_A a)``.
    """

    complex: GradedComplex
    map: ComplexMap

    def split(self, n: int, v: np.ndarray):
        nb = self.map.target.dim(n)
        return v[:nb], v[nb:]

    def join(self, b: np.ndarray, a: np.ndarray) -> np.ndarray:
        return np.concatenate([b, a])


def cone(u: ComplexMap) -> ConeComplex:
    a, b = u.source, u.target
    f = a.field
    lo = min(b.lo, a.lo - 1)
    if a.bounded and b.bounded:
        hi = max(b.hi, a.hi - 1)
    else:
        hi = min([b.hi] * (not b.bounded) + [a.hi - 1] * (not a.bounded))
    dims = {n: b.dim(n) + a.dim(n + 1) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo, hi):
        db, da = b.d(n), a.d(n + 1)
        if db is None or da is None:
            raise NotAChainMap(f"cone differential unavailable in degree {n}", index=n)
        nb0, na0 = b.dim(n), a.dim(n + 1)
        nb1, na1 = b.dim(n + 1), a.dim(n + 2)
        m = f.zeros((nb1 + na1, nb0 + na0))
        if nb1 and nb0:
            m[:nb1, :nb0] = db
        if nb1 and na0:
            m[:nb1, nb0:] = u.at(n + 1)
        if na1 and na0:
            m[nb1:, nb0:] = f.scale(f.neg(f.one), da)
        diffs[n] = m
    c = GradedComplex(f, dims, diffs, bounded=a.bounded and b.bounded)
    return ConeComplex(c, u)


def _stack(f: Field, parts, width: int) -> np.ndarray:
    parts = [p for p in parts if p.shape[0]]
    if not parts:
        return f.zeros((0, width))
    return np.vstack(parts)


def _rk(f: Field, m: np.ndarray) -> int:
    return rank(f, m) if m.shape[0] and m.shape[1] else 0


def les_rank_check(u: ComplexMap, degrees=None) -> dict:
    """Check exactness of the long exact sequence of ``cone(u)`` by ranks.

    For every degree n where all the groups are available, verifies
    exactness at H^n(B), at H^n(C_u) and at H^{n+1}(A) in
    ``... -> H^n(A) -> H^n(B) -> H^n(C_u) -> H^{n+1}(A) -> H^{n+1}(B) -> ...``
    """
    cc = cone(u).complex
    a, b = u.source, u.target
    f = a.field
    rows = []
    ok = True
    if degrees is None:
        degrees = range(cc.lo, cc.hi + 1)
    for n in degrees:
        need = [(a, n), (b, n), (cc, n), (a, n + 1), (b, n + 1)]
        if not all(x.has_cohomology(k) for x, k in need):
            continue
        nb, na1 = b.dim(n), a.dim(n + 1)

        def bnd(x, k):
            return x.boundaries(k)[0]

        za, zb, zc, za1 = a.cycles(n), b.cycles(n), cc.cycles(n), a.cycles(n + 1)
        bb, bc, ba1, bb1 = bnd(b, n), bnd(cc, n), bnd(a, n + 1), bnd(b, n + 1)
        rb, rc, ra1, rb1 = bb.shape[0], bc.shape[0], ba1.shape[0], bb1.shape[0]
        # images of cycles under the maps of the triangle
        uza = f.matmul(u.at(n), za.T).T if za.shape[0] and nb else f.zeros((0, nb))
        izb = np.hstack([zb, f.zeros((zb.shape[0], na1))]) if zb.shape[0] else f.zeros((0, nb + na1))
        pzc = zc[:, nb:] if zc.shape[0] else f.zeros((0, na1))
        uza1 = (f.matmul(u.at(n + 1), za1.T).T if za1.shape[0] and b.dim(n + 1)
                else f.zeros((0, b.dim(n + 1))))
        s_uz = _rk(f, _stack(f, [uza, bb], nb))
        s_iz = _rk(f, _stack(f, [izb, bc], nb + na1))
        s_pz = _rk(f, _stack(f, [pzc, ba1], na1))
        s_uz1 = _rk(f, _stack(f, [uza1, bb1], b.dim(n + 1)))
        im_u = s_uz - rb
        ker_i = zb.shape[0] - (s_iz - rc) - rb
        im_i = s_iz - rc
        ker_p = zc.shape[0] - (s_pz - ra1) - rc
        im_p = s_pz - ra1
        ker_u1 = za1.shape[0] - (s_uz1 - rb1) - ra1
        h = {"A": a.cohomology(n)[0], "B": b.cohomology(n)[0], "C": cc.cohomology(n)[0],
             "A+1": a.cohomology(n + 1)[0], "B+1": b.cohomology(n + 1)[0]}
        row = {
            "degree": n,
            "dims": h,
            "exact_at_B": im_u == ker_i,
            "exact_at_C": im_i == ker_p,
            "exact_at_A": im_p == ker_u1,
            "rank_formula": h["C"] == (h["B"] - im_u) + ker_u1,
        }
        row["ok"] = all(row[k] for k in ("exact_at_B", "exact_at_C", "exact_at_A", "rank_formula"))
        ok = ok and row["ok"]
        rows.append(row)
    return {"ok": ok and bool(rows), "degrees": rows}
