"""Order-by-order deformations.

A state stores the higher coefficients of the deformed structure maps:
``alpha`` for the associator of the source category, ``ftilde`` for the
multiplication of a functor and ``a`` for the associator of its target.
Which pieces may be nonzero is fixed by the kind:

    category   alpha
    functor    ftilde                (source and target frozen)
    fibred     ftilde, alpha
    total      ftilde, alpha, a

Two independent routes decide whether a state is a deformation: the direct
one promotes every structure map to a matrix series and re-runs the
coherence checks, the other solves the linear equations
``d x_N = t_N`` in the classifying complex order by order.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from .category import FusionData, pentagon_failures, triangle_failures
from .cochains import (Cochain, ComplexSpec, DeformationComplex, _series, build_complex,
                       hexagon_defect, pentagon_defect)
from .errors import (CoherenceFailure, KindDegreeMismatch, KindMismatch, NotMonoidalTransformation,
                     TriangleViolation, UnitRuleViolation)
from .exact import TruncatedSeries
from .functor import (FunctorData, ft_nat, hexagon_failures, induced_bimodule,
                      nat_transformation_check)
from .linalg import NoSolution, reduce_against, solve

STATE_KINDS = ("category", "functor", "fibred", "total")
PIECES = {"category": ("C",), "functor": ("F",), "fibred": ("F", "C"), "total": ("F", "C", "E")}
# degree of each piece inside the classifying degree of the complex
PIECE_DEGREE = {"C": 3, "E": 3, "F": 2}

_complexes: dict = {}


def complex_for(kind: str, base, max_degree: int | None = None, threads: int = 1) -> DeformationComplex:
    """Build (once per base object) the complex that classifies ``kind`` deformations.

    By default the complex stops one degree above the classifying degree,
    which is where obstruction classes live.
    """
    if max_degree is None:
        max_degree = 4 if kind == "category" else 3
    key = (kind, id(base), max_degree)
    got = _complexes.get(key)
    if got is None or got[0] is not base:
        got = (base, build_complex(ComplexSpec(kind, base, max_degree), threads))
        _complexes[key] = got
    return got[1]


@dataclass(eq=False)
class DeformationState:
    kind: str
    base: object
    alpha: list = dc_field(default_factory=list)
    ftilde: list = dc_field(default_factory=list)
    a: list = dc_field(default_factory=list)
    nu: list = dc_field(default_factory=list)
    max_degree: int | None = None

    def __post_init__(self):
        if self.kind not in STATE_KINDS:
            raise KindMismatch(f"unknown deformation kind {self.kind!r}")
        want = FusionData if self.kind == "category" else FunctorData
        if not isinstance(self.base, want):
            raise KindMismatch(f"{self.kind} deformation of a {type(self.base).__name__}")
        allowed = PIECES[self.kind]
        for name, xs in (("C", self.alpha), ("F", self.ftilde), ("E", self.a)):
            if name not in allowed and any(not x.is_zero() for x in xs):
                raise KindMismatch(f"{self.kind} deformations keep the {name} piece fixed")

    @property
    def complex(self) -> DeformationComplex:
        return complex_for(self.kind, self.base, self.max_degree)

    @property
    def order(self) -> int:
        return max(len(self.alpha), len(self.ftilde), len(self.a))

    def space(self, name: str):
        return self.complex.coeffs[name].space(PIECE_DEGREE[name])

    def _list(self, name: str) -> list:
        return {"C": self.alpha, "F": self.ftilde, "E": self.a}[name]

    def coefficient(self, name: str, k: int) -> Cochain:
        """Order-k coefficient (k >= 1) of a piece, zero if absent."""
        xs = self._list(name)
        return xs[k - 1] if k <= len(xs) else self.space(name).zero()

    def padded(self, name: str, order: int) -> list:
        if name not in PIECES[self.kind]:
            return []
        return [self.coefficient(name, k) for k in range(1, order + 1)]

    def vector(self, k: int) -> np.ndarray:
        """The order-k coefficients joined into one vector of the classifying degree."""
        cx = self.complex
        return cx.join(cx.classifying_degree(), {n: self.coefficient(n, k) for n in PIECES[self.kind]})

    def truncated(self, order: int) -> "DeformationState":
        """Cut down (or pad with zeros) to exactly ``order`` coefficients."""
        return DeformationState(self.kind, self.base, self.padded("C", order), self.padded("F", order),
                                self.padded("E", order), self.nu[:order], self.max_degree)

    def extended(self, pieces: dict) -> "DeformationState":
        M = self.order + 1
        out = {n: self.padded(n, M - 1) + [pieces.get(n) or self.space(n).zero()]
               for n in PIECES[self.kind]}
        return DeformationState(self.kind, self.base, out.get("C", []), out.get("F", []),
                                out.get("E", []), list(self.nu), self.max_degree)

    @classmethod
    def trivial(cls, kind: str, base, order: int = 0, max_degree=None) -> "DeformationState":
        s = cls(kind, base, max_degree=max_degree)
        zero = {n: [s.space(n).zero() for _ in range(order)] for n in PIECES[kind]}
        return cls(kind, base, zero.get("C", []), zero.get("F", []), zero.get("E", []),
                   max_degree=max_degree)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "order": self.order}
        for name, key in (("C", "alpha"), ("F", "Ftilde"), ("E", "a")):
            if name in PIECES[self.kind]:
                out[key] = [c.to_json() for c in self.padded(name, self.order)]
        if self.nu:
            f = self.field
            out["nu"] = [f.format(x) for x in self.nu]
        return out

    @property
    def field(self):
        return self.base.field


# -- the direct route --------------------------------------------------------

def _f_series(c: FusionData, cochains: list) -> dict:
    out = {}
    for q, m in c.F.items():
        key = ((q[0], q[1], q[2]), q[3])
        out[q] = [m] + [x.blocks().get(key, m * 0) for x in cochains]
    return out


def coherence_failure(s: DeformationState, order: int | None = None):
    """First failing (order, instance) of the direct check, or None."""
    M = s.order if order is None else order
    if s.kind == "category":
        bad = pentagon_failures(s.base, _f_series(s.base, s.padded("C", M)), M)
        if bad:
            k, idx = bad[0]
            return k, ("pentagon",) + tuple(s.base.names[i] for i in idx)
        return None
    f = s.base
    for name, cat in (("C", f.source), ("E", f.target)):
        if name in PIECES[s.kind]:
            bad = pentagon_failures(cat, _f_series(cat, s.padded(name, M)), M)
            if bad:
                k, idx = bad[0]
                return k, (f"pentagon[{name}]",) + tuple(cat.names[i] for i in idx)
    ctx = s.complex.coeffs["F"].ctx
    ft = _series(ft_nat(f.Ft), s.padded("F", M), M)
    ac = _series(ctx.structural("C", "alpha"), s.padded("C", M), M)
    ae = _series(ctx.structural("E", "alpha"), s.padded("E", M), M)
    bad = hexagon_failures(ctx, ft, ac, ae, M, cache=False)
    if bad:
        k, (a, b, c, z) = bad[0]
        return k, ("hexagon", f.source.names[a], f.source.names[b], f.source.names[c],
                   f.target.names[z])
    return None


def check_deformation(s: DeformationState) -> dict:
    bad = coherence_failure(s)
    if bad is not None:
        k, idx = bad
        raise CoherenceFailure(f"coherence fails at order {k}: {' '.join(map(str, idx))}",
                               index=[k, list(idx)])
    return {"coherent": True, "kind": s.kind, "order": s.order}


# -- the cochain route -------------------------------------------------------

def equation_rhs(s: DeformationState, N: int) -> np.ndarray:
    """Right-hand side t_N of the order-N equation d x_N = t_N.

    Only the coefficients of order < N enter.  For a category this is the
    obstruction cochain omega^(N); for the functor kinds it is minus the
    (hexagon, source pentagon, target pentagon) defects.
    """
    cx = s.complex
    f = cx.field
    k = cx.classifying_degree()
    if s.kind == "category":
        return pentagon_defect(cx.coeffs["C"], s.padded("C", N - 1), N).vec
    pieces = {"F": hexagon_defect(cx.coeffs["F"], s.padded("F", N - 1), s.padded("C", N - 1),
                                  s.padded("E", N - 1), N)}
    if "C" in PIECES[s.kind]:
        pieces["C"] = pentagon_defect(cx.coeffs["C"], s.padded("C", N - 1), N)
    if "E" in PIECES[s.kind]:
        pieces["E"] = pentagon_defect(cx.coeffs["E"], s.padded("E", N - 1), N)
    v = cx.join(k + 1, pieces)
    return f.scale(f.neg(f.one), v)


def _apply(f, m, v):
    return f.matmul(m, v.reshape(-1, 1)).reshape(-1)


def equation_failure(s: DeformationState, order: int | None = None):
    """First order N at which d x_N != t_N, or None."""
    cx = s.complex
    f = cx.field
    d = cx.d(cx.classifying_degree())
    M = s.order if order is None else order
    for N in range(1, M + 1):
        if not np.array_equal(_apply(f, d, s.vector(N)), equation_rhs(s, N)):
            return N
    return None


@dataclass
class Obstructed:
    """Extension to ``order`` is impossible; the obstruction class is nonzero."""

    order: int
    rhs: np.ndarray                 # t_M
    representative: np.ndarray      # t_M reduced modulo boundaries
    coordinates: list               # in the basis of cohomology representatives
    pieces: dict                    # representative split into cochains

    def to_json(self) -> dict:
        f = next(iter(self.pieces.values())).field if self.pieces else None
        return {"status": "obstructed", "order": self.order,
                "class": [f.format(x) for x in self.coordinates] if f else [],
                "representative": {k: v.to_json() for k, v in sorted(self.pieces.items())}}


def _class_of(cx: DeformationComplex, n: int, v: np.ndarray):
    f = cx.field
    br, bp = cx.complex.boundaries(n)
    rep = reduce_against(f, v, br, bp)
    _, reps = cx.complex.cohomology(n)
    coords = []
    if reps.shape[0]:
        # reps are in reduced echelon form, so the coordinates sit at their pivots
        pivots = [int(np.nonzero(r != 0)[0][0]) for r in reps]
        coords = [rep[p] for p in pivots]
        check = f.zeros(len(rep))
        for c, r in zip(coords, reps):
            check = f.plus(check, f.scale(c, r))
        assert np.array_equal(check, rep), "class coordinates do not reproduce the representative"
    return rep, coords


def extend_order(s: DeformationState):
    """Extend by one order, or return :class:`Obstructed`.

    Free variables of the linear system are set to zero, so the extension is
    canonical.  The extended state is re-verified by the direct route.
    """
    check_deformation(s)
    cx = s.complex
    f = cx.field
    k = cx.classifying_degree()
    M = s.order + 1
    t = equation_rhs(s, M)
    x = solve(f, cx.d(k), t)
    if isinstance(x, NoSolution):
        rep, coords = _class_of(cx, k + 1, t)
        return Obstructed(M, t, rep, coords, cx.split(k + 1, rep))
    new = s.extended(cx.split(k, x))
    check_deformation(new)
    return new


def obstruction(s: DeformationState) -> Obstructed | None:
    """The class obstructing extension to the next order, or None if it vanishes.

    Unlike :func:`extend_order` this reports the class even when the
    right-hand side is merely a boundary (then ``None`` is returned).
    """
    check_deformation(s)
    cx = s.complex
    k = cx.classifying_degree()
    M = s.order + 1
    t = equation_rhs(s, M)
    assert cx.field.is_zero_array(_apply(cx.field, cx.d(k + 1), t)), "obstruction is not a cocycle"
    rep, coords = _class_of(cx, k + 1, t)
    if cx.field.is_zero_array(rep):
        return None
    return Obstructed(M, t, rep, coords, cx.split(k + 1, rep))


# -- first-order classification and equivalence ------------------------------

def classify_first_order(target, degree: int | None = None) -> dict:
    """Cohomology in the classifying degree of the complex.

    ``target`` is a ComplexSpec or an already built DeformationComplex.
    """
    cx = target if isinstance(target, DeformationComplex) else build_complex(target)
    k = cx.classifying_degree()
    if degree is not None and degree != k:
        raise KindDegreeMismatch(f"{cx.kind} deformations are classified in degree {k}, not {degree}",
                                 index=degree)
    dim, reps = cx.complex.cohomology(k)
    return {"kind": cx.kind, "degree": k, "dim": dim,
            "representatives": [cx.split(k, r) for r in reps]}


@dataclass
class NotEquivalent:
    """The difference of the two states has a nonzero class."""

    representative: np.ndarray
    coordinates: list
    pieces: dict

    def to_json(self) -> dict:
        f = next(iter(self.pieces.values())).field if self.pieces else None
        return {"equivalent": False, "class": [f.format(x) for x in self.coordinates] if f else [],
                "representative": {k: v.to_json() for k, v in sorted(self.pieces.items())}}


@dataclass
class EquivalenceWitness:
    """``pieces`` solve s1 - s2 = d(witness) one degree below the classifying degree."""

    vector: np.ndarray
    pieces: dict

    def to_json(self) -> dict:
        return {"equivalent": True, "witness": {k: v.to_json() for k, v in sorted(self.pieces.items())}}


def equivalence_check(s1: DeformationState, s2: DeformationState):
    if s1.kind != s2.kind or s1.base is not s2.base:
        raise KindMismatch("states of different kinds or bases")
    if s1.order != 1 or s2.order != 1:
        raise KindMismatch("equivalence is decided for first-order states")
    cx = s1.complex
    f = cx.field
    k = cx.classifying_degree()
    v = f.minus(s1.vector(1), s2.vector(1))
    x = solve(f, cx.d(k - 1), v)
    if isinstance(x, NoSolution):
        rep, coords = _class_of(cx, k, v)
        return NotEquivalent(rep, coords, cx.split(k, rep))
    return EquivalenceWitness(x, cx.split(k - 1, x))


# -- units -------------------------------------------------------------------

def unit_transport(s: DeformationState, nus=None) -> dict:
    """Deformed unitors from the deformed associator and a gauge nu.

    ``nus`` lists nu^(1), nu^(2), ... (default zero); nu^(0) is the common
    value of the unitors at the unit.  With rho: a1 -> a and lam: 1b -> b,
    rho~_a = alpha~_{a,1,1} nu~ and lam~_b = alpha~_{1,1,b}^(-1) nu~, after which
    the triangle and the bigon are verified as series.
    """
    if s.kind != "category":
        raise KindMismatch("unit transport is defined for category deformations")
    check_deformation(s)
    c = s.base
    f = c.field
    u = c.unit
    M = s.order
    if c.lam[u] != c.rho[u]:
        raise UnitRuleViolation("base unitors disagree at the unit", index=(c.names[u],))
    nus = list(nus if nus is not None else s.nu)
    nu = TruncatedSeries.of(f, [c.lam[u]] + [f.coerce(x) for x in nus[:M]], M)
    Fs = _f_series(c, s.padded("C", M))

    def scalar_series(q):
        return TruncatedSeries.of(f, [m[0, 0] for m in Fs[q]], M)

    rho = [scalar_series((a, u, u, a)) * nu for a in range(c.rank)]
    lam = [scalar_series((u, u, b, b)).invert() * nu for b in range(c.rank)]
    bad = triangle_failures(c, Fs, [list(x.coeffs) for x in lam], [list(x.coeffs) for x in rho], M)
    if bad:
        k, (a, b, d) = bad[0]
        raise TriangleViolation(f"transported units fail the triangle at order {k}",
                                index=[k, c.names[a], c.names[b], c.names[d]])
    if lam[u] != rho[u]:
        raise UnitRuleViolation("transported units fail the bigon", index=(c.names[u],))
    return {"lambda": {c.names[b]: [f.format(x) for x in lam[b].coeffs] for b in range(c.rank)},
            "rho": {c.names[a]: [f.format(x) for x in rho[a].coeffs] for a in range(c.rank)},
            "order": M, "triangle": "ok", "bigon": "ok"}


# -- natural transformations -------------------------------------------------

def nat_transf_first_order(f: FunctorData, g: FunctorData, phi: dict, max_degree: int = 2) -> dict:
    """H^1 (first-order deformations) and H^2 (obstructions) of X(F, G) via phi."""
    if not nat_transformation_check(phi, f, g):
        raise NotMonoidalTransformation("phi is not a monoidal natural transformation")
    m = induced_bimodule(f, g, phi)
    cx = build_complex(ComplexSpec("bimodule", m, max(max_degree, 2)))
    h1, r1 = cx.complex.cohomology(1)
    h2, r2 = cx.complex.cohomology(2)
    return {"H1": h1, "H2": h2, "representatives": [cx.split(1, r) for r in r1],
            "obstruction_representatives": [cx.split(2, r) for r in r2], "complex": cx}
