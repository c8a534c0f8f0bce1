"""Loading and validating workspace documents.

A workspace is one UTF-8 JSON object (see ``docs/workspace.schema.json``).
Loading runs three stages, each with its own error type:

* ``ParseError``       the bytes are not JSON;
* ``SchemaError``      the JSON does not have the documented shape;
* ``ValidationError``  the data is well formed but mathematically invalid.

Every error carries a JSON-pointer location such as ``/category/F/3``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import jsonschema

from .category import FusionData, fibonacci, make_fusion, vec_group, verify_coherence
from .cochains import Cochain
from .deform import DeformationState, check_deformation
from .errors import (DefcatError, NotMonoidalTransformation, ParseError, SchemaError, ShapeError,
                     ValidationError)
from .exact import Field, PrimeField, Q, is_prime
from .functor import (AlgebraData, BimoduleData, FunctorData, algebra_to_functor, check_algebra,
                      identity_functor, make_algebra, nat_transformation_check, standard_algebras,
                      verify_bimodule, verify_functor)
from .shapes import A, T, leaf

L0, L1 = leaf(0), leaf(1)

FORMAT_VERSION = 1


def schema() -> dict:
    return json.loads(resources.files("defcat").joinpath("workspace.schema.json").read_text("utf-8"))


_validator = None


def _schema_validator():
    global _validator
    if _validator is None:
        _validator = jsonschema.Draft202012Validator(schema())
    return _validator


@dataclass(eq=False)
class WorkspaceDocument:
    raw: dict
    field: Field
    category: FusionData | None = None
    category2: FusionData | None = None
    functor: FunctorData | None = None
    functor2: FunctorData | None = None
    bimodule: BimoduleData | None = None
    algebra: AlgebraData | None = None
    deformation: DeformationState | None = None
    nat: tuple | None = None          # (source functor, target functor, phi blocks)
    source: str = "<memory>"


def _pointer(path) -> str:
    return "".join(f"/{p}" for p in path) or "/"


def _validate(where: str, fn, *args):
    try:
        return fn(*args)
    except ValidationError:
        raise
    except DefcatError as e:
        raise ValidationError(where, e) from e
    except (ValueError, TypeError, ZeroDivisionError) as e:
        raise ValidationError(where, ShapeError(str(e))) from e


# -- sections ----------------------------------------------------------------

def _field(doc: dict) -> Field:
    if doc["type"] == "Q":
        if "p" in doc:
            raise SchemaError("/field/p", "the rationals take no characteristic")
        return Q
    if "p" not in doc:
        raise SchemaError("/field", "prime field without 'p'")
    if not is_prime(doc["p"]):
        raise SchemaError("/field/p", "not prime")
    return PrimeField(doc["p"])


def _category(f: Field, doc: dict, where: str) -> FusionData:
    if "builtin" in doc:
        if doc["builtin"] == "fibonacci":
            return _validate(where, fibonacci, f)
        group = doc.get("group")
        if group is None:
            raise SchemaError(f"{where}/group", "Vec_G needs the group orders")
        omega = None
        if "omega" in doc:
            table = {}
            for i, (g, h, k, v) in enumerate(doc["omega"]):
                table[(str(g), str(h), str(k))] = v

            def omega(*elems, table=table):
                key = tuple("".join(map(str, e)) for e in elems)
                return table.get(key, 1)
        return vec_group(f, group, omega)
    names = [str(x) for x in doc["simples"]]
    if len(set(names)) != len(names):
        raise SchemaError(f"{where}/simples", "duplicate simple names")
    known = set(names)

    def label(x, loc):
        if str(x) not in known:
            raise SchemaError(loc, f"unknown simple {x!r}")
        return str(x)

    label(doc["unit"], f"{where}/unit")
    fusion = []
    for i, row in enumerate(doc["fusion"]):
        fusion.append([label(row[j], f"{where}/fusion/{i}/{j}") for j in range(3)] + [row[3]])
    F = {}
    for i, e in enumerate(doc["F"]):
        key = tuple(label(x, f"{where}/F/{i}/abcd/{j}") for j, x in enumerate(e["abcd"]))
        if key in F:
            raise SchemaError(f"{where}/F/{i}", "duplicate F entry")
        F[key] = e["matrix"]
    for side in ("lambda", "rho"):
        for k in doc.get(side, {}):
            label(k, f"{where}/{side}/{k}")
    c = _validate(where, make_fusion, f, names, str(doc["unit"]), fusion, F,
                  doc.get("lambda"), doc.get("rho"))
    return c


def _objmap(doc: list, src: FusionData, tgt: FusionData, where: str) -> tuple:
    mult = [[0] * tgt.rank for _ in range(src.rank)]
    for i, (a, z, m) in enumerate(doc):
        try:
            mult[src.simple(str(a))][tgt.simple(str(z))] = m
        except ValueError:
            raise SchemaError(f"{where}/{i}", f"unknown simple in {[a, z]}")
    return tuple(tuple(r) for r in mult)


def _blocks2(f: Field, doc: list, src: FusionData, tgt: FusionData, where: str) -> dict:
    out = {}
    for i, e in enumerate(doc):
        try:
            key = ((src.simple(str(e["ab"][0])), src.simple(str(e["ab"][1]))), tgt.simple(str(e["z"])))
        except ValueError:
            raise SchemaError(f"{where}/{i}", "unknown simple")
        if key in out:
            raise SchemaError(f"{where}/{i}", "duplicate block")
        mat = e["matrix"]
        out[key] = _validate(f"{where}/{i}/matrix", f.array, mat) if mat and mat[0] else f.zeros((len(mat), 0))
    return out


def _check_shapes(ctx, blocks: dict, src, dst, where: str) -> None:
    for (ab, z), m in blocks.items():
        want = (ctx.dim(src, ab, z, "E"), ctx.dim(dst, ab, z, "E"))
        if m.shape != want:
            raise ValidationError(where, ShapeError(f"block at {ab}, {z} has shape {m.shape}, expected {want}",
                                                    index=[list(ab), z]))


def _functor(f: Field, doc: dict, wd: WorkspaceDocument, where: str) -> FunctorData:
    if doc.get("builtin") == "algebra":
        if wd.algebra is None:
            raise SchemaError(where, "the algebra functor needs an /algebra section")
        return algebra_to_functor(wd.algebra)
    if doc.get("builtin") == "identity":
        if wd.category is None:
            raise SchemaError(where, "the identity functor needs a /category section")
        return _validate(where, identity_functor, wd.category, doc.get("scale"), doc.get("F0"))
    cats = {"category": wd.category, "category2": wd.category2}
    src = cats[doc.get("source", "category")]
    tgt = cats[doc.get("target", "category")]
    if src is None or tgt is None:
        raise SchemaError(where, "functor refers to a missing category section")
    if src.field != tgt.field:
        raise SchemaError(where, "source and target over different fields")
    mult = _objmap(doc["objmap"], src, tgt, f"{where}/objmap")
    ft = _blocks2(f, doc["Ftilde"], src, tgt, f"{where}/Ftilde")
    f0 = _validate(f"{where}/F0", f.array, doc["F0"])
    fd = FunctorData(src, tgt, mult, ft, f0)
    want = (1, mult[src.unit][tgt.unit])
    if f0.shape != want:
        raise ValidationError(f"{where}/F0", ShapeError(f"F0 has shape {f0.shape}, expected {want}"))
    _check_shapes(fd.ctx(), ft, T(A("F", L0), A("F", L1)), A("F", T(L0, L1)), f"{where}/Ftilde")
    return fd


def _bimodule(f: Field, doc: dict, fn: FunctorData, where: str) -> BimoduleData:
    mult = _objmap(doc["M"], fn.source, fn.target, f"{where}/M")
    mul = _blocks2(f, doc["mul"], fn.source, fn.target, f"{where}/mul")
    mur = _blocks2(f, doc["mur"], fn.source, fn.target, f"{where}/mur")
    m = BimoduleData(fn, fn, mult, mul, mur)
    ctx = m.ctx()
    _check_shapes(ctx, mul, T(A("F", L0), A("M", L1)), A("M", T(L0, L1)), f"{where}/mul")
    _check_shapes(ctx, mur, T(A("M", L0), A("F", L1)), A("M", T(L0, L1)), f"{where}/mur")
    return m


def _algebra(f: Field, doc: dict, where: str) -> AlgebraData:
    if "builtin" in doc:
        return standard_algebras(f, doc["builtin"])
    d = doc["dim"]
    m = doc["m"]
    if len(m) != d or any(len(r) != d or any(len(c) != d for c in r) for r in m):
        raise SchemaError(f"{where}/m", f"structure constants must have shape {d}x{d}x{d}")
    if len(doc["unit"]) != d:
        raise SchemaError(f"{where}/unit", f"unit must have length {d}")
    return _validate(where, make_algebra, f, m, doc["unit"])


def _deformation(doc: dict, wd: WorkspaceDocument, where: str) -> DeformationState:
    kind = doc["kind"]
    base = wd.category if kind == "category" else wd.functor
    if base is None:
        need = "/category" if kind == "category" else "/functor"
        raise SchemaError(where, f"a {kind} deformation needs a {need} section")
    empty = DeformationState(kind, base)
    pieces = {}
    for name, key in (("C", "alpha"), ("F", "Ftilde"), ("E", "a")):
        xs = doc.get(key, [])
        if xs and name not in {"category": "C", "functor": "F", "fibred": "FC", "total": "FCE"}[kind]:
            raise SchemaError(f"{where}/{key}", f"{kind} deformations do not deform this piece")
        out = []
        for i, c in enumerate(xs):
            sp = empty.space(name)
            out.append(_validate(f"{where}/{key}/{i}", Cochain.from_json, sp, c))
        pieces[key] = out
    s = DeformationState(kind, base, pieces["alpha"], pieces["Ftilde"], pieces["a"],
                         [base.field.parse(x) for x in doc.get("nu", [])])
    order = doc.get("order", s.order)
    if order < s.order:
        raise SchemaError(f"{where}/order", f"declared order {order} but {s.order} coefficients given")
    if order > s.order:
        s = s.truncated(order)
    _validate(where, check_deformation, s)
    return s


def _nat(f: Field, doc: dict, wd: WorkspaceDocument, where: str) -> tuple:
    fns = {"functor": wd.functor, "functor2": wd.functor2}
    src = fns[doc.get("source", "functor")]
    tgt = fns[doc.get("target", "functor")]
    if src is None or tgt is None:
        raise SchemaError(where, "natural transformation refers to a missing functor section")
    phi = {}
    for i, e in enumerate(doc["phi"]):
        try:
            key = ((src.source.simple(str(e["a"])),), src.target.simple(str(e["z"])))
        except ValueError:
            raise SchemaError(f"{where}/phi/{i}", "unknown simple")
        phi[key] = _validate(f"{where}/phi/{i}/matrix", f.array, e["matrix"])
    for ((a,), z), m in phi.items():
        want = (src.mult[a][z], tgt.mult[a][z])
        if m.shape != want:
            raise ValidationError(f"{where}/phi", ShapeError(f"block at {a}, {z} has shape {m.shape}, "
                                                             f"expected {want}"))
    if not nat_transformation_check(phi, src, tgt):
        raise ValidationError(where, NotMonoidalTransformation("phi is not monoidal"))
    return src, tgt, phi


# -- entry points ------------------------------------------------------------

def loads(text: str, source: str = "<memory>") -> WorkspaceDocument:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{source}:{e.lineno}:{e.colno}: {e.msg}", index=[e.lineno, e.colno]) from e
    return from_dict(raw, source)


def load(path) -> WorkspaceDocument:
    p = Path(path)
    try:
        text = p.read_bytes().decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"{p}: not UTF-8 ({e.reason})") from e
    except OSError as e:
        raise ParseError(f"{p}: {e.strerror}") from e
    return loads(text, str(p))


def from_dict(raw, source: str = "<memory>") -> WorkspaceDocument:
    best = jsonschema.exceptions.best_match(_schema_validator().iter_errors(raw))
    if best is not None:
        raise SchemaError(_pointer(best.absolute_path), best.message)
    f = _field(raw["field"])
    wd = WorkspaceDocument(raw, f, source=source)
    if "category" in raw:
        wd.category = _category(f, raw["category"], "/category")
        _validate("/category", verify_coherence, wd.category)
    if "category2" in raw:
        wd.category2 = _category(f, raw["category2"], "/category2")
        _validate("/category2", verify_coherence, wd.category2)
    if "algebra" in raw:
        wd.algebra = _algebra(f, raw["algebra"], "/algebra")
        _validate("/algebra", check_algebra, wd.algebra)
    for key in ("functor", "functor2"):
        if key in raw:
            fn = _functor(f, raw[key], wd, f"/{key}")
            _validate(f"/{key}", verify_functor, fn)
            setattr(wd, key, fn)
    if "bimodule" in raw:
        if wd.functor is None:
            raise SchemaError("/bimodule", "a bimodule needs a /functor section")
        wd.bimodule = _bimodule(f, raw["bimodule"], wd.functor, "/bimodule")
        _validate("/bimodule", verify_bimodule, wd.bimodule)
    if "deformation" in raw:
        wd.deformation = _deformation(raw["deformation"], wd, "/deformation")
    if "nat_transformation" in raw:
        wd.nat = _nat(f, raw["nat_transformation"], wd, "/nat_transformation")
    return wd


# -- writing -----------------------------------------------------------------

def category_to_json(c: FusionData) -> dict:
    f = c.field
    fusion = [[c.names[a], c.names[b], c.names[x], c.N[a][b][x]]
              for a in range(c.rank) for b in range(c.rank) for x in range(c.rank) if c.N[a][b][x]]
    F = [{"abcd": [c.names[i] for i in q], "matrix": [[f.format(x) for x in row] for row in m]}
         for q, m in sorted(c.F.items())]
    return {"simples": list(c.names), "unit": c.names[c.unit], "fusion": fusion, "F": F,
            "lambda": {n: f.format(x) for n, x in zip(c.names, c.lam)},
            "rho": {n: f.format(x) for n, x in zip(c.names, c.rho)}}


def dumps(report) -> str:
    """Canonical JSON: sorted keys, two-space indent, trailing newline."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
