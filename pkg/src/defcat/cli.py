"""Command line interface.

    defcat COMMAND DOCUMENT [--kind K] [--degree N] [--order N] [--max-order N]
                            [--max-degree N] [--threads N]

Reports are canonical JSON on stdout.  Exit codes: 0 success, 2 when the
mathematics answers "no" (an obstruction, a failed claim), 1 on any error;
errors are printed as JSON on stderr.
"""
from __future__ import annotations

import argparse
import sys

from .category import verify_coherence
from .cochains import KINDS, ComplexSpec, bracket, build_complex, composition_product, cup_product
from .deform import (PIECES, DeformationState, Obstructed, check_deformation, classify_first_order, complex_for,
                     equation_failure, extend_order, nat_transf_first_order, obstruction, unit_transport)
from .errors import DefcatError, KindMismatch, UnknownCommand
from .functor import algebra_to_functor, regular_bimodule, verify_bimodule, verify_functor
from .hochschild import bimodule_subcomplex_exactness, build_hochschild, compare_with_categorical
from .io import WorkspaceDocument, dumps, load

COMMANDS = ("check", "cohomology", "classify", "deform", "obstruct", "products", "units",
            "hochschild", "compare")


class UsageError(DefcatError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parser() -> argparse.ArgumentParser:
    p = _Parser(prog="defcat", description="Deformations of monoidal categories and functors.")
    p.add_argument("command", help=", ".join(COMMANDS))
    p.add_argument("document", help="workspace JSON document")
    p.add_argument("--kind", choices=KINDS + ("nat",))
    p.add_argument("--degree", type=int)
    p.add_argument("--order", type=int)
    p.add_argument("--max-order", type=int, dest="max_order")
    p.add_argument("--max-degree", type=int, dest="max_degree")
    p.add_argument("--threads", type=int, default=1)
    return p


def _need(value, what: str):
    if value is None:
        raise KindMismatch(f"this command needs a {what} section")
    return value


def _functor(doc: WorkspaceDocument):
    if doc.functor is not None:
        return doc.functor
    if doc.algebra is not None:
        return algebra_to_functor(doc.algebra)
    raise KindMismatch("this command needs a functor or algebra section")


def _default_kind(doc: WorkspaceDocument) -> str:
    if doc.deformation is not None:
        return doc.deformation.kind
    if doc.category is not None and doc.functor is None:
        return "category"
    if doc.algebra is not None or doc.bimodule is not None:
        return "bimodule"
    return "functor"


def _spec(doc: WorkspaceDocument, kind: str, max_degree) -> ComplexSpec:
    if kind in ("category", "coarse"):
        return ComplexSpec(kind, _need(doc.category, "category"), max_degree)
    if kind == "bimodule":
        m = doc.bimodule or regular_bimodule(_functor(doc))
        return ComplexSpec(kind, m, max_degree)
    return ComplexSpec(kind, _functor(doc), max_degree)


def _pieces(pieces: dict) -> dict:
    return {k: v.to_json() for k, v in pieces.items()}


# -- commands ----------------------------------------------------------------

def cmd_check(doc: WorkspaceDocument, a) -> tuple:
    out = {}
    if doc.category is not None:
        r = verify_coherence(doc.category)
        out.update(pentagon=r["pentagon"], triangle=r["triangle"])
    if doc.category2 is not None:
        r = verify_coherence(doc.category2)
        out["category2"] = {"pentagon": r["pentagon"], "triangle": r["triangle"]}
    if doc.algebra is not None:
        out["algebra"] = {"associative": "ok", "unital": "ok", "dim": doc.algebra.dim}
    if doc.functor is not None:
        out["functor"] = verify_functor(doc.functor)
    if doc.functor2 is not None:
        out["functor2"] = verify_functor(doc.functor2)
    if doc.bimodule is not None:
        out["bimodule"] = verify_bimodule(doc.bimodule)
    if doc.deformation is not None:
        s = doc.deformation
        r = check_deformation(s)
        bad = equation_failure(s)
        if bad is not None:
            raise AssertionError(f"direct and cochain routes disagree at order {bad}")
        out["deformation"] = dict(r, equations="ok")
    if doc.nat is not None:
        out["nat_transformation"] = {"monoidal": "ok"}
    return out, 0


def _nat(doc: WorkspaceDocument, a):
    f, g, phi = _need(doc.nat, "nat_transformation")
    return nat_transf_first_order(f, g, phi, max(a.max_degree or 2, 2))


def cmd_cohomology(doc: WorkspaceDocument, a) -> tuple:
    kind = a.kind or _default_kind(doc)
    if kind == "nat":
        r = _nat(doc, a)
        return {"kind": "nat", "H1": r["H1"], "H2": r["H2"]}, 0
    mx = a.max_degree
    if a.degree is not None:
        mx = max(mx or 0, a.degree)
    cx = build_complex(_spec(doc, kind, mx), a.threads)
    c = cx.complex
    if a.degree is not None:
        return {"kind": kind, "degree": a.degree, "dim": int(c.cohomology(a.degree)[0]),
                "cochains": int(c.dim(a.degree))}, 0
    rows = [{"degree": n, "cochains": int(c.dim(n)), "dim": int(c.cohomology(n)[0])}
            for n in range(c.lo, cx.spec.max_degree + 1)]
    return {"kind": kind, "degrees": rows}, 0


def cmd_classify(doc: WorkspaceDocument, a) -> tuple:
    kind = a.kind or _default_kind(doc)
    if kind == "nat":
        r = _nat(doc, a)
        return {"kind": "nat", "degree": 1, "dim": r["H1"], "obstruction_dim": r["H2"],
                "representatives": [_pieces(p) for p in r["representatives"]]}, 0
    if kind == "bimodule":
        raise KindMismatch("bimodule coefficients classify natural transformations; use --kind nat")
    if kind in ("category", "coarse"):
        base = _need(doc.category, "category")
    else:
        base = _functor(doc)
    cx = complex_for(kind, base, a.max_degree, a.threads) if kind != "coarse" else \
        build_complex(ComplexSpec(kind, base, a.max_degree or 3), a.threads)
    r = classify_first_order(cx, a.degree)
    return {"kind": kind, "degree": r["degree"], "dim": r["dim"],
            "representatives": [_pieces(p) for p in r["representatives"]]}, 0


def _state(doc: WorkspaceDocument, a) -> DeformationState:
    if doc.deformation is not None:
        s = doc.deformation
        if a.kind and a.kind != s.kind:
            raise KindMismatch(f"the document holds a {s.kind} deformation, not {a.kind}")
    else:
        kind = a.kind or ("category" if doc.functor is None and doc.algebra is None else "functor")
        base = _need(doc.category, "category") if kind == "category" else _functor(doc)
        s = DeformationState.trivial(kind, base)
    if a.max_degree is not None:
        s = DeformationState(s.kind, s.base, s.alpha, s.ftilde, s.a, s.nu, a.max_degree)
    complex_for(s.kind, s.base, s.max_degree, a.threads)
    return s


def cmd_deform(doc: WorkspaceDocument, a) -> tuple:
    s = _state(doc, a)
    target = a.max_order if a.max_order is not None else s.order + 1
    steps = []
    code = 0
    while s.order < target:
        r = extend_order(s)
        if isinstance(r, Obstructed):
            steps.append(dict(r.to_json(), order=r.order))
            code = 2
            break
        s = r
        steps.append({"order": s.order, "status": "extended",
                      "coefficients": {n: s.coefficient(n, s.order).to_json()
                                       for n in PIECES[s.kind]}})
    return {"kind": s.kind, "steps": steps, "reached": s.order, "state": s.to_json()}, code


def cmd_obstruct(doc: WorkspaceDocument, a) -> tuple:
    s = _state(doc, a)
    if a.order is not None:
        if a.order < 1 or a.order > s.order + 1:
            raise KindMismatch(f"--order must lie in 1..{s.order + 1}")
        s = s.truncated(a.order - 1)
    r = obstruction(s)
    if r is None:
        return {"kind": s.kind, "order": s.order + 1, "obstructed": False}, 0
    return dict(r.to_json(), kind=s.kind, obstructed=True), 2


def cmd_products(doc: WorkspaceDocument, a) -> tuple:
    s = _need(doc.deformation, "deformation")
    if s.kind not in ("category", "functor"):
        raise KindMismatch("products are defined on category and functor cochains")
    piece = "C" if s.kind == "category" else "F"
    if s.order < 1:
        raise KindMismatch("products need at least one coefficient")
    g = s.coefficient(piece, 1)
    h = s.coefficient(piece, 2) if s.order >= 2 else g
    return {"kind": s.kind, "cup": cup_product(g, h).to_json(),
            "composition": composition_product(g, h).to_json(),
            "bracket": bracket(g, h).to_json()}, 0


def cmd_units(doc: WorkspaceDocument, a) -> tuple:
    s = _state(doc, a)
    if a.order is not None and a.order < s.order:
        s = s.truncated(a.order)
    return unit_transport(s), 0


def cmd_hochschild(doc: WorkspaceDocument, a) -> tuple:
    alg = _need(doc.algebra, "algebra")
    top = a.degree if a.degree is not None else 3
    hh = build_hochschild(alg, max_degree=top)
    rows = [{"degree": n, "cochains": int(hh.dim(n)), "dim": int(hh.cohomology(n)[0])}
            for n in range(top + 1)]
    r = bimodule_subcomplex_exactness(alg, degrees=range(1, top + 1))
    res = {"claim_a": r["claim_a"],
           "claim_b": [{"degree": n, "holds": v} for n, v in sorted(r["claim_b"].items())],
           "restricted": [{"degree": n, "cochains": r["restricted_dims"][n], "dim": h}
                          for n, h in sorted(r["restricted_H"].items())],
           "failures": r["failures"]}
    return {"degrees": rows, "resolution": res}, 0 if r["ok"] else 2


def cmd_compare(doc: WorkspaceDocument, a) -> tuple:
    alg = _need(doc.algebra, "algebra")
    top = a.degree if a.degree is not None else 3
    return compare_with_categorical(alg, range(0, top + 1)), 0


_DISPATCH = {"check": cmd_check, "cohomology": cmd_cohomology, "classify": cmd_classify,
             "deform": cmd_deform, "obstruct": cmd_obstruct, "products": cmd_products,
             "units": cmd_units, "hochschild": cmd_hochschild, "compare": cmd_compare}


def run(command: str, doc: WorkspaceDocument, flags=None) -> tuple:
    """Run one command; returns (report, exit code)."""
    fn = _DISPATCH.get(command)
    if fn is None:
        raise UnknownCommand(f"unknown command {command!r}; expected one of {', '.join(COMMANDS)}")
    a = _parser().parse_args([command, "-"]) if flags is None else flags
    if isinstance(a, dict):
        ns = _parser().parse_args([command, "-"])
        for k, v in a.items():
            setattr(ns, k.replace("-", "_"), v)
        a = ns
    if a.threads < 1:
        raise UsageError("--threads must be positive")
    return fn(doc, a)


def main(argv=None) -> int:
    try:
        a = _parser().parse_args(argv)
        if a.command not in _DISPATCH:
            raise UnknownCommand(f"unknown command {a.command!r}; expected one of {', '.join(COMMANDS)}")
        doc = load(a.document)
        report, code = run(a.command, doc, a)
    except DefcatError as e:
        sys.stderr.write(dumps(e.to_json()))
        return 1
    sys.stdout.write(dumps(report))
    return code


if __name__ == "__main__":
    sys.exit(main())
