"""Write the JSON fixtures in fixtures/ from the built-in constructors.

Run from the repository root: python3 scripts/make_fixtures.py
"""
from pathlib import Path

from defcat.category import fibonacci, vec_group
from defcat.deform import DeformationState, classify_first_order
from defcat.exact import GF, Q
from defcat.io import category_to_json, dumps

OUT = Path(__file__).resolve().parent.parent / "fixtures"


def field_doc(f):
    return f.to_json()


def write(name, doc):
    (OUT / name).write_text(dumps(doc), encoding="utf-8")


def main():
    OUT.mkdir(exist_ok=True)
    gf2, gf3 = GF(2), GF(3)
    z2 = vec_group(gf2, 2)
    write("vec_z2_gf2.json", {"version": 1, "field": field_doc(gf2), "category": category_to_json(z2)})

    gen = classify_first_order(DeformationState.trivial("category", z2).complex)["representatives"][0]["C"]
    write("vec_z2_gf2_def.json", {
        "version": 1, "field": field_doc(gf2), "category": category_to_json(z2),
        "deformation": {"kind": "category", "order": 1, "alpha": [gen.to_json()], "nu": [1]}})

    sign = vec_group(Q, 2, lambda g, h, k: -1 if g == h == k == (1,) else 1)
    write("vec_z2_sign_q.json", {"version": 1, "field": field_doc(Q), "category": category_to_json(sign)})
    write("vec_z3_q.json", {"version": 1, "field": field_doc(Q), "category": category_to_json(vec_group(Q, 3))})
    write("vec_z3_gf3.json", {"version": 1, "field": field_doc(gf3),
                              "category": category_to_json(vec_group(gf3, 3))})
    write("fibonacci_gf19.json", {"version": 1, "field": field_doc(GF(19)),
                                  "category": category_to_json(fibonacci(GF(19)))})

    ident = {"builtin": "identity"}
    write("id_vec_z2_gf2.json", {
        "version": 1, "field": field_doc(gf2), "category": category_to_json(z2), "functor": ident,
        "nat_transformation": {"phi": [{"a": a, "z": a, "matrix": [[1]]} for a in ("0", "1")]}})
    write("id_vec_z2_q.json", {
        "version": 1, "field": field_doc(Q), "category": {"builtin": "vec", "group": [2]}, "functor": ident,
        "nat_transformation": {"phi": [{"a": a, "z": a, "matrix": [["1/1"]]} for a in ("0", "1")]}})

    for fld, name in ((Q, "k"), (Q, "dual"), (gf2, "dual"), (gf3, "mat2")):
        tag = "q" if fld is Q else f"gf{fld.p}"
        write(f"alg_{name}_{tag}.json", {"version": 1, "field": field_doc(fld), "algebra": {"builtin": name}})
    # the dual numbers spelled out, with the identity transformation of F_A
    write("alg_dual_q_explicit.json", {
        "version": 1, "field": {"type": "Q"},
        "algebra": {"dim": 2, "m": [[[1, 0], [0, 1]], [[0, 1], [0, 0]]], "unit": [1, 0]},
        "functor": {"builtin": "algebra"},
        "nat_transformation": {"phi": [{"a": "1", "z": "1", "matrix": [[1, 0], [0, 1]]}]}})


if __name__ == "__main__":
    main()
