"""Regenerate the CLI golden files in fixtures/golden/.

Each case runs ``python3 -m defcat`` on a fixture and stores stdout and
stderr byte for byte; manifest.json records the arguments and exit code.
Run from the repository root: python3 scripts/make_goldens.py
"""
import json
import subprocess
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "fixtures" / "golden"

CATEGORIES = ["vec_z2_gf2", "vec_z2_sign_q", "vec_z3_q", "vec_z3_gf3", "fibonacci_gf19"]
ALGEBRAS = ["alg_k_q", "alg_dual_q", "alg_dual_gf2", "alg_mat2_gf3", "alg_dual_q_explicit"]


def cases():
    out = []

    def add(name, *args):
        out.append({"name": name, "args": list(args)})

    for f in sorted(p.stem for p in (ROOT / "fixtures").glob("*.json")):
        add(f"{f}.check", "check", f"fixtures/{f}.json")
    for f in CATEGORIES:
        add(f"{f}.cohomology", "cohomology", f"fixtures/{f}.json", "--kind", "category")
        add(f"{f}.classify", "classify", f"fixtures/{f}.json")
    add("vec_z2_gf2.coarse", "cohomology", "fixtures/vec_z2_gf2.json", "--kind", "coarse", "--max-degree", "3")
    add("vec_z2_gf2.deform", "deform", "fixtures/vec_z2_gf2.json", "--max-order", "2")
    add("vec_z2_gf2_def.deform", "deform", "fixtures/vec_z2_gf2_def.json")
    add("vec_z2_gf2_def.obstruct", "obstruct", "fixtures/vec_z2_gf2_def.json")
    add("vec_z2_gf2_def.obstruct1", "obstruct", "fixtures/vec_z2_gf2_def.json", "--order", "1")
    add("vec_z2_gf2_def.units", "units", "fixtures/vec_z2_gf2_def.json")
    add("vec_z2_gf2_def.products", "products", "fixtures/vec_z2_gf2_def.json")
    for kind in ("functor", "fibred", "total", "bimodule"):
        add(f"id_vec_z2_gf2.{kind}", "cohomology", "fixtures/id_vec_z2_gf2.json", "--kind", kind,
            "--max-degree", "3")
    add("id_vec_z2_gf2.classify_total", "classify", "fixtures/id_vec_z2_gf2.json", "--kind", "total")
    add("id_vec_z2_gf2.deform_functor", "deform", "fixtures/id_vec_z2_gf2.json", "--kind", "functor",
        "--max-order", "2")
    add("id_vec_z2_gf2.nat", "classify", "fixtures/id_vec_z2_gf2.json", "--kind", "nat")
    add("id_vec_z2_q.nat", "cohomology", "fixtures/id_vec_z2_q.json", "--kind", "nat")
    for f in ALGEBRAS:
        add(f"{f}.hochschild", "hochschild", f"fixtures/{f}.json",
            *(["--degree", "2"] if "mat2" in f else []))
        add(f"{f}.compare", "compare", f"fixtures/{f}.json")
    add("alg_dual_q_explicit.nat", "classify", "fixtures/alg_dual_q_explicit.json", "--kind", "nat")
    add("invalid.corrupt_f", "check", "fixtures/invalid/corrupt_f.json")
    add("invalid.bad_prime", "check", "fixtures/invalid/bad_prime.json")
    add("invalid.missing_file", "check", "fixtures/invalid/no_such_file.json")
    add("invalid.unknown_command", "frobnicate", "fixtures/vec_z2_gf2.json")
    add("invalid.kind_degree", "classify", "fixtures/vec_z2_gf2.json", "--degree", "2")
    return out


def run(args, threads=1):
    cmd = [sys.executable, "-m", "defcat", *args, "--threads", str(threads)]
    return subprocess.run(cmd, cwd=ROOT, capture_output=True, check=False)


def main():
    GOLDEN.mkdir(parents=True, exist_ok=True)
    manifest = []
    for case in cases():
        r = run(case["args"])
        (GOLDEN / f"{case['name']}.stdout").write_bytes(r.stdout)
        (GOLDEN / f"{case['name']}.stderr").write_bytes(r.stderr)
        manifest.append(dict(case, exit=r.returncode))
        print(f"{case['name']}: exit {r.returncode}")
    (GOLDEN / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
