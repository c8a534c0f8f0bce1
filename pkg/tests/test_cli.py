import json

import pytest

from defcat import cli
from defcat.errors import ParseError, SchemaError, ValidationError
from defcat.io import dumps, from_dict, load, loads, schema

from conftest import FIXTURES, ROOT

GOLDEN = FIXTURES / "golden"
MANIFEST = json.loads((GOLDEN / "manifest.json").read_text(encoding="utf-8"))
VALID = sorted(FIXTURES.glob("*.json"))


def test_schema_copies_agree():
    assert json.loads((ROOT / "docs" / "workspace.schema.json").read_text()) == schema()


@pytest.mark.parametrize("path", VALID, ids=[p.stem for p in VALID])
def test_fixtures_load(path):
    doc = load(path)
    assert doc.field is not None


def test_not_prime():
    raw = json.loads((FIXTURES / "vec_z2_gf2.json").read_text())
    raw["field"] = {"type": "Fp", "p": 4}
    with pytest.raises(SchemaError) as e:
        from_dict(raw)
    assert e.value.location == "/field/p"


def test_missing_field():
    with pytest.raises(SchemaError):
        from_dict({"version": 1, "category": {"builtin": "vec", "group": [2]}})


def test_corrupted_associator():
    with pytest.raises(ValidationError) as e:
        load(FIXTURES / "invalid" / "corrupt_f.json")
    assert e.value.to_json()["cause"] == "PentagonViolation"
    assert e.value.location == "/category"


def test_bad_json():
    with pytest.raises(ParseError) as e:
        loads('{"version": 1,', "x.json")
    assert "x.json" in str(e.value)


def test_builtins():
    doc = from_dict({"version": 1, "field": {"type": "Fp", "p": 19}, "category": {"builtin": "fibonacci"}})
    assert doc.category.names == ("1", "t")


def test_dumps_is_canonical():
    assert dumps({"b": 1, "a": [1, "x"]}) == '{\n  "a": [\n    1,\n    "x"\n  ],\n  "b": 1\n}\n'


def test_run_with_dict_flags():
    doc = load(FIXTURES / "vec_z2_gf2.json")
    report, code = cli.run("cohomology", doc, {"kind": "category", "degree": 3})
    assert code == 0 and report["dim"] == 1


def test_obstruction_exit_code():
    doc = load(FIXTURES / "vec_z2_gf2_def.json")
    report, code = cli.run("obstruct", doc)
    assert code == 2 and report["obstructed"] and report["class"] == [1]


def test_usage_errors_exit_one(capsys):
    assert cli.main(["check"]) == 1
    assert json.loads(capsys.readouterr().err)["error"] == "UsageError"
    assert cli.main(["cohomology", str(FIXTURES / "vec_z2_gf2.json"), "--threads", "0"]) == 1


def test_kind_mismatch(capsys):
    assert cli.main(["hochschild", str(FIXTURES / "vec_z2_gf2.json")]) == 1
    assert json.loads(capsys.readouterr().err)["error"] == "KindMismatch"


@pytest.mark.parametrize("case", MANIFEST, ids=[c["name"] for c in MANIFEST])
def test_golden_in_process(case, capsys, monkeypatch):
    monkeypatch.chdir(ROOT)
    code = cli.main(case["args"])
    out, err = capsys.readouterr()
    assert code == case["exit"]
    assert out.encode() == (GOLDEN / f"{case['name']}.stdout").read_bytes()
    assert err.encode() == (GOLDEN / f"{case['name']}.stderr").read_bytes()
