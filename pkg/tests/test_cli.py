from __future__ import annotations

import json
from importlib import resources

import jsonschema
import pytest

from concordia.cli import main, parse_range


@pytest.fixture(scope="module")
def schema():
    text = resources.files("concordia").joinpath("schemas/invariant_report.schema.json").read_text()
    return json.loads(text)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "expr, nu, tau, vs",
    [("T(3,4)", 3, 3, [1, 1, 1, 0]), ("U", 0, 0, [0]), ("T(2,5)+2*T(2,3)-C(2,5;T(2,3))", 2, 0, [1, 1, 0])],
)
def test_invariants(capsys, schema, expr, nu, tau, vs):
    code, out, _ = run(capsys, "invariants", expr)
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, schema)
    assert (report["nu_plus"], report["tau"], report["v_sequence"]) == (nu, tau, vs)


def test_invariants_csv(capsys):
    code, out, _ = run(capsys, "invariants", "T(3,4)", "--format", "csv")
    assert code == 0
    assert out.splitlines() == ["expression,nu_plus,tau,v_sequence,genus_bound", "\"T(3,4)\",3,3,1;1;1;0,3"]


def test_exit_codes(capsys):
    code, _, err = run(capsys, "invariants", "T(2,3")
    assert code == 2 and "position 5" in err
    code, _, err = run(capsys, "invariants", "C(2,1;T(2,3))")
    assert code == 3 and "certified" in err
    code, _, _ = run(capsys, "poset", "T(2,3)", "T(2,5)", "T(3,4)", "--budget", "10")
    assert code == 4


def test_obstruct_fulltwist(capsys):
    code, out, _ = run(capsys, "obstruct-fulltwist", "--from", "U", "--to", "T(2,3)", "--linking", "0..4")
    assert code == 0
    data = json.loads(out)
    assert [r["n"] for r in data["reports"]] == [0, 1, 2, 3, 4]
    assert data["admissible"] == [2, 3]
    code, out, _ = run(capsys, "obstruct-fulltwist", "--from", "U", "--to", "T(3,4)", "--linking", "3")
    assert json.loads(out)["admissible"] == [3]
    code, out, _ = run(capsys, "obstruct-fulltwist", "--from", "T(2,5)", "--to", "T(2,5)", "--linking", "0")
    assert json.loads(out)["reports"][0]["verdict"] == "consistent"


def test_surgery_d(capsys):
    _, out, _ = run(capsys, "surgery-d", "T(2,3)", "--p", "1")
    assert json.loads(out)["rows"] == [{"i": 0, "d": "-2"}]
    _, out, _ = run(capsys, "surgery-d", "U", "--p", "9")
    assert json.loads(out)["rows"][3] == {"i": 3, "d": "0"}
    _, out, _ = run(capsys, "surgery-d", "U", "--p", "3", "--q", "2", "--format", "csv")
    assert out.splitlines()[1] == "0,1/6"
    code, _, _ = run(capsys, "surgery-d", "U", "--p", "4", "--q", "2")
    assert code == 2


def test_cable_bounds(capsys):
    _, out, _ = run(capsys, "cable-bounds", "T(2,3)", "--p", "2", "--q", "1..5")
    rows = {r["q"]: r for r in json.loads(out)["rows"]}
    assert rows[5]["exact"] == 4 and rows[5]["source"] == "engine"
    assert rows[1]["exact"] == 2 and rows[1]["source"] == "wu"
    _, out, _ = run(capsys, "cable-bounds", "T(2,3)", "--p", "2", "--q=-3..-1")
    assert all(r["upper"] is None for r in json.loads(out)["rows"])


def test_poset_outputs(tmp_path, capsys):
    out = tmp_path / "chain.dot"
    code, _, _ = run(capsys, "poset", "T(2,3)", "--out", str(out))
    assert code == 0
    assert out.read_text().count("->") == 2
    data = json.loads(out.with_suffix(".json").read_text())
    assert [c["representative"] for c in data["classes"]] == ["-T(2,3)", "T(2,3)", "U"]
    first = out.read_bytes()
    run(capsys, "poset", "T(2,3)", "--out", str(out))
    assert out.read_bytes() == first
    _, dot, _ = run(capsys, "poset", "--format", "dot")
    assert dot.count("->") == 0 and '"U"' in dot


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "parity")
    assert code == 0 and json.loads(out)["passed"]


def test_verify_failure_exit_code(capsys, monkeypatch):
    from concordia import verify

    monkeypatch.setitem(verify.SUITES, "parity", lambda: iter([None, "forced counterexample"]))
    code, out, err = run(capsys, "verify", "parity")
    assert code == 1 and "forced counterexample" in err
    assert json.loads(out)["suites"][0]["checks"] == 2


def test_parse_range():
    assert parse_range("0..4") == range(0, 5)
    assert parse_range("3") == range(3, 4)
