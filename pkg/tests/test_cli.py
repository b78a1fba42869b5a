"""Document round trips, shipped fixtures and the command-line front end."""
import json

import pytest
from click.testing import CliRunner
from hypothesis import given, settings, strategies as st

from forge.cli import main, run
from forge.document import DocumentError, parse, serialize
from forge.fixtures import build_fixture, builtin_fixture, fixture_text

CHEAP = ("trivial-A2", "hopf-z2", "sweedler-z2", "matrix-coalgebra-2", "twisted-path")


def invoke(*args):
    return CliRunner().invoke(main, list(args))


def test_roundtrip(fixture_name):
    doc = builtin_fixture(fixture_name)
    again = parse(serialize(doc))
    assert again.to_json() == doc.to_json()
    assert serialize(again) == serialize(doc)


def test_shipped_matches_builder(fixture_name):
    """The JSON files in the package are exactly what the constructors produce."""
    assert builtin_fixture(fixture_name).to_json() == build_fixture(fixture_name).to_json()


def test_check_passes():
    r = invoke("check", "--fixture", "hopf-z2")
    assert r.exit_code == 0
    assert "0 failed" in r.output


def test_twisted_galois_exit_one():
    r = invoke("galois", "--fixture", "twisted-path", "--format", "json")
    assert r.exit_code == 1
    payload = json.loads(r.output)
    fails = [rec for rec in payload["records"] if rec["verdict"] == "fail"]
    assert fails and fails[0]["witness"].get("kernel_witness")


def test_connection_report_has_kappa_and_sigma():
    r = invoke("connection", "--fixture", "hopf-z2", "--format", "json")
    assert r.exit_code == 0
    rec = json.loads(r.output)["records"][0]
    assert rec["verdict"] == "pass"
    assert "kappa" in rec["witness"] and "sigma" in rec["witness"]


def test_usage_errors(tmp_path):
    assert invoke("check").exit_code == 2
    assert invoke("check", "x.json", "--fixture", "hopf-z2").exit_code == 2
    assert invoke("check", str(tmp_path / "missing.json")).exit_code == 2
    assert invoke("frobnicate", "--fixture", "hopf-z2").exit_code == 2


def test_wrong_size_reports_path(tmp_path):
    data = json.loads(fixture_text("trivial-A2"))
    data["algebras"]["A"]["mul"][0].append("0")
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    r = CliRunner().invoke(main, ["check", str(path)])
    assert r.exit_code == 2
    assert "algebras.A.mul" in r.stderr
    with pytest.raises(DocumentError) as info:
        parse(json.dumps(data))
    assert info.value.path.startswith("algebras.A.mul")


def test_unknown_reference():
    data = json.loads(fixture_text("trivial-A2"))
    data["comodules"]["M"]["grouplike"] = "nope"
    with pytest.raises(DocumentError):
        parse(json.dumps(data))


def test_file_and_fixture_agree(tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(fixture_text("hopf-z2"))
    a = invoke("report", str(path), "--format", "json")
    b = invoke("report", "--fixture", "hopf-z2", "--format", "json")
    assert json.loads(a.output)["records"] == json.loads(b.output)["records"]


def test_timing_is_opt_in():
    text = fixture_text("trivial-A2")
    assert all("seconds" not in r for r in run(text, "report"))
    assert run(text, "report", timing=True)[-1]["id"] == "timing"


@pytest.mark.parametrize("name", CHEAP)
def test_report_deterministic(name):
    """Two runs, and serial against parallel, print identical bytes."""
    first = invoke("report", "--fixture", name, "--format", "json").output
    assert invoke("report", "--fixture", name, "--format", "json").output == first
    assert invoke("report", "--fixture", name, "--format", "json", "--parallel").output == first


@settings(max_examples=10)
@given(st.sampled_from(CHEAP), st.sampled_from(["check", "galois", "principal", "cointegral"]))
def test_text_summary_counts(name, command):
    """The text summary counts exactly the records in the JSON output."""
    text = invoke(command, "--fixture", name).output
    records = json.loads(invoke(command, "--fixture", name, "--format", "json").output)["records"]
    counts = {v: sum(r["verdict"] == v for r in records) for v in ("pass", "fail", "not applicable")}
    assert text.splitlines()[-1] == (f"{counts['pass']} passed, {counts['fail']} failed, "
                                     f"{counts['not applicable']} not applicable")
