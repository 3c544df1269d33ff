import json

from click.testing import CliRunner

from e6weyl.cli import main


def run(*args):
    return CliRunner().invoke(main, list(args))


def test_verify_model_writes_report_and_sidecar(tmp_path):
    out = tmp_path / "m.json"
    r = run("verify", "model", "--name", "adams", "--out", str(out))
    assert r.exit_code == 0, r.output
    assert "Jacobi pass on 76076 triples" in r.output
    rep = json.loads(out.read_text())
    assert rep["ok"] and rep["certified"] and rep["arithmetic"] == {"mode": "exact"}
    assert rep["results"]["dim"] == 78
    assert "jacobi" in json.loads((tmp_path / "m.timings.json").read_text())
    assert "time" not in out.read_text()


def test_report_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        assert run("verify", "grading", "--id", "3", "--out", str(p)).exit_code == 0
    assert a.read_bytes() == b.read_bytes()


def test_emit_type():
    r = run("verify", "grading", "--id", "5", "--emit-type")
    assert r.exit_code == 0
    assert r.output.strip() == "(73,0,0,0,1)"


def test_modular_grading_is_not_certified(tmp_path):
    out = tmp_path / "g.json"
    r = run("verify", "grading", "--id", "4", "--arith", "modular", "--out", str(out))
    assert r.exit_code == 0, r.output
    rep = json.loads(out.read_text())
    assert rep["ok"] and not rep["certified"] and rep["arithmetic"]["mode"] == "modular"


def test_prime_requires_modular():
    assert run("verify", "grading", "--id", "4", "--prime", "37").exit_code == 2


def test_verify_weyl_expect_order():
    r = run("verify", "weyl", "--id", "2", "--expect-order", "5376")
    assert r.exit_code == 0, r.output
    assert "closure order 5376" in r.output
    assert run("verify", "weyl", "--id", "2", "--expect-order", "5377").exit_code == 1


def test_verify_weyl_reports_failing_display():
    r = run("verify", "weyl", "--id", "6")
    assert r.exit_code == 1
    assert "display phi_1~" in r.output


def test_obstructions():
    r = run("verify", "obstructions", "--id", "5")
    assert r.exit_code == 0, r.output
    assert "FAIL" not in r.output


def test_dump_and_classify(tmp_path):
    r = run("dump", "--model", "tits-oct-jordan")
    assert r.exit_code == 0
    assert r.output.startswith("dim 78\n")
    r = run("classify", "--model", "five-grading", "--aut", "theta")
    assert r.exit_code == 0, r.output
    assert "order=2 fix=36" in r.output


def test_classify_unknown_automorphism():
    r = run("classify", "--model", "adams", "--aut", "nope")
    assert r.exit_code != 0
