import json

import pytest

from isogeo import cli
from isogeo.report import parse


def run(capsysbinary, *argv):
    code = cli.main(list(argv))
    out = capsysbinary.readouterr()
    return code, out.out, out.err


def test_verify_mt_passes(capsysbinary):
    code, out, _ = run(capsysbinary, "verify", "--family", "mt", "--n", "3", "--t", "0.2", "--samples", "200")
    obj = json.loads(out)
    assert code == 0 and obj["checks"] and all(c["pass"] for c in obj["checks"])


def test_graph_zero_slope_is_usage_error(capsysbinary):
    code, out, err = run(capsysbinary, "verify", "--family", "graph", "--a", "0")
    assert code == 2 and out == b"" and b"a != 0" in err


def test_bad_flag_is_usage_error(capsysbinary):
    assert run(capsysbinary, "verify", "--family", "torus")[0] == 2
    assert run(capsysbinary, "kac", "verify", "--tau1", "x/y")[0] == 2
    assert run(capsysbinary, "verify", "--family", "mt", "--tol", "-1")[0] == 2


def test_series_check_fails_on_stated_sets(capsysbinary):
    code, out, _ = run(capsysbinary, "series", "check", "--no-timestamp")
    checks = {(c["name"], c["instance"]): c["pass"] for c in json.loads(out)["checks"]}
    assert checks[("series.kappa_roots", "g2_case4")] and checks[("series.kappa_roots", "g4_case5")]
    assert code == 1  # the stated (ii) and (iv) parameter sets leave a constant-order difference


def test_kac_verify_and_degenerate(capsysbinary):
    code, out, _ = run(capsysbinary, "kac", "verify", "--m", "2", "--n", "2", "--format", "csv")
    assert code == 0 and out.startswith(b"name,instance,max_residual,tolerance,pass\n")
    code, _, err = run(capsysbinary, "kac", "verify", "--m", "2", "--n", "3", "--tau1", "1", "--tau2", "4")
    assert code == 2 and b"degenerate" in err


def test_clifford_gen_and_verify(tmp_path, capsysbinary):
    path = tmp_path / "sys.json"
    assert run(capsysbinary, "clifford", "gen", "--p", "3", "--k", "2", "--output", str(path))[0] == 0
    code, out, _ = run(capsysbinary, "clifford", "verify", "--input", str(path))
    assert code == 0 and all(r.passed for r in parse(out)[1])


def test_family_json_with_clifford_ref(tmp_path, capsysbinary):
    run(capsysbinary, "clifford", "gen", "--p", "2", "--k", "2", "--output", str(tmp_path / "p2.json"))
    spec = tmp_path / "fam.json"
    spec.write_text(json.dumps({"tag": "mhat", "clifford_ref": "p2.json", "t": 0.3}))
    code, _, _ = run(capsysbinary, "spectrum", "--family-json", str(spec), "--samples", "20", "--geo-samples", "3")
    assert code == 0


def test_tolerance_precedence(monkeypatch):
    monkeypatch.setenv(cli.TOL_ENV, "1e-6")
    assert cli.resolve_tolerances(None).residual == 1e-6
    assert cli.resolve_tolerances(1e-3).residual == 1e-3
    monkeypatch.delenv(cli.TOL_ENV)
    assert cli.resolve_tolerances(None).residual == 1e-9
    with pytest.raises(cli.UsageError):
        cli.resolve_tolerances(None, {cli.TOL_ENV: "abc"})


def test_env_tolerance_changes_outcome(monkeypatch, capsysbinary):
    monkeypatch.setenv(cli.TOL_ENV, "1e-30")
    code, _, _ = run(capsysbinary, "verify", "--family", "mt", "--n", "3", "--samples", "50")
    assert code == 1
    code, _, _ = run(capsysbinary, "verify", "--family", "mt", "--n", "3", "--samples", "50", "--tol", "1e-9")
    assert code == 0


def test_same_argv_same_report(capsysbinary):
    argv = ("flow", "--family", "mt", "--n", "2", "--t", "0.1", "--geo-samples", "10")
    a = run(capsysbinary, *argv)[1]
    b = run(capsysbinary, *argv)[1]
    from isogeo.report import same_report

    assert same_report(a, b)
