"""CLI behavior: subcommands, exit codes, determinism, error reporting."""

import json

from skv.cli import main

from conftest import fixture_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_theta_text_output(capsys):
    code, out, _ = run_cli(capsys, "theta",
                           "--fixture", fixture_path("q_zeta3"),
                           "--T", "7", "--format", "text")
    assert code == 0
    assert "theta S=3,inf T=7 r=0" in out
    assert "e: -1" in out and "s: 1" in out


def test_theta_json_output(capsys):
    code, out, _ = run_cli(capsys, "theta",
                           "--fixture", fixture_path("q_zeta3"))
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "skvtheta/1"
    assert payload["coefficients"] == {"e": "1/6", "s": "-1/6"}
    assert "contragredient" in payload["sharpConvention"]


def test_check_all_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "check", "all",
                           "--fixture", fixture_path("q_zeta23"))
    assert code == 0
    report = json.loads(out)
    assert report["schema"] == "skvreport/1"
    assert {v["status"] for v in report["verdicts"]} == {"verified"}
    assert report["timings"] is None
    # inconclusive-only run exits 2
    code2, out2, _ = run_cli(capsys, "check", "all",
                             "--fixture", fixture_path("s3c2"))
    assert code2 == 2
    statuses = {v["status"] for v in json.loads(out2)["verdicts"]}
    assert "inconclusive" in statuses and "falsified" not in statuses


def test_check_single_suites(capsys):
    for suite in ("stickelberger", "sku", "brumer", "brumer-stark",
                  "negative-r"):
        code, out, _ = run_cli(capsys, "check", suite,
                               "--fixture", fixture_path("q_i"))
        assert code == 0, (suite, out)
        report = json.loads(out)
        assert len(report["verdicts"]) == 1


def test_check_explicit_sets_and_p(capsys):
    code, out, _ = run_cli(capsys, "check", "stickelberger",
                           "--fixture", fixture_path("q_i"),
                           "--S", "inf,2", "--T", "5", "--p", "2")
    assert code == 0
    v = json.loads(out)["verdicts"][0]
    assert v["status"] == "verified"
    assert any("p=2" in p for p in v["provenance"])


def test_check_text_rendering(capsys):
    code, out, _ = run_cli(capsys, "check", "all",
                           "--fixture", fixture_path("q"),
                           "--format", "text")
    assert code == 0
    assert "theorem-stickelberger-int: verified" in out
    assert "prime 2: exceptional" in out


def test_timings_flag(capsys):
    code, out, _ = run_cli(capsys, "check", "brumer",
                           "--fixture", fixture_path("q_i"), "--timings")
    assert code == 0
    assert json.loads(out)["timings"]


def test_report_determinism(tmp_path, capsys):
    out1 = tmp_path / "a.json"
    out2 = tmp_path / "b.json"
    for target in (out1, out2):
        code, _, _ = run_cli(capsys, "check", "all",
                             "--fixture", fixture_path("q_zeta3"),
                             "--out", str(target))
        assert code == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sku_subcommand(capsys):
    code, out, _ = run_cli(capsys, "sku",
                           "--fixture", fixture_path("q_zeta3"))
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "skvgens/1"
    assert payload["truncated"] and payload["generators"]


def test_fitting_subcommand(tmp_path, capsys):
    matrix = tmp_path / "m.json"
    matrix.write_text(json.dumps(
        {"rows": [[{"0": "2", "1": "1"}]]}))
    code, out, _ = run_cli(capsys, "fitting",
                           "--fixture", fixture_path("q_zeta3"),
                           "--matrix", str(matrix))
    assert code == 0
    payload = json.loads(out)
    assert payload["schema"] == "skvfitt/1"
    assert payload["quadratic"] and not payload["zero"]
    assert len(payload["generators"]) == 1


def test_fixtures_validate(capsys):
    code, out, _ = run_cli(capsys, "fixtures", "validate",
                           "--fixture", fixture_path("s3c2"),
                           "--format", "text")
    assert code == 0
    assert "fixture s3c2: valid" in out


def test_missing_fixture_exits_3(capsys):
    code, _, err = run_cli(capsys, "check", "all",
                           "--fixture", "/nonexistent/f.json")
    assert code == 3 and "not found" in err


def test_malformed_fixture_exits_3(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{ not json")
    code, _, err = run_cli(capsys, "check", "all", "--fixture", str(bad))
    assert code == 3 and "malformed" in err
    bad2 = tmp_path / "bad2.json"
    with open(fixture_path("q")) as fh:
        obj = json.load(fh)
    obj["schema"] = "other/1"
    bad2.write_text(json.dumps(obj))
    code2, _, err2 = run_cli(capsys, "check", "all", "--fixture", str(bad2))
    assert code2 == 3 and "schema" in err2


def test_usage_error_exits_3(capsys):
    assert main(["check", "nonsense",
                 "--fixture", fixture_path("q")]) == 3


def test_falsified_exits_1(tmp_path, capsys):
    with open(fixture_path("q_i")) as fh:
        obj = json.load(fh)
    obj["classGroups"] = [{"setT": ["5"], "p": 5, "factors": [5],
                           "action": {"0": [[1]], "1": [[4]]}}]
    path = tmp_path / "qi_bad.json"
    path.write_text(json.dumps(obj))
    code, out, _ = run_cli(capsys, "check", "brumer", "--fixture", str(path))
    assert code == 1
    v = json.loads(out)["verdicts"][0]
    assert v["status"] == "falsified" and v["witnesses"]
