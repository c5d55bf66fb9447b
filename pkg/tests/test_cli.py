import json
from pathlib import Path

from pytest import approx, mark

import ofip.main
from ofip.main import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, main

CAMPAIGNS = Path(__file__).resolve().parents[1] / "data" / "campaigns"


def test_verify_smoke(report_dir, capsys):
    code = main(["verify", "--config", str(CAMPAIGNS / "smoke.json"), "--trials", "20"])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert out.startswith("PASS")
    report = json.loads((report_dir / "smoke_report.json").read_text())
    assert report["trials"] == 20
    assert report["passed"] is True
    assert (report_dir / "smoke_report.csv").exists()


def test_verify_seed_override(report_dir, capsys):
    main(["verify", "--config", str(CAMPAIGNS / "smoke.json"), "--trials", "5", "--seed", "41"])
    report = json.loads((report_dir / "smoke_report.json").read_text())
    assert report["seed"] == 41
    assert report["config_echo"]["seed"] == 41


def test_verify_adversarial_fails_with_counterexample(report_dir, capsys):
    code = main(["verify", "--config", str(CAMPAIGNS / "adversarial.json"), "--trials", "20"])
    assert code == EXIT_FAILURE
    assert capsys.readouterr().out.startswith("FAIL")
    report = json.loads((report_dir / "adversarial_report.json").read_text())
    failing = {entry["check_id"]: entry for entry in report["checks"] if entry["passes"] < entry["trials"]}
    assert "norm_bounds" in failing
    assert failing["norm_bounds"]["counterexample"]["record"]["passed"] is False


def test_reports_are_identical_across_worker_counts(report_dir, campaign_data, write_config):
    path = write_config(campaign_data)
    main(["verify", "--config", str(path), "--workers", "1"])
    serial = (report_dir / "report.json").read_text()
    main(["verify", "--config", str(path), "--workers", "3"])
    assert (report_dir / "report.json").read_text() == serial


@mark.parametrize("change field".split(),
                  (({"alpha_grid": [0.0, 0.5]}, "alpha_grid"),
                   ({"trials": -1}, "trials"),
                   ({"field": "quaternion"}, "field"),
                   ({"profile": {"kind": "constant", "lower": 2.0, "upper": 1.0}}, "profile"),
                   ({"checks": ["no_such_check"]}, "checks"),
                   ({"mixing": {"kind": "affine", "t": [0, 1], "phase": 7.0}}, "mixing"),
                   ({"colour": "red"}, "colour")))
def test_verify_rejects_bad_configs(report_dir, campaign_data, write_config, capsys, change, field):
    path = write_config({**campaign_data, **change})
    assert main(["verify", "--config", str(path)]) == EXIT_USAGE
    assert repr(field) in capsys.readouterr().err
    assert not report_dir.exists()


def test_verify_missing_key(report_dir, campaign_data, write_config, capsys):
    del campaign_data["dims"]
    assert main(["verify", "--config", str(write_config(campaign_data))]) == EXIT_USAGE
    assert "'dims'" in capsys.readouterr().err


def test_verify_missing_file(report_dir, tmp_path):
    assert main(["verify", "--config", str(tmp_path / "absent.json")]) == EXIT_USAGE


def test_verify_unreadable_config(report_dir, tmp_path):
    binary = tmp_path / "binary.json"
    binary.write_bytes(b"\xff\xfe{}")
    assert main(["verify", "--config", str(binary)]) == EXIT_USAGE
    assert main(["verify", "--config", str(tmp_path)]) == EXIT_USAGE
    assert not report_dir.exists()


def test_usage_errors_exit_with_two(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["example", "--alpha", "0.5", "--x", "1,2,3"]) == EXIT_USAGE


@mark.parametrize("x value interval".split(),
                  (("1,0", "3 + 0i", "[3,2]_o (canonical [2,3])"),
                   ("0,0", "0 + 0i", "[0,0]_o (canonical [0,0])")))
def test_example_at_alpha_one(capsys, x, value, interval):
    assert main(["example", "--alpha", "1", "--x", x]) == EXIT_OK
    out = capsys.readouterr().out
    assert f"value       = {value}\n" in out
    assert f"interval    = {interval}\n" in out
    assert "contained   = true\n" in out


def test_example_three_four(capsys):
    assert main(["example", "--alpha", "1", "--x", "3,4"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "value       = 15 + 0i\n" in out
    assert "closed form = 15\n" in out
    assert "contained   = true\n" in out


def test_example_inside_the_unit_interval(capsys):
    assert main(["example", "--alpha", "0.5", "--x", "1,2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "contained   = true\n" in out
    assert "verbatim    = " in out


@mark.parametrize("alpha", ("0", "1.5", "-0.2"))
def test_example_rejects_alpha(capsys, alpha):
    assert main(["example", "--alpha", alpha, "--x", "1,0"]) == EXIT_USAGE


@mark.parametrize("expression expected".split(),
                  (("[3,4] (-) [2,10]", "[1,-6]_o (canonical [-6,1])"),
                   ("2*[3,4]", "[6,8]_o"),
                   ("abs([1,-6])", "[1,6]_o"),
                   ("[1,2] (*) [3,-4]", "[3,-8]_o (canonical [-8,3])"),
                   ("([3,4] (+) [2,10]) (-) [2,10]", "[3,4]_o"),
                   ("[5,5]_o", "[5,5]_o")))
def test_interval_calculator(capsys, expression, expected):
    assert main(["interval", expression]) == EXIT_OK
    assert capsys.readouterr().out == expected + "\n"


@mark.parametrize("expression position".split(),
                  (("[1,2] (+)", 9), ("[1,2", 4), ("[1,2] # [3,4]", 6)))
def test_interval_parse_errors(capsys, expression, position):
    assert main(["interval", expression]) == EXIT_USAGE
    err = capsys.readouterr().err
    assert err.splitlines()[-1] == "  " + " " * position + "^"


@mark.parametrize("x", ("nan,1", "1,inf", "-inf,0"))
def test_example_rejects_non_finite_entries(capsys, x):
    assert main(["example", "--alpha", "0.5", "--x", x]) == EXIT_USAGE
    assert "finite" in capsys.readouterr().err


def test_example_verbatim_judges_the_printed_magnitude(capsys):
    assert main(["example", "--alpha", "0.05", "--x", "1,10", "--verbatim"]) == EXIT_OK
    lines = dict(line.split(" = ", 1) for line in capsys.readouterr().out.splitlines())
    magnitude = float(lines["magnitude  "])
    assert magnitude == approx(20.0569, abs=1e-4)
    assert float(lines["closed form"]) != approx(magnitude)
    assert lines["contained  "] == "true"


def test_example_verdict_follows_the_evaluated_value(capsys, monkeypatch):
    monkeypatch.setattr(ofip.main, "example_norm", lambda alpha, x, verbatim=False: complex(100.0, 0.0))
    assert main(["example", "--alpha", "0.5", "--x", "1,2"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "magnitude   = 100\n" in out
    assert "contained   = false\n" in out
