import json

import pytest

from stieltjes import cli

STEP_G = "g=step[0,1]{nodes:0,0.5,1; at:0,0,1; on:0,1}"      # chi_(0.5,1]
AFFINE_F = "f=affine[0,1]{slope:1}"
PAIR = f"{AFFINE_F} {STEP_G}"


def run(capsys, argv):
    code = cli.main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, argv):
    code, out, err = run(capsys, argv)
    return code, json.loads(out), err


def test_integrate_json_report(capsys):
    code, report, _ = run_json(capsys, ["integrate", "--json", "kind=D", PAIR])
    assert code == 0
    assert report == {"command": "integrate", "kind": "D", "value": 0.5,
                      "error_bound": 0, "seed": 0}


def test_integrate_human_report(capsys):
    code, out, err = run(capsys, ["integrate", "kind=D", PAIR])
    assert code == 0 and err == ""
    lines = dict(line.split(": ", 1) for line in out.strip().splitlines())
    assert lines["value"] == "0.5" and lines["kind"] == "D"


def test_json_floats_are_full_precision(capsys):
    _, out, _ = run(capsys, ["integrate", "--json",
                             "f=step[0,1]{nodes:0,1; at:0.1,0.1; on:0.1} "
                             "g=affine[0,1]{slope:1}"])
    assert '"value": 0.10000000000000001' in out


def test_verify_main_passes_on_mixed_pair(capsys):
    code, report, _ = run_json(capsys, ["verify-main", "--json", PAIR])
    assert code == 0 and report["ok"] is True
    assert report["residuals"]["k_minus_y"] == 0
    assert report["residuals"]["by_parts"] <= 1e-12
    assert report["command"] == "verify-main"


def test_verify_bounds_reports_six_slacks(capsys):
    code, report, _ = run_json(capsys, ["verify-bounds", "--json", "kind=Y",
                                        "seed=3", PAIR])
    assert code == 0 and report["ok"] is True
    assert sorted(report["residuals"]) == [
        "integral_bv_sup", "integral_sup_var", "riemann_bv_sup",
        "riemann_sup_var", "young_bv_sup", "young_sup_var"]
    assert all(v is None or v >= -1e-12 for v in report["residuals"].values())


def test_oracle_converges_and_reports_levels(capsys):
    code, report, _ = run_json(capsys, ["oracle", "--json", "kind=Y", PAIR])
    assert code == 0 and report["converged"] is True
    assert report["error_bound"] <= 1e-9
    assert isinstance(report["levels"], int)
    assert abs(report["value"] - 0.5) <= 1e-8


def test_oracle_reports_nonconvergence(capsys):
    code, report, _ = run_json(capsys, ["oracle", "--json", "kind=D",
                                        "tol=1e-30", PAIR])
    assert code == 1
    assert report["converged"] is False and report["error_bound"] > 1e-30


def test_dsl_errors_exit_2(capsys):
    code, out, err = run(capsys, ["integrate", "--json", "f=step[0,1]{nodes:0"])
    assert code == 2
    assert "error" in json.loads(out)
    code, _, err = run(capsys, ["integrate", "kind=Q", PAIR])
    assert code == 2 and "unknown integral kind 'Q'" in err
    code, _, err = run(capsys, ["integrate"])
    assert code == 2 and "missing job text" in err


def test_subcommand_must_match_job_text(capsys):
    code, _, err = run(capsys, ["integrate", f"oracle {PAIR}"])
    assert code == 2 and "subcommand" in err
    # A bare job line inherits the subcommand instead.
    code, report, _ = run_json(capsys, ["oracle", "--json", PAIR])
    assert code == 0 and report["command"] == "oracle"


def test_flag_overrides(capsys):
    code, report, _ = run_json(capsys, ["oracle", "--json", "--seed", "5", PAIR])
    assert code == 0 and report["seed"] == 5
    _, loose, _ = run_json(capsys, ["integrate", "--json", "--tol", "1e-2",
                                    "f=sin[0,1]{freq:3}", "g=sin[0,1]{freq:2}"])
    _, tight, _ = run_json(capsys, ["integrate", "--json", "--tol", "1e-4",
                                    "f=sin[0,1]{freq:3}", "g=sin[0,1]{freq:2}"])
    assert 0 < tight["error_bound"] <= 1e-4 < loose["error_bound"] <= 1e-2
    code, _, err = run(capsys, ["integrate", "--tol", "-1", PAIR])
    assert code == 2 and "tol must be positive" in err


def test_refused_computation_exits_3(capsys):
    code, report, _ = run_json(capsys, ["integrate", "--json", "tol=1e-15",
                                        "f=sin[0,1]{freq:3}",
                                        "g=sin[0,1]{freq:2}"])
    assert code == 3 and "error" in report
    code, out, err = run(capsys, ["integrate", "tol=1e-15",
                                  "f=sin[0,1]{freq:3}", "g=sin[0,1]{freq:2}"])
    assert code == 3 and out == "" and "error:" in err


def test_spec_batch_runs_all_lines(tmp_path, capsys):
    spec = tmp_path / "jobs.txt"
    spec.write_text(
        "# a comment line\n"
        f"integrate kind=D {PAIR}\n"
        "\n"
        f"verify-main {PAIR}\n"
        f"oracle kind=D tol=1e-30 {PAIR}\n")
    code, out, err = run(capsys, ["integrate", "--json", "--spec", str(spec)])
    assert code == 2  # the verify-main line contradicts the subcommand
    reports = [json.loads(line) for line in out.strip().splitlines()]
    assert len(reports) == 3
    assert reports[0]["value"] == 0.5
    assert "error" in reports[1]

    spec.write_text(f"integrate kind=D {PAIR}\n"
                    f"integrate kind=K {PAIR}\n")
    code, out, _ = run(capsys, ["integrate", "--json", "--spec", str(spec)])
    assert code == 0
    assert [json.loads(l)["kind"] for l in out.strip().splitlines()] == ["D", "K"]


def test_spec_batch_worst_exit_code_wins(tmp_path, capsys):
    spec = tmp_path / "jobs.txt"
    spec.write_text(f"oracle kind=Y {PAIR}\n"
                    f"oracle kind=D tol=1e-30 {PAIR}\n")
    code, out, _ = run(capsys, ["oracle", "--json", "--spec", str(spec)])
    assert code == 1
    flags = [json.loads(l)["converged"] for l in out.strip().splitlines()]
    assert flags == [True, False]


def test_spec_edge_cases(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("# nothing here\n\n")
    code, _, err = run(capsys, ["integrate", "--spec", str(empty)])
    assert code == 2 and "contains no jobs" in err
    code, _, err = run(capsys, ["integrate", "--spec", str(tmp_path / "nope")])
    assert code == 2 and "cannot read" in err
    code, _, err = run(capsys, ["integrate", "--spec", str(empty), PAIR])
    assert code == 2 and "mutually exclusive" in err


def test_console_script_is_wired():
    import importlib.metadata as md
    eps = md.entry_points(group="console_scripts")
    ours = [ep for ep in eps if ep.name == "stieltjes"]
    assert ours and ours[0].value == "stieltjes.cli:main"
