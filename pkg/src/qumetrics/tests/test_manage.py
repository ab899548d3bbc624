from qumetrics import EXIT_FAILURE
from qumetrics import EXIT_USAGE
from qumetrics import EXIT_VALIDATION
from qumetrics.base import StateFile
from qumetrics.config import RunConfig
from qumetrics.errors import SolverFailure
from qumetrics.manage import compare_hansen
from qumetrics.manage import manage
from qumetrics.manage import verify_samples
from qumetrics.properties import PropertyLedger

import json
import pathlib
import pytest

TESTS_DIR = pathlib.Path(__file__).parent
INPUT_DIR = TESTS_DIR / "input"


def run_failing(argv):
    with pytest.raises(SystemExit) as excinfo:
        manage(argv)
    return excinfo.value.code


def test_usage_errors_exit_1(capsys):
    assert run_failing(["no-such-command"]) == EXIT_USAGE
    assert run_failing(["measure"]) == EXIT_USAGE
    assert run_failing(["werner-scan", "--lambda-steps", "many"]) == EXIT_USAGE
    assert "usage:" in capsys.readouterr().err


def test_measure(tmp_path, capsys):
    state = str(INPUT_DIR / "hansen.json")
    manage(["measure", "--state", state, "--out", str(tmp_path)])
    out = capsys.readouterr().out
    assert out.startswith("hansen:\n")
    assert "Q_star" in out
    data = json.loads((tmp_path / "hansen.measures.json").read_text())
    assert data["label"] == "hansen"
    assert data["n"] == 4
    assert data["L"] == pytest.approx(1.5385, abs=5e-4)
    assert data["Q_star"] == pytest.approx(1.0748, abs=5e-4)
    assert sorted(data["Q_alpha"]) == ["0.25", "0.5", "0.75"]
    assert data["Q_alpha"]["0.25"] == pytest.approx(1.2213, abs=5e-4)
    assert "V" not in data


def test_measure_with_observable(tmp_path):
    manage(
        [
            "measure",
            "--state",
            str(INPUT_DIR / "diag34.json"),
            "--observable",
            str(INPUT_DIR / "sigma_x.json"),
            "--alpha",
            "0.5",
            "--q",
            "3",
            "--out",
            str(tmp_path),
        ]
    )
    data = json.loads((tmp_path / "diag34.measures.json").read_text())
    assert data["q"] == 3.0
    assert data["V"] == pytest.approx(1.0)
    # 1 - 2 sqrt(3/4 * 1/4)
    assert data["I_alpha"]["0.5"] == pytest.approx(1 - 3**0.5 / 2)


@pytest.mark.parametrize(
    "name,expected",
    [("mixed4.json", 0.0), ("pure4.json", 3.0)],
)
def test_measure_named_states(tmp_path, name, expected):
    manage(["measure", "--state", str(INPUT_DIR / name), "--out", str(tmp_path)])
    stem = name.removesuffix(".json")
    data = json.loads((tmp_path / f"{stem}.measures.json").read_text())
    assert data["Q_star"] == pytest.approx(expected, abs=1e-10)
    assert data["L"] == pytest.approx(expected, abs=1e-10)


def test_measure_output_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv("QUMETRICS_OUT", str(tmp_path))
    manage(["measure", "--state", str(INPUT_DIR / "mixed4.json")])
    assert (tmp_path / "mixed4.measures.json").exists()


@pytest.mark.parametrize(
    "argv",
    [
        ["measure", "--state", str(INPUT_DIR / "not_psd.json")],
        ["measure", "--state", str(INPUT_DIR / "broken.json")],
        ["measure", "--state", str(INPUT_DIR / "nan_state.json")],
        [
            "measure",
            "--state",
            str(INPUT_DIR / "diag34.json"),
            "--observable",
            str(INPUT_DIR / "infinite_observable.json"),
        ],
        ["measure", "--state", str(INPUT_DIR / "missing.json")],
        ["measure", "--state", str(INPUT_DIR / "mixed4.json"), "--alpha", "1.5"],
        ["measure", "--state", str(INPUT_DIR / "mixed4.json"), "--q", "1"],
        [
            "measure",
            "--state",
            str(INPUT_DIR / "hansen.json"),
            "--observable",
            str(INPUT_DIR / "sigma_x.json"),
        ],
        ["werner-scan", "--lambda-steps", "1"],
        ["verify", "--dims", "1"],
    ],
)
def test_invalid_input_exits_2(argv, tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("QUMETRICS_OUT", str(tmp_path))
    assert run_failing(argv) == EXIT_VALIDATION
    assert capsys.readouterr().err.startswith("ERROR: ")


def test_compare_hansen():
    rows = {row[0]: row for row in compare_hansen()}
    assert set(rows) == {"S", "L", "Q_1/4", "Q*"}
    for name in ("L", "Q_1/4", "Q*"):
        assert rows[name][3] <= 5e-4
        assert rows[name][4] is True
    # The printed entropy is shown, not checked.
    assert rows["S"][1] == pytest.approx(0.6278, abs=1e-4)
    assert rows["S"][4] is False


def test_hansen_command(capsys):
    manage(["hansen"])
    out = capsys.readouterr().out
    assert "FAILED" not in out
    assert out.count(" ok") == 3
    assert "not checked" in out


def test_hansen_command_failure(monkeypatch, capsys):
    import qumetrics.manage

    def wrong():
        return [("L", 2.0, 1.5385, 0.4615, True)]

    monkeypatch.setattr(qumetrics.manage, "compare_hansen", wrong)
    assert run_failing(["hansen"]) == EXIT_FAILURE
    assert "FAILED: L differ" in capsys.readouterr().out


def test_werner_scan(tmp_path, capsys):
    manage(
        [
            "werner-scan",
            "--lambda-steps",
            "3",
            "--alpha-steps",
            "5",
            "--out",
            str(tmp_path),
        ]
    )
    out = capsys.readouterr().out
    assert out.count("Wrote ") == 6
    lines = (tmp_path / "fig1.csv").read_text().splitlines()
    assert lines[0] == "lambda,alpha,Q_alpha"
    assert len(lines) == 1 + 3 * 5
    assert (tmp_path / "fig3.csv").read_text().splitlines()[1] == "0.25,degenerate"


def test_solver_failure_exits_3(tmp_path, monkeypatch, capsys):
    import qumetrics.manage

    def broken(config, progress=None):
        raise SolverFailure("no convergence", residual=1.0)

    monkeypatch.setattr(qumetrics.manage, "scan_werner", broken)
    assert run_failing(["werner-scan", "--out", str(tmp_path)]) == EXIT_FAILURE
    assert "no convergence" in capsys.readouterr().err


def test_verify_samples():
    config = RunConfig.from_options("verify", samples=2, dims="2,3")
    states, observables = verify_samples(config)
    # Per dim: samples + pure + mixed (+ rank 2 from dim 3), then 7 Werner + Hansen.
    assert len(states) == (2 + 2) + (2 + 3) + 7 + 1
    assert len(observables) == len(states)
    assert [rho.dim for rho in states[-8:]] == [4] * 8
    assert states[-1].label == "hansen"
    again, _ = verify_samples(config)
    assert all((a.matrix == b.matrix).all() for a, b in zip(states, again))


def test_verify(tmp_path, capsys):
    report = tmp_path / "ledger.json"
    manage(
        [
            "verify",
            "--samples",
            "2",
            "--dims",
            "2,3",
            "--alpha",
            "0.25,0.5",
            "--json",
            str(report),
        ]
    )
    out = capsys.readouterr().out
    assert "Werner lambda=1/2: Q_1/2 = " in out
    assert out.rstrip().endswith("checks passed.")
    data = json.loads(report.read_text())
    assert data["samples"] == 2
    assert data["dims"] == [2, 3]
    assert data["alphas"] == [0.25, 0.5]
    assert data["ledger"]["passed"] is True
    assert data["ledger"]["failures"] == 0
    assert data["ledger"]["properties"]["luo_equality"]["evaluations"] == 17


def test_verify_failure_exits_3(monkeypatch, capsys):
    import qumetrics.manage

    def failing(*args, **kwargs):
        ledger = PropertyLedger()
        ledger.record("q_symmetry", 1.0, 1e-8)
        return ledger

    monkeypatch.setattr(qumetrics.manage, "check_properties", failing)
    assert run_failing(["verify", "--samples", "1", "--dims", "2"]) == EXIT_FAILURE
    assert "FAILED: properties with failures: q_symmetry" in capsys.readouterr().out


@pytest.mark.parametrize(
    "argv,label,dim",
    [
        (["werner", "--lam", "0.75"], "werner lambda=0.75", 4),
        (["hansen"], "hansen", 4),
        (["mixed", "--dim", "3"], "maximally mixed n=3", 3),
        (["singlet"], "singlet", 4),
    ],
)
def test_write_state(tmp_path, argv, label, dim):
    path = tmp_path / "state.json"
    manage(["write-state", argv[0], str(path)] + argv[1:])
    rho = StateFile(path).state
    assert rho.label == label
    assert rho.dim == dim


def test_write_state_unknown_kind(tmp_path):
    assert run_failing(["write-state", "ghz", str(tmp_path / "s.json")]) == EXIT_USAGE
