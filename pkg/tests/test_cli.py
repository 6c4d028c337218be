import csv
import json
from pathlib import Path

import numpy as np
import pytest

from stefanvar.cli import main

CONFIGS = Path(__file__).resolve().parent.parent / "configs"


def write(tmp_path, text, name="run.cfg"):
    p = tmp_path / name
    p.write_text(text)
    return p


def read_profile(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))
    assert rows[0] == ["eta", "y"]
    return np.array(rows[1:], dtype=float)


def test_dirichlet_outputs(tmp_path):
    out = tmp_path / "o"
    assert main(["dirichlet", "--config", str(CONFIGS / "fig1_dirichlet.cfg"),
                 "--out", str(out)]) == 0
    names = sorted(p.name for p in out.iterdir())
    assert names == ["profile_p1.csv", "profile_p10.csv", "profile_p5.csv",
                     "profiles.svg", "summary.json"]
    summary = json.loads((out / "summary.json").read_text())
    lams = [s["lambda"] for s in summary["solutions"]]
    assert lams[0] > lams[1] > lams[2]
    # curves share the grid and are zero past their own front
    p10 = read_profile(out / "profile_p10.csv")
    assert p10[-1, 0] == pytest.approx(lams[0])
    assert np.all(p10[p10[:, 0] > lams[2], 1] == 0.0)
    assert (out / "profiles.svg").read_text().startswith("<?xml")


def test_outputs_are_reproducible(tmp_path):
    for d in ("a", "b"):
        assert main(["robin", "--config", str(CONFIGS / "fig3_robin.cfg"),
                     "--out", str(tmp_path / d)]) == 0
    for name in ("profile_p1.csv", "summary.json", "profiles.svg"):
        assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()


def test_temperature_lattice(tmp_path):
    out = tmp_path / "o"
    assert main(["dirichlet", "--config", str(CONFIGS / "fig2_temperature.cfg"),
                 "--out", str(out), "--formats", "csv"]) == 0
    with open(out / "temperature_p1.csv") as fh:
        rows = list(csv.reader(fh))
    assert len(rows) == 41 and len(rows[0]) == 82
    first = np.array(rows[1][1:], dtype=float)
    assert first[0] == pytest.approx(10.0)
    assert first[-1] == 0.0


def test_formats_filter(tmp_path):
    out = tmp_path / "o"
    assert main(["dirichlet", "--config", str(CONFIGS / "fig1_dirichlet.cfg"),
                 "--out", str(out), "--formats", "json"]) == 0
    assert [p.name for p in out.iterdir()] == ["summary.json"]


@pytest.mark.parametrize("cmd,text", [
    ("robin", "ste=0.5\ndelta=1\n"),
    ("robin", "ste=0.5\ngamma=1, 2\n"),
    ("dirichlet", "ste=0.5\nrho=1\n"),
    ("converge", "ste=0.5\np=1, 2\ngamma=1, 2\n"),
    ("dirichlet", "ste=-1\n"),
])
def test_input_errors_exit_2(tmp_path, cmd, text):
    assert main([cmd, "--config", str(write(tmp_path, text)), "--out", str(tmp_path / "o")]) == 2


def test_missing_config_exits_2(tmp_path):
    assert main(["dirichlet", "--config", str(tmp_path / "x.cfg"), "--out", str(tmp_path)]) == 2


def test_bad_grid_exits_2(tmp_path):
    cfgp = write(tmp_path, "ste=0.5\n")
    assert main(["dirichlet", "--config", str(cfgp), "--out", str(tmp_path), "--grid", "1"]) == 2


def test_converge_outputs(tmp_path):
    out = tmp_path / "o"
    assert main(["converge", "--config", str(CONFIGS / "fig5_converge.cfg"),
                 "--out", str(out)]) == 0
    rep = json.loads((out / "convergence.json").read_text())
    assert rep["monotone"] and rep["bounded"]
    assert (out / "profile_dirichlet.csv").exists()
    assert (out / "profile_gamma100.csv").exists()


def test_validate_scorecard(tmp_path):
    out = tmp_path / "o"
    assert main(["validate", "--config", str(CONFIGS / "validate_fractional.cfg"),
                 "--out", str(out), "--steps", "2000"]) == 0
    card = json.loads((out / "scorecard.json").read_text())
    assert card["passed"] and card["failed"] == []
    checks = card["cases"][0]["checks"]
    assert {"lambda_gap", "profile_gap", "convective_residual", "range_monotone"} <= set(checks)


def test_validate_failure_exits_4(tmp_path, monkeypatch):
    import stefanvar.cli as cli
    monkeypatch.setattr(cli, "LAMBDA_GAP", 0.0)
    out = tmp_path / "o"
    assert main(["validate", "--config", str(write(tmp_path, "ste=0.5\ndelta=1\n")),
                 "--out", str(out), "--steps", "500"]) == 4
    card = json.loads((out / "scorecard.json").read_text())
    assert card["failed"] == ["p=1:lambda_gap"]


def test_solver_error_exits_3(tmp_path, monkeypatch):
    import stefanvar.cli as cli
    from stefanvar.errors import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("no convergence", (0.0, 1.0))

    monkeypatch.setattr(cli, "solve_lambda", boom)
    assert main(["dirichlet", "--config", str(write(tmp_path, "ste=0.5\n")),
                 "--out", str(tmp_path / "o")]) == 3
