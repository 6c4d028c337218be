"""Acceptance criteria 1-9, one PASS/FAIL line each.

Lines are printed immediately (visible with ``-s``) and repeated in the
``acceptance`` section of the terminal summary.
"""

import csv
import itertools
import json
import time
from pathlib import Path

import numpy as np
import pytest

import oracles
from conftest import ACCEPTANCE_LINES
from stefanvar.asymptotics import converge_study
from stefanvar.cli import main
from stefanvar.dirichlet import big_f, big_g, closed_form_p1, profile_y, solve_lambda
from stefanvar.model import Boundary, DimensionlessConfig
from stefanvar.oracle import flux_constant_spread, shoot, stefan_residual
from stefanvar.robin import big_g_gamma, convective_residual, profile_y_gamma, solve_lambda_gamma
from stefanvar.specfun import erf

CONFIGS = Path(__file__).resolve().parent.parent / "configs"

DELTAS = (0.0, 1.0, 5.0)
PS = (0.0, 1.0, 2.5, 5.0, 10.0)
STES = (0.1, 0.5, 1.0)
GAMMAS = (1.0, 50.0)


def verdict(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert ok, line


def dirichlet_matrix():
    for d, p, s in itertools.product(DELTAS, PS, STES):
        yield DimensionlessConfig(ste=s, delta=d, p=p)


def robin_matrix():
    for d, p, s, g in itertools.product(DELTAS, PS, STES, GAMMAS):
        yield DimensionlessConfig(ste=s, delta=d, p=p, gamma=g)


@pytest.fixture(scope="module")
def solved():
    dsols = [solve_lambda(c) for c in dirichlet_matrix()]
    rsols = [solve_lambda_gamma(c) for c in robin_matrix()]
    return dsols, rsols


def test_criterion_1_classical_reduction():
    t0 = time.perf_counter()
    c = DimensionlessConfig(ste=1.0, delta=0.0, p=1.0)
    sol = solve_lambda(c)
    ref = float(oracles.dirichlet_lambda(1.0, 0.0, 1.0))
    eta = np.linspace(0.0, sol.lam, 512)
    gap = float(np.max(np.abs(profile_y(sol, eta) - (1 - erf(eta) / erf(sol.lam)))))
    elapsed = time.perf_counter() - t0
    lam_gap = abs(sol.lam - ref)
    ok = lam_gap <= 1e-10 and gap <= 1e-12 and elapsed < 1.0
    verdict(1, ok, f"lambda={sol.lam:.15f} |dlam|={lam_gap:.1e} profile={gap:.1e} "
                   f"t={elapsed:.3f}s")


def test_criterion_2_closed_form():
    t0 = time.perf_counter()
    worst = 0.0
    for d, s in itertools.product((0.5, 1.0, 5.0), STES):
        sol = solve_lambda(DimensionlessConfig(ste=s, delta=d, p=1.0))
        eta = np.linspace(0.0, sol.lam, 512)
        worst = max(worst, float(np.max(np.abs(closed_form_p1(eta, sol.lam, d)
                                               - profile_y(sol, eta)))))
    elapsed = time.perf_counter() - t0
    verdict(2, worst <= 1e-10 and elapsed < 5.0, f"max gap={worst:.1e} t={elapsed:.3f}s")


def test_criterion_3_functional_identities(solved):
    dsols, rsols = solved
    worst = 0.0
    for sol in dsols:
        c = sol.config
        eta = np.linspace(0.0, sol.lam, 10_000)
        worst = max(worst, float(np.max(np.abs(big_f(profile_y(sol, eta), c.delta, c.p)
                                               - big_g(eta, sol.lam, c.ste)))))
    for sol in rsols:
        c = sol.config
        eta = np.linspace(0.0, sol.lam, 10_000)
        worst = max(worst, float(np.max(np.abs(big_f(profile_y_gamma(sol, eta), c.delta, c.p)
                                               - big_g_gamma(eta, sol.lam, c.ste)))))
    verdict(3, worst <= 1e-10,
            f"{len(dsols)} Dirichlet + {len(rsols)} Robin configs, max |F(y)-G|={worst:.1e}")


def _oracle_subset(matrix):
    # 12 configs: every delta, every p except 5, Ste cycling through the three values
    configs = list(matrix)
    picks = []
    for i, (d, p) in enumerate(itertools.product(DELTAS, (0.0, 1.0, 2.5, 10.0))):
        s = STES[i % 3]
        cands = [c for c in configs if (c.delta, c.p, c.ste) == (d, p, s)]
        picks.append(cands[i % len(cands)])
    return picks


def test_criterion_4_oracle_equivalence():
    t0 = time.perf_counter()
    worst_lam = worst_prof = 0.0
    count = 0
    for boundary, matrix, solver in ((Boundary.DIRICHLET, dirichlet_matrix(), solve_lambda),
                                     (Boundary.ROBIN, robin_matrix(), solve_lambda_gamma)):
        for c in _oracle_subset(matrix):
            sol = solver(c)
            shot = shoot(c, boundary, steps=10_000, guess=sol.lam)
            etas = np.minimum(shot.profile.etas, sol.lam)
            worst_lam = max(worst_lam, abs(shot.lambda_shoot - sol.lam))
            worst_prof = max(worst_prof,
                             float(np.max(np.abs(shot.profile.values - sol.y(etas)))))
            count += 1
    elapsed = time.perf_counter() - t0
    ok = count == 24 and worst_lam <= 1e-6 and worst_prof <= 1e-6 and elapsed < 30.0
    verdict(4, ok, f"{count} shots, max |dlam|={worst_lam:.1e} profile={worst_prof:.1e} "
                   f"t={elapsed:.1f}s")


def test_criterion_5_residuals(solved):
    dsols, rsols = solved
    flux = stefan = conv = 0.0
    for sol in dsols + rsols:
        c = sol.config
        flux = max(flux, flux_constant_spread(sol.y, sol.lam, c.delta, c.p))
        stefan = max(stefan, stefan_residual(sol.y, sol.lam, c.ste, c.delta, c.p))
    for sol in rsols:
        conv = max(conv, convective_residual(sol) / sol.gamma)
    ok = flux <= 1e-4 and stefan <= 1e-4 and conv <= 1e-4
    verdict(5, ok, f"flux={flux:.1e} stefan={stefan:.1e} convective/gamma={conv:.1e}")


def test_criterion_6_range_and_monotone(solved):
    dsols, rsols = solved
    lo, hi, rise = np.inf, -np.inf, -np.inf
    for sol in dsols + rsols:
        y = sol.y(np.linspace(0.0, sol.lam, 10_000))
        lo, hi = min(lo, float(y.min())), max(hi, float(y.max()))
        rise = max(rise, float(np.max(np.diff(y))))
    ok = lo >= 0.0 and hi <= 1.0 and rise <= 0.0
    verdict(6, ok, f"min y={lo:.3e} max y-1={hi - 1:.1e} max rise={rise:.1e}")


def test_criterion_7_convergence():
    t0 = time.perf_counter()
    grid = [1.0, 25.0, 50.0, 100.0, 1e3, 1e6]
    rep = converge_study(DimensionlessConfig(ste=0.5, delta=5.0, p=1.0), grid)
    elapsed = time.perf_counter() - t0
    gaps = np.array(rep.pointwise_gaps)
    shrinking = bool(np.all(np.diff(gaps, axis=0) < 0))
    tail = rep.lambda_limit - rep.lambdas[-1]
    ok = rep.monotone and rep.bounded and tail <= 1e-5 and shrinking and elapsed < 5.0
    verdict(7, ok, f"monotone={rep.monotone} bounded={rep.bounded} "
                   f"lambda-lambda_1e6={tail:.2e} pointwise shrinking={shrinking} "
                   f"t={elapsed:.2f}s")


def _profile_csv(path):
    with open(path) as fh:
        rows = list(csv.reader(fh))[1:]
    return np.array(rows, dtype=float)


def _front_from_csv(arr):
    return float(arr[arr[:, 1] > 0, 0].max())


def test_criterion_8_figure_orderings(tmp_path):
    fronts = {}
    for cmd, name in (("dirichlet", "fig1_dirichlet.cfg"), ("robin", "fig3_robin.cfg")):
        out = tmp_path / cmd
        assert main([cmd, "--config", str(CONFIGS / name), "--out", str(out)]) == 0
        fronts[cmd] = [_front_from_csv(_profile_csv(out / f"profile_p{p}.csv"))
                       for p in (1, 5, 10)]
        assert (out / "profiles.svg").stat().st_size > 0
    ordered = all(f[0] > f[1] > f[2] for f in fronts.values())

    out = tmp_path / "converge"
    assert main(["converge", "--config", str(CONFIGS / "fig5_converge.cfg"),
                 "--out", str(out)]) == 0
    curves = [_profile_csv(out / f"profile_gamma{g}.csv")[:, 1] for g in (1, 25, 50, 100)]
    curves.append(_profile_csv(out / "profile_dirichlet.csv")[:, 1])
    rising = all(np.all(b >= a) for a, b in zip(curves, curves[1:]))
    verdict(8, ordered and rising,
            f"fronts dirichlet={np.round(fronts['dirichlet'], 6).tolist()} "
            f"robin={np.round(fronts['robin'], 6).tolist()} curves rise with gamma={rising}")


def test_criterion_9_determinism(tmp_path):
    blobs = []
    for d in ("a", "b"):
        out = tmp_path / d
        code = main(["validate", "--config", str(CONFIGS / "validate_fractional.cfg"),
                     "--out", str(out)])
        assert code == 0
        blobs.append((out / "scorecard.json").read_bytes())
    json.loads(blobs[0])
    verdict(9, blobs[0] == blobs[1], f"scorecard {len(blobs[0])} bytes, identical={blobs[0] == blobs[1]}")
