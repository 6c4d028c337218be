"""Command-line front end.

    stefanvar {dirichlet|robin|converge|validate} --config FILE --out DIR
              [--grid N] [--formats csv,json,svg] [--steps N]

Exit codes: 0 ok, 2 input error, 3 solver error, 4 validation failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import FrozenSet, List, Optional

import numpy as np

from . import oracle, report
from .asymptotics import converge_study
from .config import RunInput, load
from .dirichlet import big_f, big_g, sample_profile, solve_lambda, temperature_lattice
from .errors import StefanError, ValidationError
from .model import Boundary
from .robin import convective_residual, solve_lambda_gamma

log = logging.getLogger("stefanvar")

EXIT_OK, EXIT_INPUT, EXIT_SOLVER, EXIT_INVARIANT = 0, 2, 3, 4
FORMATS = frozenset({"csv", "json", "svg"})

# validate thresholds
LAMBDA_GAP = 1e-6
PROFILE_GAP = 1e-6
IDENTITY = 1e-10
FD_RELATIVE = 1e-4


@dataclass(frozen=True)
class RunManifest:
    subcommand: str
    input_path: Path
    output_dir: Path
    grid_points: int = 512
    formats: FrozenSet[str] = FORMATS
    steps: int = 10_000

    def __post_init__(self):
        if self.grid_points < 2:
            raise ValidationError("grid", "must be >= 2")
        if self.steps < 100:
            raise ValidationError("steps", "must be >= 100")
        bad = set(self.formats) - FORMATS
        if bad:
            raise ValidationError("formats", f"unknown format(s) {sorted(bad)}")


def _grid(run: RunInput, fronts: List[float], n: int) -> np.ndarray:
    top = run.eta_max if run.eta_max is not None else max(fronts)
    return np.linspace(0.0, top, n)


def _identity_gap(sol, n):
    c = sol.config
    etas = np.linspace(0.0, sol.lam, n)
    return float(np.max(np.abs(big_f(sol.y(etas), c.delta, c.p) - big_g(etas, sol.lam, c.ste))))


def _residuals(sol, n):
    c = sol.config
    return {
        "functional_identity": _identity_gap(sol, n),
        "stefan": oracle.stefan_residual(sol.y, sol.lam, c.ste, c.delta, c.p),
        "flux_constant": oracle.flux_constant_spread(sol.y, sol.lam, c.delta, c.p, nodes=n),
    }


def _solve_all(run: RunInput, boundary: Boundary):
    sols = []
    for p in run.ps:
        if boundary is Boundary.DIRICHLET:
            sols.append(solve_lambda(run.config(p)))
        else:
            sols.append(solve_lambda_gamma(run.config(p, run.gammas[0])))
    return sols


def _emit_profiles(m: RunManifest, run: RunInput, sols, boundary: Boundary, extra):
    out = m.output_dir
    etas = _grid(run, [s.lam for s in sols], m.grid_points)
    curves = []
    entries = []
    for sol in sols:
        c = sol.config
        prof = sample_profile(sol.y, sol.lam, etas)
        if "csv" in m.formats:
            report.write_csv(out / f"profile_p{report.tag(c.p)}.csv", ["eta", "y"],
                             [prof.etas, prof.values])
            if run.has_lattice:
                lat = temperature_lattice(sol.lam, c.diffusivity_a, sol.y, run.spec,
                                          run.x_points, run.t_points)
                report.write_lattice(out / f"temperature_p{report.tag(c.p)}.csv",
                                     run.x_points, run.t_points, lat)
        curves.append((f"p = {report.tag(c.p)}", sol.lam, prof.etas, prof.values))
        entry = {"p": c.p, "lambda": sol.lam}
        entry.update(extra(sol))
        entry["residuals"] = _residuals(sol, m.grid_points)
        entries.append(entry)
    if "json" in m.formats:
        payload = {"boundary": boundary.value, "ste": run.ste, "delta": run.delta,
                   "diffusivity_a": run.diffusivity_a}
        if boundary is Boundary.ROBIN:
            payload["gamma"] = run.gammas[0]
        payload["solutions"] = entries
        report.write_json(out / "summary.json", payload)
    if "svg" in m.formats:
        title = f"Ste = {run.ste:g}, δ = {run.delta:g}"
        if boundary is Boundary.ROBIN:
            title += f", γ = {run.gammas[0]:g}"
        report.plot_profiles(out / "profiles.svg", curves, title=title)


def run_dirichlet(m: RunManifest) -> int:
    run = load(m.input_path, Boundary.DIRICHLET)
    if run.gammas:
        log.warning("gamma is ignored for the prescribed-temperature problem")
    sols = _solve_all(run, Boundary.DIRICHLET)
    _emit_profiles(m, run, sols, Boundary.DIRICHLET, lambda s: {})
    return EXIT_OK


def run_robin(m: RunManifest) -> int:
    run = load(m.input_path, Boundary.ROBIN)
    if len(run.gammas) != 1:
        raise ValidationError("gamma", "robin takes a single value; use converge for a list")
    sols = _solve_all(run, Boundary.ROBIN)

    def extra(sol):
        return {"gamma": sol.gamma, "lambda0": sol.lambda0, "lambda_gamma": sol.lam_gamma,
                "surface_y0": sol.surface_y0,
                "convective_residual": convective_residual(sol)}

    _emit_profiles(m, run, sols, Boundary.ROBIN, extra)
    return EXIT_OK


def run_converge(m: RunManifest) -> int:
    run = load(m.input_path, Boundary.ROBIN)
    if len(run.ps) != 1:
        raise ValidationError("p", "converge takes a single exponent")
    base = run.config(run.ps[0])
    rep = converge_study(base, run.gammas, m.grid_points)
    out = m.output_dir
    dsol = solve_lambda(base)
    etas = _grid(run, [dsol.lam], m.grid_points)
    curves = []
    for g in run.gammas:
        sol = solve_lambda_gamma(base.with_gamma(g))
        prof = sample_profile(sol.y, sol.lam, etas)
        if "csv" in m.formats:
            report.write_csv(out / f"profile_gamma{report.tag(g)}.csv", ["eta", "y"],
                             [prof.etas, prof.values])
        curves.append((f"γ = {report.tag(g)}", sol.lam, prof.etas, prof.values))
    dprof = sample_profile(dsol.y, dsol.lam, etas)
    if "csv" in m.formats:
        report.write_csv(out / "profile_dirichlet.csv", ["eta", "y"], [dprof.etas, dprof.values])
    curves.append(("Dirichlet", dsol.lam, dprof.etas, dprof.values))
    if "json" in m.formats:
        payload = {"ste": run.ste, "delta": run.delta, "p": run.ps[0]}
        payload.update(rep.to_dict())
        report.write_json(out / "convergence.json", payload)
    if "svg" in m.formats:
        report.plot_profiles(out / "convergence.svg", curves,
                             title=f"p = {report.tag(run.ps[0])}, δ = {run.delta:g}")
    if not (rep.monotone and rep.bounded):
        log.error("convergence invariants violated: monotone=%s bounded=%s",
                  rep.monotone, rep.bounded)
        return EXIT_INVARIANT
    return EXIT_OK


def _check(value, threshold):
    return {"value": value, "threshold": threshold, "passed": bool(value <= threshold)}


def validate_case(config, boundary: Boundary, grid_points: int, steps: int) -> dict:
    """Functional solve, shooting oracle and residual battery for one config."""
    if boundary is Boundary.DIRICHLET:
        sol = solve_lambda(config)
    else:
        sol = solve_lambda_gamma(config)
    shot = oracle.shoot(config, boundary, steps=steps, guess=sol.lam)
    c = config
    shot_etas = np.minimum(shot.profile.etas, sol.lam)
    profile_gap = float(np.max(np.abs(shot.profile.values - sol.y(shot_etas))))
    etas = np.linspace(0.0, sol.lam, grid_points)
    ys = sol.y(etas)
    checks = {
        "lambda_gap": _check(abs(shot.lambda_shoot - sol.lam), LAMBDA_GAP),
        "profile_gap": _check(profile_gap, PROFILE_GAP),
        "functional_identity": _check(_identity_gap(sol, grid_points), IDENTITY),
        "ode_residual": _check(oracle.ode_residual(sol.y, sol.lam, c.delta, c.p), FD_RELATIVE),
        "flux_constant": _check(
            oracle.flux_constant_spread(sol.y, sol.lam, c.delta, c.p, nodes=grid_points),
            FD_RELATIVE),
        "stefan_residual": _check(oracle.stefan_residual(sol.y, sol.lam, c.ste, c.delta, c.p),
                                  FD_RELATIVE),
    }
    if boundary is Boundary.ROBIN:
        checks["convective_residual"] = _check(convective_residual(sol),
                                               FD_RELATIVE * c.gamma)
    range_ok = bool(np.all(ys >= 0.0) and np.all(ys <= 1.0) and np.all(np.diff(ys) <= 0.0))
    checks["range_monotone"] = {"value": float(range_ok), "threshold": 1.0, "passed": range_ok}
    case = {"p": c.p, "gamma": c.gamma, "lambda": sol.lam,
            "lambda_shoot": shot.lambda_shoot,
            "shoot_mismatch": shot.boundary_mismatch, "checks": checks}
    if case["gamma"] is None:
        del case["gamma"]
    return case


def run_validate(m: RunManifest) -> int:
    run = load(m.input_path)
    boundary = Boundary.ROBIN if run.gammas else Boundary.DIRICHLET
    cases = []
    for p in run.ps:
        for g in run.gammas or [None]:
            cases.append(validate_case(run.config(p, g), boundary, m.grid_points, m.steps))
    failed = [f"p={report.tag(case['p'])}"
              + (f",gamma={report.tag(case['gamma'])}" if "gamma" in case else "")
              + f":{name}"
              for case in cases for name, chk in case["checks"].items() if not chk["passed"]]
    payload = {"boundary": boundary.value, "ste": run.ste, "delta": run.delta,
               "steps": m.steps, "grid_points": m.grid_points,
               "passed": not failed, "failed": failed, "cases": cases}
    if "json" in m.formats:
        report.write_json(m.output_dir / "scorecard.json", payload)
    for item in failed:
        log.error("check failed: %s", item)
    return EXIT_OK if not failed else EXIT_INVARIANT


COMMANDS = {
    "dirichlet": run_dirichlet,
    "robin": run_robin,
    "converge": run_converge,
    "validate": run_validate,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="stefanvar",
        description="Similarity solutions of one-phase melting problems with "
                    "power-law temperature-dependent coefficients.")
    ap.add_argument("subcommand", choices=sorted(COMMANDS))
    ap.add_argument("--config", required=True, type=Path, help="key = value input file")
    ap.add_argument("--out", required=True, type=Path, help="output directory")
    ap.add_argument("--grid", type=int, default=512, help="eta grid nodes (default 512)")
    ap.add_argument("--formats", default="csv,json,svg",
                    help="comma separated subset of csv,json,svg")
    ap.add_argument("--steps", type=int, default=10_000,
                    help="RK4 steps for the shooting oracle (validate)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        formats = frozenset(s.strip() for s in args.formats.split(",") if s.strip())
        m = RunManifest(args.subcommand, args.config, args.out, args.grid, formats, args.steps)
        m.output_dir.mkdir(parents=True, exist_ok=True)
        return COMMANDS[m.subcommand](m)
    except ValidationError as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT
    except OSError as exc:
        log.error("input error: %s", exc)
        return EXIT_INPUT
    except StefanError as exc:
        log.error("solver error: %s", exc)
        return EXIT_SOLVER


if __name__ == "__main__":
    sys.exit(main())
