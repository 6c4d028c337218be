"""Convergence of the convective solution onto the Dirichlet one as gamma grows."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from .dirichlet import sample_profile, solve_lambda
from .errors import StefanError
from .model import DimensionlessConfig
from .robin import RobinSolution, solve_lambda_gamma
from .rootfind import FRONT_CONFIG, RootConfig

__all__ = ["ConvergenceReport", "converge_study", "PROBE_FRACTIONS"]

# fixed fractions of the Dirichlet front at which pointwise gaps are tracked
PROBE_FRACTIONS = (0.0, 0.25, 0.5, 0.75)


@dataclass
class ConvergenceReport:
    gamma_grid: List[float]
    lambdas: List[float]
    lambda_limit: float
    sup_errors: List[float]
    monotone: bool
    bounded: bool
    probe_etas: List[float] = field(default_factory=list)
    pointwise_gaps: List[List[float]] = field(default_factory=list)
    surface_values: List[float] = field(default_factory=list)

    @property
    def lambda_gaps(self) -> List[float]:
        return [self.lambda_limit - lam for lam in self.lambdas]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["lambda_gaps"] = self.lambda_gaps
        return out


def _solve_one(config: DimensionlessConfig, gamma: float, cfg: RootConfig) -> RobinSolution:
    try:
        return solve_lambda_gamma(config.with_gamma(gamma), cfg)
    except StefanError as exc:
        raise type(exc)(f"gamma={gamma}: {exc}") from exc


def converge_study(config: DimensionlessConfig, gamma_grid: Sequence[float],
                   eta_samples: int = 512, cfg: RootConfig = FRONT_CONFIG,
                   workers: Optional[int] = None) -> ConvergenceReport:
    """Solve the Dirichlet problem once and the convective one per gamma.

    Profiles are compared on ``eta_samples`` uniform points of [0, lam] with
    each convective profile zero-extended past its own front.

    Args:
        config: reduced parameters; any gamma on it is ignored.
        gamma_grid: strictly ascending, all > 0.
        eta_samples: >= 2.
        workers: thread count for the per-gamma solves; results are
            assembled in grid order regardless.

    Raises:
        ValueError: bad grid or sample count.
    """
    grid = [float(g) for g in gamma_grid]
    if not grid:
        raise ValueError("gamma_grid must not be empty")
    if any(g <= 0 for g in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("gamma_grid must be strictly ascending and positive")
    if eta_samples < 2:
        raise ValueError("eta_samples must be >= 2")

    base = config.with_gamma(None)
    dsol = solve_lambda(base, cfg)
    lam = dsol.lam
    etas = np.linspace(0.0, lam, eta_samples)
    y_ref = dsol.y(etas)
    probes = np.array([f * lam for f in PROBE_FRACTIONS])
    y_probe = dsol.y(probes)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            sols = list(pool.map(lambda g: _solve_one(base, g, cfg), grid))
    else:
        sols = [_solve_one(base, g, cfg) for g in grid]

    lambdas, sup_errors, gaps, surface = [], [], [], []
    for sol in sols:
        lambdas.append(sol.lam_gamma)
        y_g = sample_profile(sol.y, sol.lam_gamma, etas).values
        sup_errors.append(float(np.max(np.abs(y_g - y_ref))))
        y_gp = sample_profile(sol.y, sol.lam_gamma, probes).values
        gaps.append([float(v) for v in np.abs(y_gp - y_probe)])
        surface.append(sol.surface_y0)

    monotone = all(b > a for a, b in zip(lambdas, lambdas[1:]))
    bounded = all(v < lam for v in lambdas)
    return ConvergenceReport(
        gamma_grid=grid,
        lambdas=lambdas,
        lambda_limit=lam,
        sup_errors=sup_errors,
        monotone=monotone,
        bounded=bounded,
        probe_etas=[float(e) for e in probes],
        pointwise_gaps=gaps,
        surface_values=surface,
    )
