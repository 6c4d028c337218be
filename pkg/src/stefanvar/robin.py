"""Convective (Robin) fixed-face melting problem.

Flux at the face is gamma (y(0) - 1) with gamma = 2 h a / k0. The surface
value is tied to the front coefficient through

    beta(x) = 1 - 2 x exp(x**2) / (gamma Ste),

and the front coefficient solves F(beta(x)) = sqrt(pi)/Ste * f(x) on
(0, lambda0), where lambda0 is the zero of beta. The profile is again
F^{-1} of the same G used for the Dirichlet problem, now anchored at the
convective front coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dirichlet import (
    DirichletSolution,
    _front,
    _temperature,
    big_f,
    big_g,
    inv_f,
)
from .errors import BracketError, DomainError
from .model import DimensionlessConfig, MaterialSpec
from .rootfind import FRONT_CONFIG, RootConfig, RootResult, expand_upward, solve_bracketed
from .specfun import f_neumann, growth

__all__ = [
    "RobinSolution",
    "beta",
    "lambda0",
    "solve_lambda_gamma",
    "front_residual",
    "big_g_gamma",
    "profile_y_gamma",
    "convective_residual",
    "temperature_gamma",
    "front_gamma",
]

SQRT_PI = math.sqrt(math.pi)


@dataclass(frozen=True)
class RobinSolution:
    config: DimensionlessConfig
    lam_gamma: float
    lambda0: float
    surface_y0: float
    solve_report: RootResult

    @property
    def gamma(self) -> float:
        return self.config.require_gamma()

    # same attribute name as DirichletSolution so profile helpers can share code
    @property
    def lam(self) -> float:
        return self.lam_gamma

    def y(self, eta):
        return profile_y_gamma(self, eta)

    def temperature(self, spec: MaterialSpec, x, t):
        return temperature_gamma(self, spec, x, t)

    def front(self, t):
        return front_gamma(self, t)


def beta(x, gamma: float, ste: float):
    """Surface value implied by a front coefficient: 1 - 2 x e^{x^2}/(gamma Ste).

    Raises:
        DomainError: x beyond lambda0, where the value turns negative.
    """
    val = 1.0 - 2.0 * np.asarray(growth(x)) / (gamma * ste)
    if np.any(val < -1e-12):
        raise DomainError(f"x={x!r} lies beyond lambda0 (beta < 0)")
    val = np.maximum(val, 0.0)
    return float(val) if np.ndim(x) == 0 else val


def lambda0(gamma: float, ste: float, cfg: RootConfig = FRONT_CONFIG) -> float:
    """Zero of beta, i.e. the x > 0 with x exp(x**2) = gamma Ste / 2."""
    target = 0.5 * gamma * ste
    lo, hi = expand_upward(growth, target, 0.0, cfg)
    tol = min(cfg.abs_tol, cfg.abs_tol * hi)
    return solve_bracketed(lambda x: growth(x) - target, lo, hi, cfg.with_tol(tol)).root


def front_residual(x: float, config: DimensionlessConfig) -> float:
    """F(beta(x)) - sqrt(pi)/Ste f(x); positive at 0, negative at lambda0."""
    gamma = config.require_gamma()
    b = max(1.0 - 2.0 * growth(x) / (gamma * config.ste), 0.0)
    return big_f(b, config.delta, config.p) - SQRT_PI / config.ste * f_neumann(x)


def solve_lambda_gamma(config: DimensionlessConfig,
                       cfg: RootConfig = FRONT_CONFIG) -> RobinSolution:
    """Front coefficient for the convective problem, strictly inside (0, lambda0)."""
    gamma = config.require_gamma()
    lam0 = lambda0(gamma, config.ste, cfg)
    tol = min(cfg.abs_tol, cfg.abs_tol * lam0)
    eps = 1e-15 * lam0

    def resid(x):
        return front_residual(x, config)

    try:
        report = solve_bracketed(resid, eps, lam0 - eps, cfg.with_tol(tol))
    except BracketError:
        report = solve_bracketed(resid, 0.0, lam0, cfg.with_tol(tol))
    lam = report.root
    return RobinSolution(config=config, lam_gamma=lam, lambda0=lam0,
                         surface_y0=beta(lam, gamma, config.ste),
                         solve_report=report)


def big_g_gamma(eta, lam_gamma: float, ste: float):
    """G anchored at the convective front coefficient; zero at eta = lam_gamma."""
    return big_g(eta, lam_gamma, ste)


def profile_y_gamma(sol: RobinSolution, eta):
    """y_gamma(eta) = F^{-1}(G_gamma(eta)) on [0, lam_gamma]."""
    c = sol.config
    return inv_f(big_g_gamma(eta, sol.lam_gamma, c.ste), c.delta, c.p)


def default_step(lam: float) -> float:
    """Finite-difference step: 1e-6 max(1, lam), capped at lam/10 for tiny fronts."""
    return min(1e-6 * max(1.0, lam), 0.1 * lam)


def convective_residual(sol: RobinSolution, grid_h: Optional[float] = None) -> float:
    """|(1 + delta y(0)**p) y'(0) - gamma (y(0) - 1)| with a one-sided O(h^2) y'(0)."""
    h = default_step(sol.lam_gamma) if grid_h is None else grid_h
    c = sol.config
    y0, y1, y2 = profile_y_gamma(sol, np.array([0.0, h, 2 * h]))
    dy0 = (-3.0 * y0 + 4.0 * y1 - y2) / (2.0 * h)
    flux = (1.0 + c.delta * y0**c.p) * dy0
    return abs(flux - c.require_gamma() * (y0 - 1.0))


def temperature_gamma(sol: RobinSolution, spec: MaterialSpec, x, t):
    """T_gamma(x, t) on 0 <= x <= s_gamma(t); contract as dirichlet.temperature."""
    return _temperature(lambda e: profile_y_gamma(sol, e), sol.lam_gamma,
                        sol.config.diffusivity_a, spec, x, t)


def front_gamma(sol: RobinSolution, t):
    return _front(sol.lam_gamma, sol.config.diffusivity_a, t)
