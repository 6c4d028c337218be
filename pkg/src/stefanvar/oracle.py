"""Independent check: integrate the similarity ODE directly.

With v = (1 + delta y**p) y' the ODE is the first-order system

    y' = v / (1 + delta y**p),    v' = -2 eta v,

and both y(lam) = 0 and v(lam) = -2 lam / Ste are known at the front, so a
backward RK4 sweep from eta = lam to 0 turns the boundary value problem into
a scalar root search in lam. Nothing here calls F^{-1} or the closed forms.

The module also holds the finite-difference probes (flux constancy, Stefan
and convective conditions) used by the validate scorecard.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .dirichlet import Profile
from .errors import BracketError, IntegrationError, StefanError
from .model import Boundary, DimensionlessConfig
from .rootfind import RootConfig, solve_bracketed

__all__ = [
    "ShootingResult",
    "integrate_backward",
    "shot_mismatch",
    "shoot",
    "derivative",
    "flux_constant_spread",
    "stefan_residual",
    "ode_residual",
]


@dataclass(frozen=True)
class ShootingResult:
    lambda_shoot: float
    profile: Profile
    boundary_mismatch: float
    steps: int


def integrate_backward(lambda_guess: float, config: DimensionlessConfig, steps: int = 10_000):
    """Classical RK4 from the front back to the face.

    Returns:
        (y0, yprime0, profile) where ``profile.etas`` ascends from 0 to
        ``lambda_guess``.

    Raises:
        ValueError: lambda_guess <= 0 or steps < 100.
        IntegrationError: the state stops being finite.
    """
    if not lambda_guess > 0:
        raise ValueError("lambda_guess must be > 0")
    if steps < 100:
        raise ValueError("steps must be >= 100")
    delta, p, ste = config.delta, config.p, config.ste
    lam = float(lambda_guess)
    h = -lam / steps

    def coeff(y):
        # clamp keeps fractional powers real if y dips below zero by rounding
        return 1.0 + delta * math.pow(y if y > 0.0 else 0.0, p)

    y, v = 0.0, -2.0 * lam / ste
    ys = np.empty(steps + 1)
    vs = np.empty(steps + 1)
    ys[0], vs[0] = y, v
    for i in range(steps):
        eta = lam + i * h
        k1y = v / coeff(y)
        k1v = -2.0 * eta * v
        e2 = eta + 0.5 * h
        y2, v2 = y + 0.5 * h * k1y, v + 0.5 * h * k1v
        k2y = v2 / coeff(y2)
        k2v = -2.0 * e2 * v2
        y3, v3 = y + 0.5 * h * k2y, v + 0.5 * h * k2v
        k3y = v3 / coeff(y3)
        k3v = -2.0 * e2 * v3
        e4 = eta + h
        y4, v4 = y + h * k3y, v + h * k3v
        k4y = v4 / coeff(y4)
        k4v = -2.0 * e4 * v4
        y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y)
        v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        if not (math.isfinite(y) and math.isfinite(v)):
            raise IntegrationError(f"non-finite state at eta={eta + h}")
        ys[i + 1], vs[i + 1] = y, v
    etas = lam - lam * np.arange(steps + 1) / steps
    etas[-1] = 0.0
    profile = Profile(etas=etas[::-1].copy(), values=ys[::-1].copy(), front=lam)
    return y, v / coeff(y), profile


def shot_mismatch(lam: float, config: DimensionlessConfig, boundary, steps: int) -> float:
    """Face mismatch of one backward shot.

    Dirichlet: y(0) - 1. Robin: (1 + delta y(0)**p) y'(0) - gamma (y(0) - 1).
    """
    y0, dy0, _ = integrate_backward(lam, config, steps)
    if Boundary(boundary) is Boundary.DIRICHLET:
        return y0 - 1.0
    flux = (1.0 + config.delta * max(y0, 0.0) ** config.p) * dy0
    return flux - config.require_gamma() * (y0 - 1.0)


def shoot(config: DimensionlessConfig, boundary=Boundary.DIRICHLET,
          cfg: RootConfig = RootConfig(), steps: int = 10_000,
          guess: Optional[float] = None) -> ShootingResult:
    """Find the front coefficient by root search on the shot mismatch.

    ``guess`` (typically the functional-formulation root) seeds a bracket of
    +-10 %, widened to +-50 %; without a guess, or when neither brackets,
    the search runs on [1e-6, 3].

    Raises:
        StefanError: no bracket found; the two methods disagree.
    """
    boundary = Boundary(boundary)

    def fn(lam):
        return shot_mismatch(lam, config, boundary, steps)

    brackets = []
    if guess is not None and guess > 0:
        brackets += [(0.9 * guess, 1.1 * guess), (0.5 * guess, 1.5 * guess)]
    brackets.append((1e-6, 3.0))
    report = None
    for lo, hi in brackets:
        try:
            report = solve_bracketed(fn, lo, hi, cfg)
            break
        except BracketError:
            continue
    if report is None:
        raise StefanError(f"shooting found no sign change for {config}")
    lam = report.root
    _, _, profile = integrate_backward(lam, config, steps)
    return ShootingResult(lambda_shoot=lam, profile=profile,
                          boundary_mismatch=abs(fn(lam)), steps=steps)


def derivative(yfun: Callable, etas, lam: float, h: float):
    """dy/deta on ``etas`` within [0, lam].

    Central differences inside, one-sided second-order stencils where a
    central stencil would leave [0, lam].
    """
    etas = np.asarray(etas, dtype=float)
    out = np.empty_like(etas)
    left = etas - h < 0
    right = etas + h > lam
    mid = ~(left | right)
    if np.any(mid):
        e = etas[mid]
        out[mid] = (yfun(e + h) - yfun(e - h)) / (2 * h)
    if np.any(left):
        e = etas[left]
        out[left] = (-3 * yfun(e) + 4 * yfun(e + h) - yfun(e + 2 * h)) / (2 * h)
    if np.any(right & ~left):
        sel = right & ~left
        e = etas[sel]
        out[sel] = (3 * yfun(e) - 4 * yfun(e - h) + yfun(e - 2 * h)) / (2 * h)
    return out


def _flux(yfun, etas, lam, delta, p, h):
    y = np.maximum(yfun(etas), 0.0)
    return (1.0 + delta * np.power(y, p)) * derivative(yfun, etas, lam, h) * np.exp(etas**2)


def flux_constant_spread(yfun: Callable, lam: float, delta: float, p: float,
                         nodes: int = 10_000, h: Optional[float] = None) -> float:
    """max |Q(eta) - Q(0)| / |Q(0)| for Q = (1 + delta y**p) y' exp(eta**2)."""
    if h is None:
        h = min(1e-6 * max(1.0, lam), 0.1 * lam)
    etas = np.linspace(0.0, lam, nodes)
    q = _flux(yfun, etas, lam, delta, p, h)
    return float(np.max(np.abs(q - q[0])) / abs(q[0]))


def stefan_residual(yfun: Callable, lam: float, ste: float, delta: float, p: float,
                    h: Optional[float] = None) -> float:
    """Relative gap in the front condition (1 + delta y**p) y' = -2 lam/Ste at eta = lam.

    For p > 0 the bracket is 1 at the front and this is y'(lam) = -2 lam/Ste.
    """
    if h is None:
        h = min(1e-6 * max(1.0, lam), 0.1 * lam)
    target = -2.0 * lam / ste
    q = _flux(yfun, np.array([lam]), lam, delta, p, h)[0] * math.exp(-lam * lam)
    return abs(q - target) / abs(target)


def ode_residual(yfun: Callable, lam: float, delta: float, p: float,
                 grid_points: int = 1000) -> float:
    """Non-constancy of (1 + delta y**p) y' exp(eta**2) on interior nodes.

    Returns max |Q(eta) - Q(lam/2)| / |Q(lam/2)| with central differences of
    step lam / (10 grid_points). Zero for an exact solution of the ODE.
    """
    h = lam / (10.0 * grid_points)
    etas = np.linspace(0.0, lam, grid_points)[1:-1]
    q = _flux(yfun, etas, lam, delta, p, h)
    qm = _flux(yfun, np.array([0.5 * lam]), lam, delta, p, h)[0]
    return float(np.max(np.abs(q - qm)) / abs(qm))
