"""Prescribed-temperature (Dirichlet) melting problem.

The similarity profile is recovered without integrating the ODE: with
F(x) = x + delta/(p+1) x**(p+1) and

    G(eta) = sqrt(pi)/Ste * lam exp(lam**2) (erf(lam) - erf(eta)),

the profile is y = F^{-1}(G), and the front coefficient lam is the root of
lam exp(lam**2) erf(lam) = Ste/sqrt(pi) (1 + delta/(p+1)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import DomainError
from .model import DimensionlessConfig, MaterialSpec
from .rootfind import FRONT_CONFIG, RootConfig, RootResult, expand_upward, solve_bracketed
from .specfun import erf, erf_diff, f_neumann

__all__ = [
    "DirichletSolution",
    "Profile",
    "g_constant",
    "solve_lambda",
    "big_f",
    "big_f_prime",
    "inv_f",
    "big_g",
    "profile_y",
    "closed_form_p1",
    "temperature",
    "front",
    "sample_profile",
]

SQRT_PI = math.sqrt(math.pi)
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class DirichletSolution:
    config: DimensionlessConfig
    lam: float
    g_target: float
    solve_report: RootResult

    def y(self, eta):
        return profile_y(self, eta)

    def temperature(self, spec: MaterialSpec, x, t):
        return temperature(self, spec, x, t)

    def front(self, t):
        return front(self, t)


@dataclass(frozen=True)
class Profile:
    """Sampled profile; nodes beyond the front carry y = 0 exactly."""

    etas: np.ndarray
    values: np.ndarray
    front: float


def g_constant(config: DimensionlessConfig) -> float:
    """Right-hand side Ste/sqrt(pi) (1 + delta/(p+1)) of the front equation."""
    return config.ste / SQRT_PI * (1.0 + config.kirchhoff_weight)


def solve_lambda(config: DimensionlessConfig, cfg: RootConfig = FRONT_CONFIG) -> DirichletSolution:
    """Front coefficient for the prescribed-temperature problem.

    Raises:
        OverflowGuardError: the root would lie past the exp(x**2) guard.
    """
    g = g_constant(config)

    def resid(x):
        return f_neumann(x) - g

    lo, hi = expand_upward(f_neumann, g, 0.0, cfg)
    # keep the argument tolerance meaningful for very small fronts
    tol = min(cfg.abs_tol, cfg.abs_tol * hi)
    report = solve_bracketed(resid, lo, hi, cfg.with_tol(tol))
    return DirichletSolution(config=config, lam=report.root, g_target=g,
                             solve_report=report)


def _check_nonneg(x, name="x"):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0):
        raise DomainError(f"{name} must be finite and >= 0, got {x!r}")
    return arr


def big_f(x, delta: float, p: float):
    """F(x) = x + delta/(p+1) x**(p+1); strictly increasing on [0, inf)."""
    arr = _check_nonneg(x)
    out = arr + delta / (p + 1.0) * np.power(arr, p + 1.0)
    return float(out) if np.ndim(x) == 0 else out


def big_f_prime(x, delta: float, p: float):
    arr = _check_nonneg(x)
    out = 1.0 + delta * np.power(arr, p)
    return float(out) if np.ndim(x) == 0 else out


def _inv_f_quadratic(z, delta):
    # positive root of delta/2 x^2 + x - z = 0, i.e. (sqrt(1 + 2 delta z) - 1)/delta,
    # written without the subtraction
    return 2.0 * z / (1.0 + np.sqrt(1.0 + 2.0 * delta * z))


def _inv_f_scalar(z: float, delta: float, p: float, cfg: Optional[RootConfig]) -> float:
    if cfg is None:
        cfg = RootConfig(abs_tol=4 * _EPS * max(1.0, z))
    hi = max(1.0, z)

    def resid(x):
        return big_f(x, delta, p) - z

    def dresid(x):
        return big_f_prime(x, delta, p)

    return solve_bracketed(resid, 0.0, hi, cfg, dfn=dresid).root


def _inv_f_array(z, delta, p):
    # F is convex on [0, inf), so Newton started above the root decreases
    # monotonically onto it; the bracket is kept as a guard against rounding.
    w = delta / (p + 1.0)
    hi = np.maximum(1.0, z)
    x = np.minimum(z, np.power((p + 1.0) * z / delta, 1.0 / (p + 1.0)))
    lo = np.zeros_like(z)
    active = z > 0
    x = np.where(active, x, 0.0)
    for _ in range(200):
        if not np.any(active):
            break
        xa = x[active]
        resid = xa + w * np.power(xa, p + 1.0) - z[active]
        slope = 1.0 + delta * np.power(xa, p)
        lo_a = np.where(resid < 0, np.maximum(lo[active], xa), lo[active])
        hi_a = np.where(resid > 0, np.minimum(hi[active], xa), hi[active])
        xn = xa - resid / slope
        bad = (xn < lo_a) | (xn > hi_a)
        xn = np.where(bad, 0.5 * (lo_a + hi_a), xn)
        done = (np.abs(xn - xa) <= 2 * _EPS * np.maximum(xa, _EPS)) | (resid == 0)
        lo[active], hi[active] = lo_a, hi_a
        x[active] = np.where(resid == 0, xa, xn)
        idx = np.flatnonzero(active)
        active[idx[done]] = False
    return x


def inv_f(z, delta: float, p: float, cfg: Optional[RootConfig] = None):
    """Unique x >= 0 with F(x) = z.

    delta == 0 returns ``z`` unchanged and p == 1 uses the quadratic formula.
    Otherwise scalars go through :func:`solve_bracketed` with Newton steps on
    ``[0, max(1, z)]``, and arrays through a vectorised safeguarded Newton
    iteration on the same bracket.

    Raises:
        DomainError: z < 0 or not finite.
    """
    arr = _check_nonneg(z, "z")
    if delta == 0.0:
        out = arr.copy()
    elif p == 1.0:
        out = _inv_f_quadratic(arr, delta)
    elif np.ndim(z) == 0:
        return _inv_f_scalar(float(arr), delta, p, cfg)
    else:
        flat = np.atleast_1d(arr).astype(float)
        out = _inv_f_array(flat.copy(), delta, p).reshape(arr.shape)
    return float(out) if np.ndim(z) == 0 else out


def _check_eta(eta, lam):
    arr = np.asarray(eta, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < 0) or np.any(arr > lam):
        raise DomainError(f"eta must lie in [0, {lam}], got {eta!r}")
    return arr


def big_g(eta, lam: float, ste: float):
    """G(eta) = sqrt(pi)/Ste lam exp(lam**2) (erf(lam) - erf(eta)) on [0, lam]."""
    arr = _check_eta(eta, lam)
    out = SQRT_PI / ste * lam * math.exp(lam * lam) * np.asarray(erf_diff(lam, arr))
    return float(out) if np.ndim(eta) == 0 else out


def profile_y(sol: DirichletSolution, eta):
    """y(eta) = F^{-1}(G(eta)) on [0, lam]; 1 at the face, 0 at the front."""
    c = sol.config
    y = inv_f(big_g(eta, sol.lam, c.ste), c.delta, c.p)
    # G(0) equals F(1) only up to the rounding left in lam; y <= 1 holds exactly
    return min(y, 1.0) if np.ndim(eta) == 0 else np.minimum(y, 1.0)


def closed_form_p1(eta, lam: float, delta: float):
    """Explicit p = 1 profile.

    y = (sqrt((1+delta)**2 - delta (2+delta) erf(eta)/erf(lam)) - 1) / delta,
    falling back to 1 - erf(eta)/erf(lam) when delta == 0.
    """
    arr = _check_eta(eta, lam)
    ratio = np.asarray(erf(arr)) / erf(lam)
    if delta == 0.0:
        out = 1.0 - ratio
    else:
        inner = (1.0 + delta) ** 2 - delta * (2.0 + delta) * ratio
        out = (np.sqrt(np.maximum(inner, 0.0)) - 1.0) / delta
    return float(out) if np.ndim(eta) == 0 else out


def _similarity(x, t, a):
    x = np.asarray(x, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any(t <= 0):
        raise DomainError("time must be > 0")
    if np.any(x < 0):
        raise DomainError("position must be >= 0")
    return x / (2.0 * a * np.sqrt(t))


def _temperature(yfun, lam, a, spec, x, t):
    eta = _similarity(x, t, a)
    # tolerate rounding at x == s(t)
    eta = np.where((eta > lam) & (eta <= lam * (1 + 4 * _EPS)), lam, eta)
    if np.any(eta > lam):
        raise DomainError("position lies beyond the phase front")
    out = (spec.T0 - spec.Tf) * np.asarray(yfun(eta)) + spec.Tf
    return float(out) if np.ndim(out) == 0 else out


def _front(lam, a, t):
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0) or not np.all(np.isfinite(tt)):
        raise DomainError(f"time must be finite and >= 0, got {t!r}")
    out = 2.0 * a * lam * np.sqrt(tt)
    return float(out) if np.ndim(t) == 0 else out


def temperature(sol: DirichletSolution, spec: MaterialSpec, x, t):
    """T(x, t) = (T0 - Tf) y(x / (2 a sqrt(t))) + Tf for 0 <= x <= s(t).

    The diffusivity is taken from ``sol.config``; ``spec`` supplies T0, Tf.

    Raises:
        DomainError: t <= 0, x < 0 or x > s(t).
    """
    return _temperature(lambda e: profile_y(sol, e), sol.lam,
                        sol.config.diffusivity_a, spec, x, t)


def front(sol: DirichletSolution, t):
    """s(t) = 2 a lam sqrt(t)."""
    return _front(sol.lam, sol.config.diffusivity_a, t)


def sample_profile(yfun, lam: float, etas) -> Profile:
    """Evaluate ``yfun`` on ``etas``, writing exact zeros past ``lam``."""
    etas = np.asarray(etas, dtype=float)
    values = np.zeros_like(etas)
    inside = etas <= lam
    if np.any(inside):
        values[inside] = yfun(etas[inside])
    return Profile(etas=etas, values=values, front=lam)


def temperature_lattice(sol_lam, a, yfun, spec, xs, ts):
    """T on the outer product ``ts x xs`` (rows are times), Tf past the front."""
    xs = np.asarray(xs, dtype=float)
    ts = np.asarray(ts, dtype=float)
    if np.any(ts <= 0):
        raise DomainError("lattice times must be > 0")
    X, Tt = np.meshgrid(xs, ts)
    eta = X / (2.0 * a * np.sqrt(Tt))
    out = np.full(eta.shape, float(spec.Tf))
    inside = eta <= sol_lam
    if np.any(inside):
        out[inside] = (spec.T0 - spec.Tf) * yfun(eta[inside]) + spec.Tf
    return out
