"""Bracketed scalar root finding for monotone functions.

The solver is bisection safeguarded by secant (or Newton, if a derivative is
given) steps. An interpolated point is only taken when it falls strictly
inside the current bracket and the previous step at least halved the
bracket; otherwise the midpoint is used. Tolerance is on the argument.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Tuple

from .errors import BracketError, ConvergenceError, OverflowGuardError
from .specfun import EXP_SQUARE_GUARD

__all__ = ["RootConfig", "RootResult", "solve_bracketed", "expand_upward", "FRONT_CONFIG"]


@dataclass(frozen=True)
class RootConfig:
    abs_tol: float = 1e-12
    max_iter: int = 200
    bracket_growth: float = 2.0

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be > 0")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not self.bracket_growth > 1:
            raise ValueError("bracket_growth must be > 1")

    def with_tol(self, abs_tol: float) -> "RootConfig":
        return RootConfig(abs_tol, self.max_iter, self.bracket_growth)


# front coefficients feed every profile value; solve them close to rounding
FRONT_CONFIG = RootConfig(abs_tol=1e-14)


@dataclass(frozen=True)
class RootResult:
    root: float
    residual: float
    iterations: int
    bracket: Tuple[float, float]


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def solve_bracketed(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    cfg: RootConfig = RootConfig(),
    dfn: Optional[Callable[[float], float]] = None,
) -> RootResult:
    """Locate the zero of ``fn`` inside ``[lo, hi]``.

    Args:
        fn: continuous function with ``fn(lo) * fn(hi) <= 0``.
        lo, hi: bracket end points (swapped if given in reverse).
        cfg: tolerance and iteration budget.
        dfn: optional derivative; enables Newton steps in place of secant.

    Returns:
        RootResult whose bracket satisfies ``hi - lo <= 2 * cfg.abs_tol``
        (or is a single point when ``fn`` vanishes exactly).

    Raises:
        BracketError: no sign change between the end points.
        ConvergenceError: ``cfg.max_iter`` exhausted; carries the last bracket.
    """
    lo, hi = float(lo), float(hi)
    if lo > hi:
        lo, hi = hi, lo
    flo, fhi = fn(lo), fn(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise BracketError(f"non-finite end values f({lo})={flo}, f({hi})={fhi}")
    if flo == 0.0:
        return RootResult(lo, 0.0, 0, (lo, lo))
    if fhi == 0.0:
        return RootResult(hi, 0.0, 0, (hi, hi))
    if _sign(flo) == _sign(fhi):
        raise BracketError(
            f"no sign change on [{lo}, {hi}]: f(lo)={flo}, f(hi)={fhi}"
        )

    tol = cfg.abs_tol
    slo = _sign(flo)
    # last two iterates for the secant / current point for Newton
    xa, fa = lo, flo
    xb, fb = hi, fhi
    if abs(fa) < abs(fb):
        xa, fa, xb, fb = xb, fb, xa, fa
    bisect_next = False

    for it in range(1, cfg.max_iter + 1):
        width = hi - lo
        if width <= 2.0 * tol:
            return _finish(fn, lo, hi, it - 1)
        mid = lo + 0.5 * width
        cand = None
        if not bisect_next:
            if dfn is not None:
                d = dfn(xb)
                if d != 0.0 and math.isfinite(d):
                    cand = xb - fb / d
            elif fb != fa:
                cand = xb - fb * (xb - xa) / (fb - fa)
        interpolated = cand is not None and lo < cand < hi
        x = cand if interpolated else mid
        if x <= lo or x >= hi:
            # bracket is down to adjacent doubles
            return _finish(fn, lo, hi, it - 1)

        fx = fn(x)
        if fx == 0.0:
            return RootResult(x, 0.0, it, (x, x))
        if _sign(fx) == slo:
            lo = x
        else:
            hi = x

        if interpolated and abs(x - xb) <= tol:
            # interpolation has stalled against one side: probe a tol-step
            # toward the far end to close the bracket in one go
            probe = x + tol if hi > x else x - tol
            if lo < probe < hi:
                fp = fn(probe)
                if fp == 0.0:
                    return RootResult(probe, 0.0, it, (probe, probe))
                if _sign(fp) == slo:
                    lo = probe
                else:
                    hi = probe

        bisect_next = (hi - lo) > 0.5 * width
        xa, fa, xb, fb = xb, fb, x, fx

    raise ConvergenceError(
        f"no convergence in {cfg.max_iter} iterations; last bracket [{lo}, {hi}]",
        bracket=(lo, hi),
    )


def _finish(fn, lo, hi, iterations):
    root = lo + 0.5 * (hi - lo)
    return RootResult(root, fn(root), iterations, (lo, hi))


def expand_upward(
    fn: Callable[[float], float],
    target: float,
    lo: float,
    cfg: RootConfig = RootConfig(),
    ceiling: float = EXP_SQUARE_GUARD,
) -> Tuple[float, float]:
    """Grow ``hi`` geometrically from ``lo`` until ``fn(hi) >= target``.

    ``hi = lo * growth**k``, or ``growth**k`` when ``lo == 0``. The last
    ``hi`` that still fell short becomes the returned ``lo``.

    Raises:
        OverflowGuardError: ``hi`` would pass ``ceiling`` (the exp(x**2)
            overflow guard by default) without reaching ``target``.
        BracketError: ``fn(lo) > target`` to begin with.
    """
    lo = float(lo)
    if fn(lo) > target:
        raise BracketError(f"fn({lo}) already exceeds target {target}")
    g = cfg.bracket_growth
    hi = lo * g if lo > 0 else 1.0
    # below 1 a zero start still has to reach small targets, so shrink first
    if lo == 0.0:
        while hi > 1e-300 and fn(hi / g) >= target:
            hi /= g
    while True:
        if hi > ceiling:
            if fn(ceiling) >= target:
                return lo, ceiling
            raise OverflowGuardError(
                f"target {target} not reached below the guard {ceiling}"
            )
        if fn(hi) >= target:
            return lo, hi
        lo = hi
        hi *= g
