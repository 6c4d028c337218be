"""Physical parameters, power-law coefficients and dimensionless reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass, fields
from enum import Enum
from typing import Optional

import numpy as np

from .errors import DomainError, ValidationError

__all__ = [
    "Boundary",
    "MaterialSpec",
    "DimensionlessConfig",
    "reduce",
    "conductivity",
    "heat_capacity",
    "power",
]


class Boundary(str, Enum):
    DIRICHLET = "dirichlet"
    ROBIN = "robin"


def power(u, p):
    """``u**p`` for ``u >= 0`` with the convention ``0**0 == 1``."""
    return np.power(u, p)


def _positive(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
        raise ValidationError(name, f"must be a finite number > 0, got {value!r}")


def _nonnegative(name, value):
    if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
        raise ValidationError(name, f"must be a finite number >= 0, got {value!r}")


@dataclass(frozen=True)
class MaterialSpec:
    """Dimensional description of the melting slab.

    ``h`` is only read for the convective problem and may be left ``None``
    otherwise.
    """

    rho: float
    c0: float
    k0: float
    latent: float
    T0: float
    Tf: float
    delta: float = 0.0
    p: float = 1.0
    h: Optional[float] = None

    def __post_init__(self):
        for name in ("rho", "c0", "k0", "latent"):
            _positive(name, getattr(self, name))
        for name in ("T0", "Tf"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v)):
                raise ValidationError(name, f"must be finite, got {v!r}")
        if not self.T0 > self.Tf:
            raise ValidationError("T0", f"must exceed Tf ({self.T0} <= {self.Tf})")
        _nonnegative("delta", self.delta)
        _nonnegative("p", self.p)
        if self.h is not None:
            _positive("h", self.h)

    @property
    def diffusivity(self) -> float:
        """Square root of k0 / (rho c0), the length per sqrt(time) scale."""
        return math.sqrt(self.k0 / (self.rho * self.c0))

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]


@dataclass(frozen=True)
class DimensionlessConfig:
    """Reduced parameters consumed by every solver.

    Attributes:
        ste: Stefan number c0 (T0 - Tf) / l.
        delta: coefficient amplitude.
        p: coefficient exponent.
        gamma: twice the generalized Biot number; ``None`` for Dirichlet.
        diffusivity_a: sqrt(k0 / (rho c0)); only used to map back to (x, t).
    """

    ste: float
    delta: float = 0.0
    p: float = 1.0
    gamma: Optional[float] = None
    diffusivity_a: float = 1.0

    def __post_init__(self):
        _positive("ste", self.ste)
        _nonnegative("delta", self.delta)
        _nonnegative("p", self.p)
        _positive("diffusivity_a", self.diffusivity_a)
        if self.gamma is not None:
            _positive("gamma", self.gamma)

    @property
    def kirchhoff_weight(self) -> float:
        """delta / (p + 1), the coefficient of the power term in F."""
        return self.delta / (self.p + 1.0)

    def with_gamma(self, gamma: Optional[float]) -> "DimensionlessConfig":
        return DimensionlessConfig(self.ste, self.delta, self.p, gamma, self.diffusivity_a)

    def require_gamma(self) -> float:
        if self.gamma is None:
            raise ValidationError("gamma", "required for the convective problem")
        return self.gamma


def reduce(spec: MaterialSpec, boundary=Boundary.DIRICHLET) -> DimensionlessConfig:
    """Collapse a MaterialSpec to (Ste, delta, p, gamma, a).

    ``gamma = 2 h a / k0`` is filled in only for the Robin boundary.

    Raises:
        ValidationError: Robin requested without ``h``.
    """
    boundary = Boundary(boundary)
    ste = spec.c0 * (spec.T0 - spec.Tf) / spec.latent
    a = spec.diffusivity
    gamma = None
    if boundary is Boundary.ROBIN:
        if spec.h is None:
            raise ValidationError("h", "required for the convective problem")
        gamma = 2.0 * spec.h * a / spec.k0
    return DimensionlessConfig(ste=ste, delta=spec.delta, p=spec.p, gamma=gamma,
                               diffusivity_a=a)


def _scaled_temperature(spec: MaterialSpec, T):
    arr = np.asarray(T, dtype=float)
    if np.any(arr < spec.Tf) or np.any(arr > spec.T0) or not np.all(np.isfinite(arr)):
        raise DomainError(f"temperature outside [{spec.Tf}, {spec.T0}]: {T!r}")
    return (arr - spec.Tf) / (spec.T0 - spec.Tf)


def _bracket(spec: MaterialSpec, T):
    u = _scaled_temperature(spec, T)
    out = 1.0 + spec.delta * power(u, spec.p)
    return float(out) if np.ndim(T) == 0 else out


def conductivity(spec: MaterialSpec, T):
    """k(T) = k0 (1 + delta u**p), u = (T - Tf)/(T0 - Tf), on [Tf, T0]."""
    return spec.k0 * _bracket(spec, T)


def heat_capacity(spec: MaterialSpec, T):
    """c(T) = c0 (1 + delta u**p) on [Tf, T0]."""
    return spec.c0 * _bracket(spec, T)
