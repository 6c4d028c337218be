"""Flat ``key = value`` run configuration.

Lines are ``key = value``; ``#`` starts a comment; lists are comma
separated. A file is either dimensional (rho, c0, k0, latent, h, ...) or
dimensionless (ste, gamma, diffusivity_a, ...); keys from both families in
one file are rejected. ``delta``, ``p``, ``T0`` and ``Tf`` belong to both.

Lattice axes for temperature output accept ``x_points``/``t_points`` as
either explicit lists or ``start:stop:count`` ranges.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional

import numpy as np

from .errors import ValidationError
from .model import Boundary, DimensionlessConfig, MaterialSpec, reduce

__all__ = ["RunInput", "parse_text", "load", "ConfigError"]

log = logging.getLogger(__name__)

DIMENSIONAL_KEYS = {"rho", "c0", "k0", "latent", "h"}
DIMENSIONLESS_KEYS = {"ste", "gamma", "diffusivity_a", "a"}
SHARED_KEYS = {"delta", "p", "T0", "Tf"}
OUTPUT_KEYS = {"x_points", "t_points", "eta_max", "label"}
LIST_KEYS = {"p", "gamma"}


class ConfigError(ValidationError):
    pass


@dataclass
class RunInput:
    """Parsed configuration: one reduced config per requested exponent.

    ``gammas`` holds the raw gamma list (empty for Dirichlet runs).
    ``spec`` is a MaterialSpec able to map y back to temperatures; for
    dimensionless input it is synthesised with rho = c0 = 1, k0 = a**2 and
    latent = (T0 - Tf)/Ste, which reproduces the same Ste and a.
    """

    ste: float
    delta: float
    ps: List[float]
    gammas: List[float]
    diffusivity_a: float
    spec: Optional[MaterialSpec]
    dimensional: bool
    x_points: Optional[np.ndarray] = None
    t_points: Optional[np.ndarray] = None
    eta_max: Optional[float] = None
    raw: Dict[str, str] = field(default_factory=dict)

    def config(self, p: float, gamma: Optional[float] = None) -> DimensionlessConfig:
        return DimensionlessConfig(ste=self.ste, delta=self.delta, p=p, gamma=gamma,
                                   diffusivity_a=self.diffusivity_a)

    @property
    def has_lattice(self) -> bool:
        return self.x_points is not None and self.t_points is not None


def _number(key, text):
    try:
        return float(text)
    except ValueError:
        raise ConfigError(key, f"not a number: {text!r}") from None


def _numbers(key, text):
    items = [s.strip() for s in text.split(",") if s.strip()]
    return [_number(key, s) for s in items]


def _axis(key, text):
    text = text.strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ConfigError(key, "range must be start:stop:count")
        start, stop = _number(key, parts[0]), _number(key, parts[1])
        count = _number(key, parts[2])
        if count < 2 or count != int(count):
            raise ConfigError(key, "range count must be an integer >= 2")
        return np.linspace(start, stop, int(count))
    vals = _numbers(key, text)
    if not vals:
        raise ConfigError(key, "empty list")
    return np.array(vals)


def _split_lines(text: str) -> Dict[str, str]:
    out: Dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}", f"expected key = value, got {line!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key in out:
            raise ConfigError(key, "given twice")
        out[key] = value
    return out


def parse_text(text: str, boundary: Optional[Boundary] = None) -> RunInput:
    """Parse configuration text.

    Args:
        boundary: the subcommand's boundary type; ROBIN makes gamma (or h)
            mandatory. ``None`` leaves gamma optional.

    Raises:
        ConfigError: unknown or mixed keys, bad numbers, missing fields.
        ValidationError: a parameter violates its physical invariant.
    """
    raw = _split_lines(text)
    known = DIMENSIONAL_KEYS | DIMENSIONLESS_KEYS | SHARED_KEYS | OUTPUT_KEYS
    for key in raw:
        if key not in known:
            raise ConfigError(key, "unknown key")
    dim = DIMENSIONAL_KEYS & raw.keys()
    nondim = DIMENSIONLESS_KEYS & raw.keys()
    if dim and nondim:
        raise ConfigError(sorted(nondim)[0],
                          f"cannot mix dimensionless keys with dimensional {sorted(dim)}")
    for key in raw:
        if key not in LIST_KEYS | {"x_points", "t_points", "label"} and "," in raw[key]:
            raise ConfigError(key, "does not accept a list")

    delta = _number("delta", raw["delta"]) if "delta" in raw else 0.0
    ps = _numbers("p", raw["p"]) if "p" in raw else [1.0]
    if not ps:
        raise ConfigError("p", "empty list")
    T0 = _number("T0", raw["T0"]) if "T0" in raw else None
    Tf = _number("Tf", raw["Tf"]) if "Tf" in raw else None

    if dim:
        for key in ("rho", "c0", "k0", "latent", "T0", "Tf"):
            if key not in raw:
                raise ConfigError(key, "required for dimensional input")
        h = _number("h", raw["h"]) if "h" in raw else None
        spec = MaterialSpec(rho=_number("rho", raw["rho"]), c0=_number("c0", raw["c0"]),
                            k0=_number("k0", raw["k0"]),
                            latent=_number("latent", raw["latent"]),
                            T0=T0, Tf=Tf, delta=delta, p=ps[0], h=h)
        if boundary is Boundary.DIRICHLET and h is not None:
            log.warning("h is ignored for the prescribed-temperature problem")
        if boundary is Boundary.ROBIN and h is None:
            raise ConfigError("h", "required for the convective problem")
        red = reduce(spec, Boundary.ROBIN if h is not None else Boundary.DIRICHLET)
        ste, a = red.ste, red.diffusivity_a
        gammas = [red.gamma] if red.gamma is not None else []
    else:
        if "ste" not in raw:
            raise ConfigError("ste", "required for dimensionless input")
        ste = _number("ste", raw["ste"])
        if "a" in raw and "diffusivity_a" in raw:
            raise ConfigError("a", "give either a or diffusivity_a, not both")
        a_text = raw.get("diffusivity_a", raw.get("a"))
        a = _number("diffusivity_a", a_text) if a_text is not None else 1.0
        gammas = _numbers("gamma", raw["gamma"]) if "gamma" in raw else []
        if "gamma" in raw and not gammas:
            raise ConfigError("gamma", "empty list")
        if boundary is Boundary.ROBIN and not gammas:
            raise ConfigError("gamma", "required for the convective problem")
        spec = None
        if T0 is not None or Tf is not None:
            if T0 is None or Tf is None:
                raise ConfigError("T0" if T0 is None else "Tf", "T0 and Tf go together")
            # validate Ste, a before they feed the synthetic spec
            DimensionlessConfig(ste=ste, delta=delta, p=ps[0], diffusivity_a=a)
            spec = MaterialSpec(rho=1.0, c0=1.0, k0=a * a, latent=(T0 - Tf) / ste,
                                T0=T0, Tf=Tf, delta=delta, p=ps[0])

    for p in ps:
        for g in gammas or [None]:
            DimensionlessConfig(ste=ste, delta=delta, p=p, gamma=g, diffusivity_a=a)

    run = RunInput(ste=ste, delta=delta, ps=ps, gammas=gammas, diffusivity_a=a,
                   spec=spec, dimensional=bool(dim), raw=raw)
    if "x_points" in raw or "t_points" in raw:
        if "x_points" not in raw or "t_points" not in raw:
            raise ConfigError("x_points" if "x_points" not in raw else "t_points",
                              "lattice needs both x_points and t_points")
        if spec is None:
            raise ConfigError("T0", "temperature lattice needs T0 and Tf")
        run.x_points = _axis("x_points", raw["x_points"])
        run.t_points = _axis("t_points", raw["t_points"])
        if np.any(run.t_points <= 0):
            raise ConfigError("t_points", "times must be > 0")
        if np.any(run.x_points < 0):
            raise ConfigError("x_points", "positions must be >= 0")
    if "eta_max" in raw:
        run.eta_max = _number("eta_max", raw["eta_max"])
        if not run.eta_max > 0:
            raise ConfigError("eta_max", "must be > 0")
    return run


def load(path, boundary: Optional[Boundary] = None) -> RunInput:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror}") from None
    return parse_text(text, boundary)
