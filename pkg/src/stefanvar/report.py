"""Deterministic CSV/JSON writers and SVG profile figures.

Floats are written with ``repr`` (shortest round-trip decimal), line endings
are LF, and figures are rendered with matplotlib's SVG backend using a fixed
hash salt and no date stamp so reruns produce identical files.
"""

from __future__ import annotations

import csv
import json
import math
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

__all__ = ["fmt", "tag", "write_csv", "write_json", "write_lattice", "plot_profiles"]

SVG_SIZE_PT = (800, 600)


def fmt(value) -> str:
    v = float(value)
    if not math.isfinite(v):
        raise ValueError(f"refusing to write non-finite value {v}")
    return repr(v)


def tag(value) -> str:
    """Short file-name token for a parameter value (2.5 -> '2.5', 50.0 -> '50')."""
    v = float(value)
    return str(int(v)) if v.is_integer() and abs(v) < 1e15 else repr(v)


def write_csv(path: Path, header: Sequence[str], columns: Sequence[Iterable]) -> Path:
    rows = zip(*[list(c) for c in columns])
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])
    return path


def write_lattice(path: Path, xs, ts, values) -> Path:
    """Temperature lattice: one row per time, first column t, then one column per x."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["t\\x"] + [fmt(x) for x in xs])
        for t, row in zip(ts, values):
            w.writerow([fmt(t)] + [fmt(v) for v in row])
    return path


def _clean(obj):
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (np.floating, float)):
        v = float(obj)
        if not math.isfinite(v):
            raise ValueError("refusing to write non-finite value to JSON")
        return v
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(path: Path, payload: dict) -> Path:
    text = json.dumps(_clean(payload), indent=2, allow_nan=False)
    Path(path).write_text(text + "\n")
    return path


def plot_profiles(path: Path, curves: List[Tuple[str, float, np.ndarray, np.ndarray]],
                  title: str = "", ylabel: str = "y") -> Path:
    """Overlay of zero-extended profiles.

    Args:
        curves: (label, front coefficient, etas, values); the legend shows
            the label together with its front coefficient.
    """
    plt.rcParams["svg.hashsalt"] = "stefanvar"
    fig, ax = plt.subplots(figsize=(SVG_SIZE_PT[0] / 72, SVG_SIZE_PT[1] / 72))
    for label, lam, etas, values in curves:
        ax.plot(etas, values, lw=1.6, label=f"{label}  (λ = {lam:.6f})")
    ax.set_xlabel("η")
    ax.set_ylabel(ylabel)
    ax.set_ylim(-0.02, 1.05)
    ax.set_xlim(left=0.0)
    if title:
        ax.set_title(title)
    ax.grid(alpha=0.3)
    ax.legend(loc="upper right", frameon=False)
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return path
