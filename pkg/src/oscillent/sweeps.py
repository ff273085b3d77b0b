"""
Parameter sweeps behind the figure reproductions, and their serialisation.

Every sweep returns a :class:`SweepTable` whose rows follow grid order no
matter how many worker threads evaluated it; ``emit`` then writes CSV, JSON
or an SVG line plot.
"""

from __future__ import annotations

import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

import numpy as np

from . import __version__
from .dynamics import PhaseMode, entropy_timeseries
from .errors import EmptyGrid, GridOutOfRange, IoFailure
from .model import OscillatorParams, mixing_angle, validate_params
from .schmidt import DEFAULT_MAX_LEVEL, ModePair, schmidt_spectrum, schmidt_number, von_neumann_entropy

__all__ = [
    "SweepTable",
    "worker_count",
    "sweep_theta",
    "sweep_coupling",
    "sweep_dynamics",
    "emit",
    "to_csv",
    "to_json",
    "THREADS_ENV",
]

THREADS_ENV = "OSCILLENT_THREADS"
SIGNIFICANT_DIGITS = 12


@dataclass(frozen=True)
class SweepTable:
    kind: str
    columns: tuple[str, ...]
    data: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("theta_sweep", "coupling_sweep", "dynamics"):
            raise ValueError(f"unknown table kind {self.kind!r}")
        if self.data.ndim != 2 or self.data.shape[1] != len(self.columns):
            raise ValueError("data shape does not match columns")
        if not np.all(np.isfinite(self.data)):
            raise ValueError("table contains missing or non-finite cells")

    def __len__(self) -> int:
        return self.data.shape[0]

    @property
    def rows(self) -> list[tuple[float, ...]]:
        return [tuple(float(v) for v in row) for row in self.data]

    def column(self, name: str) -> np.ndarray:
        return self.data[:, self.columns.index(name)]


def worker_count() -> int:
    """Worker cap from $OSCILLENT_THREADS, defaulting to the CPU count."""
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ValueError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def _ordered_map(func: Callable, items: Sequence, workers: int | None) -> list:
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) < 2:
        return [func(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


def _check_grid(grid: Iterable[float], *, lo: float, hi: float, name: str) -> np.ndarray:
    g = np.asarray(list(grid), dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise EmptyGrid(f"{name} grid is empty")
    if g.size < 2:
        raise GridOutOfRange(f"{name} grid needs at least 2 points")
    if not (np.all(np.diff(g) > 0) or np.all(np.diff(g) < 0)):
        raise GridOutOfRange(f"{name} grid must be strictly monotone")
    if np.any(g <= lo) or np.any(g >= hi):
        raise GridOutOfRange(f"{name} grid must lie inside ({lo}, {hi})")
    return g


def _pair_label(pair: ModePair) -> str:
    return f"{pair.n}_{pair.m}"


def sweep_theta(
    pairs: Sequence[tuple[int, int]],
    grid: Iterable[float],
    *,
    workers: int | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> SweepTable:
    """S_v and K against sin(theta) for each mode pair."""
    pairs = [ModePair(*p) for p in pairs]
    if not pairs:
        raise ValueError("at least one (n, m) pair is required")
    for p in pairs:
        if p.n < 0 or p.m < 0 or p.n + p.m > max_level:
            raise ValueError(f"invalid pair {tuple(p)} for max level {max_level}")
    g = _check_grid(grid, lo=-1.0, hi=1.0, name="sin_theta")

    def row(s: float) -> list[float]:
        out = [s]
        for p in pairs:
            spec = schmidt_spectrum(p, s, max_level=max_level)
            out += [von_neumann_entropy(spec), schmidt_number(spec)]
        return out

    columns = ["sin_theta"]
    for p in pairs:
        columns += [f"S_v_{_pair_label(p)}", f"K_{_pair_label(p)}"]
    data = np.array(_ordered_map(row, list(g), workers))
    meta = {
        "pairs": [list(p) for p in pairs],
        "grid": {"min": float(g[0]), "max": float(g[-1]), "steps": int(g.size)},
        "input": "sin_theta",
        "version": __version__,
    }
    return SweepTable("theta_sweep", tuple(columns), data, meta)


def sweep_coupling(
    pair: tuple[int, int],
    R: float,
    r_grid: Iterable[float],
    *,
    exact_angle: bool = False,
    workers: int | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> SweepTable:
    """S_v and K against r = wc / w2 at fixed anisotropy R (with w2 = 1)."""
    pair = ModePair(*pair)
    if R <= 0:
        raise ValueError("R must be positive")
    g = _check_grid(r_grid, lo=0.0, hi=1.0, name="r")
    omega1 = math.sqrt(R)
    for r in (g.min(), g.max()):
        validate_params(omega1, 1.0, float(r))

    def row(r: float) -> list[float]:
        s = math.sin(mixing_angle(R, r, exact=exact_angle))
        spec = schmidt_spectrum(pair, s, max_level=max_level)
        return [r, s, von_neumann_entropy(spec), schmidt_number(spec)]

    data = np.array(_ordered_map(row, list(g), workers))
    meta = {
        "pairs": [list(pair)],
        "R": R,
        "r_grid": {"min": float(g[0]), "max": float(g[-1]), "steps": int(g.size)},
        "mixing_angle": "exact" if exact_angle else "standard",
        "version": __version__,
    }
    return SweepTable("coupling_sweep", ("r", "sin_theta", "S_v", "K"), data, meta)


def sweep_dynamics(
    initial: tuple[int, int],
    sin_theta_values: Sequence[float],
    t_grid: Iterable[float],
    *,
    include_lambdas: bool = False,
    phase_mode: PhaseMode = "approx",
    params: OscillatorParams | None = None,
    workers: int | None = None,
    max_level: int = DEFAULT_MAX_LEVEL,
) -> SweepTable:
    """Long-format entropy time series, one block of rows per sin(theta)."""
    values = [float(s) for s in sin_theta_values]
    if not values:
        raise ValueError("at least one sin_theta value is required")
    if any(not -1.0 <= s <= 1.0 for s in values):
        raise GridOutOfRange("sin_theta values must lie in [-1, 1]")
    t = np.asarray(list(t_grid), dtype=float)
    if t.size == 0:
        raise EmptyGrid("time grid is empty")
    if t.size > 1 and not np.all(np.diff(t) > 0):
        raise GridOutOfRange("time grid must be strictly increasing")
    N = initial[0] + initial[1]

    def block(s: float) -> np.ndarray:
        series = entropy_timeseries(
            initial, s, t, phase_mode=phase_mode, params=params, max_level=max_level
        )
        parts = [np.full(t.size, s), t, series.entropy]
        if include_lambdas:
            parts += list(series.lambdas.T)
        return np.column_stack(parts)

    columns = ["sin_theta", "t_tilde", "S_v"]
    if include_lambdas:
        columns += [f"lambda_{k}" for k in range(N + 1)]
    data = np.vstack(_ordered_map(block, values, workers))
    meta = {
        "initial": list(initial),
        "sin_theta_values": values,
        "t_grid": {"min": float(t[0]), "max": float(t[-1]), "steps": int(t.size)},
        "phase_mode": phase_mode,
        "version": __version__,
    }
    return SweepTable("dynamics", tuple(columns), data, meta)


def _fmt(x: float) -> str:
    if x == 0.0:
        return "0"
    return format(float(x), f".{SIGNIFICANT_DIGITS}g")


def to_csv(table: SweepTable) -> str:
    lines = [",".join(table.columns)]
    lines += [",".join(_fmt(v) for v in row) for row in table.data]
    return "\n".join(lines) + "\n"


def to_json(table: SweepTable) -> str:
    doc = {
        "kind": table.kind,
        "metadata": table.metadata,
        "columns": {
            name: [float(_fmt(v)) for v in table.data[:, j]] for j, name in enumerate(table.columns)
        },
    }
    return json.dumps(doc, indent=2) + "\n"


def emit(table: SweepTable, fmt: str, destination=None) -> None:
    """Write ``table`` as csv, json or svg.

    ``destination`` may be a path, an open stream, or None for stdout
    (text formats only).
    """
    if fmt not in ("csv", "json", "svg"):
        raise ValueError(f"unknown format {fmt!r}")
    try:
        if fmt == "svg":
            from .plotting import render_table

            if destination is None:
                raise ValueError("svg output needs a destination path")
            render_table(table, destination)
            return
        text = to_csv(table) if fmt == "csv" else to_json(table)
        if destination is None:
            sys.stdout.write(text)
        elif isinstance(destination, (str, os.PathLike)):
            with open(Path(destination), "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        elif isinstance(destination, io.TextIOBase) or hasattr(destination, "write"):
            destination.write(text)
        else:
            raise ValueError(f"unsupported destination {destination!r}")
    except OSError as exc:
        raise IoFailure(f"could not write {fmt} output: {exc}") from exc
