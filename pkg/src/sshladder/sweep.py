"""Two-parameter sweeps with a deterministic, order-preserving worker pool."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .model import LadderParams

__all__ = ["PhaseGrid", "apply_axis", "axis_names", "grid_map", "parallel_map"]


def axis_names(params: LadderParams) -> list[str]:
    """Parameter names a sweep axis may refer to."""
    return ["z", "delta"] + [f"delta{s}" for s in range(1, params.M + 1)]


def apply_axis(params: LadderParams, name: str, value: float) -> LadderParams:
    """Set one swept parameter.

    ``name`` is ``z``, ``delta`` (all chains at once), ``delta<s>``, or several
    of these tied together with ``=``, e.g. ``delta1=delta3``.
    """
    for part in name.split("="):
        part = part.strip()
        if part == "z":
            params = params.with_(z=float(value))
        elif part == "delta":
            params = params.with_(deltas=(float(value),) * params.M)
        elif part.startswith("delta") and part[5:].isdigit():
            params = params.with_(**{part: float(value)})
        else:
            raise KeyError(f"unknown sweep parameter {part!r}")
    return params


@dataclass
class PhaseGrid:
    """Result of a sweep over two parameter axes.

    ``values[name]`` has shape ``(len(x), len(y))``; NaN marks undefined points.
    """

    x_name: str
    x: np.ndarray
    y_name: str
    y: np.ndarray
    values: dict[str, np.ndarray] = field(default_factory=dict)

    def __getitem__(self, name):
        return self.values[name]

    def rows(self):
        """Row-major iteration: ``(x, y, {name: value})`` with x the outer axis."""
        for i, xv in enumerate(self.x):
            for j, yv in enumerate(self.y):
                yield xv, yv, {k: v[i, j] for k, v in self.values.items()}


def _resolve_workers(workers):
    if workers is None:
        return os.cpu_count() or 1
    return max(1, int(workers))


def parallel_map(func, items, workers=None, chunksize=None):
    """``list(map(func, items))`` fanned out over processes, order preserved."""
    items = list(items)
    workers = min(_resolve_workers(workers), max(1, len(items)))
    if workers == 1:
        return [func(it) for it in items]
    chunksize = chunksize or max(1, len(items) // (4 * workers))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items, chunksize=chunksize))


def grid_map(func, template: LadderParams, x_axis, y_axis, workers=None) -> PhaseGrid:
    """Evaluate ``func(params) -> dict[str, float]`` on every grid point."""
    (xn, xs), (yn, ys) = x_axis, y_axis
    xs = np.atleast_1d(np.asarray(xs, dtype=float))
    ys = np.atleast_1d(np.asarray(ys, dtype=float))
    points = [apply_axis(apply_axis(template, xn, xv), yn, yv) for xv in xs for yv in ys]
    results = parallel_map(func, points, workers)
    keys = list(results[0]) if results else []
    values = {
        k: np.array([r[k] for r in results], dtype=float).reshape(xs.size, ys.size) for k in keys
    }
    return PhaseGrid(xn, xs, yn, ys, values)
