"""
Command-line sweeps that write CSV tables and a JSON run manifest.

    sshladder phase-diagram --config sweep.json --out phase.csv
    sshladder chsh --deltas 0.9,-0.75,0.8 --z 0.9 --out chsh.csv
    sshladder validate --config sweep.json

``invariant`` evaluates a single point unless sweep axes are given, in which
case it behaves like ``phase-diagram``.

Configuration files are JSON objects whose keys are the fields of
:class:`RunConfig`; command-line flags override file values. Unknown keys
are rejected. Exit codes: 0 success, 1 runtime error, 2 configuration error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .bell import chsh_scan, rotation_protocol
from .entanglement import EdgeSelection
from .errors import LadderError
from .gaussian import ladder_ground_state, ladder_thermal_state
from .maps import EdgeSpec, entanglement_map, number_entropy_map
from .model import LadderParams, SymmetryKind, chiral_unitary
from .sweep import apply_axis, axis_names, parallel_map
from .topology import (
    NotApplicable,
    phase_grid,
    winding_analytic,
    winding_green,
    winding_projector,
)

MODES = (
    "invariant",
    "phase-diagram",
    "entanglement-map",
    "number-entropy-map",
    "chsh",
    "thermal-chsh",
    "protocol",
)
GRID_MODES = ("phase-diagram", "entanglement-map", "number-entropy-map")


class ConfigError(ValueError):
    pass


def _range(spec, name):
    try:
        start, stop, steps = float(spec["start"]), float(spec["stop"]), int(spec["steps"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"{name} needs numeric start, stop, steps") from exc
    if steps < 1:
        raise ConfigError(f"{name}: steps must be >= 1")
    return np.linspace(start, stop, steps) if steps > 1 else np.array([start])


@dataclass
class RunConfig:
    mode: str | None = None
    M: int = 3
    L: int = 16
    deltas: list | None = None  # None: (0.9, -0.75, 0.8) for M = 3, else 0.5 on every chain
    z: float = 0.9
    J: float = 1.0
    boundary: str = "open"
    x_axis: dict | None = None
    y_axis: dict | None = None
    kind: str = "S"
    n_k: int = 256
    method: str = "green"
    beta: list = field(default_factory=lambda: [1000.0])
    kappa: float = 10.0
    times: dict = field(default_factory=lambda: {"start": 0.0, "stop": 20.0, "steps": 200})
    thetas: dict = field(default_factory=lambda: {"start": 0.0, "stop": math.pi, "steps": 181})
    edges: list | None = None
    out: str | None = None
    workers: int | None = None
    seed: int | None = None  # reserved; every computation is deterministic

    def __post_init__(self):
        if self.deltas is None:
            self.deltas = [0.9, -0.75, 0.8] if self.M == 3 else [0.5] * int(self.M)

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config key(s): {', '.join(unknown)}")
        cfg = cls(**data)
        cfg.validate()
        return cfg

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    def params(self) -> LadderParams:
        try:
            return LadderParams(M=int(self.M), L=int(self.L), deltas=tuple(self.deltas),
                                z=float(self.z), J=float(self.J), boundary=self.boundary)
        except (TypeError, ValueError) as exc:
            raise ConfigError(str(exc)) from exc

    def default_axes(self):
        y = "z" if self.M == 1 else f"delta{min(3, self.M)}"
        x = "delta" if self.M == 1 else "delta1"
        ax = lambda n: {"name": n, "start": -0.95, "stop": 0.95, "steps": 101}  # noqa: E731
        return ax(x), ax(y)

    def axes(self):
        dx, dy = self.default_axes()
        out = []
        for ax, default, label in ((self.x_axis, dx, "x_axis"), (self.y_axis, dy, "y_axis")):
            ax = default if ax is None else ax
            if not isinstance(ax, dict) or "name" not in ax:
                raise ConfigError(f"{label} must be an object with a 'name'")
            out.append((str(ax["name"]), _range(ax, label)))
        return out

    def edge_spec(self) -> EdgeSpec:
        if self.edges is None:
            return EdgeSpec()
        try:
            labels = tuple((str(k), int(s), int(c)) for k, s, c in self.edges)
        except (TypeError, ValueError) as exc:
            raise ConfigError("edges must be four [kind, chain, cell] triples") from exc
        if len(labels) != 4:
            raise ConfigError("edges must list exactly four modes")
        return EdgeSpec(labels)

    def is_grid(self) -> bool:
        explicit = self.x_axis is not None or self.y_axis is not None
        return self.mode in GRID_MODES or (self.mode in ("invariant", None) and explicit)

    def betas(self) -> list[float]:
        vals = self.beta if isinstance(self.beta, (list, tuple)) else [self.beta]
        return [float(b) for b in vals]

    def validate(self) -> None:
        if self.mode is not None and self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}; choose from {', '.join(MODES)}")
        params = self.params()
        if self.method not in ("green", "projector"):
            raise ConfigError(f"unknown method {self.method!r}")
        if int(self.n_k) < 4:
            raise ConfigError("n_k must be at least 4")
        valid = axis_names(params)
        probe = params
        for name, values in self.axes():
            for part in name.split("="):
                if part.strip() not in valid:
                    raise ConfigError(f"axis parameter {part!r} does not exist; use one of {valid}")
            if self.is_grid():
                probe = apply_axis(probe, name, values[0])
        # the symmetry has to hold at every grid point; checking the first one
        # catches a kind that is incompatible with the swept parameters
        try:
            chiral_unitary(probe, SymmetryKind.parse(self.kind))
        except ValueError as exc:
            raise ConfigError(f"symmetry kind {self.kind!r}: {exc}") from exc
        _range(self.times, "times")
        _range(self.thetas, "thetas")
        if any(b < 0 for b in self.betas()):
            raise ConfigError("beta must be non-negative")
        spec = self.edge_spec()
        try:
            spec.resolve(params)
        except ValueError as exc:
            raise ConfigError(f"edges: {exc}") from exc


def _fmt(v) -> str:
    if v is None:
        return "NA"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    return "NA" if not math.isfinite(v) else repr(v)


def _table(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_fmt(v) for v in r])
    return buf.getvalue()


def _grid_table(grid):
    keys = list(grid.values)
    rows = [(x, y, *(vals[k] for k in keys)) for x, y, vals in grid.rows()]
    return [grid.x_name, grid.y_name, *keys], rows


def _invariant_row(params, kind, n_k):
    out = {}
    for label, fn in (("green", winding_green), ("projector", winding_projector)):
        try:
            r = fn(params, kind, n_k)
            out[f"I_{label}"], out[f"raw_{label}"], out["gap"] = r.value, r.raw, r.gap
        except LadderError:
            out[f"I_{label}"], out[f"raw_{label}"] = None, None
    out.setdefault("gap", None)
    a = winding_analytic(params) if SymmetryKind.parse(kind) is SymmetryKind.S else NotApplicable
    out["I_analytic"] = None if a is NotApplicable else a
    return out


@dataclass(frozen=True)
class _ThermalScan:
    params: LadderParams
    edges: EdgeSpec
    thetas: tuple

    def __call__(self, beta):
        C = ladder_thermal_state(self.params, beta)
        return chsh_scan(C, self.edges.resolve(self.params), self.thetas)


def compute(cfg: RunConfig):
    """Run the configured computation; returns ``(header, rows)``."""
    params = cfg.params()
    kind = SymmetryKind.parse(cfg.kind)
    mode = cfg.mode
    if mode == "invariant" and not cfg.is_grid():
        row = _invariant_row(params, kind, int(cfg.n_k))
        return list(row), [tuple(row.values())]
    if cfg.is_grid():
        xa, ya = cfg.axes()
        if mode in ("phase-diagram", "invariant"):
            grid = phase_grid(params, xa, ya, kind, int(cfg.n_k), cfg.method, cfg.workers)
        elif mode == "entanglement-map":
            grid = entanglement_map(params, xa, ya, cfg.edge_spec(), cfg.workers)
        else:
            grid = number_entropy_map(params, xa, ya, cfg.edge_spec(), cfg.workers)
        return _grid_table(grid)
    thetas = _range(cfg.thetas, "thetas")
    if mode == "chsh":
        scan = chsh_scan(ladder_ground_state(params), cfg.edge_spec().resolve(params), thetas)
        return ["theta", "Sigma"], scan
    if mode == "thermal-chsh":
        betas = cfg.betas()
        scans = parallel_map(_ThermalScan(params, cfg.edge_spec(), tuple(thetas)), betas, cfg.workers)
        rows = [(b, t, s) for b, scan in zip(betas, scans) for t, s in scan]
        return ["beta", "theta", "Sigma"], rows
    if mode == "protocol":
        res = rotation_protocol(params, cfg.edge_spec().resolve(params), float(cfg.kappa),
                                _range(cfg.times, "times"))
        return ["t", "F1", "F2"], list(zip(res.times, res.F1, res.F2))
    raise ConfigError("no mode selected")


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute ``cfg`` and write the CSV (and manifest when ``cfg.out`` is set)."""
    stdout = stdout or sys.stdout
    start = time.time()
    header, rows = compute(cfg)
    text = _table(header, rows)
    if cfg.out is None:
        stdout.write(text)
        return 0
    out = Path(cfg.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    out.write_text(text)
    manifest = {
        "tool": "sshladder",
        "version": __version__,
        "config": cfg.to_dict(),
        "rows": len(rows),
        "wall_time_s": time.time() - start,
        "finished": time.strftime("%Y-%m-%dT%H:%M:%S%z"),
    }
    manifest_path(out).write_text(json.dumps(manifest, indent=2) + "\n")
    return 0


def manifest_path(out: Path) -> Path:
    return out.with_name(out.name + ".manifest.json")


def _triple(text, name):
    parts = text.split(":")
    if len(parts) != 3:
        raise ConfigError(f"{name} expects START:STOP:STEPS")
    return {"start": float(parts[0]), "stop": float(parts[1]), "steps": int(parts[2])}


def _axis(text, name):
    head, _, rest = text.partition(":")
    spec = _triple(rest, name)
    spec["name"] = head
    return spec


def _floats(text):
    return [float(v) for v in text.split(",") if v.strip()]


def _edges(text):
    out = []
    for item in text.split(","):
        kind, chain, cell = item.split(":")
        out.append([kind, int(chain), int(cell)])
    return out


# flag -> (config key, converter)
_OVERRIDES = {
    "M": ("M", int),
    "L": ("L", int),
    "deltas": ("deltas", _floats),
    "z": ("z", float),
    "J": ("J", float),
    "boundary": ("boundary", str),
    "x_axis": ("x_axis", lambda s: _axis(s, "--x-axis")),
    "y_axis": ("y_axis", lambda s: _axis(s, "--y-axis")),
    "kind": ("kind", str),
    "nk": ("n_k", int),
    "method": ("method", str),
    "beta": ("beta", _floats),
    "kappa": ("kappa", float),
    "times": ("times", lambda s: _triple(s, "--times")),
    "thetas": ("thetas", lambda s: _triple(s, "--thetas")),
    "edges": ("edges", _edges),
    "out": ("out", str),
    "workers": ("workers", int),
    "seed": ("seed", int),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", type=Path, help="JSON configuration file")
    common.add_argument("--out", help="CSV output path (stdout if omitted)")
    common.add_argument("--workers", help="worker processes (default: all cores)")
    common.add_argument("--nk", help="Brillouin-zone grid size")
    common.add_argument("--seed", help="reserved; output is deterministic")
    common.add_argument("--M", help="number of legs")
    common.add_argument("--L", help="unit cells per chain")
    common.add_argument("--deltas", help="comma-separated dimerizations")
    common.add_argument("--z", help="interchain hopping")
    common.add_argument("--J", help="intrachain hopping scale")
    common.add_argument("--boundary", help="open or periodic")
    common.add_argument("--x-axis", dest="x_axis", help="NAME:START:STOP:STEPS")
    common.add_argument("--y-axis", dest="y_axis", help="NAME:START:STOP:STEPS")
    common.add_argument("--kind", help="chiral symmetry: S, S2 or S3")
    common.add_argument("--method", help="green or projector")
    common.add_argument("--beta", help="comma-separated inverse temperatures")
    common.add_argument("--kappa", help="protocol coupling strength")
    common.add_argument("--times", help="START:STOP:STEPS")
    common.add_argument("--thetas", help="START:STOP:STEPS")
    common.add_argument("--edges", help="kind:chain:cell x4, e.g. a:1:1,a:3:1,b:1:-1,b:3:-1")

    parser = argparse.ArgumentParser(prog="sshladder", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for mode in MODES:
        sub.add_parser(mode, parents=[common], help=f"run a {mode} computation")
    sub.add_parser("validate", parents=[common], help="check a configuration without running it")
    return parser


def load_config(args) -> RunConfig:
    data = {}
    if args.config is not None:
        try:
            data = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read {args.config}: {exc}") from exc
        if not isinstance(data, dict):
            raise ConfigError("configuration must be a JSON object")
    for flag, (key, conv) in _OVERRIDES.items():
        value = getattr(args, flag, None)
        if value is not None:
            try:
                data[key] = conv(value)
            except (TypeError, ValueError) as exc:
                raise ConfigError(f"--{flag.replace('_', '-')}: {exc}") from exc
    if args.command != "validate":
        data["mode"] = args.command
    return RunConfig.from_dict(data)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args)
    except ConfigError as exc:
        print(f"sshladder: config error: {exc}", file=sys.stderr)
        return 2
    if args.command == "validate":
        print("OK")
        print(json.dumps(cfg.to_dict(), indent=2))
        return 0
    try:
        return run(cfg)
    except ConfigError as exc:
        print(f"sshladder: config error: {exc}", file=sys.stderr)
        return 2
    except (LadderError, ValueError, ArithmeticError, OSError) as exc:
        print(f"sshladder: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
