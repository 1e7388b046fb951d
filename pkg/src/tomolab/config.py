"""JSON run configuration.

Example::

    {
      "state": {"kind": "fock", "coefficients": [1, [0, 1]]},
      "grid": {"xmin": -8, "xmax": 8, "points": 1024},
      "checks": ["optical_renyi"],
      "theta": {"start": 0, "stop": 3.14159, "count": 8, "endpoint": false},
      "q": {"values": [0.1, 0.3, 0.5, 0.7, 0.9]},
      "tolerance": 1e-4,
      "output": {"path": "report.json", "format": "json"}
    }

State kinds: ``fock`` (coefficients as numbers or [re, im] pairs),
``gaussian`` (mean, covariance), ``grid`` (path to a CSV with columns
x, re, im; relative paths resolve against the config file) and
``product`` (factors: list of fock/grid descriptions).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .datasets import DatasetError, read_rows, uniform_grid
from .errors import InvalidInputError
from .inequalities import CHECKS
from .states import (
    DEFAULT_GRID,
    GridWavefunction,
    ModeGrid,
    MultimodeProductState,
    make_fock_superposition,
    make_gaussian_state,
)


class ConfigError(InvalidInputError):
    pass


@dataclass
class RunConfig:
    state: object
    grid: ModeGrid | None = None
    checks: list = field(default_factory=list)
    thetas: list = field(default_factory=lambda: [0.0])
    qs: list | None = None
    tolerance: float | None = None
    r: float = 1.0
    frames: list | None = None
    output_path: str | None = None
    output_format: str = "json"
    reconstruction: dict = field(default_factory=dict)
    pairs: list | None = None


def _complex(v):
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return complex(float(v[0]), float(v[1]))
    if isinstance(v, dict):
        return complex(float(v.get("re", 0.0)), float(v.get("im", 0.0)))
    if isinstance(v, (int, float)):
        return complex(v)
    raise ConfigError(f"cannot read coefficient {v!r}")


def parse_grid(spec) -> ModeGrid:
    try:
        return ModeGrid(float(spec["xmin"]), float(spec["xmax"]), int(spec["points"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"grid needs numeric xmin, xmax, points: {exc}") from None


def _wavefunction_file(path: Path) -> GridWavefunction:
    if not path.is_file():
        raise ConfigError(f"wavefunction file not found: {path}")
    arr = read_rows(path, ["x", "re", "im"])
    order = np.argsort(arr[:, 0], kind="stable")
    arr = arr[order]
    grid = uniform_grid(arr[:, 0], "x")
    return GridWavefunction.normalized(grid, arr[:, 1] + 1j * arr[:, 2])


def parse_state(spec, base: Path):
    if not isinstance(spec, dict) or "kind" not in spec:
        raise ConfigError("state must be an object with a 'kind'")
    kind = spec["kind"]
    if kind == "fock":
        coeffs = spec.get("coefficients")
        if not isinstance(coeffs, list) or not coeffs:
            raise ConfigError("fock state needs a non-empty 'coefficients' list")
        return make_fock_superposition([_complex(c) for c in coeffs])
    if kind == "gaussian":
        try:
            return make_gaussian_state(spec["mean"], spec["covariance"])
        except KeyError as exc:
            raise ConfigError(f"gaussian state needs {exc}") from None
    if kind == "grid":
        if "path" not in spec:
            raise ConfigError("grid state needs a 'path'")
        return _wavefunction_file(base / spec["path"])
    if kind == "product":
        factors = spec.get("factors")
        if not isinstance(factors, list) or not factors:
            raise ConfigError("product state needs a non-empty 'factors' list")
        parsed = [parse_state(f, base) for f in factors]
        return MultimodeProductState(tuple(parsed))
    raise ConfigError(f"unknown state kind {kind!r}")


def parse_range(spec, what):
    if spec is None:
        return None
    if isinstance(spec, list):
        values = spec
    elif "values" in spec:
        values = spec["values"]
    else:
        try:
            start, stop, count = float(spec["start"]), float(spec["stop"]), int(spec["count"])
        except (KeyError, TypeError, ValueError):
            raise ConfigError(f"{what} needs 'values' or start/stop/count") from None
        if count < 1:
            raise ConfigError(f"{what} count must be >= 1")
        values = np.linspace(start, stop, count, endpoint=bool(spec.get("endpoint", True))).tolist()
    try:
        values = [float(v) for v in values]
    except (TypeError, ValueError):
        raise ConfigError(f"{what} values must be numbers") from None
    if not values or not all(map(math.isfinite, values)):
        raise ConfigError(f"{what} grid must be non-empty and finite")
    return values


def load_config(path) -> RunConfig:
    path = Path(path)
    try:
        raw = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config {path} is not valid JSON: {exc}") from None
    return parse_config(raw, path.parent)


def parse_config(raw, base=Path(".")) -> RunConfig:
    if not isinstance(raw, dict) or "state" not in raw:
        raise ConfigError("config must be an object with a 'state'")
    try:
        cfg = RunConfig(state=parse_state(raw["state"], Path(base)))
        if "grid" in raw:
            cfg.grid = parse_grid(raw["grid"])
        checks = raw.get("checks", [])
        if isinstance(checks, str):
            checks = [checks]
        bad = [c for c in checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}; choose from {list(CHECKS)}")
        cfg.checks = list(checks)
        cfg.thetas = parse_range(raw.get("theta"), "theta") or [0.0]
        cfg.qs = parse_range(raw.get("q"), "q")
        if "tolerance" in raw:
            tol = float(raw["tolerance"])
            if not tol > 0:
                raise ConfigError("tolerance must be > 0")
            cfg.tolerance = tol
        cfg.r = float(raw.get("r", 1.0))
        if not cfg.r > 0:
            raise ConfigError("r must be > 0")
        if "frames" in raw:
            cfg.frames = [(float(m), float(n)) for m, n in raw["frames"]]
        if "pairs" in raw:
            cfg.pairs = [(float(a), float(b)) for a, b in raw["pairs"]]
        out = raw.get("output", {})
        cfg.output_path = out.get("path")
        cfg.output_format = out.get("format", "json")
        if cfg.output_format not in ("json", "csv"):
            raise ConfigError("output format must be 'json' or 'csv'")
        cfg.reconstruction = dict(raw.get("reconstruction", {}))
    except DatasetError as exc:
        raise ConfigError(str(exc)) from None
    except (TypeError, ValueError) as exc:
        if isinstance(exc, InvalidInputError):
            raise
        raise ConfigError(f"malformed config: {exc}") from None
    return cfg


def default_grid(cfg: RunConfig) -> ModeGrid:
    return cfg.grid or DEFAULT_GRID
