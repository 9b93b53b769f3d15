"""Analysis configuration: one JSON document per run.

Example::

    {
      "grid": {"dim": 2, "bins_per_axis": 512, "half_width": 16},
      "set_a": {"ball": {"center": [0.3, 0.2], "radius": 1.0}},
      "set_b": {"complement": {"ball": {"center": [-0.3, -0.2], "radius": 2.0}}},
      "multiplier": {"kind": "riesz", "axis": 1},
      "tolerances": {"constancy_tol": 1e-9, "residual_tol": 1e-9},
      "trials": 10,
      "seed": 0
    }

``grid`` may give only ``dim``; the other fields then take per-dimension
defaults. Multiplier axes are 1-based. Piecewise-constant multipliers list
``{"region": <descriptor>, "value": <number or [re, im]>}`` pieces, later
pieces overriding earlier ones, plus an optional ``default``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .errors import ConfigError
from .grid import DEFAULT_GRIDS, FrequencyGrid
from .multipliers import MultiplierField, make_multiplier
from .regions import Region, parse_region
from .verification import RESIDUAL_TOL

MULTIPLIER_KINDS = ("identity", "hilbert", "partial_hilbert", "riesz", "piecewise_constant")
_TOP_KEYS = {"grid", "set_a", "set_b", "multiplier", "tolerances", "trials", "seed", "description"}


@dataclass(frozen=True)
class MultiplierSpec:
    kind: str
    axis: int | None = None
    pieces: tuple = ()  # (Region, complex) pairs
    default: complex = 0j

    def build(self, grid: FrequencyGrid) -> MultiplierField:
        return make_multiplier(self.kind, grid, axis=self.axis, pieces=self.pieces,
                               default=self.default)

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.axis is not None:
            out["axis"] = self.axis
        if self.kind == "piecewise_constant":
            out["pieces"] = [{"region": r.to_json(), "value": [v.real, v.imag]}
                             for r, v in self.pieces]
            out["default"] = [self.default.real, self.default.imag]
        return out


@dataclass(frozen=True)
class AnalysisConfig:
    grid: FrequencyGrid
    set_a: Region | None = None
    set_b: Region | None = None
    multiplier: MultiplierSpec | None = None
    constancy_tol: float = 1e-9
    residual_tol: float = RESIDUAL_TOL
    trials: int = 10
    seed: int = 0
    description: str = ""

    def to_json(self) -> dict:
        """Canonical echo of the configuration, defaults filled in."""
        out = {
            "grid": {"dim": self.grid.dim, "bins_per_axis": self.grid.bins_per_axis,
                     "half_width": self.grid.half_width},
            "set_a": None if self.set_a is None else self.set_a.to_json(),
            "set_b": None if self.set_b is None else self.set_b.to_json(),
            "multiplier": None if self.multiplier is None else self.multiplier.to_json(),
            "tolerances": {"constancy_tol": self.constancy_tol, "residual_tol": self.residual_tol},
            "trials": self.trials,
            "seed": self.seed,
        }
        if self.description:
            out["description"] = self.description
        return out


def _int(value, path):
    if isinstance(value, bool) or not isinstance(value, int):
        raise ConfigError(path, "expected an integer")
    return value


def _positive(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
        raise ConfigError(path, "expected a positive number")
    return float(value)


def _complex(value, path):
    if isinstance(value, bool):
        raise ConfigError(path, "expected a number or [re, im]")
    if isinstance(value, (int, float)):
        return complex(value)
    if (isinstance(value, list) and len(value) == 2
            and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value)):
        return complex(value[0], value[1])
    raise ConfigError(path, "expected a number or [re, im]")


def parse_grid(obj, path="grid") -> FrequencyGrid:
    if not isinstance(obj, dict):
        raise ConfigError(path, "expected an object")
    for key in obj:
        if key not in ("dim", "bins_per_axis", "half_width"):
            raise ConfigError(f"{path}.{key}", "unknown field")
    if "dim" not in obj:
        raise ConfigError(f"{path}.dim", "missing field")
    dim = _int(obj["dim"], f"{path}.dim")
    if dim not in (1, 2, 3):
        raise ConfigError(f"{path}.dim", "must be 1, 2 or 3")
    n_def, omega_def = DEFAULT_GRIDS[dim]
    n = _int(obj.get("bins_per_axis", n_def), f"{path}.bins_per_axis")
    if n < 8 or n % 2:
        raise ConfigError(f"{path}.bins_per_axis", "must be an even integer >= 8")
    omega = _positive(obj.get("half_width", omega_def), f"{path}.half_width")
    return FrequencyGrid(dim, n, omega)


def parse_multiplier(obj, dim, path="multiplier") -> MultiplierSpec:
    if not isinstance(obj, dict):
        raise ConfigError(path, "expected an object")
    kind = obj.get("kind")
    if kind not in MULTIPLIER_KINDS:
        raise ConfigError(f"{path}.kind", f"must be one of {', '.join(MULTIPLIER_KINDS)}")
    allowed = {"kind"}
    axis = None
    if kind in ("partial_hilbert", "riesz"):
        allowed.add("axis")
        if "axis" not in obj:
            raise ConfigError(f"{path}.axis", "missing field")
        axis = _int(obj["axis"], f"{path}.axis")
        if not 1 <= axis <= dim:
            raise ConfigError(f"{path}.axis", f"must be in 1..{dim}")
    if kind == "hilbert" and dim != 1:
        raise ConfigError(f"{path}.kind", "hilbert needs dim 1; use partial_hilbert")
    pieces, default = (), 0j
    if kind == "piecewise_constant":
        allowed |= {"pieces", "default"}
        raw = obj.get("pieces")
        if not isinstance(raw, list):
            raise ConfigError(f"{path}.pieces", "expected a list")
        parsed = []
        for i, piece in enumerate(raw):
            p = f"{path}.pieces[{i}]"
            if not isinstance(piece, dict) or set(piece) != {"region", "value"}:
                raise ConfigError(p, "expected {\"region\": ..., \"value\": ...}")
            parsed.append((parse_region(piece["region"], dim, f"{p}.region"),
                           _complex(piece["value"], f"{p}.value")))
        pieces = tuple(parsed)
        default = _complex(obj.get("default", 0.0), f"{path}.default")
    for key in obj:
        if key not in allowed:
            raise ConfigError(f"{path}.{key}", "unknown field")
    return MultiplierSpec(kind, axis, pieces, default)


def parse_config(obj) -> AnalysisConfig:
    """Validate a decoded JSON document; raise :class:`ConfigError` with its path."""
    if not isinstance(obj, dict):
        raise ConfigError("", "configuration must be a JSON object")
    for key in obj:
        if key not in _TOP_KEYS:
            raise ConfigError(key, "unknown field")
    if "grid" not in obj:
        raise ConfigError("grid", "missing field")
    grid = parse_grid(obj["grid"])
    d = grid.dim
    set_a = parse_region(obj["set_a"], d, "set_a") if obj.get("set_a") is not None else None
    set_b = parse_region(obj["set_b"], d, "set_b") if obj.get("set_b") is not None else None
    mult = (parse_multiplier(obj["multiplier"], d)
            if obj.get("multiplier") is not None else None)
    tols = obj.get("tolerances", {})
    if not isinstance(tols, dict):
        raise ConfigError("tolerances", "expected an object")
    for key in tols:
        if key not in ("constancy_tol", "residual_tol"):
            raise ConfigError(f"tolerances.{key}", "unknown field")
    ctol = _positive(tols.get("constancy_tol", 1e-9), "tolerances.constancy_tol")
    rtol = _positive(tols.get("residual_tol", RESIDUAL_TOL), "tolerances.residual_tol")
    trials = _int(obj.get("trials", 10), "trials")
    if trials < 1:
        raise ConfigError("trials", "must be >= 1")
    seed = _int(obj.get("seed", 0), "seed")
    if seed < 0:
        raise ConfigError("seed", "must be >= 0")
    desc = obj.get("description", "")
    if not isinstance(desc, str):
        raise ConfigError("description", "expected a string")
    return AnalysisConfig(grid, set_a, set_b, mult, ctol, rtol, trials, seed, desc)


def load_config(path) -> AnalysisConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("", f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError("", f"invalid JSON at line {exc.lineno}: {exc.msg}") from None
    return parse_config(obj)
