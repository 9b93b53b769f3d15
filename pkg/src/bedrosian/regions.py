"""Region descriptors: small expression trees of membership predicates on R^d.

Primitives are open sets (``Ball``, ``Box``, ``HalfSpace``, ``Quadrant``) plus
``Full`` and ``Empty``; combinators build unions, intersections, complements,
translates and reflections. Every node evaluates its predicate on a tuple of
broadcastable coordinate arrays, one per axis.

Descriptors serialize to tagged JSON objects, e.g.
``{"ball": {"center": [0, 0], "radius": 1.0}}`` or
``{"complement": {"box": {"lo": [-1], "hi": [1]}}}``.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConfigError


class Region:
    """Base class. Subclasses implement ``contains``, ``bounds`` and ``to_json``."""

    def contains(self, coords: Sequence[np.ndarray]) -> np.ndarray:
        raise NotImplementedError

    def bounds(self):
        """Axis-aligned bounding box ``(lo, hi)``, or ``None`` when unbounded."""
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def contains_point(self, point) -> bool:
        pt = [np.asarray(float(x)) for x in np.atleast_1d(point)]
        return bool(self.contains(pt))

    # convenience combinators
    def __or__(self, other):
        return Union((self, other))

    def __and__(self, other):
        return Intersection((self, other))

    def __invert__(self):
        return Complement(self)


def _vec(x) -> np.ndarray:
    return np.atleast_1d(np.asarray(x, dtype=float))


def _shape(coords):
    return np.broadcast_shapes(*(np.shape(c) for c in coords))


@dataclass(frozen=True)
class Ball(Region):
    center: tuple
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", tuple(float(c) for c in _vec(self.center)))
        if not self.radius > 0:
            raise ValueError("radius must be positive")

    def contains(self, coords):
        sq = sum((c - z) ** 2 for c, z in zip(coords, self.center))
        return np.asarray(sq < self.radius**2)

    def bounds(self):
        c = np.array(self.center)
        return c - self.radius, c + self.radius

    def to_json(self):
        return {"ball": {"center": list(self.center), "radius": self.radius}}


@dataclass(frozen=True)
class Box(Region):
    """Open box ``prod (lo_j, hi_j)``."""

    lo: tuple
    hi: tuple

    def __post_init__(self):
        lo, hi = _vec(self.lo), _vec(self.hi)
        if lo.shape != hi.shape:
            raise ValueError("lo and hi must have the same length")
        object.__setattr__(self, "lo", tuple(float(v) for v in lo))
        object.__setattr__(self, "hi", tuple(float(v) for v in hi))

    def contains(self, coords):
        out = np.ones(_shape(coords), dtype=bool)
        for c, lo, hi in zip(coords, self.lo, self.hi):
            out = out & (c > lo) & (c < hi)
        return out

    def bounds(self):
        return np.array(self.lo), np.array(self.hi)

    def to_json(self):
        return {"box": {"lo": list(self.lo), "hi": list(self.hi)}}


@dataclass(frozen=True)
class HalfSpace(Region):
    """``xi_axis > threshold`` (orientation +1) or ``xi_axis < threshold`` (-1).

    ``axis`` is 1-based.
    """

    axis: int
    orientation: int
    threshold: float = 0.0

    def __post_init__(self):
        if self.orientation not in (1, -1):
            raise ValueError("orientation must be +1 or -1")
        if self.axis < 1:
            raise ValueError("axis is 1-based")

    def contains(self, coords):
        c = coords[self.axis - 1]
        res = c > self.threshold if self.orientation > 0 else c < self.threshold
        return np.broadcast_to(res, _shape(coords))

    def bounds(self):
        return None

    def to_json(self):
        return {"halfspace": {"axis": self.axis,
                              "orientation": "+" if self.orientation > 0 else "-",
                              "threshold": self.threshold}}


@dataclass(frozen=True)
class Quadrant(Region):
    """Open hyper-quadrant ``{nu_j xi_j > 0 for all j}``."""

    signs: tuple

    def __post_init__(self):
        signs = tuple(int(s) for s in self.signs)
        if any(s not in (1, -1) for s in signs):
            raise ValueError("quadrant signs must be +1 or -1")
        object.__setattr__(self, "signs", signs)

    def contains(self, coords):
        out = np.ones(_shape(coords), dtype=bool)
        for c, s in zip(coords, self.signs):
            out = out & (s * c > 0)
        return out

    def bounds(self):
        return None

    def to_json(self):
        return {"quadrant": {"signs": list(self.signs)}}


@dataclass(frozen=True)
class Full(Region):
    def contains(self, coords):
        return np.ones(_shape(coords), dtype=bool)

    def bounds(self):
        return None

    def to_json(self):
        return "full"


@dataclass(frozen=True)
class Empty(Region):
    def contains(self, coords):
        return np.zeros(_shape(coords), dtype=bool)

    def bounds(self):
        return np.array([np.inf]), np.array([-np.inf])

    def to_json(self):
        return "empty"


@dataclass(frozen=True)
class Union(Region):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def contains(self, coords):
        out = np.zeros(_shape(coords), dtype=bool)
        for p in self.parts:
            out = out | p.contains(coords)
        return out

    def bounds(self):
        lo, hi = np.inf, -np.inf
        for p in self.parts:
            b = p.bounds()
            if b is None:
                return None
            lo, hi = np.minimum(lo, b[0]), np.maximum(hi, b[1])
        return np.atleast_1d(lo), np.atleast_1d(hi)

    def to_json(self):
        return {"union": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class Intersection(Region):
    parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))

    def contains(self, coords):
        out = np.ones(_shape(coords), dtype=bool)
        for p in self.parts:
            out = out & p.contains(coords)
        return out

    def bounds(self):
        boxes = [b for b in (p.bounds() for p in self.parts) if b is not None]
        if not boxes:
            return None
        lo = functools.reduce(np.maximum, (b[0] for b in boxes))
        hi = functools.reduce(np.minimum, (b[1] for b in boxes))
        return np.atleast_1d(lo), np.atleast_1d(hi)

    def to_json(self):
        return {"intersection": [p.to_json() for p in self.parts]}


@dataclass(frozen=True)
class Complement(Region):
    part: Region

    def contains(self, coords):
        return ~self.part.contains(coords)

    def bounds(self):
        return None

    def to_json(self):
        return {"complement": self.part.to_json()}


@dataclass(frozen=True)
class Translate(Region):
    """``part + offset``."""

    offset: tuple
    part: Region

    def __post_init__(self):
        object.__setattr__(self, "offset", tuple(float(v) for v in _vec(self.offset)))

    def contains(self, coords):
        return self.part.contains([c - o for c, o in zip(coords, self.offset)])

    def bounds(self):
        b = self.part.bounds()
        if b is None:
            return None
        off = np.array(self.offset)
        return b[0] + off, b[1] + off

    def to_json(self):
        return {"translate": {"offset": list(self.offset), "region": self.part.to_json()}}


@dataclass(frozen=True)
class Reflect(Region):
    """``-part``."""

    part: Region

    def contains(self, coords):
        return self.part.contains([-c for c in coords])

    def bounds(self):
        b = self.part.bounds()
        if b is None:
            return None
        return -b[1], -b[0]

    def to_json(self):
        return {"reflect": self.part.to_json()}


def box_gap_complement(lo: Sequence[float], hi: Sequence[float]) -> Region:
    """``prod_j (R minus [lo_j, hi_j])``: every coordinate outside its closed interval."""
    parts = [
        Union((HalfSpace(j + 1, 1, h), HalfSpace(j + 1, -1, l)))
        for j, (l, h) in enumerate(zip(lo, hi))
    ]
    return parts[0] if len(parts) == 1 else Intersection(tuple(parts))


# -- parsing -----------------------------------------------------------------

def _point(value, dim, path):
    if isinstance(value, (int, float)) and dim == 1:
        value = [value]
    if not isinstance(value, list) or len(value) != dim:
        raise ConfigError(path, f"expected a list of {dim} numbers")
    try:
        pt = [float(v) for v in value]
    except (TypeError, ValueError):
        raise ConfigError(path, "expected numbers") from None
    if not all(np.isfinite(pt)):
        raise ConfigError(path, "coordinates must be finite")
    return pt


def _number(value, path):
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, "expected a number")
    if not np.isfinite(value):
        raise ConfigError(path, "expected a finite number")
    return float(value)


def _fields(body, path, required, optional=()):
    if not isinstance(body, dict):
        raise ConfigError(path, "expected an object")
    for key in required:
        if key not in body:
            raise ConfigError(f"{path}.{key}", "missing field")
    for key in body:
        if key not in required and key not in optional:
            raise ConfigError(f"{path}.{key}", "unknown field")
    return body


def parse_region(obj, dim: int, path: str = "region") -> Region:
    """Parse a tagged JSON descriptor into a :class:`Region`.

    Raises :class:`ConfigError` naming the offending path.
    """
    if obj in ("full", "empty"):
        return Full() if obj == "full" else Empty()
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ConfigError(path, "expected a single-key tagged object such as {\"ball\": {...}}")
    (tag, body), = obj.items()
    p = f"{path}.{tag}"
    if tag in ("full", "empty"):
        return Full() if tag == "full" else Empty()
    if tag == "ball":
        _fields(body, p, ("center", "radius"))
        r = _number(body["radius"], f"{p}.radius")
        if r <= 0:
            raise ConfigError(f"{p}.radius", "must be positive")
        return Ball(_point(body["center"], dim, f"{p}.center"), r)
    if tag == "box":
        _fields(body, p, ("lo", "hi"))
        lo = _point(body["lo"], dim, f"{p}.lo")
        hi = _point(body["hi"], dim, f"{p}.hi")
        return Box(lo, hi)
    if tag == "halfspace":
        _fields(body, p, ("axis", "orientation"), ("threshold",))
        axis = body["axis"]
        if isinstance(axis, bool) or not isinstance(axis, int) or not 1 <= axis <= dim:
            raise ConfigError(f"{p}.axis", f"must be an integer in 1..{dim}")
        orient = body["orientation"]
        if orient in ("+", 1):
            orient = 1
        elif orient in ("-", -1):
            orient = -1
        else:
            raise ConfigError(f"{p}.orientation", "must be '+' or '-'")
        thr = _number(body.get("threshold", 0.0), f"{p}.threshold")
        return HalfSpace(axis, orient, thr)
    if tag == "quadrant":
        _fields(body, p, ("signs",))
        signs = body["signs"]
        if (not isinstance(signs, list) or len(signs) != dim
                or any(s not in (1, -1) or isinstance(s, bool) for s in signs)):
            raise ConfigError(f"{p}.signs", f"expected a list of {dim} entries from {{-1, 1}}")
        return Quadrant(signs)
    if tag in ("union", "intersection"):
        if not isinstance(body, list) or not body:
            raise ConfigError(p, "expected a nonempty list of regions")
        parts = tuple(parse_region(o, dim, f"{p}[{i}]") for i, o in enumerate(body))
        return Union(parts) if tag == "union" else Intersection(parts)
    if tag == "complement":
        return Complement(parse_region(body, dim, p))
    if tag == "reflect":
        return Reflect(parse_region(body, dim, p))
    if tag == "translate":
        _fields(body, p, ("offset", "region"))
        return Translate(_point(body["offset"], dim, f"{p}.offset"),
                         parse_region(body["region"], dim, f"{p}.region"))
    raise ConfigError(path, f"unknown region type {tag!r}")
