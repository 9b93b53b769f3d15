"""Fourier multipliers and the structural Bedrosian criteria.

A bounded translation-invariant operator acts as ``(Tf)^ = m f^``. On a grid,
``m`` is one complex value per bin. The operator satisfies the Bedrosian
identity for a support pair exactly when ``m`` is constant on every merged
class of characteristic sets; :func:`structural_bedrosian_check` tests that,
:func:`existence_decision` decides whether any non-scalar such ``m`` exists,
and :func:`hilbert_support_test` evaluates the support-set criterion for the
partial Hilbert transforms.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import GridMismatchError
from .geometry import CharacteristicDecomposition, rasterize, robust_positive_measure
from .grid import FrequencyGrid, RegionMask
from .regions import Region

KINDS = ("hilbert", "partial_hilbert", "riesz", "identity", "piecewise_constant", "custom")

#: Default tolerance for a.e.-constancy of exact multipliers.
CONSTANCY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class MultiplierField:
    grid: FrequencyGrid
    values: np.ndarray
    kind: str = "custom"
    axis: int | None = None

    def __post_init__(self):
        vals = np.array(self.values, dtype=complex, copy=True)
        if vals.shape != self.grid.shape:
            raise GridMismatchError("multiplier values do not match the grid shape")
        if not np.all(np.isfinite(vals)):
            raise ValueError("multiplier values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @property
    def sup_norm(self) -> float:
        return float(np.max(np.abs(self.values))) if self.values.size else 0.0

    @property
    def label(self) -> str:
        return f"{self.kind}({self.axis})" if self.axis is not None else self.kind

    def __call__(self, index) -> complex:
        return complex(self.values[self.grid.position_of(index)])

    def _combine(self, other, op):
        if isinstance(other, MultiplierField):
            if other.grid != self.grid:
                raise GridMismatchError("multipliers live on different grids")
            other = other.values
        return MultiplierField(self.grid, op(self.values, other))

    def __mul__(self, other):
        return self._combine(other, np.multiply)

    __rmul__ = __mul__

    def __add__(self, other):
        return self._combine(other, np.add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, np.subtract)

    def __neg__(self):
        return MultiplierField(self.grid, -self.values)


def _check_axis(axis, grid):
    if axis is None or not 1 <= int(axis) <= grid.dim:
        raise ValueError(f"axis must be in 1..{grid.dim}, got {axis!r}")
    return int(axis)


def make_multiplier(
    kind: str,
    grid: FrequencyGrid,
    axis: int | None = None,
    pieces: Sequence[tuple[Region, complex]] = (),
    default: complex = 0.0,
    values: np.ndarray | None = None,
) -> MultiplierField:
    """Build a built-in multiplier on ``grid``.

    ``axis`` is 1-based. ``sgn(0) = 0`` and the Riesz symbol is 0 at the origin.
    For ``piecewise_constant``, later pieces override earlier ones where they
    overlap; bins in no piece get ``default``.
    """
    coords = grid.coords()
    if kind == "identity":
        vals = np.ones(grid.shape, dtype=complex)
    elif kind == "hilbert":
        if grid.dim != 1:
            raise ValueError("hilbert is one-dimensional; use partial_hilbert for d > 1")
        vals = -1j * np.sign(coords[0])
    elif kind == "partial_hilbert":
        j = _check_axis(axis, grid)
        vals = -1j * np.sign(np.broadcast_to(coords[j - 1], grid.shape))
    elif kind == "riesz":
        j = _check_axis(axis, grid)
        norm = np.sqrt(sum(c**2 for c in coords))
        with np.errstate(invalid="ignore", divide="ignore"):
            vals = np.where(norm > 0, -1j * coords[j - 1] / norm, 0.0)
    elif kind == "piecewise_constant":
        vals = np.full(grid.shape, complex(default))
        for region, value in pieces:
            vals[rasterize(region, grid).occupancy] = complex(value)
    elif kind == "custom":
        if values is None:
            raise ValueError("custom multipliers need explicit values")
        vals = values
    else:
        raise ValueError(f"unknown multiplier kind {kind!r}")
    return MultiplierField(grid, np.broadcast_to(vals, grid.shape), kind,
                           axis if kind in ("partial_hilbert", "riesz") else None)


# -- constancy ----------------------------------------------------------------

@dataclass(frozen=True)
class Constancy:
    constant: bool
    value: complex
    max_dev: float


def _on_grid(mask: RegionMask, grid: FrequencyGrid) -> np.ndarray:
    if mask.grid == grid:
        return mask.occupancy
    if mask.grid.contains_grid(grid):
        return mask.occupancy[mask.grid.crop_slices(grid)]
    if grid.contains_grid(mask.grid):
        return mask.embed(grid).occupancy
    raise GridMismatchError("mask and multiplier grids are not concentric with a shared step")


def is_ae_constant_on(m: MultiplierField, mask: RegionMask, tol: float = CONSTANCY_TOL) -> Constancy:
    """Mean of ``m`` over the mask's bins inside ``m``'s window and the largest deviation from it."""
    occ = _on_grid(mask, m.grid)
    vals = m.values[occ]
    if vals.size == 0:
        return Constancy(True, 0j, 0.0)
    mean = complex(vals.mean())
    dev = float(np.max(np.abs(vals - mean)))
    return Constancy(dev <= tol, mean, dev)


@dataclass(frozen=True)
class ClassVerdict:
    class_id: int
    measure: float
    mean: complex
    max_dev: float
    constant: bool

    def to_json(self) -> dict:
        return {
            "class_id": self.class_id,
            "measure": self.measure,
            "mean_re": self.mean.real,
            "mean_im": self.mean.imag,
            "max_dev": self.max_dev,
            "pass": self.constant,
        }


@dataclass(frozen=True)
class StructuralVerdict:
    multiplier: str
    classes: tuple
    tolerance: float
    passed: bool

    @property
    def constants(self) -> list[complex]:
        return [c.mean for c in self.classes]

    @property
    def max_dev(self) -> float:
        return max((c.max_dev for c in self.classes), default=0.0)

    def to_json(self) -> dict:
        return {
            "multiplier": self.multiplier,
            "tolerance": self.tolerance,
            "pass": self.passed,
            "max_dev": self.max_dev,
            "classes": [c.to_json() for c in self.classes],
        }


def structural_bedrosian_check(
    m: MultiplierField, decomp: CharacteristicDecomposition, tol: float = CONSTANCY_TOL
) -> StructuralVerdict:
    """Test a.e.-constancy of ``m`` on every merged class (within ``m``'s window)."""
    if not m.grid.same_step(decomp.grid):
        raise GridMismatchError("multiplier and decomposition grids differ")
    base = decomp.class_labels[decomp.sum_grid.crop_slices(m.grid)]
    cell = m.grid.bin_step**m.grid.dim
    out = []
    for q in range(1, decomp.class_count + 1):
        occ = base == q
        vals = m.values[occ]
        if vals.size:
            mean = complex(vals.mean())
            dev = float(np.max(np.abs(vals - mean)))
        else:
            mean, dev = 0j, 0.0
        out.append(ClassVerdict(q, int(occ.sum()) * cell, mean, dev, dev <= tol))
    return StructuralVerdict(m.label, tuple(out), tol, all(c.constant for c in out))


# -- existence ----------------------------------------------------------------

@dataclass(frozen=True)
class ExistenceReport:
    exists_nontrivial: bool
    reason: str  # multiple_classes | free_region_robust | none
    class_count: int
    classes_in_view: int
    free_region_robust: bool
    witness: MultiplierField | None = None

    def to_json(self) -> dict:
        return {
            "exists": self.exists_nontrivial,
            "reason": self.reason,
            "class_count": self.class_count,
            "classes_in_view": self.classes_in_view,
            "free_region_robust": self.free_region_robust,
            "witness": None if self.witness is None else "piecewise_constant",
        }


def existence_decision(decomp: CharacteristicDecomposition) -> ExistenceReport:
    """Decide whether a non-scalar Bedrosian multiplier exists for the pair.

    One exists when at least two merged classes meet the trusted view (they can
    carry different constants) or the free region inside the view has interior
    bins (the multiplier is unconstrained there). The witness takes value ``q``
    on class ``q`` and 0 elsewhere.
    """
    in_view = decomp.classes_in_view()
    robust = robust_positive_measure(decomp.free_region & decomp.view)
    if len(in_view) >= 2:
        reason = "multiple_classes"
    elif robust:
        reason = "free_region_robust"
    else:
        reason = "none"
    exists = reason != "none"
    witness = None
    if exists:
        base = decomp.class_labels[decomp.sum_grid.crop_slices(decomp.grid)]
        witness = MultiplierField(decomp.grid, base.astype(complex), "piecewise_constant")
    return ExistenceReport(exists, reason, decomp.class_count, len(in_view), robust, witness)


def witness_table(decomp: CharacteristicDecomposition, include_bins: bool = True) -> dict:
    """JSON piecewise table of the existence witness: class ``q`` maps to value ``q``."""
    pieces = []
    for q in range(1, decomp.class_count + 1):
        mask = decomp.class_mask_base(q)
        if mask.is_empty():
            continue
        piece = {"class_id": q, "value_re": float(q), "value_im": 0.0, "measure": mask.measure}
        if include_bins:
            piece["bins"] = mask.indices().tolist()
        pieces.append(piece)
    return {"grid": decomp.grid.to_dict(), "default_re": 0.0, "default_im": 0.0,
            "pieces": pieces}


# -- hyper-quadrants and the partial Hilbert support test ---------------------

def sign_vectors(dim: int):
    return list(itertools.product((1, -1), repeat=dim))


def quadrant_mask(signs, grid: FrequencyGrid) -> np.ndarray:
    occ = np.ones(grid.shape, dtype=bool)
    for c, s in zip(grid.coords(), signs):
        occ = occ & (s * c > 0)
    return occ


def quadrant_of(mask: RegionMask):
    """Sign vector of the single open hyper-quadrant holding ``mask``, else ``None``."""
    if mask.is_empty():
        return None
    pts = mask.indices()
    signs = np.sign(pts)
    if np.any(signs == 0) or np.any(signs != signs[0]):
        return None
    return tuple(int(s) for s in signs[0])


def class_quadrants(decomp: CharacteristicDecomposition) -> list:
    """Quadrant of each merged class restricted to the base window (None if it spans several)."""
    out = []
    for q in range(1, decomp.class_count + 1):
        mask = decomp.class_mask_base(q)
        out.append(() if mask.is_empty() else quadrant_of(mask))
    return out


@dataclass(frozen=True)
class HilbertSupportReport:
    a_bounds: tuple  # a_j per axis, may be inf
    b_bounds: tuple
    corner_bounds: dict  # sign vector -> c^nu_j per axis
    a_inside: bool
    b_outside: bool
    passed: bool

    def to_json(self) -> dict:
        return {
            "a": [_jnum(v) for v in self.a_bounds],
            "b": [_jnum(v) for v in self.b_bounds],
            "c_nu": [
                {"nu": list(nu), "c": [_jnum(v) for v in cs]}
                for nu, cs in self.corner_bounds.items()
            ],
            "a_inside_box": self.a_inside,
            "b_outside_gap": self.b_outside,
            "pass": self.passed,
        }


def _jnum(v: float):
    return "inf" if np.isinf(v) else float(v)


def hilbert_support_test(a: RegionMask, b: RegionMask) -> HilbertSupportReport:
    """Support-set criterion for all partial Hilbert transforms at once.

    With ``B_nu = B`` intersected with the open quadrant ``Q_nu`` and
    ``c^nu_j = min over B_nu of nu_j xi_j`` (``inf`` for empty ``B_nu``),
    ``a_j = min{c^nu_j : nu_j = 1}`` and ``b_j = min{c^nu_j : nu_j = -1}``.
    The pair passes when every ``A`` bin has ``-a_j < xi_j < b_j`` and every
    ``B`` bin has ``xi_j`` outside ``(-b_j, a_j)``, for all ``j``.
    """
    if a.grid != b.grid:
        raise GridMismatchError("A and B must share one grid")
    grid = a.grid
    d = grid.dim
    b_pts = b.coordinates()
    corner = {}
    for nu in sign_vectors(d):
        nu_arr = np.array(nu)
        signed = b_pts * nu_arr
        inside = np.all(signed > 0, axis=1)
        if inside.any():
            corner[nu] = tuple(float(v) for v in signed[inside].min(axis=0))
        else:
            corner[nu] = (np.inf,) * d
    a_bounds = tuple(min(corner[nu][j] for nu in corner if nu[j] == 1) for j in range(d))
    b_bounds = tuple(min(corner[nu][j] for nu in corner if nu[j] == -1) for j in range(d))
    lo = -np.array(a_bounds)
    hi = np.array(b_bounds)
    a_pts = a.coordinates()
    a_inside = bool(np.all((a_pts > lo) & (a_pts < hi)))
    b_outside = bool(np.all((b_pts <= -hi) | (b_pts >= -lo)))
    return HilbertSupportReport(a_bounds, b_bounds, corner, a_inside, b_outside,
                                a_inside and b_outside)
