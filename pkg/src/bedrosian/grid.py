"""Discrete frequency windows and boolean bin masks.

A :class:`FrequencyGrid` with ``N`` bins per axis and half-width ``Omega``
places bin index ``k`` in ``{-N/2, ..., N/2 - 1}`` at coordinate ``k * step``
with ``step = 2 * Omega / N``. Arrays indexed by bins are stored in centred
order: array position ``k + N/2`` holds bin ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import GridMismatchError

#: Default (bins_per_axis, half_width) per dimension.
DEFAULT_GRIDS = {1: (4096, 32.0), 2: (512, 16.0), 3: (64, 8.0)}


@dataclass(frozen=True)
class FrequencyGrid:
    dim: int
    bins_per_axis: int
    half_width: float

    def __post_init__(self):
        if not isinstance(self.dim, (int, np.integer)) or not 1 <= self.dim <= 3:
            raise ValueError(f"dim must be 1, 2 or 3, got {self.dim!r}")
        n = self.bins_per_axis
        if not isinstance(n, (int, np.integer)) or n < 8 or n % 2:
            raise ValueError(f"bins_per_axis must be an even integer >= 8, got {n!r}")
        if not np.isfinite(self.half_width) or self.half_width <= 0:
            raise ValueError(f"half_width must be positive, got {self.half_width!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "bins_per_axis", int(n))
        object.__setattr__(self, "half_width", float(self.half_width))

    @classmethod
    def default(cls, dim: int) -> "FrequencyGrid":
        n, omega = DEFAULT_GRIDS[dim]
        return cls(dim, n, omega)

    @property
    def bin_step(self) -> float:
        return 2.0 * self.half_width / self.bins_per_axis

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.bins_per_axis,) * self.dim

    @property
    def size(self) -> int:
        return self.bins_per_axis**self.dim

    @property
    def offset(self) -> int:
        """Array position of bin index 0 along each axis."""
        return self.bins_per_axis // 2

    @property
    def spatial_step(self) -> float:
        return np.pi / self.half_width

    def indices(self) -> np.ndarray:
        """Bin indices along one axis, ``-N/2 .. N/2-1``."""
        n = self.bins_per_axis
        return np.arange(-n // 2, n // 2)

    def axis_coords(self) -> np.ndarray:
        return self.indices() * self.bin_step

    def coords(self) -> tuple[np.ndarray, ...]:
        """Broadcastable coordinate arrays, one per axis (sparse meshgrid)."""
        c = self.axis_coords()
        return tuple(np.meshgrid(*([c] * self.dim), indexing="ij", sparse=True))

    def dense_coords(self) -> np.ndarray:
        """Array of shape ``(dim, N, ..., N)`` with every bin coordinate."""
        return np.stack(np.broadcast_arrays(*self.coords()))

    def coordinate_of(self, index) -> np.ndarray:
        return np.asarray(index, dtype=float) * self.bin_step

    def position_of(self, index) -> tuple[int, ...]:
        """Array position of a bin index tuple."""
        return tuple(int(k) + self.offset for k in np.atleast_1d(index))

    def index_of(self, position) -> tuple[int, ...]:
        return tuple(int(p) - self.offset for p in position)

    def doubled(self) -> "FrequencyGrid":
        """Concentric grid with the same step and twice the half-width."""
        return FrequencyGrid(self.dim, 2 * self.bins_per_axis, 2 * self.half_width)

    def same_step(self, other: "FrequencyGrid") -> bool:
        return self.dim == other.dim and np.isclose(
            self.bin_step, other.bin_step, rtol=1e-12, atol=0.0
        )

    def contains_grid(self, other: "FrequencyGrid") -> bool:
        """True when ``other`` is a concentric sub-window with the same step."""
        return self.same_step(other) and self.bins_per_axis >= other.bins_per_axis

    def crop_slices(self, inner: "FrequencyGrid") -> tuple[slice, ...]:
        """Slices of this grid's arrays that cover the concentric ``inner`` window."""
        if not self.contains_grid(inner):
            raise GridMismatchError(f"{inner} is not a sub-window of {self}")
        start = (self.bins_per_axis - inner.bins_per_axis) // 2
        return (slice(start, start + inner.bins_per_axis),) * self.dim

    def half_window(self) -> np.ndarray:
        """Boolean array of the central half-window ``[-Omega/2, Omega/2)^d``."""
        k = self.indices()
        n = self.bins_per_axis
        inside = (k >= -n // 4) & (k < n // 4)
        out = np.ones(self.shape, dtype=bool)
        for axis in range(self.dim):
            shape = [1] * self.dim
            shape[axis] = n
            out &= inside.reshape(shape)
        return out

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "bins_per_axis": self.bins_per_axis,
            "half_width": self.half_width,
            "bin_step": self.bin_step,
        }


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class RegionMask:
    """Occupancy of the bins of ``grid``; ``clipped`` marks window truncation."""

    grid: FrequencyGrid
    occupancy: np.ndarray
    clipped: bool = False
    _count: int = field(init=False, repr=False)

    def __post_init__(self):
        occ = np.array(self.occupancy, dtype=bool, copy=True)
        if occ.shape != self.grid.shape:
            raise GridMismatchError(
                f"occupancy shape {occ.shape} does not match grid shape {self.grid.shape}"
            )
        object.__setattr__(self, "occupancy", _frozen(occ))
        object.__setattr__(self, "clipped", bool(self.clipped))
        object.__setattr__(self, "_count", int(occ.sum()))

    @classmethod
    def empty(cls, grid: FrequencyGrid) -> "RegionMask":
        return cls(grid, np.zeros(grid.shape, dtype=bool))

    @classmethod
    def full(cls, grid: FrequencyGrid) -> "RegionMask":
        return cls(grid, np.ones(grid.shape, dtype=bool), clipped=True)

    @classmethod
    def from_indices(cls, grid, indices, clipped=False) -> "RegionMask":
        occ = np.zeros(grid.shape, dtype=bool)
        for idx in indices:
            occ[grid.position_of(idx)] = True
        return cls(grid, occ, clipped)

    @property
    def count(self) -> int:
        return self._count

    @property
    def measure(self) -> float:
        return self._count * self.grid.bin_step**self.grid.dim

    def is_empty(self) -> bool:
        return self._count == 0

    def indices(self) -> np.ndarray:
        """Occupied bin indices as an ``(count, dim)`` integer array, lexicographic."""
        return np.argwhere(self.occupancy) - self.grid.offset

    def coordinates(self) -> np.ndarray:
        return self.indices() * self.grid.bin_step

    def _check(self, other: "RegionMask"):
        if self.grid != other.grid:
            raise GridMismatchError(f"masks live on different grids: {self.grid} vs {other.grid}")

    def __or__(self, other):
        self._check(other)
        return RegionMask(self.grid, self.occupancy | other.occupancy,
                          self.clipped or other.clipped)

    def __and__(self, other):
        self._check(other)
        return RegionMask(self.grid, self.occupancy & other.occupancy,
                          self.clipped and other.clipped)

    def __sub__(self, other):
        self._check(other)
        return RegionMask(self.grid, self.occupancy & ~other.occupancy, self.clipped)

    def __invert__(self):
        return RegionMask(self.grid, ~self.occupancy, clipped=True)

    def __eq__(self, other):
        if not isinstance(other, RegionMask):
            return NotImplemented
        return self.grid == other.grid and np.array_equal(self.occupancy, other.occupancy)

    __hash__ = None

    def issubset(self, other: "RegionMask") -> bool:
        self._check(other)
        return not np.any(self.occupancy & ~other.occupancy)

    def reflect(self) -> "RegionMask":
        """Bin-wise reflection ``k -> -k``; bin ``-N/2`` has no mirror and is dropped."""
        occ = np.zeros_like(self.occupancy)
        inner = (slice(1, None),) * self.grid.dim
        occ[inner] = self.occupancy[inner][(slice(None, None, -1),) * self.grid.dim]
        return RegionMask(self.grid, occ, self.clipped)

    def embed(self, outer: FrequencyGrid) -> "RegionMask":
        """Same bins on a larger concentric grid."""
        occ = np.zeros(outer.shape, dtype=bool)
        occ[outer.crop_slices(self.grid)] = self.occupancy
        return RegionMask(outer, occ, self.clipped)

    def crop(self, inner: FrequencyGrid) -> "RegionMask":
        """Restriction to a smaller concentric grid."""
        return RegionMask(inner, self.occupancy[self.grid.crop_slices(inner)], self.clipped)

    def to_json_dict(self) -> dict:
        return {
            "grid": self.grid.to_dict(),
            "clipped": self.clipped,
            "bins": self.indices().tolist(),
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "RegionMask":
        g = data["grid"]
        grid = FrequencyGrid(g["dim"], g["bins_per_axis"], g["half_width"])
        return cls.from_indices(grid, data["bins"], data.get("clipped", False))
