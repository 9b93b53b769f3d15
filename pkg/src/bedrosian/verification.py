"""Numerical verification of Bedrosian identities with band-limited signals.

Spectra are sampled on the bins of a :class:`FrequencyGrid`; the dual spatial
grid has ``N`` samples per axis with spacing ``pi / Omega`` so that the DFT
maps one onto the other exactly. A sample is ``f(x_n) = sum_k F_k exp(i xi_k . x_n)``.

Products of signals whose spectra sit in the central half-window have spectra
inside the full window, so the circular convolution done implicitly by the
DFT equals the linear one and ``T(fg) - f T(g)`` is free of aliasing.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import AntiAliasingError, EmptyInputError, GridMismatchError
from .grid import FrequencyGrid, RegionMask
from .hull import convex_hull, hausdorff, minkowski_hull
from .multipliers import MultiplierField

#: Default pass tolerance for the normalized residual.
RESIDUAL_TOL = 1e-9
_EPS = 1e-30


def to_samples(spectrum: np.ndarray) -> np.ndarray:
    """Centred spectrum amplitudes -> spatial samples."""
    n = spectrum.size
    return np.fft.ifftn(np.fft.ifftshift(spectrum)) * n


def to_spectrum(samples: np.ndarray) -> np.ndarray:
    """Spatial samples -> centred spectrum amplitudes."""
    return np.fft.fftshift(np.fft.fftn(samples)) / samples.size


@dataclass(frozen=True, eq=False)
class SpatialSignal:
    grid: FrequencyGrid
    samples: np.ndarray

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex, copy=True)
        if s.shape != self.grid.shape:
            raise GridMismatchError("sample array does not match the grid shape")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def spatial_step(self) -> float:
        return self.grid.spatial_step

    @property
    def norm2(self) -> float:
        """Discrete L2 norm with cell volume ``dx^d``."""
        return float(np.sqrt(np.sum(np.abs(self.samples) ** 2) * self.spatial_step**self.grid.dim))

    def spectrum(self) -> np.ndarray:
        return to_spectrum(self.samples)

    def spectral_norm2(self) -> float:
        """Same norm computed from the spectrum (Parseval)."""
        period = self.grid.bins_per_axis * self.spatial_step
        return float(np.sqrt(np.sum(np.abs(self.spectrum()) ** 2) * period**self.grid.dim))

    def positions(self) -> np.ndarray:
        """Sample positions ``n * dx``, ``n = 0..N-1``, along one axis."""
        return np.arange(self.grid.bins_per_axis) * self.spatial_step

    def __mul__(self, other):
        if isinstance(other, SpatialSignal):
            if other.grid != self.grid:
                raise GridMismatchError("signals live on different grids")
            other = other.samples
        return SpatialSignal(self.grid, self.samples * other)

    __rmul__ = __mul__

    def __add__(self, other):
        if other.grid != self.grid:
            raise GridMismatchError("signals live on different grids")
        return SpatialSignal(self.grid, self.samples + other.samples)

    def __sub__(self, other):
        if other.grid != self.grid:
            raise GridMismatchError("signals live on different grids")
        return SpatialSignal(self.grid, self.samples - other.samples)

    def to_bytes(self) -> bytes:
        """Samples as little-endian interleaved re/im float64, C order."""
        return self.samples.astype("<c16").tobytes()

    def metadata(self) -> dict:
        return {
            "grid": self.grid.to_dict(),
            "shape": list(self.grid.shape),
            "spatial_step": self.spatial_step,
            "dtype": "float64 little-endian, interleaved re/im",
            "order": "C",
            "convention": "f(x_n) = sum_k F_k exp(i xi_k . x_n), x_n = n * spatial_step",
        }

    def save(self, path) -> tuple[Path, Path]:
        """Write ``<path>`` (raw samples) and the ``<path>.json`` sidecar."""
        path = Path(path)
        path.write_bytes(self.to_bytes())
        sidecar = path.with_name(path.name + ".json")
        sidecar.write_text(json.dumps(self.metadata(), indent=2) + "\n")
        return path, sidecar

    @classmethod
    def load(cls, path) -> "SpatialSignal":
        path = Path(path)
        meta = json.loads(path.with_name(path.name + ".json").read_text())
        g = meta["grid"]
        grid = FrequencyGrid(g["dim"], g["bins_per_axis"], g["half_width"])
        data = np.frombuffer(path.read_bytes(), dtype="<c16").reshape(grid.shape)
        return cls(grid, data)


# -- synthesis ----------------------------------------------------------------

def within_half_window(mask: RegionMask) -> bool:
    return not np.any(mask.occupancy & ~mask.grid.half_window())


def clip_to_half_window(mask: RegionMask) -> tuple[RegionMask, bool]:
    """Restrict ``mask`` to the central half-window; report whether bins were dropped."""
    half = mask.grid.half_window()
    dropped = bool(np.any(mask.occupancy & ~half))
    return RegionMask(mask.grid, mask.occupancy & half, mask.clipped), dropped


def gaussian_weight(grid: FrequencyGrid) -> np.ndarray:
    """``exp(-|xi|^2 / (2 sigma^2))`` with ``sigma = Omega / 4``."""
    sigma = grid.half_width / 4.0
    return np.exp(-sum(c**2 for c in grid.coords()) / (2.0 * sigma**2))


def synthesize_spectrum(mask: RegionMask, seed: int) -> np.ndarray:
    """Centred spectrum supported exactly on ``mask``.

    Each occupied bin gets ``gaussian_weight * w`` with ``|w|`` uniform on
    [0.5, 1] and a uniform phase, drawn from ``numpy.random.default_rng(seed)``
    (PCG64) over the whole grid in C order, so values do not depend on the mask.
    """
    if not within_half_window(mask):
        raise AntiAliasingError("mask reaches outside the central half-window; clip it first")
    grid = mask.grid
    rng = np.random.default_rng(seed)
    amp = rng.uniform(0.5, 1.0, grid.shape)
    phase = rng.uniform(0.0, 2.0 * np.pi, grid.shape)
    spec = np.zeros(grid.shape, dtype=complex)
    occ = mask.occupancy
    spec[occ] = (gaussian_weight(grid) * amp * np.exp(1j * phase))[occ]
    return spec


def synthesize_bandlimited(mask: RegionMask, seed: int, grid: FrequencyGrid | None = None) -> SpatialSignal:
    """Random band-limited signal whose spectrum is supported on ``mask``."""
    if grid is not None and grid != mask.grid:
        raise GridMismatchError("mask does not live on the requested grid")
    return SpatialSignal(mask.grid, to_samples(synthesize_spectrum(mask, seed)))


def apply_multiplier(m: MultiplierField, f: SpatialSignal) -> SpatialSignal:
    """``T f`` with ``(Tf)^ = m f^``."""
    if m.grid != f.grid:
        raise GridMismatchError("multiplier and signal grids differ")
    out = np.fft.ifftn(np.fft.fftn(f.samples) * np.fft.ifftshift(m.values))
    return SpatialSignal(f.grid, out)


def _check_band(f: SpatialSignal, name: str, rel: float = 1e-9):
    spec = np.abs(f.spectrum())
    peak = spec.max()
    if peak == 0:
        return
    outside = spec[~f.grid.half_window()]
    if outside.size and outside.max() > rel * peak:
        raise AntiAliasingError(f"{name} has spectral content outside the central half-window")


def bedrosian_residual(m: MultiplierField, f: SpatialSignal, g: SpatialSignal) -> float:
    """``||T(fg) - f T(g)|| / max(||fg|| sup|m|, 1e-30)``."""
    if not (m.grid == f.grid == g.grid):
        raise GridMismatchError("multiplier and signals must share one grid")
    _check_band(f, "f")
    _check_band(g, "g")
    fg = f * g
    diff = apply_multiplier(m, fg) - f * apply_multiplier(m, g)
    return diff.norm2 / max(fg.norm2 * m.sup_norm, _EPS)


@dataclass(frozen=True)
class Trial:
    seed: int
    residual: float


@dataclass(frozen=True)
class VerificationReport:
    trials: tuple
    tolerance: float
    anti_aliasing_ok: bool
    grid: FrequencyGrid
    multiplier: str
    warnings: tuple = ()

    @property
    def max_residual(self) -> float:
        return max((t.residual for t in self.trials), default=0.0)

    @property
    def passed(self) -> bool:
        return self.anti_aliasing_ok and self.max_residual <= self.tolerance

    def to_json(self) -> dict:
        return {
            "multiplier": self.multiplier,
            "grid": self.grid.to_dict(),
            "semantics": "sampled trials: finitely many seeded signal pairs, not a proof for all f, g",
            "trials": [{"seed": t.seed, "residual": t.residual} for t in self.trials],
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "anti_aliasing_ok": self.anti_aliasing_ok,
            "warnings": list(self.warnings),
            "pass": self.passed,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["seed", "residual"])
        for t in self.trials:
            w.writerow([t.seed, repr(t.residual)])
        return buf.getvalue()


def signal_pair(a: RegionMask, b: RegionMask, seed: int) -> tuple[SpatialSignal, SpatialSignal]:
    """The ``(f, g)`` pair used by trial ``seed``: streams ``2*seed`` and ``2*seed + 1``."""
    return synthesize_bandlimited(a, 2 * seed), synthesize_bandlimited(b, 2 * seed + 1)


def run_trials(
    m: MultiplierField,
    a: RegionMask,
    b: RegionMask,
    trials: int = 10,
    seed: int = 0,
    tol: float = RESIDUAL_TOL,
) -> VerificationReport:
    """Residuals for ``trials`` seeded signal pairs; masks are clipped to the half-window."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    warnings = []
    a, cut_a = clip_to_half_window(a)
    b, cut_b = clip_to_half_window(b)
    if cut_a:
        warnings.append("set_a clipped to the central half-window")
    if cut_b:
        warnings.append("set_b clipped to the central half-window")
    ok = within_half_window(a) and within_half_window(b)
    out = []
    for t in range(trials):
        s = seed + t
        f, g = signal_pair(a, b, s)
        out.append(Trial(s, bedrosian_residual(m, f, g)))
    return VerificationReport(tuple(out), tol, ok, m.grid, m.label, tuple(warnings))


# -- independent oracles --------------------------------------------------------

def _shifted(shift, n):
    """Slices ``src``, ``dst`` with ``dst = src + shift`` inside ``[0, n)`` on every axis."""
    src, dst = [], []
    for s in shift:
        lo = max(0, -s)
        hi = min(n, n - s)
        src.append(slice(lo, hi))
        dst.append(slice(lo + s, hi + s))
    return tuple(src), tuple(dst)


@dataclass(frozen=True)
class PointwiseResult:
    passed: bool
    worst_xi: tuple | None
    worst_dev: float

    def to_json(self) -> dict:
        return {"pass": self.passed, "worst_xi": None if self.worst_xi is None else list(self.worst_xi),
                "worst_dev": self.worst_dev}


def pointwise_criterion_oracle(
    m: MultiplierField, a: RegionMask, b: RegionMask, tol: float = 1e-9
) -> PointwiseResult:
    """Check ``m(eta) = m(xi)`` for every ``xi`` in the window and ``eta`` in ``(xi - A) & B``.

    Works pair by pair in bin-index arithmetic, never forming components or
    Minkowski sums. Pairs whose sum falls outside the window are dropped.
    """
    if not (m.grid == a.grid == b.grid):
        raise GridMismatchError("multiplier and masks must share one grid")
    n = m.grid.bins_per_axis
    vals = m.values
    worst, worst_xi = 0.0, None
    # iterate over the sparser set; the other is shifted as a whole
    if a.count <= b.count:
        loop, other, other_is_b = a, b, True
    else:
        loop, other, other_is_b = b, a, False
    for shift in loop.indices():
        src, dst = _shifted(shift, n)
        sel = other.occupancy[src]
        if not sel.any():
            continue
        if other_is_b:
            eta_vals = vals[src]  # eta = xi - alpha runs over B
        else:
            eta_vals = np.broadcast_to(vals[m.grid.position_of(shift)], sel.shape)
        dev = np.where(sel, np.abs(eta_vals - vals[dst]), -1.0)
        i = int(np.argmax(dev))
        if dev.flat[i] > worst or worst_xi is None and dev.flat[i] >= 0:
            worst = float(dev.flat[i])
            local = np.unravel_index(i, dev.shape)
            pos = tuple(d.start + l for d, l in zip(dst, local))
            worst_xi = m.grid.index_of(pos)
    return PointwiseResult(worst <= tol, worst_xi, worst)


@dataclass(frozen=True)
class TitchmarshResult:
    passed: bool
    hull_discrepancy: float
    support_count: int

    def to_json(self) -> dict:
        return {"pass": self.passed, "hull_discrepancy": self.hull_discrepancy,
                "support_count": self.support_count}


def direct_convolution(phi: np.ndarray, psi: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    """Linear convolution of two centred spectra on the doubled window, by shift-and-add."""
    big = grid.doubled()
    out = np.zeros(big.shape, dtype=np.result_type(phi, psi))
    base = big.crop_slices(grid)
    if np.count_nonzero(phi) > np.count_nonzero(psi):
        phi, psi = psi, phi
    for pos in np.argwhere(phi != 0):
        k = pos - grid.offset
        region = tuple(slice(s.start + int(kk), s.stop + int(kk)) for s, kk in zip(base, k))
        out[region] += phi[tuple(pos)] * psi
    return out


def titchmarsh_check(a: RegionMask, b: RegionMask, threshold: float = 1e-9) -> TitchmarshResult:
    """Compare the hull of ``supp(phi * psi)`` with ``hull(A) + hull(B)``.

    ``phi`` and ``psi`` are Gaussian-weighted indicators of ``A`` and ``B``;
    their convolution is computed directly and thresholded at
    ``threshold * peak``. Passes when the Hausdorff distance is at most 1.5 bins.
    """
    if a.grid != b.grid:
        raise GridMismatchError("A and B must share one grid")
    if a.is_empty() or b.is_empty():
        raise EmptyInputError("titchmarsh_check needs nonempty sets")
    if a.clipped or b.clipped:
        raise ValueError("titchmarsh_check needs bounded (unclipped) sets")
    grid = a.grid
    if grid.dim > 2:
        raise ValueError("titchmarsh_check supports d <= 2")
    w = gaussian_weight(grid)
    conv = direct_convolution(np.where(a.occupancy, w, 0.0), np.where(b.occupancy, w, 0.0), grid)
    big = grid.doubled()
    support = np.argwhere(conv > threshold * conv.max()) - big.offset
    step = grid.bin_step
    hull_conv = convex_hull(support * step)
    hull_sum = minkowski_hull(convex_hull(a.coordinates()), convex_hull(b.coordinates()))
    dist = hausdorff(hull_conv, hull_sum)
    return TitchmarshResult(dist <= 1.5 * step, dist, len(support))
