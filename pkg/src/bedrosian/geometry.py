"""Set geometry on frequency grids.

Rasterization of region descriptors, face-connected component labelling,
exact discrete Minkowski sums, and the characteristic-set decomposition of a
support pair ``(A, B)``: components ``A_i``, ``B_j``, ``C_k`` of ``A``, ``B``
and ``A + B``, the index sets ``J_k`` of ``B`` components whose sums with some
``A_i`` land in ``C_k``, the characteristic sets
``D_k = C_k  u  (union of B_j, j in J_k)``, and their overlap-merged classes.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import numpy as np
from scipy import ndimage, signal
from scipy.cluster.hierarchy import DisjointSet

from .errors import EmptyInputError, GridMismatchError
from .grid import FrequencyGrid, RegionMask
from .regions import Region


def rasterize(desc: Region, grid: FrequencyGrid) -> RegionMask:
    """Evaluate ``desc`` at every bin coordinate of ``grid``.

    ``clipped`` is set when the descriptor is unbounded or its bounding box
    leaves the window ``[-Omega, Omega)^d``.
    """
    occ = np.broadcast_to(desc.contains(grid.coords()), grid.shape)
    bounds = desc.bounds()
    if bounds is None:
        clipped = True
    else:
        lo, hi = (np.broadcast_to(b, (grid.dim,)) for b in bounds)
        clipped = bool(np.any(lo < -grid.half_width) or np.any(hi > grid.half_width))
    return RegionMask(grid, occ, clipped)


# -- components ---------------------------------------------------------------

def face_structure(dim: int) -> np.ndarray:
    """Von Neumann neighbourhood: bins adjacent along exactly one axis."""
    return ndimage.generate_binary_structure(dim, 1)


@dataclass(frozen=True, eq=False)
class ComponentLabeling:
    """Labels 1..count per occupied bin, 0 on background.

    Labels follow the order in which a lexicographic scan first meets each
    component; ``representatives[i - 1]`` is that first bin (as bin indices).
    """

    grid: FrequencyGrid
    labels: np.ndarray
    count: int
    representatives: tuple
    sizes: np.ndarray

    def mask(self, label: int) -> RegionMask:
        return RegionMask(self.grid, self.labels == label)

    def masks(self):
        return [self.mask(i) for i in range(1, self.count + 1)]


def connected_components(mask: RegionMask) -> ComponentLabeling:
    """Face-adjacency flood-fill labelling of ``mask``."""
    raw, n = ndimage.label(mask.occupancy, structure=face_structure(mask.grid.dim))
    flat = raw.ravel()
    if n:
        labels_present, first = np.unique(flat, return_index=True)
        # drop background, order components by first-visited bin
        keep = labels_present > 0
        labels_present, first = labels_present[keep], first[keep]
        order = np.argsort(first, kind="stable")
        remap = np.zeros(n + 1, dtype=np.int32)
        remap[labels_present[order]] = np.arange(1, n + 1, dtype=np.int32)
        labels = remap[raw]
        reps = tuple(
            mask.grid.index_of(np.unravel_index(p, mask.grid.shape)) for p in first[order]
        )
        sizes = np.bincount(labels.ravel(), minlength=n + 1)[1:]
    else:
        labels = raw.astype(np.int32)
        reps = ()
        sizes = np.zeros(0, dtype=np.int64)
    labels.setflags(write=False)
    return ComponentLabeling(mask.grid, labels, int(n), reps, sizes)


# -- Minkowski sum ------------------------------------------------------------

def minkowski_sum(a: RegionMask, b: RegionMask, out: FrequencyGrid | None = None) -> RegionMask:
    """Bin-exact ``A + B`` on ``out`` (default: the doubled window of ``a.grid``).

    Occupancy counts are integers, so the FFT convolution is thresholded at 1/2;
    floating-point error stays orders of magnitude below that for the grid
    sizes supported here.
    """
    if a.grid != b.grid:
        raise GridMismatchError("minkowski_sum needs both masks on one grid")
    grid = a.grid
    if out is None:
        out = grid.doubled()
    if not out.same_step(grid):
        raise GridMismatchError("output grid must share the input bin step")
    if out.bins_per_axis < 2 * grid.bins_per_axis:
        raise GridMismatchError("output window must have at least twice the input half-width")
    occ = np.zeros(out.shape, dtype=bool)
    clipped = a.clipped or b.clipped
    if a.is_empty() or b.is_empty():
        return RegionMask(out, occ, clipped)
    # crop both inputs to their bounding boxes to keep the transform small
    sa, oa = _bbox(a.occupancy)
    sb, ob = _bbox(b.occupancy)
    conv = signal.fftconvolve(a.occupancy[sa].astype(float), b.occupancy[sb].astype(float))
    # a position p and b position q sum to bin (p - N/2) + (q - N/2)
    shift = out.offset - 2 * grid.offset
    start = tuple(x + y + shift for x, y in zip(oa, ob))
    region = tuple(slice(s, s + n) for s, n in zip(start, conv.shape))
    occ[region] = conv > 0.5
    return RegionMask(out, occ, clipped)


def _bbox(occ: np.ndarray):
    idx = np.argwhere(occ)
    lo, hi = idx.min(axis=0), idx.max(axis=0) + 1
    return tuple(slice(l, h) for l, h in zip(lo, hi)), tuple(int(l) for l in lo)


# -- characteristic decomposition --------------------------------------------

@dataclass(frozen=True, eq=False)
class CharacteristicDecomposition:
    """Characteristic sets of a support pair and their merged classes.

    Component ids, ``k`` and class ids are 1-based. ``sum_grid`` is the
    doubled window that holds ``A + B`` and every ``D_k``. ``class_labels``
    assigns each bin of ``sum_grid`` its merged class (0 when in no ``D_k``).
    ``view`` marks the bins of the base window whose verdicts are not affected
    by window truncation: the whole window for bounded inputs, the central
    half-window when either input is clipped.
    """

    a: RegionMask
    b: RegionMask
    sum_mask: RegionMask
    a_components: ComponentLabeling
    b_components: ComponentLabeling
    sum_components: ComponentLabeling
    index_sets: tuple  # J_k as frozensets of B component ids, position k - 1
    class_members: tuple  # tuple of k-tuples per merged class
    class_labels: np.ndarray
    view: RegionMask
    free_region: RegionMask

    @property
    def grid(self) -> FrequencyGrid:
        return self.a.grid

    @property
    def sum_grid(self) -> FrequencyGrid:
        return self.sum_mask.grid

    @property
    def clipped(self) -> bool:
        return self.a.clipped or self.b.clipped

    @property
    def set_count(self) -> int:
        return self.sum_components.count

    @property
    def class_count(self) -> int:
        return len(self.class_members)

    def characteristic_set(self, k: int) -> RegionMask:
        """``D_k`` on the doubled window."""
        b_lab = self._b_labels_embedded
        occ = (self.sum_components.labels == k) | np.isin(b_lab, list(self.index_sets[k - 1]))
        return RegionMask(self.sum_grid, occ, self.clipped)

    def class_mask(self, q: int) -> RegionMask:
        return RegionMask(self.sum_grid, self.class_labels == q, self.clipped)

    def class_mask_base(self, q: int) -> RegionMask:
        """Merged class ``q`` restricted to the base window."""
        return self.class_mask(q).crop(self.grid)

    def classes_in_view(self) -> list[int]:
        base = self.class_labels[self.sum_grid.crop_slices(self.grid)]
        present = np.unique(base[self.view.occupancy])
        return [int(q) for q in present if q > 0]

    @cached_property
    def _b_labels_embedded(self) -> np.ndarray:
        out = np.zeros(self.sum_grid.shape, dtype=np.int32)
        out[self.sum_grid.crop_slices(self.grid)] = self.b_components.labels
        return out

    def summary(self) -> dict:
        return {
            "a_component_count": self.a_components.count,
            "b_component_count": self.b_components.count,
            "sum_component_count": self.sum_components.count,
            "characteristic_set_count": self.set_count,
            "class_count": self.class_count,
            "classes_in_view": len(self.classes_in_view()),
            "index_sets": [sorted(int(j) for j in js) for js in self.index_sets],
            "classes": [list(m) for m in self.class_members],
            "free_region_measure": self.free_region.measure,
            "free_region_in_view_measure": (self.free_region & self.view).measure,
            "a_clipped": self.a.clipped,
            "b_clipped": self.b.clipped,
            "view": "full_window" if not self.clipped else "central_half_window",
        }


def trusted_view(grid: FrequencyGrid, clipped: bool) -> RegionMask:
    if not clipped:
        return RegionMask(grid, np.ones(grid.shape, dtype=bool))
    return RegionMask(grid, grid.half_window())


def characteristic_decomposition(a: RegionMask, b: RegionMask) -> CharacteristicDecomposition:
    """Compute components, ``J_k``, ``D_k`` and merged classes of ``(A, B)``.

    Each pair ``(A_i, B_j)`` is assigned to the component of ``A + B`` that
    contains the sum of their first bins: ``A_i + B_j`` is connected, so it
    sits inside exactly one component.
    """
    if a.grid != b.grid:
        raise GridMismatchError("A and B must share one grid")
    if a.is_empty():
        raise EmptyInputError("set A has no occupied bin")
    if b.is_empty():
        raise EmptyInputError("set B has no occupied bin")
    grid = a.grid
    big = grid.doubled()
    s = minkowski_sum(a, b, big)
    a_cc = connected_components(a)
    b_cc = connected_components(b)
    s_cc = connected_components(s)

    index_sets = [set() for _ in range(s_cc.count)]
    ks_of_j = [set() for _ in range(b_cc.count)]
    for alpha in a_cc.representatives:
        for j, beta in enumerate(b_cc.representatives, start=1):
            pos = big.position_of(np.add(alpha, beta))
            k = int(s_cc.labels[pos])
            if k == 0:
                raise AssertionError("representative sum missing from A + B")
            index_sets[k - 1].add(j)
            ks_of_j[j - 1].add(k)

    # D_k and D_k' overlap iff they share some B_j, or some B_j in D_k meets C_k'
    ds = DisjointSet(range(1, s_cc.count + 1))
    b_emb = np.zeros(big.shape, dtype=np.int64)
    b_emb[big.crop_slices(grid)] = b_cc.labels
    both = (b_emb > 0) & (s_cc.labels > 0)
    hits = np.unique(b_emb[both] * (s_cc.count + 1) + s_cc.labels[both])
    for code in hits:
        j, k_hit = divmod(int(code), s_cc.count + 1)
        for k in ks_of_j[j - 1]:
            ds.merge(k, k_hit)
    for ks in ks_of_j:
        ks = sorted(ks)
        for k in ks[1:]:
            ds.merge(ks[0], k)

    groups = sorted((tuple(sorted(g)) for g in ds.subsets()), key=lambda g: g[0])
    class_of_k = np.zeros(s_cc.count + 1, dtype=np.int32)
    for q, members in enumerate(groups, start=1):
        class_of_k[list(members)] = q
    class_of_j = np.zeros(b_cc.count + 1, dtype=np.int32)
    for j, ks in enumerate(ks_of_j, start=1):
        class_of_j[j] = class_of_k[min(ks)]
    labels = class_of_k[s_cc.labels]
    from_b = class_of_j[b_emb]
    labels = np.where(labels > 0, labels, from_b)
    labels.setflags(write=False)

    clipped = a.clipped or b.clipped
    base = labels[big.crop_slices(grid)]
    free = RegionMask(grid, base == 0, clipped)
    return CharacteristicDecomposition(
        a=a,
        b=b,
        sum_mask=s,
        a_components=a_cc,
        b_components=b_cc,
        sum_components=s_cc,
        index_sets=tuple(frozenset(js) for js in index_sets),
        class_members=tuple(groups),
        class_labels=labels,
        view=trusted_view(grid, clipped),
        free_region=free,
    )


# -- measure surrogates ---------------------------------------------------------

def interior(mask: RegionMask) -> np.ndarray:
    """Bins whose whole 3^d neighbourhood lies inside the window and the mask."""
    full = ndimage.generate_binary_structure(mask.grid.dim, mask.grid.dim)
    return ndimage.binary_erosion(mask.occupancy, structure=full, border_value=0)


def robust_positive_measure(mask: RegionMask) -> bool:
    """Grid reading of "positive Lebesgue measure": some bin is interior.

    Window-edge bins never count as interior, so a one-bin strip along the
    border (a truncation artifact) does not register. Diagonal neighbours are
    required too: with face neighbours only, the crossing of two coordinate
    hyperplanes (a null set) would have interior bins.
    """
    return bool(interior(mask).any())


def essential_set(mask: RegionMask) -> RegionMask:
    """Essential set of a rasterized set.

    Every occupied bin stands for a cell of positive measure, so the essential
    set coincides with the mask at grid resolution.
    """
    return mask


# -- export -------------------------------------------------------------------

def pgm_bytes(occupancy: np.ndarray) -> bytes:
    """Encode a 2-D boolean array as binary PGM (P5, maxval 255, 255 = occupied).

    Rows are written with the second axis horizontal and the first axis
    increasing downward.
    """
    arr = np.asarray(occupancy)
    if arr.ndim != 2:
        raise ValueError("PGM export needs a 2-D array")
    data = np.where(arr, 255, 0).astype(np.uint8)
    h, w = data.shape
    return f"P5\n{w} {h}\n255\n".encode("ascii") + data.tobytes()


def write_pgm(occupancy: np.ndarray, path) -> Path:
    path = Path(path)
    path.write_bytes(pgm_bytes(occupancy))
    return path


def read_pgm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    parts = raw.split(maxsplit=4)
    if parts[0] != b"P5":
        raise ValueError("not a binary PGM file")
    w, h, maxval = int(parts[1]), int(parts[2]), int(parts[3])
    data = np.frombuffer(parts[4], dtype=np.uint8, count=w * h)
    return data.reshape(h, w) == maxval


def central_slices(occupancy: np.ndarray) -> dict[str, np.ndarray]:
    """Axis-aligned slices through bin 0 of a 3-D array, keyed by the fixed axis."""
    n = occupancy.shape[0]
    mid = n // 2
    return {
        "axis1": occupancy[mid, :, :],
        "axis2": occupancy[:, mid, :],
        "axis3": occupancy[:, :, mid],
    }
