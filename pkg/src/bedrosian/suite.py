"""Built-in support-set examples with their known categorical verdicts.

Each example fixes a configuration on the default grid and a list of checks
comparing the computed decomposition against the continuum answer. Mask
comparisons are made inside the trusted view and tolerate disagreement only
on the one-bin band around the boundary of the expected set, where
rasterization decides membership.

Interval endpoints are chosen off the bin lattice (1.02 rather than 1) so
that open and closed versions of the same set rasterize identically.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

from .config import AnalysisConfig
from .geometry import (CharacteristicDecomposition, characteristic_decomposition,
                       rasterize, robust_positive_measure)
from .grid import FrequencyGrid
from .multipliers import (existence_decision, hilbert_support_test, make_multiplier,
                          quadrant_mask, sign_vectors, structural_bedrosian_check)
from .regions import Ball, Box, Complement, Quadrant, box_gap_complement

EDGE = 1.02  # a_j = b_j for the rectangular examples
ZETA = (0.3, 0.2)
RADIUS = 1.0
EPS0 = 1.0


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class Example:
    key: str
    title: str
    config: AnalysisConfig
    expected: dict


def _config(dim, a, b, description) -> AnalysisConfig:
    return AnalysisConfig(FrequencyGrid.default(dim), a, b, description=description)


def _build() -> dict[str, Example]:
    zeta1, zeta2 = ZETA[:1], ZETA
    box_lo, box_hi = (-EDGE, -EDGE), (EDGE, EDGE)
    items = [
        Example("4.1i", "balls, center outside the ball",
                _config(2, Ball((1.5, 0.0), RADIUS), Complement(Ball((-1.5, 0.0), RADIUS)),
                        "A = B_r(zeta), B = {|x + zeta| > r}, |zeta| > r"),
                {"exists": False, "classes": 1}),
        Example("4.1ii", "balls on the line",
                _config(1, Ball(zeta1, RADIUS), Complement(Ball((-zeta1[0],), RADIUS)),
                        "A = B_r(zeta), B = {|x + zeta| > r}, |zeta| <= r, d = 1"),
                {"exists": True, "classes": 2}),
        Example("4.1iii", "balls in the plane",
                _config(2, Ball(zeta2, RADIUS), Complement(Ball(tuple(-z for z in zeta2), RADIUS)),
                        "A = B_r(zeta), B = {|x + zeta| > r}, |zeta| <= r, d = 2"),
                {"exists": False, "classes": 1}),
        Example("4.2", "balls with a gap",
                _config(2, Ball(zeta2, RADIUS),
                        Complement(Ball(tuple(-z for z in zeta2), RADIUS + EPS0)),
                        "A = B_r(zeta), B = {|x + zeta| > r + eps0}"),
                {"exists": True, "classes": 1}),
        Example("4.3", "box and box gap",
                _config(2, Box(box_lo, box_hi), box_gap_complement(box_lo, box_hi),
                        "A = prod (-a_j, b_j), B = prod R minus [-b_j, a_j]"),
                {"exists": True, "classes": 4}),
        Example("4.4i", "opposite quadrants",
                _config(2, Quadrant((1, 1)), Quadrant((-1, -1)), "A = Q_mu, B = Q_nu, B = -A"),
                {"exists": False, "classes": 1}),
        Example("4.4ii", "adjacent quadrants",
                _config(2, Quadrant((1, 1)), Quadrant((1, -1)), "A = Q_mu, B = Q_nu, B != -A"),
                {"exists": True, "classes": 1}),
        Example("4.5", "box gap and box",
                _config(2, box_gap_complement(box_lo, box_hi), Box(box_lo, box_hi),
                        "A = prod R minus [-b_j, a_j], B = prod (-a_j, b_j)"),
                {"exists": False, "classes": 1}),
        Example("4.6", "two bounded balls",
                _config(2, Ball((2.0, 0.0), RADIUS), Ball((0.0, 3.0), RADIUS),
                        "A and B bounded open sets"),
                {"exists": True}),
    ]
    return {e.key: e for e in items}


EXAMPLES = _build()
SELECTORS = tuple(EXAMPLES) + ("all",)


def select(selector: str) -> list[Example]:
    if selector == "all":
        return list(EXAMPLES.values())
    if selector not in EXAMPLES:
        raise KeyError(selector)
    return [EXAMPLES[selector]]


# -- mask comparison ----------------------------------------------------------

def boundary_band(occ: np.ndarray) -> np.ndarray:
    """Bins within one step (any direction) of both the set and its complement."""
    full = ndimage.generate_binary_structure(occ.ndim, occ.ndim)
    grown = ndimage.binary_dilation(occ, structure=full)
    shrunk = ndimage.binary_erosion(occ, structure=full, border_value=1)
    return grown & ~shrunk


def compare_masks(got: np.ndarray, want: np.ndarray, view: np.ndarray) -> dict:
    """Symmetric difference inside ``view``, and how much of it lies off the boundary band."""
    diff = (got ^ want) & view
    off_band = diff & ~boundary_band(want)
    return {"sym_diff_bins": int(diff.sum()), "off_band_bins": int(off_band.sum()),
            "match": not off_band.any()}


def _class_occ(decomp: CharacteristicDecomposition, q: int) -> np.ndarray:
    return decomp.class_mask_base(q).occupancy


def _match_partition(decomp, wanted: list[np.ndarray]) -> Check:
    """Classes in view correspond one-to-one with the ``wanted`` masks."""
    view = decomp.view.occupancy
    classes = decomp.classes_in_view()
    rows = []
    unused = list(range(len(wanted)))
    for q in classes:
        occ = _class_occ(decomp, q)
        hit = None
        for i in unused:
            cmp = compare_masks(occ, wanted[i], view)
            if cmp["match"]:
                hit = i
                rows.append({"class_id": q, "target": i, **cmp})
                break
        if hit is None:
            rows.append({"class_id": q, "target": None})
        else:
            unused.remove(hit)
    ok = len(classes) == len(wanted) and not unused and all(r["target"] is not None for r in rows)
    return Check("classes_equal_expected_sets", ok, {"classes": rows})


# -- per-example checks -------------------------------------------------------

def _checks(ex: Example, decomp: CharacteristicDecomposition, existence) -> list[Check]:
    grid = decomp.grid
    view = decomp.view.occupancy
    coords = grid.coords()
    out = [Check("exists", existence.exists_nontrivial == ex.expected["exists"],
                 {"expected": ex.expected["exists"], "observed": existence.exists_nontrivial})]
    if "classes" in ex.expected:
        n = len(decomp.classes_in_view())
        out.append(Check("class_count", n == ex.expected["classes"],
                         {"expected": ex.expected["classes"], "observed": n}))
    if ex.key == "4.1ii":
        (x,) = coords
        out.append(_match_partition(decomp, [x < 0, x > 0]))
    elif ex.key == "4.2":
        radius = np.sqrt(sum(c**2 for c in grid.dense_coords()))
        free = decomp.free_region.occupancy & view
        step = grid.bin_step
        inner = radius < EPS0 - step
        outer = radius < EPS0 + step
        sandwiched = bool(np.all(free[inner]) and not np.any(free & ~outer))
        out.append(Check("free_region_is_eps0_ball", sandwiched,
                         {"free_bins_in_view": int(free.sum())}))
        out.append(Check("free_region_robust", robust_positive_measure(decomp.free_region & decomp.view)))
        out.append(_match_partition(decomp, [radius > EPS0]))
    elif ex.key == "4.3":
        out.append(_match_partition(decomp, [quadrant_mask(nu, grid) for nu in sign_vectors(grid.dim)]))
        devs = []
        for j in range(1, grid.dim + 1):
            v = structural_bedrosian_check(make_multiplier("partial_hilbert", grid, j), decomp)
            devs.append({"axis": j, "pass": v.passed, "max_dev": v.max_dev})
        out.append(Check("partial_hilbert_structural", all(r["pass"] for r in devs), {"axes": devs}))
        hs = hilbert_support_test(decomp.a, decomp.b)
        recovered = bool(np.all(np.abs(np.array(hs.a_bounds) - EDGE) <= grid.bin_step)
                         and np.all(np.abs(np.array(hs.b_bounds) - EDGE) <= grid.bin_step))
        out.append(Check("support_test", hs.passed and recovered,
                         {"a": list(hs.a_bounds), "b": list(hs.b_bounds), "pass": hs.passed}))
    elif ex.key == "4.4ii":
        x1 = coords[0]
        out.append(_match_partition(decomp, [np.broadcast_to(x1 > 0, grid.shape)]))
    elif ex.key == "4.5":
        robust = robust_positive_measure(decomp.free_region & decomp.view)
        out.append(Check("free_region_not_robust", not robust))
        # what is left lies on the coordinate axes, a null set
        free = decomp.free_region.occupancy & view
        on_axes = np.zeros(grid.shape, dtype=bool)
        for c in coords:
            on_axes = on_axes | (c == 0)
        out.append(Check("free_region_on_axes_only", not np.any(free & ~on_axes),
                         {"free_bins_in_view": int(free.sum())}))
    return out


def run_example(ex: Example) -> dict:
    cfg = ex.config
    a = rasterize(cfg.set_a, cfg.grid)
    b = rasterize(cfg.set_b, cfg.grid)
    decomp = characteristic_decomposition(a, b)
    existence = existence_decision(decomp)
    checks = _checks(ex, decomp, existence)
    return {
        "id": ex.key,
        "title": ex.title,
        "config": cfg.to_json(),
        "expected": ex.expected,
        "decomposition": decomp.summary(),
        "existence": existence.to_json(),
        "checks": [c.to_json() for c in checks],
        "match": all(c.passed for c in checks),
    }
