import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bedrosian import (Ball, Box, Complement, ConfigError, Empty, FrequencyGrid, Full, HalfSpace,
                       Intersection, Quadrant, RegionMask, Reflect, Translate, Union,
                       box_gap_complement, parse_region, rasterize)


def test_grid_step_and_indices():
    g = FrequencyGrid(1, 256, 32.0)
    assert g.bin_step == 0.25
    idx = g.indices()
    assert idx[0] == -128 and idx[-1] == 127
    assert g.position_of((0,)) == (128,)
    assert g.index_of((128,)) == (0,)


def test_doubled_grid_keeps_step():
    g = FrequencyGrid(2, 64, 4.0)
    big = g.doubled()
    assert big.bins_per_axis == 128 and big.half_width == 8.0
    assert big.same_step(g) and big.contains_grid(g)


@pytest.mark.parametrize("args", [(4, 64, 1.0), (2, 7, 1.0), (2, 6, 1.0), (1, 64, 0.0)])
def test_grid_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        FrequencyGrid(*args)


def test_ball_rasterizes_to_nine_bins():
    g = FrequencyGrid(1, 256, 32.0)
    m = rasterize(Ball((0.0,), 1.05), g)
    assert m.count == 9
    assert sorted(m.indices()[:, 0].tolist()) == list(range(-4, 5))
    assert not m.clipped


def test_full_occupies_everything_and_is_clipped():
    g = FrequencyGrid(2, 16, 2.0)
    m = rasterize(Full(), g)
    assert m.count == 256 and m.clipped


def test_ball_and_its_complement_are_disjoint():
    g = FrequencyGrid(2, 64, 4.0)
    m = rasterize(Intersection((Ball((0, 0), 1), Complement(Ball((0, 0), 1)))), g)
    assert m.is_empty()


def test_halfspace_and_quadrant_always_clipped():
    g = FrequencyGrid(2, 32, 4.0)
    assert rasterize(HalfSpace(1, 1, 0.0), g).clipped
    assert rasterize(Quadrant((1, -1)), g).clipped
    assert not rasterize(Box((-1, -1), (1, 1)), g).clipped
    assert rasterize(Ball((3.5, 0), 1), g).clipped


def test_open_primitives_exclude_boundary():
    g = FrequencyGrid(1, 64, 8.0)  # step 0.25, so +-1 are bins
    m = rasterize(Box((-1.0,), (1.0,)), g)
    assert m.indices()[:, 0].tolist() == list(range(-3, 4))
    q = rasterize(Quadrant((1,)), g)
    assert q.indices()[:, 0].min() == 1


def test_box_gap_complement_is_product_of_outside_sets():
    g = FrequencyGrid(2, 32, 4.0)
    m = rasterize(box_gap_complement((-1.0, -1.0), (1.0, 1.0)), g)
    x, y = g.coords()
    want = ((x > 1) | (x < -1)) & ((y > 1) | (y < -1))
    assert np.array_equal(m.occupancy, np.broadcast_to(want, g.shape))


def test_translate_and_reflect():
    g = FrequencyGrid(1, 64, 8.0)
    moved = rasterize(Translate((2.0,), Box((-0.6,), (0.6,))), g)
    assert moved == rasterize(Box((1.4,), (2.6,)), g)
    flipped = rasterize(Reflect(Box((0.1,), (2.1,))), g)
    assert flipped == rasterize(Box((-2.1,), (-0.1,)), g)


def test_mask_set_operations():
    g = FrequencyGrid(1, 32, 4.0)
    a = rasterize(Box((-2,), (1,)), g)
    b = rasterize(Box((0,), (3,)), g)
    assert (a & b) == rasterize(Box((0,), (1,)), g)
    assert (a | b) == rasterize(Box((-2,), (3,)), g)
    assert (a - b).issubset(a)
    assert (~a).clipped
    assert (a | ~a).count == g.size


def test_mask_reflect_drops_unpaired_bin():
    g = FrequencyGrid(1, 8, 4.0)
    full = RegionMask.full(g)
    assert full.reflect().count == 7


def test_mask_json_round_trip():
    g = FrequencyGrid(2, 32, 4.0)
    m = rasterize(Union((Ball((1, 1), 1), Box((-3, -3), (-2, 0)))), g)
    back = RegionMask.from_json_dict(json.loads(json.dumps(m.to_json_dict())))
    assert back == m


def test_mask_is_read_only():
    g = FrequencyGrid(1, 16, 2.0)
    m = RegionMask.empty(g)
    with pytest.raises(ValueError):
        m.occupancy[0] = True


@pytest.mark.parametrize("obj, path", [
    ({"ball": {"center": [0, 0], "radius": -1}}, "set_a.ball.radius"),
    ({"ball": {"center": [0], "radius": 1}}, "set_a.ball.center"),
    ({"ball": {"radius": 1}}, "set_a.ball.center"),
    ({"box": {"lo": [0, 0], "hi": [1, 1], "extra": 1}}, "set_a.box.extra"),
    ({"union": [{"ball": {"center": [0, 0], "radius": 1}}, {"blob": {}}]}, "set_a.union[1]"),
    ({"halfspace": {"axis": 3, "orientation": "+"}}, "set_a.halfspace.axis"),
    ({"quadrant": {"signs": [1, 0]}}, "set_a.quadrant.signs"),
    ([1, 2], "set_a"),
])
def test_parse_region_reports_path(obj, path):
    with pytest.raises(ConfigError) as err:
        parse_region(obj, 2, "set_a")
    assert err.value.path == path


_point = st.lists(st.floats(-3, 3, allow_nan=False), min_size=2, max_size=2)
_prim = st.one_of(
    st.builds(lambda c, r: Ball(c, r), _point, st.floats(0.1, 2)),
    st.builds(lambda lo, w: Box(lo, [a + b for a, b in zip(lo, w)]), _point,
              st.lists(st.floats(0.1, 2), min_size=2, max_size=2)),
    st.builds(lambda ax, o, t: HalfSpace(ax, o, t), st.sampled_from([1, 2]),
              st.sampled_from([1, -1]), st.floats(-2, 2)),
    st.builds(lambda s: Quadrant(s), st.lists(st.sampled_from([1, -1]), min_size=2, max_size=2)),
    st.just(Full()), st.just(Empty()),
)
_region = st.recursive(_prim, lambda ch: st.one_of(
    st.builds(lambda p: Union(tuple(p)), st.lists(ch, min_size=1, max_size=3)),
    st.builds(lambda p: Intersection(tuple(p)), st.lists(ch, min_size=1, max_size=3)),
    st.builds(Complement, ch),
    st.builds(Reflect, ch),
    st.builds(lambda o, p: Translate(o, p), _point, ch),
), max_leaves=6)


@settings(max_examples=60, deadline=None)
@given(_region)
def test_descriptor_json_round_trip_preserves_raster(region):
    g = FrequencyGrid(2, 32, 4.0)
    back = parse_region(json.loads(json.dumps(region.to_json())), 2)
    assert rasterize(back, g) == rasterize(region, g)


@settings(max_examples=40, deadline=None)
@given(_region)
def test_complement_rasterizes_to_mask_complement(region):
    g = FrequencyGrid(2, 16, 4.0)
    assert np.array_equal(rasterize(Complement(region), g).occupancy,
                          ~rasterize(region, g).occupancy)
