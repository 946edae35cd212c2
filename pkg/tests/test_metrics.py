import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadic import constructions as C
from dyadic import metrics
from dyadic.pairs import PointSet, generate

from oracles import dense_grid_discrepancy, exact_discrepancy, torus_distances


@st.composite
def point_sets(draw, max_n=40, max_m=8):
    m = draw(st.integers(1, max_m))
    n = draw(st.integers(1, max_n))
    xs = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    ys = draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    return PointSet(xs, ys, m)


# star discrepancy


def test_single_point_at_origin():
    assert metrics.star_discrepancy(PointSet([0], [0], 4)) == 1.0


def test_single_point_in_the_middle():
    # the box [0, 1/2] x [0, 1/2] holds the point with area 1/4
    assert metrics.star_discrepancy(PointSet([2], [2], 2)) == 0.75


@settings(max_examples=300)
@given(point_sets())
def test_matches_exact_rational_oracle(ps):
    assert metrics.star_discrepancy(ps) == pytest.approx(float(exact_discrepancy(ps.x, ps.y, ps.m)),
                                                         abs=1e-12)


@settings(max_examples=50)
@given(point_sets())
def test_chunking_does_not_change_result(ps):
    full = metrics.star_discrepancy(ps)
    old = metrics._CELL_BUDGET
    try:
        metrics._CELL_BUDGET = 3
        assert metrics.star_discrepancy(ps) == full
    finally:
        metrics._CELL_BUDGET = old


@pytest.mark.parametrize("k", [2, 4, 8, 16])
def test_regular_grid_against_dense_oracle(k):
    bits = 12
    centers = [((2 * i + 1) << bits) // (2 * k) for i in range(k)]
    xs = [c for c in centers for _ in centers]
    ys = [c for _ in centers for c in centers]
    ps = PointSet(xs, ys, bits)
    assert abs(metrics.star_discrepancy(ps) - dense_grid_discrepancy(xs, ys, bits)) <= 2 ** -10


@given(point_sets(max_n=30), st.randoms())
def test_permutation_invariant(ps, rnd):
    order = list(range(len(ps)))
    rnd.shuffle(order)
    assert metrics.star_discrepancy(ps.permute(order)) == metrics.star_discrepancy(ps)


@given(point_sets())
def test_bounds(ps):
    d = metrics.star_discrepancy(ps)
    assert 0 <= d <= 1
    # the x-projection alone already forces 1/(2N)
    assert d >= 1 / (2 * len(ps)) - 1e-12


def test_lp_beats_sobol_at_m8():
    lp = metrics.star_discrepancy(generate(C.lp_net(8)))
    sobol = metrics.star_discrepancy(generate(C.sobol(8)))
    assert lp < sobol


@pytest.mark.parametrize("factory", [C.sobol, C.lp_net])
def test_discrepancy_shrinks_with_m(factory):
    ds = [metrics.star_discrepancy(generate(factory(m))) for m in (2, 4, 6, 8)]
    assert all(a > b for a, b in zip(ds, ds[1:]))


def test_empty_point_set():
    with pytest.raises(ValueError):
        metrics.star_discrepancy(PointSet([], [], 3))


# distances


def test_two_points_toroidal():
    ps = PointSet.from_points([(0, 0), (8, 8)], 4)
    assert metrics.min_distance(ps) == pytest.approx(math.sqrt(2) / 2)


def test_wrap_around():
    ps = PointSet.from_points([(0, 0), (9 << 16, 0)], 20)
    d = 1 - (9 << 16) / 2**20
    assert metrics.min_distance(ps) == pytest.approx(d)
    assert metrics.min_distance(ps, toroidal=False) == pytest.approx(9 / 16)


def test_point_near_one_tenth_wraps():
    ps = PointSet.from_points([(0, 0), (int(0.9 * 2**30), 0)], 30)
    assert metrics.min_distance(ps) == pytest.approx(0.1, abs=1e-8)


@settings(max_examples=100)
@given(point_sets(max_n=25))
def test_distances_match_brute_force(ps):
    if len(ps) < 2:
        return
    brute = torus_distances([tuple(p) for p in ps.as_floats()])
    assert metrics.min_distance(ps) == pytest.approx(min(brute), abs=1e-12)
    assert metrics.avg_nn_distance(ps) == pytest.approx(sum(brute) / len(brute), abs=1e-12)


def test_normalisation():
    ps = generate(C.sobol(6))
    h = math.sqrt(2 / (64 * math.sqrt(3)))
    assert metrics.hex_bound(64) == pytest.approx(h)
    assert metrics.min_distance(ps, normalized=True) == pytest.approx(metrics.min_distance(ps) / h)
    assert metrics.avg_nn_distance(ps, normalized=True) == pytest.approx(
        metrics.avg_nn_distance(ps) / h)


def test_distinct_points_have_positive_distance():
    assert metrics.min_distance(generate(C.lp_net(8))) > 0


def test_distance_needs_two_points():
    with pytest.raises(ValueError):
        metrics.min_distance(PointSet([1], [1], 2))


# ordering ratios


def test_ratio_final_entry_is_one():
    net = generate(C.lp_net(8))
    seq = generate(C.lp_sequence(8))
    shuffled = net.permute(np.random.default_rng(1).permutation(256))
    ratios = metrics.discrepancy_prefix_ratio(shuffled, seq, 16)
    assert [n for n, _ in ratios] == list(range(16, 257, 16))
    assert ratios[-1][1] == 1.0


def test_ratio_identical_orderings():
    seq = generate(C.lp_sequence(6))
    assert all(r == 1.0 for _, r in metrics.discrepancy_prefix_ratio(seq, seq, 8))


def test_ratio_rejects_different_sets():
    with pytest.raises(ValueError):
        metrics.discrepancy_prefix_ratio(generate(C.sobol(6)), generate(C.lp_sequence(6)), 8)


def test_ratio_experiment_shape():
    net = generate(C.lp_net(8))
    seq = generate(C.lp_sequence(8))
    sizes, ratios = metrics.ordering_ratio_experiment(net, seq, 5, 32, np.random.default_rng(0))
    assert sizes.tolist() == list(range(32, 257, 32))
    assert ratios.shape == (5, 8)
    assert np.all(ratios[:, -1] == 1.0)
    assert np.all(ratios[:, :4] > 1.0)
