import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadic import constructions as C
from dyadic import gf2, pairs
from dyadic.errors import NotDigitalError, NotDyadicError
from dyadic.gf2 import anti_diagonal, identity, pascal
from dyadic.pairs import GeneratorPair, PointSet, generate
from dyadic.reorder import net_to_sequence, pointset_to_sequence

from golden import GRAY_SEQUENCE_8, HAMMERSLEY_SEQUENCE_8


def test_hammersley_net_becomes_hammersley_sequence():
    for m in range(1, 17):
        J, P = anti_diagonal(m), pascal(m)
        assert net_to_sequence(C.hammersley_net(m)) == GeneratorPair(J @ P @ J, P @ J)
    seq = net_to_sequence(C.hammersley_net(8))
    assert (seq.cx, seq.cy) == HAMMERSLEY_SEQUENCE_8


def test_progressive_input_keeps_characteristic():
    out = net_to_sequence(C.sobol(8))
    assert pairs.characteristic(out) == pascal(8)
    assert pairs.is_progressive_pair(out.cx, out.cy)


def test_lp_net_reorders_to_lp_characteristic():
    out = net_to_sequence(C.lp_net(8))
    assert pairs.characteristic(out) == C.lp_upper(8) @ anti_diagonal(8)
    assert pairs.characteristic(out) == pairs.characteristic(C.lp_sequence(8))


def test_gray_net_reorders_to_published_gray_sequence():
    out = net_to_sequence(C.gray_net(8))
    assert (out.cx, out.cy) == GRAY_SEQUENCE_8


def test_rejects_non_dyadic():
    with pytest.raises(NotDyadicError):
        net_to_sequence(GeneratorPair(identity(4), identity(4)))


@settings(max_examples=200)
@given(st.integers(1, 12), st.integers(0, 2**32))
def test_round_trip_properties(m, seed):
    rng = random.Random(seed)
    net = C.random_net(m, rng)
    seq = net_to_sequence(net)
    assert pairs.is_progressive_pair(seq.cx, seq.cy)
    assert pairs.characteristic(seq) == pairs.characteristic(net)
    if m <= 10:
        assert generate(seq).same_set(generate(net))
        assert pairs.is_dyadic_sequence(generate(seq))


def test_round_trip_many_m8():
    rng = C.make_rng(8)
    for _ in range(2000):
        net = C.random_net(8, rng)
        seq = net_to_sequence(net)
        assert pairs.is_progressive_pair(seq.cx, seq.cy)
        assert pairs.characteristic(seq) == pairs.characteristic(net)
    assert generate(seq).same_set(generate(net))


@given(st.integers(1, 10), st.integers(0, 2**32))
def test_twice_keeps_characteristic(m, seed):
    net = C.random_net(m, random.Random(seed))
    once = net_to_sequence(net)
    twice = net_to_sequence(once)
    assert pairs.characteristic(once) == pairs.characteristic(twice)


@given(st.integers(1, 10), st.integers(0, 2**32))
def test_output_times_upper_unitriangular_stays_progressive(m, seed):
    rng = random.Random(seed)
    seq = net_to_sequence(C.random_net(m, rng))
    u = gf2.random_upper_unitriangular(m, rng)
    assert pairs.is_progressive_pair(seq.cx @ u, seq.cy @ u)


def test_offsets_are_kept():
    net = C.scramble(C.gray_net(8), 0x5a, 0xc3)
    seq = net_to_sequence(net)
    assert (seq.x0, seq.y0) == (0x5a, 0xc3)
    assert generate(seq).same_set(generate(net))
    assert pairs.is_dyadic_sequence(generate(seq))


# point sets


def test_hammersley_points_recovered():
    ps = generate(C.hammersley_net(4))
    seq = pointset_to_sequence(ps)
    assert pairs.is_progressive_pair(seq.cx, seq.cy)
    assert generate(seq).same_set(ps)


def test_gray_points_recovered():
    ps = generate(C.gray_net(8))
    seq = pointset_to_sequence(ps.permute(np.random.default_rng(0).permutation(256)))
    assert pairs.characteristic(seq) == pairs.characteristic(C.gray_net(8))
    assert generate(seq).same_set(ps)


@given(st.integers(1, 10), st.integers(0, 2**32))
def test_pointset_round_trip_preserves_characteristic(m, seed):
    rng = random.Random(seed)
    net = C.random_net(m, rng)
    ps = generate(net)
    shuffled = ps.permute(np.random.default_rng(seed).permutation(len(ps)))
    seq = pointset_to_sequence(shuffled)
    assert pairs.characteristic(seq) == pairs.characteristic(net)
    assert generate(seq).same_set(ps)


@given(st.integers(1, 10), st.integers(0, 2**32))
def test_affine_point_sets_recovered(m, seed):
    rng = random.Random(seed)
    net = C.scramble(C.random_net(m, rng), rng.getrandbits(m), rng.getrandbits(m))
    ps = generate(net)
    seq = pointset_to_sequence(ps)
    assert seq.x0 == 0
    assert generate(seq).same_set(ps)
    assert pairs.is_dyadic_sequence(generate(seq))
    if seq.y0:
        with pytest.raises(NotDigitalError):
            pointset_to_sequence(ps, affine=False)


def test_random_points_are_rejected():
    rng = np.random.default_rng(6)
    reasons = set()
    for _ in range(100):
        ps = PointSet(rng.integers(0, 64, 64), rng.integers(0, 64, 64), 6)
        with pytest.raises(NotDigitalError) as exc:
            pointset_to_sequence(ps)
        reasons.add(exc.value.reason)
    assert "duplicate_x" in reasons


def test_rejection_reasons():
    # distinct x but y not linear in x
    ps = PointSet(np.arange(8), [0, 4, 2, 6, 1, 5, 7, 3], 3)
    with pytest.raises(NotDigitalError) as exc:
        pointset_to_sequence(ps)
    assert exc.value.reason == "point_mismatch"
    # linear but the identity pair is not a net
    ps = generate(GeneratorPair(anti_diagonal(3), anti_diagonal(3)))
    with pytest.raises(NotDigitalError) as exc:
        pointset_to_sequence(ps)
    assert exc.value.reason == "not_dyadic"
    with pytest.raises(NotDigitalError) as exc:
        pointset_to_sequence(PointSet([0, 0], [0, 1], 1))
    assert exc.value.reason == "duplicate_x"


def test_pointset_precision_must_match():
    ps = generate(C.sobol(4))
    with pytest.raises(ValueError):
        pointset_to_sequence(PointSet(ps.x << np.uint64(1), ps.y << np.uint64(1), 5))
    with pytest.raises(ValueError):
        pointset_to_sequence(PointSet([0, 1, 2], [0, 1, 2], 2))
