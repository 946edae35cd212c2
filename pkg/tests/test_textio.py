import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dyadic import constructions as C
from dyadic import textio
from dyadic.pairs import PointSet, generate


def random_pairs():
    return st.tuples(st.integers(1, 20), st.integers(0, 2**32), st.booleans()).map(_make_pair)


def _make_pair(args):
    m, seed, scrambled = args
    rng = random.Random(seed)
    pair = C.random_net(m, rng)
    if scrambled:
        pair = C.scramble(pair, rng.getrandbits(m), rng.getrandbits(m))
    return pair


@given(random_pairs())
def test_pair_text_round_trip(pair):
    assert textio.parse_pair(textio.format_pair(pair)) == pair


@given(random_pairs())
def test_pair_json_round_trip(pair):
    obj = json.loads(json.dumps(textio.pair_to_json(pair)))
    assert textio.pair_from_json(obj) == pair


@given(st.integers(0, 40), st.integers(1, 64), st.data())
def test_points_text_round_trip(n, m, data):
    xs = data.draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    ys = data.draw(st.lists(st.integers(0, (1 << m) - 1), min_size=n, max_size=n))
    ps = PointSet(xs, ys, m)
    assert textio.parse_points(textio.format_points(ps)) == ps
    assert textio.points_from_json(textio.points_to_json(ps)) == ps


def test_matrix_text():
    mat = C.gray_matrix(8)
    assert textio.parse_matrix("# comment\n" + textio.format_matrix(mat)) == mat


def test_pair_text_layout():
    text = textio.format_pair(C.sobol(2))
    assert text == "cx:\n10\n01\ncy:\n11\n01\n"
    scrambled = textio.format_pair(C.scramble(C.sobol(2), 1, 2))
    assert scrambled.endswith("x0: 01\ny0: 10\n")


def test_combined_document():
    pair = C.lp_net(4)
    ps = generate(pair)
    doc = "# header\n" + textio.format_pair(pair) + textio.format_points(ps)
    assert textio.has_pair(doc) and textio.has_points(doc)
    assert textio.parse_pair(doc) == pair
    assert textio.parse_points(doc) == ps


def test_points_header():
    assert textio.format_points(PointSet([1, 2], [3, 0], 2)) == "m=2 n=2\n1 3\n2 0\n"


@pytest.mark.parametrize("text", [
    "1 2\n",
    "m=2 n=3\n0 0\n1 1\n",
    "m=2 n=1\n0\n",
    "m=2 n=1\n4 0\n",
])
def test_bad_points(text):
    with pytest.raises(ValueError):
        textio.parse_points(text)


@pytest.mark.parametrize("text", [
    "cx:\n10\n01\n",
    "10\n01\n",
    "cx:\n10\n01\ncy:\n1\n",
])
def test_bad_pairs(text):
    with pytest.raises(ValueError):
        textio.parse_pair(text)
