import random

import numpy as np
import pytest

from dyadic import atlas, metrics, pairs, xi
from dyadic import constructions as C
from dyadic.errors import InfeasibleSize


@pytest.fixture(scope="module")
def small_grid():
    return atlas.scan(6, 5)


def test_seed_values():
    assert atlas.seed_values(1) == [1 << 31]
    assert atlas.seed_values(3) == [0x80000000, 0xA0000000, 0xC0000000, 0xE0000000]
    assert len(atlas.seed_values(8)) == 128


def test_cell_count(small_grid):
    assert len(small_grid) == 256
    assert set(small_grid.values) == set(atlas.COLUMNS)
    assert all(len(v) == 256 for v in small_grid.values.values())


def test_xi0_cell_matches_direct_computation(small_grid):
    cell = small_grid.cell(1 << 31, 1 << 31)
    direct = atlas.measure_seed(xi.XI0, 6)
    assert cell == direct
    q = xi.prefix(xi.XI0, 6)
    assert cell["star_disc_q"] == metrics.star_discrepancy(q)
    assert cell["mindist_q"] == metrics.min_distance(q)


def test_scan_is_deterministic_and_job_independent(small_grid):
    assert atlas.scan(6, 5) == small_grid
    assert atlas.scan(6, 5, jobs=3) == small_grid


def test_env_thread_count(monkeypatch):
    monkeypatch.setenv("DYADIC_THREADS", "2")
    assert atlas.thread_count() == 2
    assert atlas.thread_count(5) == 5


def test_metric_subset():
    grid = atlas.scan(4, 3, ["mindist"])
    assert set(grid.values) == {"mindist", "mindist_q"}
    with pytest.raises(ValueError):
        atlas.scan(4, 3, ["spectrum"])


def test_size_guards():
    with pytest.raises(InfeasibleSize):
        atlas.scan(8, 14)
    with pytest.raises(InfeasibleSize):
        atlas.scan(20, 2)


def test_sampled_cells_are_dyadic_sequences():
    rng = random.Random(0)
    seeds = atlas.seed_values(8)
    for _ in range(100):
        sd = xi.XiSeed(rng.choice(seeds), rng.choice(seeds))
        assert pairs.is_dyadic_sequence(xi.prefix(sd, 8))


def test_best_directions(small_grid):
    top = atlas.best(small_grid, "mindist", k=3)
    vals = small_grid.values["mindist"]
    assert top[0][1] == vals.max()
    assert [v for _, v in top] == sorted((v for _, v in top), reverse=True)
    low = atlas.best(small_grid, "star_disc", k=1)
    assert low[0][1] == small_grid.values["star_disc"].min()


def test_best_star_beats_xi0(small_grid):
    best = atlas.best(small_grid, "star_disc_q", k=1)[0][1]
    assert best < small_grid.cell(1 << 31, 1 << 31)["star_disc_q"]


def test_best_mindist_beats_sobol():
    grid = atlas.scan(8, 4, ["mindist"])
    best = atlas.best(grid, "mindist", k=1)[0][1]
    assert best > metrics.min_distance(pairs.generate(C.sobol(8)))


def test_constraint_filters_a_subset(small_grid):
    everything = atlas.best(small_grid, "star_disc", k=len(small_grid))
    limit = float(np.median(small_grid.values["mindist"]))
    some = atlas.best(small_grid, "star_disc", f"mindist>{limit}", k=len(small_grid))
    assert 0 < len(some) < len(everything)
    assert set(s for s, _ in some) <= set(s for s, _ in everything)
    for seed, _ in some:
        assert small_grid.cell(*seed)["mindist"] > limit


def test_normalized_constraint(small_grid):
    h = metrics.hex_bound(64)
    raw = atlas.best(small_grid, "mindist", "mindist>0.3", k=1000, normalized=True)
    assert all(v > 0.3 for _, v in raw)
    assert len(raw) == int(np.sum(small_grid.values["mindist"] / h > 0.3))


def test_bad_constraint(small_grid):
    with pytest.raises(ValueError):
        atlas.best(small_grid, "mindist", "mindist ~ 3")
    with pytest.raises(ValueError):
        atlas.best(small_grid, "nope")


def test_csv_round_trip(small_grid):
    text = atlas.to_csv(small_grid)
    lines = text.splitlines()
    assert lines[1].startswith("seed_x_hex,seed_y_hex,mindist,avgnn,star_disc")
    assert len(lines) == 2 + 256
    assert atlas.from_csv(text) == small_grid


def test_pgm(small_grid):
    data = atlas.to_pgm(small_grid, "mindist")
    assert data.startswith(b"P5\n16 16\n255\n")
    assert len(data) == len(b"P5\n16 16\n255\n") + 256
