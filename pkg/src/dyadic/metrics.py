"""Quality measures of point sets: star discrepancy and nearest-neighbour distances."""

from __future__ import annotations

import math

import numpy as np
from scipy.spatial import cKDTree

from .pairs import PointSet

_CELL_BUDGET = 1 << 18


def star_discrepancy(ps: PointSet) -> float:
    """Exact ``sup |x y - n(x, y) / N|`` over anchored boxes ``[0, x) x [0, y)``.

    Only coordinate values (and 1) can be critical. Under-filled boxes are
    evaluated open at those values, over-filled ones closed, which accounts
    for the limits approached from either side.
    """
    n = len(ps)
    if n == 0:
        raise ValueError("empty point set")
    scale = float(2 ** ps.m)
    xu, ix = np.unique(ps.x, return_inverse=True)
    yu, iy = np.unique(ps.y, return_inverse=True)
    k, l = len(xu), len(yu)
    ax = np.append(xu.astype(np.float64), scale) / scale
    by = np.append(yu.astype(np.float64), scale) / scale

    order = np.argsort(ix, kind="stable")
    ix, iy = ix[order], iy[order]
    starts = np.searchsorted(ix, np.arange(k + 1))

    rows_per_chunk = max(1, _CELL_BUDGET // (l + 1))
    carry = np.zeros(l + 1, dtype=np.int64)  # points left of the current row, by y prefix
    inv_n = 1.0 / n
    worst = 0.0
    for i0 in range(0, k, rows_per_chunk):
        i1 = min(k, i0 + rows_per_chunk)
        lo, hi = starts[i0], starts[i1]
        hist = np.bincount((ix[lo:hi] - i0) * l + iy[lo:hi], minlength=(i1 - i0) * l)
        # below[t, j]: points with x <= xu[i0+t] and y < by[j]
        below = np.zeros((i1 - i0 + 1, l + 1), dtype=np.int64)
        below[0] = carry
        np.cumsum(hist.reshape(i1 - i0, l), axis=1, out=below[1:, 1:])
        np.cumsum(below, axis=0, out=below)
        frac = below * inv_n
        area = np.multiply.outer(ax[i0:i1], by)
        over = float((frac[1:, 1:] - area[:, :l]).max())
        under = float(np.subtract(area, frac[:-1], out=area).max())
        worst = max(worst, over, under)
        carry = below[-1]
    # the x = 1 column holds every point to its left
    worst = max(worst, float((by - carry / n).max()))
    return worst


def _tree_distances(ps: PointSet, toroidal: bool) -> np.ndarray:
    if len(ps) < 2:
        raise ValueError("need at least two points")
    pts = ps.as_floats()
    tree = cKDTree(pts, boxsize=1.0 if toroidal else None)
    dist, _ = tree.query(pts, k=2)
    return dist[:, 1]


def hex_bound(n: int) -> float:
    """Spacing of ``n`` points on a hexagonal lattice filling the unit torus."""
    return math.sqrt(2.0 / (n * math.sqrt(3.0)))


def min_distance(ps: PointSet, toroidal: bool = True, normalized: bool = False) -> float:
    d = float(_tree_distances(ps, toroidal).min())
    return d / hex_bound(len(ps)) if normalized else d


def avg_nn_distance(ps: PointSet, toroidal: bool = True, normalized: bool = False) -> float:
    d = float(_tree_distances(ps, toroidal).mean())
    return d / hex_bound(len(ps)) if normalized else d


def distance_metrics(ps: PointSet, toroidal: bool = True) -> tuple[float, float]:
    """``(min_distance, avg_nn_distance)`` from a single neighbour query."""
    d = _tree_distances(ps, toroidal)
    return float(d.min()), float(d.mean())


METRICS = {
    "star": star_discrepancy,
    "mindist": min_distance,
    "avgnn": avg_nn_distance,
}


def discrepancy_prefix_ratio(ps_random_order: PointSet, ps_sequence_order: PointSet,
                             step: int) -> list[tuple[int, float]]:
    """``D*`` of each prefix in the first ordering over the same prefix of the second."""
    if not ps_random_order.same_set(ps_sequence_order):
        raise ValueError("the two orderings are not permutations of the same point set")
    n = len(ps_random_order)
    if step <= 0:
        raise ValueError("step must be positive")
    out = []
    for size in range(step, n + 1, step):
        num = star_discrepancy(ps_random_order[:size])
        den = star_discrepancy(ps_sequence_order[:size])
        out.append((size, num / den))
    return out


def ordering_ratio_experiment(net: PointSet, sequence: PointSet, trials: int, step: int,
                              rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Prefix ratios for ``trials`` random orderings of ``net`` against ``sequence``.

    Returns the prefix sizes and a ``(trials, len(sizes))`` ratio array. The
    sequence-order discrepancies are computed once.
    """
    if not net.same_set(sequence):
        raise ValueError("net and sequence must contain the same points")
    n = len(net)
    sizes = np.arange(step, n + 1, step)
    seq_d = np.array([star_discrepancy(sequence[:s]) for s in sizes])
    ratios = np.empty((trials, len(sizes)))
    for t in range(trials):
        shuffled = net.permute(rng.permutation(n))
        ratios[t] = [star_discrepancy(shuffled[:s]) for s in sizes] / seq_d
    return sizes, ratios
