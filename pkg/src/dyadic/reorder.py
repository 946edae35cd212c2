"""Reordering digital dyadic nets into digital dyadic sequences."""

from __future__ import annotations

import numpy as np

from . import gf2
from .errors import NotDigitalError, NotDyadicError, NotProgressiveError, SingularError
from .gf2 import BitMatrix, anti_diagonal, pascal
from .pairs import GeneratorPair, PointSet, is_dyadic_pair


def net_to_sequence(pair: GeneratorPair) -> GeneratorPair:
    """Reorder a dyadic pair so that its canonical order is a sequence order.

    Factor ``C J = L U`` for the characteristic matrix ``C``; the result
    ``(J U^-1 P J, L P J)`` has characteristic ``C`` and is progressive.
    Offsets are carried over unchanged, since only the index order moves.
    """
    if not is_dyadic_pair(pair.cx, pair.cy):
        raise NotDyadicError("input pair does not generate a dyadic net")
    m = pair.m
    J, P = anti_diagonal(m), pascal(m)
    try:
        c = pair.cy @ gf2.invert(pair.cx)
        lu = gf2.lu_decompose(c @ J)
    except (SingularError, NotProgressiveError) as exc:  # unreachable for dyadic pairs
        raise NotDyadicError(str(exc)) from exc
    cx_new = J @ gf2.invert(lu.upper) @ P @ J
    cy_new = lu.lower @ P @ J
    return GeneratorPair(cx_new, cy_new, pair.x0, pair.y0)


def pointset_to_sequence(ps: PointSet, affine: bool = True) -> GeneratorPair:
    """Recover a sequence-ordered generator pair for a ``2**m``-point set.

    Sort by x and take ``cx = J`` so point ``i`` sits at ``x = i``; the
    points at ``x = 2**k`` then spell out column ``k`` of ``cy``. Every point
    is checked against the recovered pair before reordering.

    With ``affine`` set, a nonzero y at ``x = 0`` is treated as a y-only XOR
    offset and stripped before the columns are read.
    """
    n = len(ps)
    if n == 0 or n & (n - 1):
        raise ValueError(f"point count {n} is not a power of two")
    m = n.bit_length() - 1
    if m == 0:
        raise ValueError("need at least two points")
    if ps.m != m:
        raise ValueError(f"points must carry exactly {m} bits of precision, got {ps.m}")

    order = np.argsort(ps.x, kind="stable")
    xs = ps.x[order]
    ys = ps.y[order]
    if not np.array_equal(xs, np.arange(n, dtype=np.uint64)):
        raise NotDigitalError("duplicate_x", "x coordinates are not all distinct")

    y0 = int(ys[0]) if affine else 0
    if y0:
        ys = ys ^ np.uint64(y0)
    elif ys[0] != 0:
        raise NotDigitalError("point_mismatch", "the point with x = 0 must have y = 0")

    # with cx = J the point at x = i has index i, so column j of cy is the y at x = 2**j
    columns = [int(ys[1 << j]) for j in range(m)]
    cy = BitMatrix.from_columns(columns)
    candidate = GeneratorPair(anti_diagonal(m), cy)

    expected = np.zeros(1, dtype=np.uint64)
    for j in range(m):
        expected = np.concatenate([expected, expected ^ np.uint64(columns[j])])
    bad = np.flatnonzero(expected != ys)
    if len(bad):
        raise NotDigitalError("point_mismatch",
                              f"{len(bad)} points disagree with the linear fit, first at x={bad[0]}")
    if not is_dyadic_pair(candidate.cx, candidate.cy):
        raise NotDigitalError("not_dyadic", "the recovered pair is not a dyadic pair")
    return net_to_sequence(GeneratorPair(candidate.cx, candidate.cy, 0, y0))
