"""Generator pairs, point sets, and the net/sequence predicates.

Two independent routes decide the same questions: the algebraic one works on
hybrid matrices of a generator pair, the geometric one buckets concrete
points into strata with exact integer arithmetic. Everything else in the
package is checked against the geometric route.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

import numpy as np

from . import gf2
from .errors import DimensionError
from .gf2 import BitMatrix, BitVector


class Point(NamedTuple):
    """Fixed-point sample: coordinates are ``x / 2**m`` and ``y / 2**m``."""

    x: int
    y: int
    m: int

    def as_floats(self) -> tuple[float, float]:
        scale = float(1 << self.m)
        return self.x / scale, self.y / scale

    def truncate(self, bits: int) -> "Point":
        shift = self.m - bits
        return Point(self.x >> shift, self.y >> shift, bits)


class PointSet:
    """Ordered points sharing one bit precision ``m``.

    Coordinates are held as ``uint64`` arrays so whole sets can be bucketed
    without leaving numpy.
    """

    __slots__ = ("x", "y", "m")

    def __init__(self, x, y, m: int):
        if not 0 <= m <= 64:
            raise DimensionError(f"precision must be in 0..64, got {m}")
        x = np.ascontiguousarray(x, dtype=np.uint64)
        y = np.ascontiguousarray(y, dtype=np.uint64)
        if x.shape != y.shape or x.ndim != 1:
            raise ValueError("x and y must be 1-D arrays of equal length")
        if m < 64 and len(x) and (int(x.max()) >> m or int(y.max()) >> m):
            raise ValueError(f"coordinates exceed {m} bits")
        self.x = x
        self.y = y
        self.m = m

    @classmethod
    def from_points(cls, points: Sequence[tuple[int, int]], m: int) -> "PointSet":
        xs = [int(p[0]) for p in points]
        ys = [int(p[1]) for p in points]
        return cls(np.array(xs, dtype=np.uint64), np.array(ys, dtype=np.uint64), m)

    def __len__(self) -> int:
        return len(self.x)

    def __iter__(self) -> Iterator[Point]:
        for x, y in zip(self.x.tolist(), self.y.tolist()):
            yield Point(x, y, self.m)

    def __getitem__(self, i) -> "Point | PointSet":
        if isinstance(i, slice):
            return PointSet(self.x[i], self.y[i], self.m)
        return Point(int(self.x[i]), int(self.y[i]), self.m)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PointSet):
            return NotImplemented
        return (self.m == other.m and np.array_equal(self.x, other.x)
                and np.array_equal(self.y, other.y))

    def __repr__(self) -> str:
        return f"PointSet(n={len(self)}, m={self.m})"

    @property
    def points(self) -> list[Point]:
        return list(self)

    def truncate(self, bits: int) -> "PointSet":
        """Keep the leading ``bits`` bits of each coordinate."""
        if not 0 <= bits <= self.m:
            raise ValueError(f"cannot truncate {self.m}-bit points to {bits} bits")
        shift = self.m - bits
        return PointSet(self.x >> shift, self.y >> shift, bits)

    def permute(self, order) -> "PointSet":
        order = np.asarray(order)
        return PointSet(self.x[order], self.y[order], self.m)

    def as_floats(self) -> np.ndarray:
        """``(n, 2)`` float64 array of coordinates in ``[0, 1)``."""
        scale = 2.0 ** -self.m
        return np.column_stack([self.x.astype(np.float64) * scale,
                                self.y.astype(np.float64) * scale])

    def sorted_coords(self) -> tuple[np.ndarray, np.ndarray]:
        order = np.lexsort((self.y, self.x))
        return self.x[order], self.y[order]

    def same_set(self, other: "PointSet") -> bool:
        """Equal as multisets of points, ignoring order."""
        if self.m != other.m or len(self) != len(other):
            return False
        ax, ay = self.sorted_coords()
        bx, by = other.sorted_coords()
        return bool(np.array_equal(ax, bx) and np.array_equal(ay, by))


@dataclass(frozen=True)
class GeneratorPair:
    """Digital construction ``(x, y) = (cx S + x0, cy S + y0)``.

    Offsets are ``m``-bit words (component 0 at the MSB), zero when unscrambled.
    """

    cx: BitMatrix
    cy: BitMatrix
    x0: int = 0
    y0: int = 0

    def __post_init__(self):
        if self.cx.m != self.cy.m:
            raise DimensionError("cx and cy must have the same dimension")
        limit = 1 << self.cx.m
        for off in (self.x0, self.y0):
            if not 0 <= int(off) < limit:
                raise ValueError(f"offset {off:#x} does not fit in {self.cx.m} bits")
        object.__setattr__(self, "x0", int(self.x0))
        object.__setattr__(self, "y0", int(self.y0))

    @property
    def m(self) -> int:
        return self.cx.m

    @property
    def offset_x(self) -> BitVector:
        return BitVector(self.x0, self.m)

    @property
    def offset_y(self) -> BitVector:
        return BitVector(self.y0, self.m)

    def point(self, index: int) -> Point:
        s = gf2.bit_reverse(index, self.m)
        return Point(self.cx.apply(s) ^ self.x0, self.cy.apply(s) ^ self.y0, self.m)

    def linear(self) -> "GeneratorPair":
        return GeneratorPair(self.cx, self.cy)


_MAX_GENERATE_BITS = 26


def _doubling(columns: Sequence[int], nbits: int) -> np.ndarray:
    out = np.zeros(1, dtype=np.uint64)
    for k in range(nbits):
        out = np.concatenate([out, out ^ np.uint64(columns[k])])
    return out


def generate(pair: GeneratorPair, count: int | None = None) -> PointSet:
    """Points ``0 .. count-1`` of the construction (default all ``2**m``)."""
    m = pair.m
    if count is None:
        count = 1 << m
    if count < 0 or count > (1 << m):
        raise ValueError(f"count must be in 0..2**{m}")
    nbits = max(count - 1, 0).bit_length()
    if nbits > _MAX_GENERATE_BITS:
        raise ValueError(f"refusing to materialise 2**{nbits} points")
    xs = _doubling(pair.cx.columns(), nbits)[:count]
    ys = _doubling(pair.cy.columns(), nbits)[:count]
    if pair.x0:
        xs = xs ^ np.uint64(pair.x0)
    if pair.y0:
        ys = ys ^ np.uint64(pair.y0)
    return PointSet(xs, ys, m)


def _log2_exact(n: int) -> int:
    if n <= 0 or n & (n - 1):
        raise ValueError(f"point count {n} is not a power of two")
    return n.bit_length() - 1


def _all_cells_hit(keys: np.ndarray, n_cells: int) -> bool:
    return bool(np.bincount(keys.astype(np.intp), minlength=n_cells).max() == 1) \
        if len(keys) == n_cells else False


def is_dyadic_net(ps: PointSet) -> bool:
    """Exactly one point in every stratum of all ``n+1`` stratifications."""
    n = _log2_exact(len(ps))
    p = ps.m
    if p < n:
        return False
    x, y = ps.x, ps.y
    for r in range(n + 1):
        keys = ((x >> np.uint64(p - r)) << np.uint64(n - r)) | (y >> np.uint64(p - n + r))
        if not _all_cells_hit(keys, 1 << n):
            return False
    return True


def is_dyadic_sequence(ps: PointSet) -> bool:
    """Every aligned block of ``2**k`` points is a net after ``k``-bit truncation."""
    n = _log2_exact(len(ps))
    p = ps.m
    if p < n:
        return False
    x, y = ps.x, ps.y
    idx = np.arange(len(ps), dtype=np.uint64)
    size = 1 << n
    for k in range(1, n + 1):
        block = (idx >> np.uint64(k)) << np.uint64(k)
        for r in range(k + 1):
            cell = ((x >> np.uint64(p - r)) << np.uint64(k - r)) | (y >> np.uint64(p - k + r))
            if not _all_cells_hit(block | cell, size):
                return False
    return True


def hybrid_rows(cx: BitMatrix, cy: BitMatrix, k: int, r: int) -> list[int]:
    """Rows of the ``k x k`` hybrid matrix: ``k-r`` rows of cx over ``r`` rows of cy."""
    shift = cx.m - k
    return [row >> shift for row in cx.rows[:k - r]] + [row >> shift for row in cy.rows[:r]]


def hybrid_matrix(cx: BitMatrix, cy: BitMatrix, k: int, r: int) -> BitMatrix:
    if cx.m != cy.m:
        raise DimensionError("pair dimensions differ")
    if not 0 <= r <= k <= cx.m or k == 0:
        raise ValueError(f"need 0 <= r <= k <= m and k >= 1, got k={k}, r={r}")
    return BitMatrix(tuple(hybrid_rows(cx, cy, k, r)))


def is_dyadic_pair(cx: BitMatrix, cy: BitMatrix) -> bool:
    if cx.m != cy.m:
        raise DimensionError("pair dimensions differ")
    m = cx.m
    return all(gf2.is_full_rank(cx.rows[:m - r] + cy.rows[:r]) for r in range(m + 1))


def is_progressive_pair(cx: BitMatrix, cy: BitMatrix) -> bool:
    if cx.m != cy.m:
        raise DimensionError("pair dimensions differ")
    m = cx.m
    for k in range(1, m + 1):
        shift = m - k
        xs = [row >> shift for row in cx.rows[:k]]
        ys = [row >> shift for row in cy.rows[:k]]
        for r in range(k + 1):
            if not gf2.is_full_rank(xs[:k - r] + ys[:r]):
                return False
    return True


def characteristic(pair: GeneratorPair) -> BitMatrix:
    """``cy @ cx^-1``; maps each x word to its y word over the whole net."""
    return gf2.mat_mul(pair.cy, gf2.invert(pair.cx))

