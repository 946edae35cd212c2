"""Self-similar xi-sequences.

A xi-sequence satisfies ``p[4 i] = p[i] / 2`` and is fully determined by its
second point ``p1 = (X, Y)`` (both with leading bit 1). The third point is
``(xi(X), xi(Y) ^ Y)`` where ``xi`` is carry-less multiplication by the
constant ``0.0110100010000000100...`` followed by doubling, and
``p3 = p1 ^ p2``. Sample ``s`` is the XOR of ``p[d_i] >> i`` over the base-4
digits ``d_i`` of ``s``.

The fast paths work at 32-bit precision with 32-bit sample numbers; the
matrix path (:func:`xi_pair`) works at any ``m <= 64`` and exists to
cross-check them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidSeed
from .gf2 import BitMatrix
from .pairs import GeneratorPair, Point, PointSet

BITS = 32
MASK32 = (1 << BITS) - 1
XI_SHIFTS = (1, 2, 4, 8, 16)


def xi_constant(bits: int = BITS) -> int:
    """xi as a ``bits``-bit fraction: ones at fractional positions ``2**k + 1``."""
    word = 0
    k = 0
    while (1 << k) + 1 <= bits:
        word |= 1 << (bits - 1 - (1 << k))
        k += 1
    return word


def xi_plus_constant(bits: int = BITS) -> int:
    return xi_constant(bits) | (1 << (bits - 1))


def carryless_xi_mul(a: int) -> int:
    """``xi(A)`` for a 32-bit fraction, in five shift-and-xor steps."""
    r = a >> 1
    r ^= a >> 2
    r ^= a >> 4
    r ^= a >> 8
    r ^= a >> 16
    return r


def xi_mul(a: int, bits: int) -> int:
    """``xi(A)`` at arbitrary precision (shifts by every power of two below ``bits``)."""
    r = 0
    s = 1
    while s < bits:
        r ^= a >> s
        s <<= 1
    return r


def build_xi_matrix(a: int, m: int, b: int | None = None, plus: bool = False) -> BitMatrix:
    """Self-similar generator: column ``2j`` is ``A >> j`` and column ``2j+1`` is ``B >> j``.

    ``a`` and ``b`` are ``m``-bit words. ``b`` defaults to ``xi(A)``, or
    ``xi(A) ^ A`` with ``plus``.
    """
    if not 0 <= a < (1 << m):
        raise ValueError(f"a does not fit in {m} bits")
    if b is None:
        if not a >> (m - 1):
            raise InvalidSeed("the leading bit of A must be 1")
        b = xi_mul(a, m)
        if plus:
            b ^= a
    cols = [(a if c % 2 == 0 else b) >> (c // 2) for c in range(m)]
    return BitMatrix.from_columns(cols)


def xi_pair(x: int, y: int, m: int) -> GeneratorPair:
    """``(C_xi(X), C_xi+(Y))`` for ``m``-bit words ``x``, ``y`` with leading bit 1."""
    if not (x >> (m - 1)) & 1 or not (y >> (m - 1)) & 1:
        raise InvalidSeed("both seed words need a leading 1 bit")
    return GeneratorPair(build_xi_matrix(x, m), build_xi_matrix(y, m, plus=True))


def convolution_matrix(a: int, m: int) -> BitMatrix:
    """Lower unitriangular Toeplitz matrix whose first column is ``A``."""
    return BitMatrix.from_columns([a >> j for j in range(m)])


# 32-bit fast path


def _spread(v: int) -> int:
    v &= MASK32
    v = (v | (v << 16)) & 0x0000FFFF0000FFFF
    v = (v | (v << 8)) & 0x00FF00FF00FF00FF
    v = (v | (v << 4)) & 0x0F0F0F0F0F0F0F0F
    v = (v | (v << 2)) & 0x3333333333333333
    v = (v | (v << 1)) & 0x5555555555555555
    return v


def _compact(v: int) -> int:
    v &= 0x5555555555555555
    v = (v | (v >> 1)) & 0x3333333333333333
    v = (v | (v >> 2)) & 0x0F0F0F0F0F0F0F0F
    v = (v | (v >> 4)) & 0x00FF00FF00FF00FF
    v = (v | (v >> 8)) & 0x0000FFFF0000FFFF
    v = (v | (v >> 16)) & 0x00000000FFFFFFFF
    return v


def shuffle(x: int, y: int) -> int:
    """Morton index ``0.y0 x0 y1 x1 ...`` of a pair of 32-bit fractions."""
    return (_spread(y) << 1) | _spread(x)


def unshuffle(z: int) -> tuple[int, int]:
    return _compact(z), _compact(z >> 1)


@dataclass(frozen=True)
class XiSeed:
    """The four anchor points of a xi-sequence at 32-bit precision."""

    x: int
    y: int
    px: tuple[int, int, int, int] = field(init=False, repr=False)
    py: tuple[int, int, int, int] = field(init=False, repr=False)
    pz: tuple[int, int, int, int] = field(init=False, repr=False)

    def __post_init__(self):
        x, y = int(self.x), int(self.y)
        if not (0 <= x <= MASK32 and 0 <= y <= MASK32):
            raise InvalidSeed("seed words must be 32-bit")
        if not x >> 31 or not y >> 31:
            raise InvalidSeed("both seed words need a leading 1 bit")
        b = carryless_xi_mul(x)
        b_plus = carryless_xi_mul(y) ^ y
        px = (0, x, b, x ^ b)
        py = (0, y, b_plus, y ^ b_plus)
        pz = tuple(shuffle(px[q], py[q]) for q in range(4))
        if len({z >> 62 for z in pz}) != 4:
            raise InvalidSeed("anchor points do not occupy distinct quadrants")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)
        object.__setattr__(self, "px", px)
        object.__setattr__(self, "py", py)
        object.__setattr__(self, "pz", pz)

    @classmethod
    def from_hex(cls, x: str, y: str) -> "XiSeed":
        return cls(int(x, 16), int(y, 16))

    def to_hex(self) -> tuple[str, str]:
        return f"{self.x:08x}", f"{self.y:08x}"

    @property
    def anchors(self) -> tuple[Point, Point, Point, Point]:
        return tuple(Point(self.px[q], self.py[q], BITS) for q in range(4))


def seed(x, y) -> XiSeed:
    """Seed from 32-bit words (or :class:`~dyadic.gf2.BitVector` of 32 bits)."""
    return XiSeed(int(getattr(x, "value", x)), int(getattr(y, "value", y)))


XI0 = XiSeed(1 << 31, 1 << 31)


def get_sample(sd: XiSeed, seq_no: int) -> Point:
    seq_no &= MASK32
    px, py = sd.px, sd.py
    x = y = 0
    for depth in range(16):
        q = seq_no & 3
        x ^= px[q] >> depth
        y ^= py[q] >> depth
        seq_no >>= 2
    return Point(x, y, BITS)


def get_sample_morton(sd: XiSeed, seq_no: int) -> int:
    seq_no &= MASK32
    pz = sd.pz
    z = 0
    for i in range(16):
        z ^= pz[seq_no & 3] >> (2 * i)
        seq_no >>= 2
    return z


def invert(sd: XiSeed, z: int, bits: int = 64) -> int:
    """Sequence number of the first sample whose Morton prefix is ``z``.

    ``z`` holds the leading ``bits`` Morton bits (y bit first). Each step
    reads the top base-4 digit, identifies the one anchor owning it, records
    that anchor as the next base-4 digit of the answer and strips it. An odd
    ``bits`` ends with a lone y bit, resolved among the anchors 0 and 1 so
    the answer stays below ``2**bits``.
    """
    if not 0 <= bits <= 64:
        raise ValueError("bits must be in 0..64")
    if not 0 <= z < (1 << bits):
        raise ValueError(f"z does not fit in {bits} bits")
    z <<= 64 - bits
    owner = _quadrant_owner(sd)
    s = 0
    mask64 = (1 << 64) - 1
    for i in range(bits // 2):
        q = owner[z >> 62]
        s |= q << (2 * i)
        z = ((z ^ sd.pz[q]) << 2) & mask64
    if bits % 2:
        q = 0 if (z >> 63) == (sd.pz[0] >> 63) else 1
        s |= q << (2 * (bits // 2))
    return s


def _quadrant_owner(sd: XiSeed) -> tuple[int, int, int, int]:
    owner = [0] * 4
    for q, z in enumerate(sd.pz):
        owner[z >> 62] = q
    return tuple(owner)


# lookup tables


@dataclass(frozen=True)
class XiLookupTable:
    """Samples ``0 .. 4**digits - 1`` used as a basis of ``digits`` base-4 digits."""

    digits: int
    x: np.ndarray = field(repr=False)
    y: np.ndarray = field(repr=False)

    @property
    def size(self) -> int:
        return 1 << (2 * self.digits)

    @property
    def steps(self) -> int:
        return 16 // self.digits


def build_lookup(sd: XiSeed, level: int = 4) -> XiLookupTable:
    """Table of ``4**level`` entries (level 1, 4 or 8 -> 4, 256 or 65536)."""
    if level not in (1, 2, 4, 8):
        raise ValueError("level must be one of 1, 2, 4, 8")
    q = np.arange(1 << (2 * level), dtype=np.uint32)
    xs, ys = _plain(sd, q, depth=level)
    return XiLookupTable(level, xs, ys)


def get_sample_lut(table: XiLookupTable, seq_no: int) -> Point:
    seq_no &= MASK32
    width = 2 * table.digits
    mask = table.size - 1
    x = y = 0
    for step in range(table.steps):
        q = seq_no & mask
        x ^= int(table.x[q]) >> (table.digits * step)
        y ^= int(table.y[q]) >> (table.digits * step)
        seq_no >>= width
    return Point(x, y, BITS)


# vectorised paths


def _plain(sd: XiSeed, seq_nos: np.ndarray, depth: int = 16) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(seq_nos, dtype=np.uint32)
    px = np.array(sd.px, dtype=np.uint32)
    py = np.array(sd.py, dtype=np.uint32)
    x = np.zeros(s.shape, dtype=np.uint32)
    y = np.zeros(s.shape, dtype=np.uint32)
    for d in range(depth):
        q = s & np.uint32(3)
        x ^= px[q] >> np.uint32(d)
        y ^= py[q] >> np.uint32(d)
        s = s >> np.uint32(2)
    return x, y


def get_samples(sd: XiSeed, seq_nos) -> tuple[np.ndarray, np.ndarray]:
    """Vectorised :func:`get_sample`; returns ``uint32`` coordinate arrays."""
    return _plain(sd, seq_nos)


def get_samples_lut(table: XiLookupTable, seq_nos) -> tuple[np.ndarray, np.ndarray]:
    s = np.asarray(seq_nos, dtype=np.uint32)
    width = np.uint32(2 * table.digits)
    mask = np.uint32(table.size - 1)
    x = np.zeros(s.shape, dtype=np.uint32)
    y = np.zeros(s.shape, dtype=np.uint32)
    for step in range(table.steps):
        q = s & mask
        shift = np.uint32(table.digits * step)
        x ^= table.x[q] >> shift
        y ^= table.y[q] >> shift
        s = s >> width
    return x, y


def get_samples_morton(sd: XiSeed, seq_nos) -> np.ndarray:
    s = np.asarray(seq_nos, dtype=np.uint64)
    pz = np.array(sd.pz, dtype=np.uint64)
    z = np.zeros(s.shape, dtype=np.uint64)
    for i in range(16):
        z ^= pz[s & np.uint64(3)] >> np.uint64(2 * i)
        s = s >> np.uint64(2)
    return z


def invert_many(sd: XiSeed, zs, bits: int = 64) -> np.ndarray:
    """Vectorised :func:`invert` for even ``bits``."""
    if bits % 2 or not 0 <= bits <= 64:
        raise ValueError("vectorised inversion needs an even bit count in 0..64")
    z = np.asarray(zs, dtype=np.uint64)
    if bits < 64:
        z = z << np.uint64(64 - bits)
    owner = np.array(_quadrant_owner(sd), dtype=np.uint64)
    pz = np.array(sd.pz, dtype=np.uint64)
    s = np.zeros(z.shape, dtype=np.uint64)
    for i in range(bits // 2):
        q = owner[z >> np.uint64(62)]
        s |= q << np.uint64(2 * i)
        z = (z ^ pz[q]) << np.uint64(2)
    return s


def prefix(sd: XiSeed, m: int, truncate: bool = True) -> PointSet:
    """First ``2**m`` samples, truncated to ``m`` bits unless ``truncate`` is off."""
    x, y = get_samples(sd, np.arange(1 << m, dtype=np.uint32))
    ps = PointSet(x, y, BITS)
    return ps.truncate(m) if truncate else ps
