"""Named constructions, random sampling and exhaustive enumeration.

Every factory returns a :class:`~dyadic.pairs.GeneratorPair`. Randomised
factories take a ``random.Random``-like object (anything with
``getrandbits``) so runs are reproducible from a seed.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterator

from . import gf2
from .errors import DimensionError, InfeasibleSize, UnsupportedDimension
from .gf2 import BitMatrix, BitVector, anti_diagonal, identity, mat_mul, pascal
from .pairs import GeneratorPair

DEFAULT_SEED = 20221016

KINDS = (
    "nets_ordered",
    "nets_unordered",
    "sequences_ordered",
    "sequences_unordered",
    "affine_nets_ordered",
    "affine_nets_unordered",
    "affine_sequences_ordered",
    "affine_sequences_unordered",
)


def make_rng(seed: int | None = None) -> random.Random:
    return random.Random(DEFAULT_SEED if seed is None else seed)


def sobol(m: int) -> GeneratorPair:
    return GeneratorPair(identity(m), pascal(m))


def hammersley_net(m: int) -> GeneratorPair:
    return GeneratorPair(anti_diagonal(m), identity(m))


def hammersley_sequence(m: int) -> GeneratorPair:
    J, P = anti_diagonal(m), pascal(m)
    return GeneratorPair(J @ P @ J, P @ J)


def lp_upper(m: int) -> BitMatrix:
    """Upper triangular all-ones matrix of the Larcher-Pillichshammer net."""
    return BitMatrix(tuple((1 << (m - i)) - 1 for i in range(m)))


def lp_lower(m: int) -> BitMatrix:
    """Lower unitriangular partner: a 1 in the corner, then Pascal's triangle.

    Entry (i, j) for 0-based ``i, j >= 1`` is C(i-1, j-1) mod 2.
    """
    rows = [1 << (m - 1)]
    for i in range(1, m):
        word = 0
        for j in range(1, i + 1):
            if (j - 1) & (i - 1) == j - 1:
                word |= 1 << (m - 1 - j)
        rows.append(word)
    return BitMatrix(tuple(rows))


def lp_net(m: int) -> GeneratorPair:
    return GeneratorPair(anti_diagonal(m), lp_upper(m))


def lp_sequence(m: int) -> GeneratorPair:
    """Sequence order of the LP net; same point set when ``m`` is a power of two."""
    return GeneratorPair(lp_lower(m), pascal(m) @ anti_diagonal(m))


def gray_matrix(m: int) -> BitMatrix:
    """y-generator of the Gray net.

    Two ``m/2`` blocks on the diagonal: a lower triangular block of ones and
    an upper bidiagonal block. The 8x8 case reproduces the published matrix;
    other even sizes extend the same pattern.
    """
    if m % 2:
        raise UnsupportedDimension(f"Gray nets need an even dimension, got {m}")
    h = m // 2
    rows = []
    for i in range(h):
        rows.append(((1 << (i + 1)) - 1) << (m - 1 - i))
    for i in range(h):
        word = 1 << (h - 1 - i)
        if i + 1 < h:
            word |= 1 << (h - 2 - i)
        rows.append(word)
    return BitMatrix(tuple(rows))


def gray_net(m: int) -> GeneratorPair:
    return GeneratorPair(anti_diagonal(m), gray_matrix(m))


_GRAY_SEQUENCE_8 = (
    BitMatrix.from_str("""
        10000000
        01000000
        11100000
        00010000
        10001000
        11001100
        10101010
        11111111"""),
    BitMatrix.from_str("""
        11111111
        01010101
        10011001
        00010001
        11110000
        10100000
        11000000
        10000000"""),
)


def gray_sequence(m: int) -> GeneratorPair:
    """Sequence order of the Gray net.

    The published 256-point pair is returned verbatim for ``m == 8``; any
    other even ``m`` is reordered with :func:`dyadic.reorder.net_to_sequence`.
    """
    if m == 8:
        return GeneratorPair(*_GRAY_SEQUENCE_8)
    from .reorder import net_to_sequence

    return net_to_sequence(gray_net(m))


def gfaure(lx: BitMatrix, ly: BitMatrix) -> GeneratorPair:
    return GeneratorPair(lx, ly @ pascal(lx.m))


def random_gfaure(m: int, rng) -> GeneratorPair:
    return gfaure(gf2.random_lower_unitriangular(m, rng), gf2.random_lower_unitriangular(m, rng))


def random_sequence(m: int, rng) -> GeneratorPair:
    """Uniform over ``(Lx U, Ly P U)``: every ordered digital dyadic sequence."""
    lx = gf2.random_lower_unitriangular(m, rng)
    ly = gf2.random_lower_unitriangular(m, rng)
    u = gf2.random_upper_unitriangular(m, rng)
    return GeneratorPair(lx @ u, ly @ pascal(m) @ u)


def random_net(m: int, rng) -> GeneratorPair:
    """Uniform over ``(M, L U J M)``: every ordered digital dyadic net."""
    mm = gf2.random_invertible(m, rng)
    lo = gf2.random_lower_unitriangular(m, rng)
    up = gf2.random_upper_unitriangular(m, rng)
    return GeneratorPair(mm, lo @ up @ anti_diagonal(m) @ mm)


def random_gs_net(m: int, rng) -> GeneratorPair:
    """``(Lx M, Ly P M)``: a random sequence reordered by a random invertible M."""
    mm = gf2.random_invertible(m, rng)
    lx = gf2.random_lower_unitriangular(m, rng)
    ly = gf2.random_lower_unitriangular(m, rng)
    return GeneratorPair(lx @ mm, ly @ pascal(m) @ mm)


def scramble(pair: GeneratorPair, x0, y0) -> GeneratorPair:
    """XOR-scramble: add constant words to every generated point."""
    x0 = _word(x0, pair.m)
    y0 = _word(y0, pair.m)
    return GeneratorPair(pair.cx, pair.cy, x0, y0)


def y_only_offset(pair: GeneratorPair) -> int:
    """Offset ``C x0 + y0`` that scrambles only y yet yields the same point set."""
    c = mat_mul(pair.cy, gf2.invert(pair.cx))
    return c.apply(pair.x0) ^ pair.y0


def _word(v, m: int) -> int:
    if isinstance(v, BitVector):
        if v.m != m:
            raise DimensionError(f"offset has {v.m} bits, pair has {m}")
        return v.value
    return int(v)


# design-space sizes


def _odd_product(m: int) -> int:
    return math.prod((1 << i) - 1 for i in range(1, m + 1))


def count_design_space(m: int, kind: str) -> int:
    """Number of constructions of the given kind, as an exact integer."""
    t = m * (m - 1) // 2
    counts = {
        "nets_ordered": 2 ** (3 * t) * _odd_product(m),
        "nets_unordered": 2 ** (m * (m - 1)),
        "sequences_ordered": 2 ** (3 * t),
        "sequences_unordered": 2 ** (m * (m - 1)),
        "affine_nets_ordered": 2 ** (m * (3 * m + 1) // 2) * _odd_product(m),
        "affine_nets_unordered": 2 ** (m * m),
        "affine_sequences_ordered": 2 ** (m * (3 * m + 1) // 2),
        "affine_sequences_unordered": 2 ** (m * m),
    }
    try:
        return counts[kind]
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}") from None


_ENUM_LIMITS = {"ordered": 3, "unordered": 4}


def _unitriangulars(m: int, lower: bool) -> list[BitMatrix]:
    make = gf2.lower_unitriangular if lower else gf2.upper_unitriangular
    return [make(m, bits) for bits in range(1 << (m * (m - 1) // 2))]


def all_invertible(m: int) -> Iterator[BitMatrix]:
    for rows in itertools.product(range(1 << m), repeat=m):
        if gf2.is_full_rank(rows):
            yield BitMatrix(rows)


def enumerate_design_space(m: int, kind: str) -> Iterator[GeneratorPair]:
    """Yield every construction of ``kind`` exactly once.

    Ordered kinds walk the full ordered parametrisation, unordered kinds one
    canonical representative per point set: Hammersley-like ``(J, L U)`` for
    nets and GFaure ``(Lx, Ly P)`` for sequences. Affine unordered kinds add
    only a y offset, since an x offset can always be folded into it.
    """
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    limit = _ENUM_LIMITS["unordered" if kind.endswith("unordered") else "ordered"]
    if not 1 <= m <= limit:
        raise InfeasibleSize(f"{kind} enumeration is limited to m <= {limit}")
    return _enumerate(m, kind)


def _enumerate(m: int, kind: str) -> Iterator[GeneratorPair]:
    J, P = anti_diagonal(m), pascal(m)
    lowers = _unitriangulars(m, lower=True)
    uppers = _unitriangulars(m, lower=False)
    affine = kind.startswith("affine_")
    base = kind.removeprefix("affine_")
    words = range(1 << m)

    if base == "nets_ordered":
        lujs = [lo @ up @ J for lo in lowers for up in uppers]
        inverts = list(all_invertible(m))
        linear = (GeneratorPair(mm, luj @ mm) for mm in inverts for luj in lujs)
    elif base == "nets_unordered":
        linear = (GeneratorPair(J, lo @ up) for lo in lowers for up in uppers)
    elif base == "sequences_ordered":
        linear = (GeneratorPair(lx @ up, ly @ P @ up)
                  for lx in lowers for ly in lowers for up in uppers)
    else:
        linear = (GeneratorPair(lx, ly @ P) for lx in lowers for ly in lowers)

    if not affine:
        yield from linear
    elif kind.endswith("unordered"):
        for pair in linear:
            for y0 in words:
                yield GeneratorPair(pair.cx, pair.cy, 0, y0)
    else:
        for pair in linear:
            for x0 in words:
                for y0 in words:
                    yield GeneratorPair(pair.cx, pair.cy, x0, y0)


NAMED = {
    "sobol": sobol,
    "hammersley-net": hammersley_net,
    "hammersley-sequence": hammersley_sequence,
    "lp-net": lp_net,
    "lp-sequence": lp_sequence,
    "gray-net": gray_net,
    "gray-sequence": gray_sequence,
}

RANDOM = {
    "gfaure": random_gfaure,
    "random-sequence": random_sequence,
    "random-net": random_net,
    "gs-net": random_gs_net,
}


def construct(kind: str, m: int, rng=None) -> GeneratorPair:
    """Dispatch by construction name (as used on the command line)."""
    if kind in NAMED:
        return NAMED[kind](m)
    if kind in RANDOM:
        return RANDOM[kind](m, rng if rng is not None else make_rng())
    raise ValueError(f"unknown construction {kind!r}; expected one of "
                     f"{sorted(NAMED) + sorted(RANDOM)}")
