"""Bit-parallel linear algebra over GF(2).

Matrices are stored as a tuple of row words. Bit ordering follows the
fixed-point reading of the generated coordinates: in an ``m``-bit word,
column ``j`` (0-based) lives at bit ``m - 1 - j``, so the leftmost column is
the most significant bit and a vector word doubles as the integer numerator
of the fraction ``0.v_1 v_2 ... v_m``.

Row ``i`` and column ``j`` are 0-based in this API; row 0 is the most
significant output bit.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionError, NotProgressiveError, SingularError

MAX_DIM = 64


def _check_dim(m: int) -> None:
    if not 1 <= m <= MAX_DIM:
        raise DimensionError(f"dimension must be in 1..{MAX_DIM}, got {m}")


def parity(word: int) -> int:
    return bin(word).count("1") & 1


def bit_reverse(value: int, m: int) -> int:
    """Reverse the low ``m`` bits of ``value``."""
    return int(format(value, f"0{m}b")[::-1], 2) if m else 0


@dataclass(frozen=True)
class BitVector:
    """Column vector of ``m`` bits; ``value`` has component 0 as its MSB."""

    value: int
    m: int

    def __post_init__(self):
        _check_dim(self.m)
        if not 0 <= self.value < (1 << self.m):
            raise ValueError(f"value {self.value:#x} does not fit in {self.m} bits")

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitVector":
        value = 0
        for b in bits:
            value = (value << 1) | (int(b) & 1)
        return cls(value, len(bits))

    @classmethod
    def from_str(cls, text: str) -> "BitVector":
        text = text.strip()
        if not text or set(text) - {"0", "1"}:
            raise ValueError(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    @classmethod
    def from_index(cls, index: int, m: int) -> "BitVector":
        """Digit vector S of a sample index: integer bit k becomes component k."""
        return cls(bit_reverse(index, m), m)

    def __getitem__(self, k: int) -> int:
        if not 0 <= k < self.m:
            raise IndexError(k)
        return (self.value >> (self.m - 1 - k)) & 1

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.m != other.m:
            raise DimensionError("vector dimensions differ")
        return BitVector(self.value ^ other.value, self.m)

    def __int__(self) -> int:
        return self.value

    def bits(self) -> list[int]:
        return [self[k] for k in range(self.m)]

    def __str__(self) -> str:
        return format(self.value, f"0{self.m}b")


@dataclass(frozen=True)
class BitMatrix:
    """Square ``m x m`` matrix over GF(2), one machine word per row."""

    rows: tuple[int, ...]

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        _check_dim(len(rows))
        limit = 1 << len(rows)
        for r in rows:
            if not 0 <= r < limit:
                raise ValueError(f"row {r:#x} does not fit in {len(rows)} bits")

    @property
    def m(self) -> int:
        return len(self.rows)

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> "BitMatrix":
        m = len(entries)
        if any(len(row) != m for row in entries):
            raise DimensionError("matrix must be square")
        return cls(tuple(BitVector.from_bits(row).value for row in entries))

    @classmethod
    def from_columns(cls, columns: Sequence[int]) -> "BitMatrix":
        """Build from column words (row 0 of each column at the MSB)."""
        m = len(columns)
        rows = [0] * m
        for j, col in enumerate(columns):
            for i in range(m):
                if (col >> (m - 1 - i)) & 1:
                    rows[i] |= 1 << (m - 1 - j)
        return cls(tuple(rows))

    @classmethod
    def from_str(cls, text: str) -> "BitMatrix":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if any(len(ln) != len(lines) for ln in lines):
            raise DimensionError("matrix text must have m lines of m characters")
        return cls(tuple(BitVector.from_str(ln).value for ln in lines))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        if not (0 <= i < self.m and 0 <= j < self.m):
            raise IndexError(ij)
        return (self.rows[i] >> (self.m - 1 - j)) & 1

    def columns(self) -> tuple[int, ...]:
        m = self.m
        cols = [0] * m
        for i, row in enumerate(self.rows):
            for j in range(m):
                if (row >> (m - 1 - j)) & 1:
                    cols[j] |= 1 << (m - 1 - i)
        return tuple(cols)

    def transpose(self) -> "BitMatrix":
        return BitMatrix(self.columns())

    def to_lists(self) -> list[list[int]]:
        return [[self[i, j] for j in range(self.m)] for i in range(self.m)]

    def leading(self, k: int) -> "BitMatrix":
        """Top-left ``k x k`` block."""
        shift = self.m - k
        return BitMatrix(tuple(r >> shift for r in self.rows[:k]))

    def apply(self, word: int) -> int:
        """Multiply by a raw vector word."""
        out = 0
        for row in self.rows:
            out = (out << 1) | parity(row & word)
        return out

    def __matmul__(self, other):
        if isinstance(other, BitMatrix):
            return mat_mul(self, other)
        if isinstance(other, BitVector):
            return mat_vec(self, other)
        return NotImplemented

    def __add__(self, other: "BitMatrix") -> "BitMatrix":
        if self.m != other.m:
            raise DimensionError("matrix dimensions differ")
        return BitMatrix(tuple(a ^ b for a, b in zip(self.rows, other.rows)))

    def __str__(self) -> str:
        return "\n".join(format(r, f"0{self.m}b") for r in self.rows)


@dataclass(frozen=True)
class LUDecomposition:
    lower: BitMatrix
    upper: BitMatrix


def identity(m: int) -> BitMatrix:
    _check_dim(m)
    return BitMatrix(tuple(1 << (m - 1 - i) for i in range(m)))


def anti_diagonal(m: int) -> BitMatrix:
    _check_dim(m)
    return BitMatrix(tuple(1 << i for i in range(m)))


def pascal(m: int) -> BitMatrix:
    """Binary Pascal matrix: entry (i, j) is C(j, i) mod 2 with 0-based i, j.

    By Lucas' theorem the entry is 1 exactly when the bits of ``i`` are a
    subset of the bits of ``j``.
    """
    _check_dim(m)
    rows = []
    for i in range(m):
        word = 0
        for j in range(m):
            if i & j == i:
                word |= 1 << (m - 1 - j)
        rows.append(word)
    return BitMatrix(tuple(rows))


def zeros(m: int) -> BitMatrix:
    _check_dim(m)
    return BitMatrix((0,) * m)


def mat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.m != b.m:
        raise DimensionError(f"cannot multiply {a.m}x{a.m} by {b.m}x{b.m}")
    m = a.m
    rows = []
    for arow in a.rows:
        acc = 0
        k = 0
        while arow:
            if arow & (1 << (m - 1 - k)):
                acc ^= b.rows[k]
                arow ^= 1 << (m - 1 - k)
            k += 1
        rows.append(acc)
    return BitMatrix(tuple(rows))


def mat_vec(a: BitMatrix, v: BitVector) -> BitVector:
    if a.m != v.m:
        raise DimensionError(f"cannot multiply {a.m}x{a.m} by vector of {v.m}")
    return BitVector(a.apply(v.value), a.m)


def matrix_power(a: BitMatrix, n: int) -> BitMatrix:
    out = identity(a.m)
    for _ in range(n):
        out = mat_mul(out, a)
    return out


def rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of a list of row words of any width."""
    basis: list[int] = []  # kept with distinct leading bits
    for row in rows:
        for b in basis:
            row = min(row, row ^ b)
        if row:
            basis.append(row)
    return len(basis)


def is_full_rank(rows: Sequence[int]) -> bool:
    """True iff the ``k`` given ``k``-bit rows are linearly independent."""
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            top = row.bit_length() - 1
            piv = pivots.get(top)
            if piv is None:
                pivots[top] = row
                break
            row ^= piv
        else:
            return False
    return True


def is_invertible(a: BitMatrix) -> bool:
    return is_full_rank(a.rows)


def invert(a: BitMatrix) -> BitMatrix:
    """Gauss-Jordan inverse; raises :class:`SingularError` when rank < m."""
    m = a.m
    work = list(a.rows)
    inv = list(identity(m).rows)
    for col in range(m):
        mask = 1 << (m - 1 - col)
        pivot = next((r for r in range(col, m) if work[r] & mask), None)
        if pivot is None:
            raise SingularError(f"matrix is singular (no pivot in column {col})")
        work[col], work[pivot] = work[pivot], work[col]
        inv[col], inv[pivot] = inv[pivot], inv[col]
        for r in range(m):
            if r != col and work[r] & mask:
                work[r] ^= work[col]
                inv[r] ^= inv[col]
    return BitMatrix(tuple(inv))


def lu_decompose(a: BitMatrix) -> LUDecomposition:
    """Unitriangular factorization ``a = lower @ upper``.

    Doolittle elimination without pivoting; exists (and is unique) exactly
    when every leading principal submatrix is invertible.
    """
    m = a.m
    work = list(a.rows)
    lower = list(identity(m).rows)
    for k in range(m):
        mask = 1 << (m - 1 - k)
        if not work[k] & mask:
            raise NotProgressiveError(f"leading principal minor of order {k + 1} is zero")
        for i in range(k + 1, m):
            if work[i] & mask:
                work[i] ^= work[k]
                lower[i] |= mask
    return LUDecomposition(BitMatrix(tuple(lower)), BitMatrix(tuple(work)))


def is_progressive(a: BitMatrix) -> bool:
    try:
        lu_decompose(a)
    except NotProgressiveError:
        return False
    return True


def is_lower_unitriangular(a: BitMatrix) -> bool:
    m = a.m
    return all(row & ((1 << (m - i)) - 1) == 1 << (m - 1 - i) for i, row in enumerate(a.rows))


def is_upper_unitriangular(a: BitMatrix) -> bool:
    m = a.m
    return all(row >> (m - 1 - i) == 1 for i, row in enumerate(a.rows))


def lower_unitriangular(m: int, below: int = 0) -> BitMatrix:
    """Lower unitriangular matrix whose ``m(m-1)/2`` free bits come from ``below``.

    Bits are consumed row by row, left to right, least significant first.
    """
    rows = []
    for i in range(m):
        word = 1 << (m - 1 - i)
        for j in range(i):
            if below & 1:
                word |= 1 << (m - 1 - j)
            below >>= 1
        rows.append(word)
    return BitMatrix(tuple(rows))


def upper_unitriangular(m: int, above: int = 0) -> BitMatrix:
    """Upper unitriangular counterpart of :func:`lower_unitriangular`."""
    rows = []
    for i in range(m):
        word = 1 << (m - 1 - i)
        for j in range(i + 1, m):
            if above & 1:
                word |= 1 << (m - 1 - j)
            above >>= 1
        rows.append(word)
    return BitMatrix(tuple(rows))


def random_lower_unitriangular(m: int, rng) -> BitMatrix:
    return lower_unitriangular(m, _random_bits(rng, m * (m - 1) // 2))


def random_upper_unitriangular(m: int, rng) -> BitMatrix:
    return upper_unitriangular(m, _random_bits(rng, m * (m - 1) // 2))


def random_matrix(m: int, rng) -> BitMatrix:
    return BitMatrix(tuple(_random_bits(rng, m) for _ in range(m)))


def random_invertible(m: int, rng) -> BitMatrix:
    """Uniform invertible matrix, column by column.

    Each new column is drawn uniformly from the nonzero words and redrawn
    while it lies in the span of the columns chosen so far.
    """
    _check_dim(m)
    cols: list[int] = []
    pivots: dict[int, int] = {}
    while len(cols) < m:
        cand = _random_bits(rng, m)
        if not cand:
            continue
        reduced = cand
        while reduced:
            top = reduced.bit_length() - 1
            if top not in pivots:
                break
            reduced ^= pivots[top]
        if not reduced:
            continue
        pivots[reduced.bit_length() - 1] = reduced
        cols.append(cand)
    return BitMatrix.from_columns(cols)


def _random_bits(rng, n: int) -> int:
    if n <= 0:
        return 0
    return int(rng.getrandbits(n))
