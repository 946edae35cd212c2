"""Text and JSON formats for matrices, generator pairs and point sets.

Matrix: ``m`` lines of ``m`` characters, row 0 first, column 0 leftmost.
Pair: a ``cx:`` block and a ``cy:`` block of matrix text, then optional
``x0:``/``y0:`` lines holding offset bit strings.
Point set: a ``m=<m> n=<count>`` header, then one ``x y`` integer line per point.

Lines starting with ``#`` are comments. A document may hold a pair followed
by a point set; each reader picks out its own part.
"""

from __future__ import annotations

import json
import re

import numpy as np

from .gf2 import BitMatrix, BitVector
from .pairs import GeneratorPair, PointSet

_HEADER = re.compile(r"^m=(\d+)\s+n=(\d+)$")


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines()
            if ln.strip() and not ln.lstrip().startswith("#")]


def format_matrix(mat: BitMatrix) -> str:
    return str(mat) + "\n"


def parse_matrix(text: str) -> BitMatrix:
    return BitMatrix.from_str("\n".join(_lines(text)))


def format_pair(pair: GeneratorPair) -> str:
    out = ["cx:", str(pair.cx), "cy:", str(pair.cy)]
    if pair.x0 or pair.y0:
        out += [f"x0: {pair.offset_x}", f"y0: {pair.offset_y}"]
    return "\n".join(out) + "\n"


def parse_pair(text: str) -> GeneratorPair:
    blocks: dict[str, list[str]] = {}
    offsets: dict[str, int] = {}
    current = None
    for ln in _lines(text):
        if _HEADER.match(ln):
            break
        key, sep, rest = ln.partition(":")
        if sep and key in ("cx", "cy"):
            current = blocks.setdefault(key, [])
            if rest.strip():
                raise ValueError(f"unexpected text after '{key}:'")
        elif sep and key in ("x0", "y0"):
            offsets[key] = BitVector.from_str(rest).value
            current = None
        elif current is not None:
            current.append(ln)
        else:
            raise ValueError(f"unexpected line {ln!r} outside a matrix block")
    if set(blocks) != {"cx", "cy"}:
        raise ValueError("pair text needs both 'cx:' and 'cy:' blocks")
    return GeneratorPair(BitMatrix.from_str("\n".join(blocks["cx"])),
                         BitMatrix.from_str("\n".join(blocks["cy"])),
                         offsets.get("x0", 0), offsets.get("y0", 0))


def format_points(ps: PointSet) -> str:
    body = "\n".join(f"{x} {y}" for x, y in zip(ps.x.tolist(), ps.y.tolist()))
    return f"m={ps.m} n={len(ps)}\n" + (body + "\n" if body else "")


def parse_points(text: str) -> PointSet:
    lines = _lines(text)
    for start, ln in enumerate(lines):
        header = _HEADER.match(ln)
        if header:
            break
    else:
        raise ValueError("point set text needs a 'm=<m> n=<count>' header")
    m, n = int(header.group(1)), int(header.group(2))
    rows = lines[start + 1:start + 1 + n]
    if len(rows) != n:
        raise ValueError(f"header promises {n} points, found {len(rows)}")
    xs = np.empty(n, dtype=np.uint64)
    ys = np.empty(n, dtype=np.uint64)
    for i, row in enumerate(rows):
        parts = row.split()
        if len(parts) != 2:
            raise ValueError(f"point line {row!r} must hold two integers")
        x, y = int(parts[0]), int(parts[1])
        if x < 0 or y < 0:
            raise ValueError(f"negative coordinate in {row!r}")
        xs[i], ys[i] = x, y
    return PointSet(xs, ys, m)


def has_pair(text: str) -> bool:
    return any(ln.startswith("cx:") for ln in _lines(text))


def has_points(text: str) -> bool:
    return any(_HEADER.match(ln) for ln in _lines(text))


def pair_to_json(pair: GeneratorPair) -> dict:
    return {"m": pair.m, "cx": str(pair.cx).split("\n"), "cy": str(pair.cy).split("\n"),
            "x0": str(pair.offset_x), "y0": str(pair.offset_y)}


def pair_from_json(obj: dict) -> GeneratorPair:
    return GeneratorPair(BitMatrix.from_str("\n".join(obj["cx"])),
                         BitMatrix.from_str("\n".join(obj["cy"])),
                         BitVector.from_str(obj.get("x0", "0")).value,
                         BitVector.from_str(obj.get("y0", "0")).value)


def points_to_json(ps: PointSet) -> dict:
    return {"m": ps.m, "points": [[x, y] for x, y in zip(ps.x.tolist(), ps.y.tolist())]}


def points_from_json(obj: dict) -> PointSet:
    return PointSet.from_points(obj["points"], obj["m"])


def dumps(records) -> str:
    return json.dumps(records, indent=1) + "\n"
