"""Exhaustive scan of the xi-sequence family over second-point positions.

Each cell of the grid is a seed ``(x, y)`` in ``[1/2, 1)^2`` at ``res_bits``
precision. For every seed the first ``2**m`` samples are measured both at
full 32-bit precision and truncated to ``m`` bits (the ``_q`` columns).
"""

from __future__ import annotations

import csv
import io
import operator
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import metrics, xi
from .errors import InfeasibleSize

MAX_CELLS = 1 << 24
BASE_METRICS = ("mindist", "avgnn", "star_disc")
COLUMNS = BASE_METRICS + tuple(name + "_q" for name in BASE_METRICS)

# larger is better for distances, smaller for discrepancy
_MAXIMIZE = {"mindist": True, "avgnn": True, "star_disc": False}


def seed_values(res_bits: int) -> list[int]:
    """32-bit seed words with the leading bit set, ``2**(res_bits-1)`` of them."""
    if not 1 <= res_bits <= xi.BITS:
        raise ValueError(f"res_bits must be in 1..{xi.BITS}, got {res_bits}")
    shift = xi.BITS - res_bits
    top = 1 << (res_bits - 1)
    return [(top | i) << shift for i in range(top)]


def thread_count(jobs: int | None = None) -> int:
    if jobs is None:
        env = os.environ.get("DYADIC_THREADS")
        jobs = int(env) if env else (os.cpu_count() or 1)
    return max(1, jobs)


@dataclass
class AtlasGrid:
    """Row-major grid: row ``r`` holds seed ``y = ys[r]``, column ``c`` seed ``x = xs[c]``."""

    m: int
    res_bits: int
    values: dict[str, np.ndarray] = field(default_factory=dict)

    @property
    def side(self) -> int:
        return 1 << (self.res_bits - 1)

    @property
    def seeds(self) -> list[int]:
        return seed_values(self.res_bits)

    def __len__(self) -> int:
        return self.side * self.side

    def cell(self, x: int, y: int) -> dict[str, float]:
        sv = self.seeds
        idx = sv.index(y) * self.side + sv.index(x)
        return {name: float(v[idx]) for name, v in self.values.items()}

    def image(self, metric: str) -> np.ndarray:
        return self.values[metric].reshape(self.side, self.side)

    def records(self):
        sv = self.seeds
        names = list(self.values)
        for idx in range(len(self)):
            row, col = divmod(idx, self.side)
            rec = {"seed_x_hex": f"{sv[col]:08x}", "seed_y_hex": f"{sv[row]:08x}"}
            for name in names:
                rec[name] = float(self.values[name][idx])
            yield rec

    def __eq__(self, other) -> bool:
        if not isinstance(other, AtlasGrid):
            return NotImplemented
        return (self.m == other.m and self.res_bits == other.res_bits
                and self.values.keys() == other.values.keys()
                and all(np.array_equal(self.values[k], other.values[k]) for k in self.values))


def measure_seed(sd: xi.XiSeed, m: int, names=BASE_METRICS) -> dict[str, float]:
    """Raw metrics of the first ``2**m`` samples, full precision and truncated."""
    full = xi.prefix(sd, m, truncate=False)
    out = {}
    for suffix, ps in (("", full), ("_q", full.truncate(m))):
        if "mindist" in names or "avgnn" in names:
            dmin, davg = metrics.distance_metrics(ps)
            if "mindist" in names:
                out["mindist" + suffix] = dmin
            if "avgnn" in names:
                out["avgnn" + suffix] = davg
        if "star_disc" in names:
            out["star_disc" + suffix] = metrics.star_discrepancy(ps)
    return out


def _scan_rows(args) -> dict[str, np.ndarray]:
    m, res_bits, names, rows = args
    sv = seed_values(res_bits)
    cols = list(names) + [n + "_q" for n in names]
    out = {c: np.empty(len(rows) * len(sv)) for c in cols}
    for r, row in enumerate(rows):
        for c, x in enumerate(sv):
            rec = measure_seed(xi.XiSeed(x, sv[row]), m, names)
            for name in cols:
                out[name][r * len(sv) + c] = rec[name]
    return out


def scan(m: int, res_bits: int, metric_set=BASE_METRICS, jobs: int | None = None) -> AtlasGrid:
    """Measure every seed of the ``res_bits`` grid on its first ``2**m`` points."""
    names = tuple(n for n in BASE_METRICS if n in set(metric_set))
    unknown = set(metric_set) - set(BASE_METRICS)
    if unknown or not names:
        raise ValueError(f"metrics must be drawn from {BASE_METRICS}, got {sorted(metric_set)}")
    if not 1 <= m <= xi.BITS:
        raise ValueError(f"m must be in 1..{xi.BITS}")
    if m > 16:
        raise InfeasibleSize(f"2**{m} points per cell is too many to measure")
    side = 1 << (res_bits - 1) if 1 <= res_bits <= xi.BITS else 0
    if side == 0:
        raise ValueError(f"res_bits must be in 1..{xi.BITS}, got {res_bits}")
    if side * side > MAX_CELLS:
        raise InfeasibleSize(f"{side * side} cells exceeds the limit of {MAX_CELLS}")

    jobs = min(thread_count(jobs), side)
    # contiguous row blocks merged in order, so the result is independent of jobs
    bounds = np.linspace(0, side, jobs + 1).astype(int)
    tasks = [(m, res_bits, names, list(range(bounds[i], bounds[i + 1]))) for i in range(jobs)]
    if jobs == 1:
        parts = [_scan_rows(tasks[0])]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_rows, tasks))
    values = {k: np.concatenate([p[k] for p in parts]) for k in parts[0]}
    return AtlasGrid(m, res_bits, values)


_CONSTRAINT = re.compile(r"^\s*(\w+)\s*(>=|<=|>|<)\s*([-+0-9.eE]+)\s*$")
_OPS = {">": operator.gt, "<": operator.lt, ">=": operator.ge, "<=": operator.le}


def parse_constraint(text: str) -> tuple[str, str, float]:
    match = _CONSTRAINT.match(text)
    if not match:
        raise ValueError(f"cannot parse constraint {text!r}; expected e.g. 'mindist>0.3'")
    name, op, value = match.groups()
    return name, op, float(value)


def _normalized(grid: AtlasGrid, name: str, normalized: bool) -> np.ndarray:
    vals = grid.values[name]
    if normalized and not name.startswith("star_disc"):
        return vals / metrics.hex_bound(1 << grid.m)
    return vals


def best(grid: AtlasGrid, metric: str, constraint: str | None = None, k: int = 10,
         normalized: bool = False) -> list[tuple[tuple[int, int], float]]:
    """Top ``k`` seeds under ``metric`` as ``((x, y), value)``, best first.

    ``constraint`` such as ``"mindist>0.3"`` filters cells first; with
    ``normalized`` set, distances (in both the ranking and the constraint)
    are divided by the hexagonal-lattice spacing for ``2**m`` points.
    """
    if metric not in grid.values:
        raise ValueError(f"metric {metric!r} not in grid {sorted(grid.values)}")
    vals = _normalized(grid, metric, normalized)
    keep = np.ones(len(vals), dtype=bool)
    if constraint:
        name, op, bound = parse_constraint(constraint)
        if name not in grid.values:
            raise ValueError(f"constraint metric {name!r} not in grid")
        keep = _OPS[op](_normalized(grid, name, normalized), bound)
    idx = np.flatnonzero(keep)
    maximize = _MAXIMIZE[metric.removesuffix("_q")]
    # stable sort keeps row-major order among ties
    order = np.argsort(-vals[idx] if maximize else vals[idx], kind="stable")[:k]
    sv = grid.seeds
    out = []
    for i in idx[order]:
        row, col = divmod(int(i), grid.side)
        out.append(((sv[col], sv[row]), float(vals[i])))
    return out


def to_csv(grid: AtlasGrid) -> str:
    buf = io.StringIO()
    names = list(grid.values)
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow([f"# m={grid.m} res_bits={grid.res_bits}"])
    writer.writerow(["seed_x_hex", "seed_y_hex", *names])
    for rec in grid.records():
        writer.writerow([rec["seed_x_hex"], rec["seed_y_hex"], *(repr(rec[n]) for n in names)])
    return buf.getvalue()


def from_csv(text: str) -> AtlasGrid:
    lines = text.splitlines()
    header = re.match(r"#\s*m=(\d+)\s+res_bits=(\d+)", lines[0])
    if not header:
        raise ValueError("missing '# m=<m> res_bits=<r>' header")
    m, res_bits = int(header.group(1)), int(header.group(2))
    reader = csv.reader(lines[1:])
    names = next(reader)[2:]
    rows = list(reader)
    grid = AtlasGrid(m, res_bits, {n: np.array([float(r[2 + i]) for r in rows])
                                   for i, n in enumerate(names)})
    if len(rows) != len(grid):
        raise ValueError(f"expected {len(grid)} rows, found {len(rows)}")
    return grid


def to_pgm(grid: AtlasGrid, metric: str) -> bytes:
    """Binary 8-bit PGM of one metric; larger seed y at the top."""
    img = grid.image(metric)[::-1]
    lo, hi = float(img.min()), float(img.max())
    scaled = np.zeros(img.shape) if hi == lo else (img - lo) / (hi - lo)
    pixels = np.round(scaled * 255).astype(np.uint8)
    head = f"P5\n{grid.side} {grid.side}\n255\n".encode()
    return head + pixels.tobytes()
