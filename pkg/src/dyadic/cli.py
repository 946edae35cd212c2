"""Command-line entry point: ``dyadic <subcommand> ...``.

Exit codes: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from . import atlas, constructions, metrics, pairs, reorder, textio, xi
from .errors import DyadicError, NotDigitalError, NotDyadicError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def parse_count(text: str) -> int:
    """Integer or power expression such as ``2^24`` / ``2**24``."""
    t = text.strip().replace("**", "^")
    try:
        if "^" in t:
            base, exp = t.split("^", 1)
            value = int(base) ** int(exp)
        else:
            value = int(t, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a count: {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("count must be non-negative")
    return value


def _hex32(text: str) -> int:
    try:
        value = int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a hex word: {text!r}") from None
    if not 0 <= value < 1 << 32:
        raise argparse.ArgumentTypeError(f"{text!r} does not fit in 32 bits")
    return value


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


class _Output:
    """Collects text for stdout or ``--out``."""

    def __init__(self, path: str | None):
        self.path = path
        self.parts: list[str] = []

    def write(self, text: str) -> None:
        self.parts.append(text if text.endswith("\n") else text + "\n")

    def close(self) -> None:
        data = "".join(self.parts)
        if self.path and self.path != "-":
            with open(self.path, "w") as fh:
                fh.write(data)
        else:
            sys.stdout.write(data)


def _yes(flag: bool) -> str:
    return "yes" if flag else "no"


# subcommands


def cmd_construct(args, out: _Output) -> int:
    rng = constructions.make_rng(args.seed)
    pair = constructions.construct(args.kind, args.m, rng)
    if args.scramble:
        pair = constructions.scramble(pair, rng.getrandbits(args.m), rng.getrandbits(args.m))
    ps = pairs.generate(pair, args.count) if not args.no_points else None
    if args.json:
        rec = {"kind": args.kind, "seed": args.seed if args.seed is not None
               else constructions.DEFAULT_SEED, "pair": textio.pair_to_json(pair)}
        if ps is not None:
            rec["points"] = textio.points_to_json(ps)
        out.write(textio.dumps([rec]))
    else:
        out.write(f"# kind={args.kind} m={args.m} seed="
                  f"{args.seed if args.seed is not None else constructions.DEFAULT_SEED}")
        out.write(textio.format_pair(pair))
        if ps is not None:
            out.write(textio.format_points(ps))
    if args.plot and ps is not None:
        from . import plotting

        plotting.plot_points(ps, args.plot, title=f"{args.kind}, m={args.m}")
    return EXIT_OK


def cmd_convert(args, out: _Output) -> int:
    text = _read(args.input)
    try:
        if args.source == "net":
            src = textio.parse_pair(text)
            seq = reorder.net_to_sequence(src)
            same = pairs.characteristic(src) == pairs.characteristic(seq)
        else:
            ps = textio.parse_points(text)
            seq = reorder.pointset_to_sequence(ps)
            same = pairs.generate(seq).same_set(ps)
    except (NotDyadicError, NotDigitalError) as exc:
        out.write(f"# conversion failed: {exc}")
        return EXIT_FAIL
    progressive = pairs.is_progressive_pair(seq.cx, seq.cy)
    sequence = pairs.is_dyadic_sequence(pairs.generate(seq))
    if args.json:
        out.write(textio.dumps([{"pair": textio.pair_to_json(seq), "progressive_pair": progressive,
                                 "dyadic_sequence": sequence, "same_point_set": same}]))
    else:
        out.write(textio.format_pair(seq))
        out.write(f"# progressive pair: {_yes(progressive)}\n"
                  f"# dyadic sequence: {_yes(sequence)}\n"
                  f"# same point set: {_yes(same)}")
    return EXIT_OK if progressive and sequence and same else EXIT_FAIL


def cmd_check(args, out: _Output) -> int:
    text = _read(args.input)
    report: dict[str, bool] = {}
    if textio.has_pair(text):
        pair = textio.parse_pair(text)
        report["dyadic pair"] = pairs.is_dyadic_pair(pair.cx, pair.cy)
        report["progressive pair"] = pairs.is_progressive_pair(pair.cx, pair.cy)
        ps = pairs.generate(pair)
    elif textio.has_points(text):
        ps = textio.parse_points(text)
    else:
        raise UsageError("input holds neither a pair nor a point set")
    n = len(ps)
    if n == 0 or n & (n - 1):
        raise UsageError(f"point count {n} is not a power of two")
    report["dyadic net"] = pairs.is_dyadic_net(ps)
    report["dyadic sequence"] = pairs.is_dyadic_sequence(ps)
    if args.json:
        out.write(textio.dumps([{k.replace(" ", "_"): v for k, v in report.items()}]))
    else:
        for key, value in report.items():
            out.write(f"{key}: {_yes(value)}")
    wanted = "dyadic sequence" if args.require == "sequence" else "dyadic net"
    return EXIT_OK if report[wanted] else EXIT_FAIL


def cmd_xi(args, out: _Output) -> int:
    sd = xi.XiSeed(args.x, args.y)
    if args.invert is not None:
        values = [int(v, 16) for v in args.invert]
        idx = [xi.invert(sd, z, args.bits) for z in values]
        if args.json:
            out.write(textio.dumps([{"z": f"{z:x}", "index": i} for z, i in zip(values, idx)]))
        else:
            out.write("\n".join(str(i) for i in idx))
        return EXIT_OK
    if args.count > 1 << 32:
        raise UsageError("xi sequences are indexed by 32-bit numbers")
    seq = np.arange(args.start, args.start + args.count, dtype=np.uint64)
    if seq.size and int(seq[-1]) >> 32:
        raise UsageError("indices past 2^32 are not defined")
    if args.morton:
        zs = xi.get_samples_morton(sd, seq)
        if args.json:
            out.write(textio.dumps([f"{int(z):016x}" for z in zs]))
        else:
            out.write("\n".join(f"{int(z):016x}" for z in zs))
        return EXIT_OK
    if args.lut:
        level = {4: 1, 256: 4, 65536: 8}[args.lut]
        x, y = xi.get_samples_lut(xi.build_lookup(sd, level), seq.astype(np.uint32))
    else:
        x, y = xi.get_samples(sd, seq.astype(np.uint32))
    ps = pairs.PointSet(x, y, xi.BITS)
    if args.truncate is not None:
        ps = ps.truncate(args.truncate)
    if args.json:
        out.write(textio.dumps([textio.points_to_json(ps)]))
    else:
        out.write(f"# xi seed x={sd.to_hex()[0]} y={sd.to_hex()[1]}")
        out.write(textio.format_points(ps))
    if args.plot:
        from . import plotting

        plotting.plot_points(ps, args.plot, title=f"xi {sd.to_hex()[0]} {sd.to_hex()[1]}")
    return EXIT_OK


def cmd_measure(args, out: _Output) -> int:
    text = _read(args.input)
    ps = pairs.generate(textio.parse_pair(text)) if not textio.has_points(text) \
        else textio.parse_points(text)
    names = args.metric or ["star", "mindist", "avgnn"]
    rows = []
    for name in names:
        if name == "star":
            value = metrics.star_discrepancy(ps)
        else:
            value = metrics.METRICS[name](ps, toroidal=not args.euclidean,
                                          normalized=args.normalized)
        rows.append({"metric": name, "value": value, "n": len(ps), "m": ps.m})
    if args.json:
        out.write(textio.dumps(rows))
    else:
        out.write("metric,value,n,m")
        for r in rows:
            out.write(f"{r['metric']},{r['value']!r},{r['n']},{r['m']}")
    return EXIT_OK


def cmd_atlas(args, out: _Output) -> int:
    metric_set = args.metrics.split(",") if args.metrics else atlas.BASE_METRICS
    grid = atlas.scan(args.m, args.res, metric_set, jobs=args.jobs)
    if args.json:
        out.write(textio.dumps(list(grid.records())))
    else:
        out.write(atlas.to_csv(grid))
    if args.pgm:
        for name in grid.values:
            with open(f"{args.pgm}_{name}.pgm", "wb") as fh:
                fh.write(atlas.to_pgm(grid, name))
    if args.plot:
        from . import plotting

        for name in grid.values:
            plotting.plot_atlas(grid, name, f"{args.plot}_{name}.png")
    if args.best:
        top = atlas.best(grid, args.best, args.constraint, args.top, args.normalized)
        for (x, y), value in top:
            print(f"# best {args.best}: x={x:08x} y={y:08x} value={value!r}", file=sys.stderr)
    return EXIT_OK


def cmd_ratio(args, out: _Output) -> int:
    net = pairs.generate(constructions.lp_net(args.m))
    seq = pairs.generate(constructions.lp_sequence(args.m))
    if not net.same_set(seq):
        raise UsageError("LP sequence order covers the LP net only when m is a power of two")
    rng = np.random.default_rng(args.seed if args.seed is not None else constructions.DEFAULT_SEED)
    sizes, ratios = metrics.ordering_ratio_experiment(net, seq, args.trials, args.step, rng)
    rows = [{"n": int(s), "mean": float(ratios[:, i].mean()), "min": float(ratios[:, i].min()),
             "max": float(ratios[:, i].max())} for i, s in enumerate(sizes)]
    if args.json:
        out.write(textio.dumps(rows))
    else:
        out.write("n,mean,min,max")
        for r in rows:
            out.write(f"{r['n']},{r['mean']:.4f},{r['min']:.4f},{r['max']:.4f}")
    if args.plot:
        from . import plotting

        plotting.plot_ratios(sizes, ratios, args.plot)
    return EXIT_OK


def _bench_one(gen: str, count: int, sd: xi.XiSeed) -> float:
    seq = np.arange(count, dtype=np.uint64)
    if gen == "sobol":
        pair = constructions.sobol(max(1, (count - 1).bit_length()))
        t0 = time.perf_counter()
        pairs.generate(pair, count)
        return time.perf_counter() - t0
    s32 = seq.astype(np.uint32)
    t0 = time.perf_counter()
    if gen == "xi":
        xi.get_samples(sd, s32)
    elif gen == "xi-lut":
        xi.get_samples_lut(xi.build_lookup(sd, 4), s32)
    elif gen == "xi-lut65536":
        xi.get_samples_lut(xi.build_lookup(sd, 8), s32)
    elif gen == "xi-morton":
        xi.get_samples_morton(sd, seq)
    elif gen == "xi-invert":
        zs = xi.get_samples_morton(sd, seq)
        t0 = time.perf_counter()
        xi.invert_many(sd, zs)
    return time.perf_counter() - t0


BENCH_GENERATORS = ("xi", "xi-lut", "xi-lut65536", "xi-morton", "xi-invert", "sobol")


def cmd_bench(args, out: _Output) -> int:
    if args.count > 1 << 26:
        raise UsageError("bench counts are capped at 2^26")
    sd = xi.XiSeed(args.x, args.y)
    gens = args.gen or ["xi", "xi-lut"]
    rows = []
    for gen in gens:
        best_t = min(_bench_one(gen, args.count, sd) for _ in range(args.repeat))
        rows.append({"gen": gen, "count": args.count, "seconds": best_t,
                     "samples_per_sec": args.count / best_t if best_t > 0 else float("inf")})
    if args.json:
        out.write(textio.dumps(rows))
    else:
        out.write("gen,count,seconds,samples_per_sec")
        for r in rows:
            out.write(f"{r['gen']},{r['count']},{r['seconds']:.6f},{r['samples_per_sec']:.0f}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dyadic", description="Digital dyadic nets and sequences.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--json", action="store_true", help="emit a JSON array of records")
    common.add_argument("--seed", type=int, help="RNG seed (default %d)" % constructions.DEFAULT_SEED)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", parents=[common], help="build a named or random construction")
    p.add_argument("--kind", required=True,
                   choices=sorted(constructions.NAMED) + sorted(constructions.RANDOM))
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--count", type=parse_count, help="number of points (default 2^m)")
    p.add_argument("--scramble", action="store_true", help="add random XOR offsets")
    p.add_argument("--no-points", action="store_true", help="emit only the matrices")
    p.add_argument("--plot", help="PNG scatter of the points")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("convert", parents=[common], help="reorder a net or point set into a sequence")
    p.add_argument("--from", dest="source", choices=("net", "points"), required=True)
    p.add_argument("--in", dest="input", required=True)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("check", parents=[common], help="verify net/sequence properties")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--require", choices=("net", "sequence"), default="net")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("xi", parents=[common], help="sample or invert a xi-sequence")
    p.add_argument("--x", type=_hex32, default=1 << 31, help="seed x word, 8 hex digits")
    p.add_argument("--y", type=_hex32, default=1 << 31, help="seed y word, 8 hex digits")
    p.add_argument("--count", type=parse_count, default=256)
    p.add_argument("--start", type=parse_count, default=0)
    p.add_argument("--lut", type=int, choices=(4, 256, 65536))
    p.add_argument("--morton", action="store_true", help="emit Morton indices in hex")
    p.add_argument("--invert", nargs="+", metavar="Z", help="hex Morton prefixes to invert")
    p.add_argument("--bits", type=int, default=64, help="Morton prefix length for --invert")
    p.add_argument("--truncate", type=int, help="keep this many bits per coordinate")
    p.add_argument("--plot", help="PNG scatter of the points")
    p.set_defaults(func=cmd_xi)

    p = sub.add_parser("measure", parents=[common], help="star discrepancy and distances")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--metric", action="append", choices=("star", "mindist", "avgnn"))
    p.add_argument("--normalized", action="store_true",
                   help="divide distances by the hexagonal-lattice spacing")
    p.add_argument("--euclidean", action="store_true", help="no wrap-around for distances")
    p.set_defaults(func=cmd_measure)

    p = sub.add_parser("atlas", parents=[common], help="scan xi seeds on a grid")
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--res", type=int, default=8)
    p.add_argument("--metrics", help="comma list from " + ",".join(atlas.BASE_METRICS))
    p.add_argument("--jobs", type=int, help="worker processes (default DYADIC_THREADS or all cores)")
    p.add_argument("--pgm", help="prefix for PGM heatmaps, one per metric")
    p.add_argument("--plot", help="prefix for PNG heatmaps, one per metric")
    p.add_argument("--best", help="report the top seeds for this metric on stderr")
    p.add_argument("--top", type=int, default=5)
    p.add_argument("--constraint", help="filter such as 'mindist>0.3'")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_atlas)

    p = sub.add_parser("ratio", parents=[common],
                       help="discrepancy of random vs sequence order of the LP net")
    p.add_argument("--m", type=int, default=8)
    p.add_argument("--step", type=int, default=16)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--plot", help="PNG of the ratio curve")
    p.set_defaults(func=cmd_ratio)

    p = sub.add_parser("bench", parents=[common], help="sample throughput")
    p.add_argument("--gen", action="append", choices=BENCH_GENERATORS)
    p.add_argument("--count", type=parse_count, default=1 << 24)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--x", type=_hex32, default=1 << 31)
    p.add_argument("--y", type=_hex32, default=1 << 31)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK
    out = _Output(getattr(args, "out", None))
    try:
        code = args.func(args, out)
    except (UsageError, DyadicError, ValueError) as exc:
        print(f"dyadic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out.close()
    return code


if __name__ == "__main__":
    sys.exit(main())
