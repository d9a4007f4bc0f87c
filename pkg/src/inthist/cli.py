"""Command-line surface: compute, query, likelihood, bench.

Thin wrappers over the library: parsing, dispatch, formatting only.
Exit codes: 0 success, 2 usage/parse, 3 capacity/bounds, 4 I/O.
Diagnostics go to stderr; machine-readable output to stdout or files.
"""

from __future__ import annotations

import argparse
import sys

from . import bench as bench_mod
from .core import BinSpec, Region, normalize, region_histogram
from .errors import (
    BoundsError,
    CapacityError,
    FormatError,
    ParameterError,
    ShapeError,
)
from .imgio import (
    TensorFileSink,
    deserialize_ih,
    read_pgm,
    serialize_ih,
    write_map_pgm,
)
from .likelihood import METRICS, best_match, likelihood_map
from .strategies import Strategy, compute
from .streaming import compute_streamed, plan_tiles

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_IO = 4


def _parse_region(text: str) -> Region:
    parts = text.split(",")
    if len(parts) != 4:
        raise ParameterError(f"region must be r0,c0,r1,c1, got {text!r}")
    try:
        r0, c0, r1, c1 = (int(p) for p in parts)
    except ValueError:
        raise ParameterError(f"region fields must be integers, got {text!r}")
    return Region(r0, c0, r1, c1)


def _parse_strategy(name: str, tile: int) -> Strategy:
    if name == "wavefront":
        return Strategy("wavefront", tile)
    return Strategy(name)


def _read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def cmd_compute(args) -> int:
    img = read_pgm(_read_file(args.infile))
    spec = BinSpec.uniform(args.bins)
    if args.budget is not None:
        plan = plan_tiles(img.width, img.height, spec.bins, args.budget)
        with TensorFileSink(args.out, img.width, img.height, spec.bins) as sink:
            compute_streamed(img, spec, plan, sink)
        return EXIT_OK
    strategy = _parse_strategy(args.strategy, args.tile)
    ih = compute(img, spec, strategy, args.workers)
    with open(args.out, "wb") as fh:
        fh.write(serialize_ih(ih))
    return EXIT_OK


def cmd_query(args) -> int:
    ih = deserialize_ih(_read_file(args.tensor))
    hist = region_histogram(ih, _parse_region(args.region))
    if args.normalize:
        for v in normalize(hist):
            print(f"{v:.12g}")
    else:
        for v in hist.counts:
            print(int(v))
    return EXIT_OK


def cmd_likelihood(args) -> int:
    img = read_pgm(_read_file(args.infile))
    spec = BinSpec.uniform(args.bins)
    reg = _parse_region(args.template)
    reg.check_within(img.height, img.width)
    ih = compute(img, spec, Strategy("crossweave"), args.workers)
    template = normalize(region_histogram(ih, reg))
    lmap = likelihood_map(ih, template, reg.height, reg.width, args.metric)
    with open(args.out, "wb") as fh:
        fh.write(write_map_pgm(lmap.values))
    r, c, score = best_match(lmap)
    print(f"{r} {c} {score:.12g}")
    return EXIT_OK


def _parse_sizes(text: str):
    sizes = []
    for part in text.split(","):
        try:
            w, h = part.lower().split("x")
            sizes.append((int(w), int(h)))
        except ValueError:
            raise ParameterError(f"sizes must look like 256x256, got {part!r}")
    return tuple(sizes)


def _parse_ints(text: str):
    try:
        return tuple(int(p) for p in text.split(",") if p != "")
    except ValueError:
        raise ParameterError(f"expected a comma-separated integer list, got {text!r}")


def cmd_bench(args) -> int:
    names = [p for p in args.strategies.split(",") if p != ""]
    if not names:
        raise ParameterError("at least one strategy is required")
    tiles = _parse_ints(args.tiles) or (64,)
    strategies = []
    for name in names:
        if name == "wavefront":
            strategies.extend(Strategy("wavefront", t) for t in tiles)
        else:
            strategies.append(Strategy(name))
    config = bench_mod.BenchConfig(
        sizes=_parse_sizes(args.sizes),
        bins=_parse_ints(args.bins),
        strategies=tuple(strategies),
        workers=(args.workers,),
        reps=args.reps,
        seed=args.seed,
    )
    records = bench_mod.run_bench(config)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        bench_mod.write_csv(records, fh)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="inthist",
        description="Integral histograms: compute, query, match, benchmark.",
    )
    parser.add_argument(
        "--workers",
        type=int,
        default=0,
        help="cap on internal parallelism (0 = auto)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute a tensor file from a PGM image")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--bins", type=int, required=True)
    p.add_argument(
        "--strategy",
        default="crossweave",
        choices=["sequential", "crossweave", "sts", "wavefront"],
    )
    p.add_argument("--tile", type=int, default=64)
    p.add_argument("--budget", type=int, default=None, help="byte budget (streams)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("query", help="print a region histogram from a tensor file")
    p.add_argument("--tensor", required=True)
    p.add_argument("--region", required=True, help="r0,c0,r1,c1 inclusive")
    p.add_argument("--normalize", action="store_true")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("likelihood", help="render a sliding-window likelihood map")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--bins", type=int, required=True)
    p.add_argument("--template", required=True, help="r0,c0,r1,c1 inclusive")
    p.add_argument("--metric", default="bhattacharyya", choices=list(METRICS))
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_likelihood)

    p = sub.add_parser("bench", help="time strategies and write a CSV")
    p.add_argument("--sizes", required=True, help="e.g. 256x256,512x512")
    p.add_argument("--bins", required=True, help="e.g. 16,64")
    p.add_argument("--strategies", required=True, help="comma-separated names")
    p.add_argument("--tiles", default="64", help="wavefront tile sizes")
    p.add_argument("--reps", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (ParameterError, FormatError, ShapeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityError, BoundsError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
