"""Command-line interface: gen, tag, estimate, compare, bench."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from socialpoi.core import InfeasibleCenter, InvalidParams
from socialpoi.ingest import (
    MalformedInput,
    format_kv,
    load_dataset,
    parse_kv,
    read_poi,
    read_queries,
    read_records,
    tag_relevance,
    write_poi,
    write_records,
)

log = logging.getLogger("socialpoi")

EXIT_MALFORMED = 1
EXIT_INFEASIBLE = 2


def _cmd_gen(args) -> int:
    from socialpoi.synth import PRESETS, SceneSpec, generate

    base = PRESETS[args.preset] if args.preset else SceneSpec()
    if args.spec:
        text = Path(args.spec).read_text(encoding="utf-8")
        overrides = parse_kv(text, args.spec)
        spec = SceneSpec.from_dict({**base.to_dict(), **overrides})
    else:
        spec = base
    dataset, config = generate(spec)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    write_records(out / "records.jsonl", dataset.records)
    write_poi(out / "poi.toml", config)
    (out / "scene.toml").write_text(format_kv(spec.to_dict()), encoding="utf-8")
    print(f"wrote {len(dataset)} records ({sum(r.relevant for r in dataset)} relevant) to {out}")
    return 0


def _cmd_tag(args) -> int:
    records, _ = read_records(args.input)
    ds = tag_relevance(records, read_queries(args.queries), provenance=args.input)
    write_records(args.out, ds.records)
    print(f"tagged {len(ds)} records, {sum(r.relevant for r in ds)} relevant")
    return 0


def _load(args):
    config = read_poi(args.poi)
    if getattr(args, "alpha", None) is not None:
        config = replace(config, alpha=args.alpha)
    return load_dataset(args.data, config), config


def _cmd_estimate(args) -> int:
    from socialpoi.geojson import estimate_to_geojson
    from socialpoi.hull import convex_hull
    from socialpoi.isobest import isobest, sobest_estimate

    dataset, config = _load(args)
    est = isobest(dataset, config) if args.method == "isobest" else sobest_estimate(dataset, config)
    poly = convex_hull(est.members, est.center)
    doc = json.dumps(estimate_to_geojson(est, config, args.method, poly), indent=2)
    if args.out:
        Path(args.out).write_text(doc + "\n", encoding="utf-8")
    else:
        print(doc)
    if args.plot:
        from socialpoi.plots import plot_boundary

        plot_boundary(dataset, config, est, poly, args.plot)
    return 0


def _parse_alphas(text: str) -> list[float]:
    try:
        vals = [float(a) for a in text.split(",") if a.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad alpha list {text!r}") from exc
    if not vals or any(a < 0 for a in vals):
        raise argparse.ArgumentTypeError("alphas must be a non-empty list of values >= 0")
    return vals


def _cmd_compare(args) -> int:
    from socialpoi.report import compare, compare_table, compare_tsv

    dataset, config = _load(args)
    rows = compare(dataset, config, args.alphas, min_pts=args.min_pts)
    tsv = compare_tsv(rows)
    print(compare_table(rows))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "compare.tsv").write_text(tsv, encoding="utf-8")
        from socialpoi.plots import plot_compare

        plot_compare(rows, out / "compare.png", title=f"BEQ by method: {config.name}")
        print(f"wrote {out / 'compare.tsv'} and {out / 'compare.png'}")
    else:
        print(tsv, end="")
    return 0


def _cmd_bench(args) -> int:
    from socialpoi.report import bench, bench_csv, linear_fit, parse_sizes
    from socialpoi.synth import PRESETS

    sizes = parse_sizes(args.sizes)
    scene = PRESETS["esb"].with_(c0_offset=args.c0_offset)
    rows = bench(sizes, reps=args.seeds, alpha=args.alpha, scene=scene, repeat=args.repeat,
                 seed=args.seed)
    fit = linear_fit(rows)
    csv_text = bench_csv(rows)
    summary = f"slope={fit.slope:.6e} s/record intercept={fit.intercept:.6e} s r2={fit.r2:.4f}"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "bench.csv").write_text(csv_text, encoding="utf-8")
        (out / "fit.txt").write_text(summary + "\n", encoding="utf-8")
        from socialpoi.plots import plot_bench

        plot_bench(rows, fit, out / "bench.png")
    print(csv_text, end="")
    print(summary)
    return 0


def _preset_names():
    from socialpoi.synth import PRESETS

    return PRESETS.keys()


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="socialpoi", description=__doc__)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a synthetic scene")
    g.add_argument("--spec", help="scene spec (key = value lines); overrides the preset")
    g.add_argument("--preset", choices=sorted(_preset_names()))
    g.add_argument("--out", required=True, help="output directory")
    g.set_defaults(func=_cmd_gen)

    t = sub.add_parser("tag", help="tag records relevant by keyword queries")
    t.add_argument("--in", dest="input", required=True)
    t.add_argument("--queries", required=True, help="file with one query per line")
    t.add_argument("--out", required=True)
    t.set_defaults(func=_cmd_tag)

    e = sub.add_parser("estimate", help="estimate a POI boundary as GeoJSON")
    e.add_argument("--data", required=True)
    e.add_argument("--poi", required=True)
    e.add_argument("--method", choices=["sobest", "isobest"], default="isobest")
    e.add_argument("--alpha", type=float)
    e.add_argument("--out", help="GeoJSON output file (default: stdout)")
    e.add_argument("--plot", help="also render a map figure to this file")
    e.set_defaults(func=_cmd_estimate)

    c = sub.add_parser("compare", help="BEQ of each method per alpha")
    c.add_argument("--data", required=True)
    c.add_argument("--poi", required=True)
    c.add_argument("--alphas", type=_parse_alphas, default=[0.0, 0.5, 1.0])
    c.add_argument("--min-pts", type=int, default=5)
    c.add_argument("--out", help="directory for compare.tsv and compare.png")
    c.set_defaults(func=_cmd_compare)

    b = sub.add_parser("bench", help="runtime scaling over subsample sizes")
    b.add_argument("--sizes", default="2000:5500:500", help="start:stop:step or a comma list")
    b.add_argument("--seeds", type=int, default=10, help="repetitions per size")
    b.add_argument("--repeat", type=int, default=3, help="timings per repetition (best kept)")
    b.add_argument("--alpha", type=float, default=1.0)
    b.add_argument("--c0-offset", type=float, default=0.0)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--out", help="directory for bench.csv, fit.txt and bench.png")
    b.set_defaults(func=_cmd_bench)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (InvalidParams, InfeasibleCenter) as exc:
        print(f"socialpoi: infeasible configuration: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except (MalformedInput, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"socialpoi: {exc}", file=sys.stderr)
        return EXIT_MALFORMED


if __name__ == "__main__":
    sys.exit(main())
