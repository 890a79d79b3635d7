"""Command line entry point: ``grafen <command> ...`` (also ``python -m grafen``)."""

from __future__ import annotations

import argparse
import sys

from . import asymptotics, bounds, harness, spectral
from .graph import format_edge_list, read_edge_list
from .random_models import Seed, ba_tree, erdos_renyi, recursive_tree


def _seed(text: str) -> Seed:
    master, _, stream = text.partition(":")
    return Seed(int(master), int(stream) if stream else 0)


def _read(path_: str):
    if path_ == "-":
        from .graph import parse_edge_list

        return parse_edge_list(sys.stdin.read())
    return read_edge_list(path_)


def cmd_gen(args) -> None:
    seed = _seed(args.seed)
    if args.model == "ba":
        g = ba_tree(args.n, args.alpha, seed)
    elif args.model == "rrt":
        g = recursive_tree(args.n, seed)
    else:
        p = args.p if args.p is not None else 2.0 / args.n
        g = erdos_renyi(args.n, p, seed)
    harness.emit(format_edge_list(g), args.out)


def cmd_energy(args) -> None:
    g = _read(args.edgelist)
    rows = [{"n": g.n, "m": g.m, "energy": spectral.energy(g)}]
    harness.emit(harness.to_csv(("n", "m", "energy"), rows), args.out)


def cmd_bounds(args) -> None:
    rep = bounds.bound_report(_read(args.edgelist))
    harness.emit(harness.to_csv(bounds.CSV_FIELDS, [rep.row()]), args.out)
    for name, reason in sorted(rep.absent.items()):
        print(f"{name}: absent ({reason})", file=sys.stderr)


def cmd_table(args) -> None:
    if args.family == "double-star":
        rows = harness.run_double_star_table(args.p, range(1, args.q_max + 1))
        text = harness.to_csv(harness.DOUBLE_STAR_COLUMNS, rows)
    else:
        rows = harness.run_path_table(range(2, args.n_max + 1))
        text = harness.to_csv(harness.PATH_COLUMNS, rows)
    harness.emit(text, args.out)


def cmd_exp(args) -> None:
    cfg = harness.ExperimentConfig(
        experiment=args.figure,
        n=args.n,
        reps=args.reps,
        alpha=args.alpha,
        alpha_list=tuple(args.alphas or ()),
        master_seed=args.seed,
        workers=args.workers,
        paper_scale=args.paper_scale,
    )
    text = harness.run_experiment(cfg, points=args.points)
    harness.emit(text, args.out)
    if args.figure == "fig5":
        rows = [dict(zip(harness.FIG5_COLUMNS, ln.split(","))) for ln in text.splitlines()[2:]]
        pts = [(float(r["alpha"]), float(r["mean"])) for r in rows]
        try:
            print(f"threshold alpha: {harness.estimate_threshold(pts):.6f}", file=sys.stderr)
        except harness.ThresholdError as exc:
            print(f"threshold alpha: {exc}", file=sys.stderr)


def cmd_constants(args) -> None:
    if args.law is None:
        sc = asymptotics.series_constant(args.tol)
        cc = asymptotics.corrected_constant(args.tol)
        rows = [
            {"name": "series_constant", "value": sc.value, "truncation_bound": sc.truncation_bound},
            {"name": "corrected_constant", "value": cc.value, "truncation_bound": cc.truncation_bound},
            {"name": "edge_pair_limit_2_2", "value": float(asymptotics.edge_pair_limit(2, 2)), "truncation_bound": 0.0},
        ]
        text = harness.to_csv(("name", "value", "truncation_bound"), rows)
    elif args.law == "degree":
        rows = [{"d": d, "value": float(asymptotics.degree_fraction_limit(d))} for d in range(1, args.d_max + 1)]
        text = harness.to_csv(("d", "value"), rows)
    elif args.law == "tail":
        rows = [{"d": d, "value": float(asymptotics.degree_tail(d))} for d in range(0, args.d_max + 1)]
        text = harness.to_csv(("d", "value"), rows)
    elif args.law == "edge-pair":
        rows = [
            {"k": k, "l": l, "value": float(asymptotics.edge_pair_limit(k, l))}
            for k in range(1, args.d_max + 1)
            for l in range(k, args.d_max + 1)
        ]
        text = harness.to_csv(("k", "l", "value"), rows)
    else:
        s, q = asymptotics.sublinear_degree_law(args.alpha, args.d_max, args.tol)
        print(f"s = {s:.12g}", file=sys.stderr)
        text = harness.to_csv(("d", "value"), [{"d": d, "value": x} for d, x in enumerate(q, 1)])
    harness.emit(text, args.out)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="grafen", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random graph as an edge list")
    g.add_argument("model", choices=("ba", "rrt", "er"))
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--alpha", type=float, default=1.0)
    g.add_argument("--p", type=float, default=None, help="edge probability (default 2/n)")
    g.add_argument("--seed", default="0", help="MASTER or MASTER:STREAM")
    g.add_argument("--out", default=None)
    g.set_defaults(func=cmd_gen)

    e = sub.add_parser("energy", help="exact energy of an edge-list graph")
    e.add_argument("edgelist")
    e.add_argument("--out", default=None)
    e.set_defaults(func=cmd_energy)

    b = sub.add_parser("bounds", help="energy and every applicable upper bound")
    b.add_argument("edgelist")
    b.add_argument("--out", default=None)
    b.set_defaults(func=cmd_bounds)

    t = sub.add_parser("table", help="bound comparison tables")
    t.add_argument("family", choices=("double-star", "path"))
    t.add_argument("--p", type=int, default=5)
    t.add_argument("--q-max", type=int, default=10)
    t.add_argument("--n-max", type=int, default=10)
    t.add_argument("--out", default=None)
    t.set_defaults(func=cmd_table)

    x = sub.add_parser("exp", help="Monte Carlo experiments")
    x.add_argument("figure", choices=("fig3", "fig4", "fig5", "fig6"))
    x.add_argument("--n", type=int, default=None)
    x.add_argument("--reps", type=int, default=None)
    x.add_argument("--alpha", type=float, default=1.0, help="attachment exponent for fig3")
    x.add_argument("--alphas", type=float, nargs="+", default=None, help="alpha list for fig4/fig5")
    x.add_argument("--points", type=int, default=None, help="grid size for fig5")
    x.add_argument("--seed", type=int, default=0)
    x.add_argument("--workers", type=int, default=None, help=f"default ${harness.WORKERS_ENV} or 1")
    x.add_argument("--paper-scale", action="store_true")
    x.add_argument("--out", default=None)
    x.set_defaults(func=cmd_exp)

    c = sub.add_parser("constants", help="limit constants and laws")
    c.add_argument("--tol", type=float, default=1e-7)
    c.add_argument("--law", choices=("degree", "tail", "edge-pair", "sublinear"), default=None)
    c.add_argument("--alpha", type=float, default=0.5)
    c.add_argument("--d-max", type=int, default=20)
    c.add_argument("--out", default=None)
    c.set_defaults(func=cmd_constants)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    args.func(args)
    return 0


if __name__ == "__main__":
    sys.exit(main())
