"""Command-line entry point.

Subcommands: generate, diagram, vectorize, distance, experiment.  Results
go to files or stdout as CSV/JSON.  Exit codes: 0 success, 2 parameter
error, 1 I/O error.  The resolved seed is printed to stderr whenever
randomness is involved.
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

from .diagram import FiltrationGrid, to_barcode, truncate_essential
from .experiments import (
    ExperimentConfig,
    load_config,
    run_batch,
    run_instability_sweep,
    run_ratio_curve,
    run_theorem_2_5_demo,
    write_batch_outputs,
    write_manifest,
    write_sweep_outputs,
    write_table_csv,
)
from .filtration import build_rips
from .homology import (
    persistence_h0,
    persistence_h1,
    read_diagram_csv,
    write_diagram_csv,
)
from .metrics import bottleneck, wasserstein
from .pointcloud import (
    distances_from_points,
    enclosing_radius,
    gen_perturbed_lattice,
    gen_sierpinski,
    gen_uniform,
    gen_uniform_with_hole,
    read_pointcloud_csv,
    write_pointcloud_csv,
)
from .vectorize import (
    betti_grid_sample,
    betti_interval,
    betti_new,
    cumulative,
    normalize_sup,
    stable_betti,
    write_vector_csv,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bettiseq",
        description="Persistent homology Betti-sequence toolkit",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="generate a seeded point cloud CSV")
    g.add_argument(
        "--kind",
        required=True,
        choices=["lattice", "uniform", "sierpinski", "uniform-hole"],
    )
    g.add_argument("--n", type=int, default=225, help="number of points")
    g.add_argument("--n-side", type=int, default=15, help="lattice side count")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--side", type=float, default=1.0, help="uniform square side")
    g.add_argument("--domain-scale", type=float, default=1.0)
    g.add_argument("--epsilon", type=float, default=0.0, help="lattice rescale")
    g.add_argument("--perturb", type=float, default=0.0, help="lattice jitter")
    g.add_argument("--burn-in", type=int, default=20)
    g.add_argument("--hole-lo", type=float, default=0.15)
    g.add_argument("--hole-hi", type=float, default=0.85)
    g.add_argument("-o", "--output", required=True)

    d = sub.add_parser("diagram", help="persistence diagram of a point cloud CSV")
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--tau-max", type=float, default=1.0)
    d.add_argument("--dims", default="0,1", help="comma-separated subset of 0,1")
    d.add_argument("--full-threshold", action="store_true",
                   help="disable the enclosing-radius threshold cap")
    d.add_argument("-o", "--output")

    v = sub.add_parser("vectorize", help="Betti vectors of a diagram CSV")
    v.add_argument("--in", dest="input", required=True)
    v.add_argument(
        "--variant",
        default="interval",
        choices=["grid-sample", "interval", "stable", "new"],
    )
    v.add_argument("--tau-max", type=float, default=1.0)
    v.add_argument("--n-bins", type=int, default=20)
    v.add_argument("--gamma", type=float, default=None,
                   help="constant gamma for the new variant")
    v.add_argument("--cumulative", action="store_true")
    v.add_argument("--normalize", action="store_true")
    v.add_argument("--seed", type=int, default=0, help="seed metadata column")
    v.add_argument("-o", "--output")

    m = sub.add_parser("distance", help="distance between two diagram CSVs")
    m.add_argument("--a", required=True)
    m.add_argument("--b", required=True)
    m.add_argument("--metric", default="wasserstein",
                   choices=["wasserstein", "bottleneck"])
    m.add_argument("--p", type=float, default=1.0)
    m.add_argument("--dim", type=int, default=1)
    m.add_argument("--tau-max", type=float, default=1.0,
                   help="essential-class truncation value")

    e = sub.add_parser("experiment", help="run a scripted experiment")
    e.add_argument(
        "name",
        choices=["ratio-curve", "theorem-2-5-demo", "instability-sweep", "batch"],
    )
    e.add_argument("--config", help="flat key=value config file")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--eps", type=float, default=1e-3,
                   help="shift for theorem-2-5-demo")
    e.add_argument("--n-bins", type=int, default=None)
    e.add_argument("-o", "--output", help="CSV path or output directory")
    return parser


def _cmd_generate(args) -> int:
    print(f"seed: {args.seed}", file=sys.stderr)
    if args.kind == "lattice":
        pc = gen_perturbed_lattice(
            args.n_side, args.domain_scale, args.epsilon, args.seed, args.perturb
        )
    elif args.kind == "uniform":
        pc = gen_uniform(args.n, args.side, args.seed)
    elif args.kind == "sierpinski":
        pc = gen_sierpinski(args.n, args.seed, args.burn_in)
    else:
        pc = gen_uniform_with_hole(args.n, args.hole_lo, args.hole_hi, args.seed)
    write_pointcloud_csv(pc, args.output)
    return 0


def _cmd_diagram(args) -> int:
    dims = sorted({int(t) for t in args.dims.split(",")})
    if any(dim not in (0, 1) for dim in dims):
        raise ValueError("dims must be a subset of 0,1")
    points = read_pointcloud_csv(args.input)
    dm = distances_from_points(points)
    threshold = args.tau_max
    if not args.full_threshold:
        threshold = min(threshold, enclosing_radius(dm))
    fc = build_rips(dm, threshold, max_dim=2 if 1 in dims else 1)
    diagrams = []
    if 0 in dims:
        diagrams.append(persistence_h0(fc))
    if 1 in dims:
        diagrams.append(persistence_h1(fc))
    if args.output:
        write_diagram_csv(diagrams, args.output)
    else:
        write_diagram_csv(diagrams, sys.stdout)
    return 0


def _cmd_vectorize(args) -> int:
    grid = FiltrationGrid(args.tau_max, args.n_bins)
    by_dim = read_diagram_csv(args.input)
    rows = []
    for dim in sorted(by_dim):
        pd = truncate_essential(by_dim[dim], grid.tau_max)
        if args.variant == "grid-sample":
            vec = betti_grid_sample(to_barcode(pd), grid)
        elif args.variant == "interval":
            vec = betti_interval(pd, grid)
        elif args.variant == "stable":
            vec = stable_betti(pd, grid)
        else:
            vec = betti_new(pd, grid, gamma=args.gamma)
        if args.cumulative or args.normalize:
            vec = cumulative(vec)
        if args.normalize:
            vec = normalize_sup(vec)
        rows.append((vec, dim, args.seed))
    if args.output:
        write_vector_csv(rows, args.output)
    else:
        write_vector_csv(rows, sys.stdout)
    return 0


def _cmd_distance(args) -> int:
    def load(path):
        by_dim = read_diagram_csv(path)
        pd = by_dim.get(args.dim)
        if pd is None:
            from .homology import PersistenceDiagram

            pd = PersistenceDiagram(args.dim, ())
        return truncate_essential(pd, args.tau_max)

    x = load(args.a)
    y = load(args.b)
    if args.metric == "wasserstein":
        value = wasserstein(x, y, p=args.p)
    else:
        value = bottleneck(x, y)
    print(f"{value:.15g}")
    return 0


def _cmd_experiment(args) -> int:
    name = args.name
    if args.config:
        cfg = load_config(args.config, name=name)
    else:
        cfg = ExperimentConfig(name=name, seed=args.seed)
    print(f"seed: {cfg.seed}", file=sys.stderr)

    if name == "ratio-curve":
        table = run_ratio_curve()
        out = args.output or "ratio_curve.csv"
        write_table_csv(out, ["epsilon", "ratio"], table)
    elif name == "theorem-2-5-demo":
        n_bins = args.n_bins or 4
        report = run_theorem_2_5_demo(args.eps, n_bins)
        out = args.output or "theorem_2_5_demo.csv"
        write_table_csv(
            out,
            ["epsilon", "sup_dist", "w1", "ratio"],
            [[report["eps"], report["sup_dist"], report["w1"], report["ratio"]]],
        )
    elif name == "instability-sweep":
        tables = run_instability_sweep(cfg)
        write_sweep_outputs(tables, cfg, args.output or "sweep_out")
    else:
        results = run_batch(cfg)
        write_batch_outputs(results, cfg, args.output or "batch_out")
    return 0


_HANDLERS = {
    "generate": _cmd_generate,
    "diagram": _cmd_diagram,
    "vectorize": _cmd_vectorize,
    "distance": _cmd_distance,
    "experiment": _cmd_experiment,
}


def dispatch(argv: list[str]) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _HANDLERS[args.command](args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
