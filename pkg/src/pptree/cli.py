"""Command line interface.

Subcommands: simulate, fit, predict, bench, boundary, serve. Runtime
failures exit 1 with a one-line diagnostic on stderr; usage errors exit 2.
The bench and boundary report paths render a matplotlib figure next to
their delimited output unless --no-fig is given.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import bench as bench_mod
from . import boundary as boundary_mod
from .datasets import load_csv, save_csv
from .errors import PPTreeError
from .projection import IndexConfig
from .simulate import SCENARIOS, SimSpec, simulate
from .tree import (
    VARIANTS,
    FitConfig,
    depth,
    fit,
    load_model,
    n_internal,
    n_leaves,
    predict_batch,
    save_model,
)

PDA_DEFAULT_LAMBDA = 0.1


def _rule(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"rule must be an integer in 1..8, got {text!r}")
    if not 1 <= value <= 8:
        raise argparse.ArgumentTypeError(f"rule must be in 1..8, got {value}")
    return value


def _fig_path(out: str, explicit: str | None, disabled: bool) -> str | None:
    if disabled:
        return None
    if explicit:
        return explicit
    base, _ = os.path.splitext(out)
    return base + ".png"


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pptree",
        description="Projection pursuit classification trees",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("simulate", help="generate a synthetic dataset as CSV")
    # "mixsim" is kept as an alias for the mixture scenario
    p.add_argument("--scenario", choices=SCENARIOS + ("mixsim",), required=True)
    p.add_argument("--n", type=int, default=300)
    p.add_argument("--k", type=int, default=3, help="number of classes")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--separation", type=float, default=6.0)
    p.add_argument("--elongation", type=float, default=1.0)
    p.add_argument("--outlier-fraction", type=float, default=0.15)
    p.add_argument("--overlap", type=float, default=0.0)
    p.add_argument("--out", required=True, metavar="CSV")

    p = sub.add_parser("fit", help="fit a tree to a CSV dataset")
    p.add_argument("--data", required=True, metavar="CSV")
    p.add_argument("--label-column", default="label")
    p.add_argument("--variant", choices=VARIANTS, default="original")
    p.add_argument("--rule", type=_rule, default=1,
                   help="split rule 1..8 for the class-partition variants")
    p.add_argument("--index", choices=("lda", "pda"), default="lda")
    p.add_argument("--lambda", dest="lambda_", type=float, default=None,
                   help=f"PDA penalty in [0,1); defaults to {PDA_DEFAULT_LAMBDA} under pda")
    p.add_argument("--min-node-size", type=int, default=10)
    p.add_argument("--entropy-threshold", type=float, default=0.01)
    p.add_argument("--max-depth", type=int, default=30)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, metavar="MODEL_JSON")

    p = sub.add_parser("predict", help="apply a fitted model to a CSV dataset")
    p.add_argument("--model", required=True, metavar="MODEL_JSON")
    p.add_argument("--data", required=True, metavar="CSV")
    p.add_argument("--label-column", default="label",
                   help="ignored feature-wise if present in the data")
    p.add_argument("--out", required=True, metavar="CSV")

    p = sub.add_parser("bench", help="run a repeated-holdout benchmark")
    p.add_argument("--spec", required=True, metavar="SPEC_JSON")
    p.add_argument("--out", required=True, metavar="CSV")
    p.add_argument("--json", dest="json_out", default=None, metavar="JSON")
    p.add_argument("--fig", default=None, metavar="PNG")
    p.add_argument("--no-fig", action="store_true")

    p = sub.add_parser("boundary", help="export a decision-region grid")
    p.add_argument("--model", required=True, metavar="MODEL_JSON")
    p.add_argument("--data", required=True, metavar="CSV",
                   help="dataset whose bounding box frames the grid")
    p.add_argument("--label-column", default="label")
    p.add_argument("--resolution", type=int, default=boundary_mod.DEFAULT_RESOLUTION)
    p.add_argument("--out", required=True, metavar="CSV")
    p.add_argument("--fig", default=None, metavar="PNG")
    p.add_argument("--no-fig", action="store_true")

    p = sub.add_parser("serve", help="start the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help="defaults to the PORT environment variable or 8000")
    return parser


def _load_features(path: str, label_column: str):
    """Feature matrix for prediction; tolerates a missing label column."""
    import csv

    import numpy as np

    from .errors import CsvFormatError

    with open(path, newline="") as fh:
        header = next(csv.reader(fh), None)
    if header is None:
        raise CsvFormatError(f"{path}: file is empty")
    if label_column in header:
        return load_csv(path, label_column).X
    # no label column: parse every column as a feature via a dummy label
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    X = np.empty((len(rows) - 1, len(header)))
    for i, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise CsvFormatError(f"{path}: row {i} has {len(row)} cells")
        for j, cell in enumerate(row):
            try:
                X[i - 2, j] = float(cell)
            except ValueError:
                raise CsvFormatError(
                    f"{path}: non-numeric value {cell!r} at row {i}, "
                    f"column {header[j]!r}"
                ) from None
    return X


def _cmd_simulate(args) -> int:
    spec = SimSpec(
        scenario="mixture" if args.scenario == "mixsim" else args.scenario,
        n=args.n,
        k=args.k,
        seed=args.seed,
        separation=args.separation,
        elongation=args.elongation,
        outlier_fraction=args.outlier_fraction,
        overlap=args.overlap,
    )
    data = simulate(spec)
    save_csv(data, args.out)
    print(f"wrote {data.n} rows, {data.p} features, {data.n_classes} classes to {args.out}")
    return 0


def _cmd_fit(args) -> int:
    data = load_csv(args.data, args.label_column)
    lam = args.lambda_
    if lam is None:
        lam = PDA_DEFAULT_LAMBDA if args.index == "pda" else 0.0
    cfg = FitConfig(
        index=IndexConfig(kind=args.index, lambda_=lam),
        rule=args.rule,
        min_node_size=args.min_node_size,
        entropy_threshold=args.entropy_threshold,
        max_depth=args.max_depth,
        seed=args.seed,
    )
    tree = fit(data, cfg, args.variant)
    save_model(tree, args.out)
    err = bench_mod.error_rate(predict_batch(tree, data.X), data.y)
    print(
        f"{args.variant}: {n_internal(tree)} splits, {n_leaves(tree)} leaves, "
        f"depth {depth(tree)}, training error {err:.4f}"
    )
    for note in tree.notes:
        print(f"note: {note}")
    print(f"wrote model to {args.out}")
    return 0


def _cmd_predict(args) -> int:
    tree = load_model(args.model)
    X = _load_features(args.data, args.label_column)
    labels = predict_batch(tree, X)
    with open(args.out, "w") as fh:
        fh.write("label\n")
        for v in labels:
            fh.write(f"{int(v)}\n")
    print(f"wrote {len(labels)} predictions to {args.out}")
    return 0


def _cmd_bench(args) -> int:
    with open(args.spec) as fh:
        spec = bench_mod.spec_from_json(fh.read())
    report = bench_mod.run_benchmark(spec)
    with open(args.out, "w") as fh:
        fh.write(bench_mod.report_to_csv(report))
    print(f"wrote report to {args.out}")
    if args.json_out:
        with open(args.json_out, "w") as fh:
            fh.write(bench_mod.report_to_json(report))
        print(f"wrote report to {args.json_out}")
    fig_path = _fig_path(args.out, args.fig, args.no_fig)
    if fig_path:
        from .plots import bench_figure, save_figure

        save_figure(bench_figure(report), fig_path)
        print(f"wrote figure to {fig_path}")
    return 0


def _cmd_boundary(args) -> int:
    tree = load_model(args.model)
    data = load_csv(args.data, args.label_column)
    grid = boundary_mod.boundary_grid(tree, data, args.resolution)
    with open(args.out, "w") as fh:
        fh.write(boundary_mod.grid_to_csv(grid))
    print(f"wrote {grid.resolution}x{grid.resolution} grid to {args.out}")
    fig_path = _fig_path(args.out, args.fig, args.no_fig)
    if fig_path:
        from .plots import boundary_figure, save_figure

        err = bench_mod.error_rate(predict_batch(tree, data.X), data.y)
        fig = boundary_figure(
            grid, data, title=f"{tree.variant}, training error {err:.4f}"
        )
        save_figure(fig, fig_path)
        print(f"wrote figure to {fig_path}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .server import app

    port = args.port
    if port is None:
        port = int(os.environ.get("PORT", "8000"))
    uvicorn.run(app, host=args.host, port=port)
    return 0


_COMMANDS = {
    "simulate": _cmd_simulate,
    "fit": _cmd_fit,
    "predict": _cmd_predict,
    "bench": _cmd_bench,
    "boundary": _cmd_boundary,
    "serve": _cmd_serve,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (PPTreeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
