"""Command-line entry: render simulator CSV output into figure files."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .io import SchemaError
from .render import render_curves, render_heatmap, render_timeseries


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coevoplot",
        description="Render coevonet output CSVs as figures.",
    )
    sub = parser.add_subparsers(dest="kind", required=True)

    p_heat = sub.add_parser("heatmap", help="metric over a two-axis sweep grid")
    p_heat.add_argument("--in", dest="input", type=Path, required=True,
                        help="sweep_cells.csv")
    p_heat.add_argument("--field", default="polarization",
                        help="metric column to color by (default: polarization)")
    p_heat.add_argument("--out", type=Path, required=True)

    p_ts = sub.add_parser("timeseries", help="per-node opinion trajectories")
    p_ts.add_argument("--in", dest="input", type=Path, required=True,
                      help="opinions.csv (t,node,opinion)")
    p_ts.add_argument("--config-echo", type=Path, default=None,
                      help="config.resolved for symmetric color limits")
    p_ts.add_argument("--out", type=Path, required=True)

    p_cv = sub.add_parser("curves",
                          help="polarization/radicalization against rho")
    p_cv.add_argument("--in", dest="input", type=Path, required=True,
                      help="sweep_cells.csv with a rho axis")
    p_cv.add_argument("--out", type=Path, required=True)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.kind == "heatmap":
            render_heatmap(args.input, args.field, args.out)
        elif args.kind == "timeseries":
            render_timeseries(args.input, args.out, config_echo=args.config_echo)
        else:
            render_curves(args.input, args.out)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
