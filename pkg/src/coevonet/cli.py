"""Command-line surface: single runs, parameter sweeps, the consensus
fixed-point helper, and config validation."""

from __future__ import annotations

import argparse
import dataclasses
import sys
from pathlib import Path

from . import config as cfgmod
from .dynamics import DynamicsParams, consensus_fixed_point
from .engine import SimConfig, simulate, write_opinion_series, write_trajectory
from .graph import write_edge_list
from .harness import PRESETS, SweepSpec, run_sweep, write_sweep


def _int_list(text: str) -> tuple[int, ...]:
    return tuple(int(tok) for tok in text.split(",") if tok.strip())


def _add_sim_overrides(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, help="TOML config file")
    p.add_argument("--n", type=int)
    p.add_argument("--mean-degree", type=float, dest="mean_degree")
    p.add_argument("--steps", type=int, dest="t_max")
    p.add_argument("--seed", type=int)
    p.add_argument("--rho", type=float)
    p.add_argument("--eta", type=float)
    p.add_argument("--beta", type=float)
    p.add_argument("--epsilon", type=float)
    p.add_argument("--k", type=float)
    p.add_argument("--gamma", type=float)
    p.add_argument("--alpha", type=float)
    p.add_argument("--record-every", type=int, dest="record_every")
    p.add_argument("--record-opinions", action="store_true", default=None,
                   dest="record_opinions")
    p.add_argument("--snapshot-times", type=_int_list, dest="snapshot_times",
                   metavar="T0,T1,...")
    p.add_argument("--init-range", nargs=2, type=float, dest="init_range",
                   metavar=("LO", "HI"))


def _apply_sim_overrides(cfg: SimConfig, args: argparse.Namespace) -> SimConfig:
    rec_kw = {name: v for name in ("rho", "eta", "beta", "epsilon")
              if (v := getattr(args, name)) is not None}
    dyn_kw = {name: v for name in ("k", "gamma", "alpha")
              if (v := getattr(args, name)) is not None}
    sim_kw = {name: v for name in ("n", "mean_degree", "t_max", "seed",
                                   "record_every", "record_opinions",
                                   "snapshot_times")
              if (v := getattr(args, name)) is not None}
    if args.init_range is not None:
        sim_kw["init_low"], sim_kw["init_high"] = args.init_range
    if rec_kw:
        sim_kw["recommender"] = dataclasses.replace(cfg.recommender, **rec_kw)
    if dyn_kw:
        sim_kw["dynamics"] = dataclasses.replace(cfg.dynamics, **dyn_kw)
    return dataclasses.replace(cfg, **sim_kw) if sim_kw else cfg


def _load_sim(args: argparse.Namespace) -> SimConfig:
    data = cfgmod.load_toml(args.config) if args.config else {}
    return _apply_sim_overrides(cfgmod.sim_config_from_dict(data), args)


def _cmd_run(args: argparse.Namespace) -> int:
    cfg = _load_sim(args)
    cfg.validate()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    cfgmod.write_resolved(cfg, outdir)
    traj = simulate(cfg)
    write_trajectory(traj, outdir / "trajectory.csv")
    if cfg.record_opinions:
        write_opinion_series(traj, outdir / "opinions.csv")
    if traj.snapshots:
        snapdir = outdir / "snapshots"
        snapdir.mkdir(exist_ok=True)
        for t, g, x in traj.snapshots:
            write_edge_list(g, snapdir / f"edges_t{t}.txt", t)
            lines = ["node,opinion"] + [f"{i},{float(v)!r}" for i, v in enumerate(x)]
            (snapdir / f"opinions_t{t}.csv").write_text("\n".join(lines) + "\n")
    last = traj.rows[-1]
    print(f"t={last.t} polarization={last.polarization:.4f} "
          f"radicalization={last.radicalization:.4f} "
          f"n_components={last.n_components} "
          f"mean_opinion={last.mean_opinion:.4f} skips={traj.skip_count}")
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    if args.preset:
        if args.config:
            raise cfgmod.ConfigError("give either a config file or --preset")
        spec = PRESETS[args.preset]
    else:
        if not args.config:
            raise cfgmod.ConfigError("sweep needs a config file or --preset")
        spec = cfgmod.sweep_spec_from_dict(cfgmod.load_toml(args.config))
    base = _apply_sim_overrides(spec.base, args)
    kw = {}
    if args.replicates is not None:
        kw["replicates"] = args.replicates
    if args.seed_base is not None:
        kw["seed_base"] = args.seed_base
    spec = dataclasses.replace(spec, base=base, **kw)
    spec.validate()
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    cfgmod.write_resolved(spec, outdir)
    result = run_sweep(spec, parallelism=args.workers)
    write_sweep(result, outdir)
    failed = sum(1 for c in result.cells if c.error)
    print(f"{len(result.cells)} cells x {spec.replicates} replicates -> "
          f"{outdir / 'sweep_cells.csv'}"
          + (f" ({failed} cells with failures)" if failed else ""))
    return 1 if failed else 0


def _cmd_fixed_point(args: argparse.Namespace) -> int:
    params = DynamicsParams(k=args.k, gamma=args.gamma, alpha=args.alpha)
    print(f"{consensus_fixed_point(params):.6f}")
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    data = cfgmod.load_toml(args.config)
    if "sweep" in data:
        spec = cfgmod.sweep_spec_from_dict(data)
        spec.validate()
        sys.stdout.write(cfgmod.sweep_spec_toml(spec))
    else:
        cfg = cfgmod.sim_config_from_dict(data)
        cfg.validate()
        sys.stdout.write(cfgmod.sim_config_toml(cfg))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coevonet",
        description="Co-evolving opinion/network simulator with a tunable "
                    "similarity-based link recommender.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation")
    _add_sim_overrides(p_run)
    p_run.add_argument("--out", type=Path, default=Path("out"),
                       help="output directory (default: out)")
    p_run.set_defaults(func=_cmd_run)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep")
    p_sweep.add_argument("config", nargs="?", type=Path,
                         help="TOML sweep config")
    p_sweep.add_argument("--preset", choices=sorted(PRESETS),
                         help="built-in experiment preset")
    _add_sim_overrides(p_sweep)
    p_sweep.add_argument("--replicates", type=int)
    p_sweep.add_argument("--seed-base", type=int, dest="seed_base")
    p_sweep.add_argument("--workers", type=int, default=None,
                         help=f"worker processes (default: "
                              f"${cfgmod.__name__ and 'COEVONET_WORKERS'} or 1)")
    p_sweep.add_argument("--out", type=Path, default=Path("out"))
    p_sweep.set_defaults(func=_cmd_sweep)

    p_fp = sub.add_parser("fixed-point",
                          help="print the positive consensus fixed point")
    p_fp.add_argument("--k", type=float, default=0.1)
    p_fp.add_argument("--gamma", type=float, default=0.99)
    p_fp.add_argument("--alpha", type=float, default=0.3)
    p_fp.set_defaults(func=_cmd_fixed_point)

    p_val = sub.add_parser("validate",
                           help="check a config file and print the resolved "
                                "effective configuration")
    p_val.add_argument("config", type=Path)
    p_val.set_defaults(func=_cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (cfgmod.ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
