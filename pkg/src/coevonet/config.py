"""Config files for simulations and sweeps.

TOML with sections mirroring the config dataclasses:

    [sim]          n, mean_degree, t_max, seed, record_every,
                   record_opinions, init_range, snapshot_times
    [recommender]  rho, eta, beta, epsilon
    [dynamics]     k, gamma, alpha
    [sweep]        replicates, seed_base
    [sweep.axes]   parameter name -> list of values (at most two axes)

Every key is optional and falls back to the package defaults. The resolved
effective configuration is echoed back into the output directory so a run is
reproducible from its artifacts alone.
"""

from __future__ import annotations

import sys
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .dynamics import DynamicsParams
from .engine import SimConfig
from .harness import SweepSpec
from .recommender import RecommenderParams

_SIM_KEYS = {
    "n", "mean_degree", "t_max", "seed", "record_every", "record_opinions",
    "init_range", "snapshot_times", "require_connected", "max_init_retries",
}
_REC_KEYS = {"rho", "eta", "beta", "epsilon"}
_DYN_KEYS = {"k", "gamma", "alpha"}
_SWEEP_KEYS = {"replicates", "seed_base", "axes"}


class ConfigError(ValueError):
    pass


def load_toml(path: str | Path) -> dict:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}")
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}")


def _check_keys(section: dict, allowed: set[str], where: str) -> None:
    unknown = set(section) - allowed
    if unknown:
        raise ConfigError(f"unknown key(s) in [{where}]: {sorted(unknown)}")


def sim_config_from_dict(data: dict) -> SimConfig:
    sim = dict(data.get("sim", {}))
    rec = dict(data.get("recommender", {}))
    dyn = dict(data.get("dynamics", {}))
    _check_keys(sim, _SIM_KEYS, "sim")
    _check_keys(rec, _REC_KEYS, "recommender")
    _check_keys(dyn, _DYN_KEYS, "dynamics")
    init_range = sim.pop("init_range", None)
    snapshot_times = sim.pop("snapshot_times", None)
    try:
        cfg = SimConfig(
            recommender=RecommenderParams(**rec),
            dynamics=DynamicsParams(**dyn),
            **sim,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))
    if init_range is not None:
        if len(init_range) != 2:
            raise ConfigError(f"init_range must be [lo, hi], got {init_range}")
        cfg = _replace(cfg, init_low=float(init_range[0]),
                       init_high=float(init_range[1]))
    if snapshot_times is not None:
        cfg = _replace(cfg, snapshot_times=tuple(int(t) for t in snapshot_times))
    return cfg


def sweep_spec_from_dict(data: dict) -> SweepSpec:
    sweep = dict(data.get("sweep", {}))
    _check_keys(sweep, _SWEEP_KEYS, "sweep")
    axes_raw = sweep.pop("axes", None)
    if not axes_raw:
        raise ConfigError("a sweep config needs a [sweep.axes] table")
    axes = {name: tuple(values) for name, values in axes_raw.items()}
    try:
        return SweepSpec(base=sim_config_from_dict(data), axes=axes, **sweep)
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc))


def _replace(cfg, **kw):
    import dataclasses

    return dataclasses.replace(cfg, **kw)


# -- resolved-config echo -----------------------------------------------


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_fmt(v) for v in value) + "]"
    return repr(value)


def sim_config_toml(cfg: SimConfig) -> str:
    return (
        "[sim]\n"
        f"n = {cfg.n}\n"
        f"mean_degree = {_fmt(cfg.mean_degree)}\n"
        f"t_max = {cfg.t_max}\n"
        f"seed = {cfg.seed}\n"
        f"record_every = {cfg.record_every}\n"
        f"record_opinions = {_fmt(cfg.record_opinions)}\n"
        f"init_range = {_fmt([cfg.init_low, cfg.init_high])}\n"
        f"snapshot_times = {_fmt(cfg.snapshot_times)}\n"
        f"require_connected = {_fmt(cfg.require_connected)}\n"
        f"max_init_retries = {cfg.max_init_retries}\n"
        "\n[recommender]\n"
        f"rho = {_fmt(cfg.recommender.rho)}\n"
        f"eta = {_fmt(cfg.recommender.eta)}\n"
        f"beta = {_fmt(cfg.recommender.beta)}\n"
        f"epsilon = {_fmt(cfg.recommender.epsilon)}\n"
        "\n[dynamics]\n"
        f"k = {_fmt(cfg.dynamics.k)}\n"
        f"gamma = {_fmt(cfg.dynamics.gamma)}\n"
        f"alpha = {_fmt(cfg.dynamics.alpha)}\n"
    )


def sweep_spec_toml(spec: SweepSpec) -> str:
    text = sim_config_toml(spec.base)
    text += (
        "\n[sweep]\n"
        f"replicates = {spec.replicates}\n"
        f"seed_base = {spec.seed_base}\n"
        "\n[sweep.axes]\n"
    )
    for name, values in spec.axes.items():
        text += f"{name} = {_fmt(list(values))}\n"
    return text


def write_resolved(obj, outdir: str | Path) -> None:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    text = sweep_spec_toml(obj) if isinstance(obj, SweepSpec) else sim_config_toml(obj)
    (outdir / "config.resolved").write_text(text)
