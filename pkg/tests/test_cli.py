import numpy as np
import pytest

from coevonet.cli import main
from coevonet.config import (
    sim_config_from_dict,
    sim_config_toml,
    sweep_spec_from_dict,
)
from coevonet.graph import read_edge_list

try:
    import tomllib
except ModuleNotFoundError:
    import tomli as tomllib


SWEEP_TOML = """
[sim]
n = 20
mean_degree = 4.0
t_max = 10
record_every = 5

[recommender]
epsilon = 0.01

[sweep]
replicates = 2
seed_base = 11

[sweep.axes]
joint = [0.0, 2.0]
rho = [0.0, 1.0]
"""


class TestRun:
    def test_writes_trajectory_and_artifacts(self, tmp_path, capsys):
        out = tmp_path / "out"
        rc = main([
            "run", "--n", "30", "--mean-degree", "6", "--steps", "40",
            "--seed", "7", "--rho", "0.75", "--eta", "3", "--beta", "3",
            "--record-every", "10", "--record-opinions",
            "--snapshot-times", "0,40", "--out", str(out),
        ])
        assert rc == 0
        lines = (out / "trajectory.csv").read_text().strip().splitlines()
        assert len(lines) == 1 + 40 // 10 + 1
        assert (out / "opinions.csv").exists()
        assert (out / "config.resolved").exists()
        g0, t0 = read_edge_list(out / "snapshots" / "edges_t0.txt")
        g1, t1 = read_edge_list(out / "snapshots" / "edges_t40.txt")
        assert (t0, t1) == (0, 40)
        assert g0.edge_count == g1.edge_count == 90
        opinions = (out / "snapshots" / "opinions_t40.csv").read_text().splitlines()
        assert opinions[0] == "node,opinion"
        assert len(opinions) == 1 + 30
        assert "t=40" in capsys.readouterr().out

    def test_resolved_config_round_trips(self, tmp_path):
        out = tmp_path / "out"
        assert main(["run", "--n", "20", "--mean-degree", "4", "--steps", "5",
                     "--seed", "3", "--out", str(out)]) == 0
        data = tomllib.loads((out / "config.resolved").read_text())
        cfg = sim_config_from_dict(data)
        assert (cfg.n, cfg.t_max, cfg.seed) == (20, 5, 3)
        assert sim_config_toml(cfg) == (out / "config.resolved").read_text()

    def test_identical_seeds_identical_bytes(self, tmp_path):
        args = ["run", "--n", "20", "--mean-degree", "4", "--steps", "20",
                "--seed", "5"]
        assert main(args + ["--out", str(tmp_path / "a")]) == 0
        assert main(args + ["--out", str(tmp_path / "b")]) == 0
        assert (tmp_path / "a" / "trajectory.csv").read_bytes() == \
            (tmp_path / "b" / "trajectory.csv").read_bytes()

    def test_bad_flag_value_fails(self, tmp_path, capsys):
        rc = main(["run", "--rho", "2.0", "--out", str(tmp_path / "x")])
        assert rc == 1
        assert "error" in capsys.readouterr().err


class TestSweep:
    def test_sweep_from_config_file(self, tmp_path, capsys):
        cfg_file = tmp_path / "sweep.toml"
        cfg_file.write_text(SWEEP_TOML)
        out = tmp_path / "out"
        assert main(["sweep", str(cfg_file), "--out", str(out)]) == 0
        cells = (out / "sweep_cells.csv").read_text().strip().splitlines()
        assert len(cells) == 1 + 4  # 2 x 2 grid
        raw = (out / "sweep_raw.csv").read_text().strip().splitlines()
        assert len(raw) == 1 + 4 * 2
        assert (out / "config.resolved").exists()

    def test_preset_with_overrides(self, tmp_path):
        out = tmp_path / "out"
        assert main(["sweep", "--preset", "fig2", "--n", "16",
                     "--mean-degree", "4", "--steps", "5", "--replicates", "1",
                     "--out", str(out)]) == 0
        cells = (out / "sweep_cells.csv").read_text().strip().splitlines()
        assert len(cells) == 1 + 6 * 5

    def test_needs_config_or_preset(self, capsys):
        assert main(["sweep"]) == 1
        assert "error" in capsys.readouterr().err


class TestFixedPoint:
    def test_default_parameters(self, capsys):
        assert main(["fixed-point", "--k", "0.1", "--gamma", "0.99",
                     "--alpha", "0.3"]) == 0
        assert float(capsys.readouterr().out) == pytest.approx(9.9490, abs=1e-3)

    def test_subcritical(self, capsys):
        assert main(["fixed-point", "--alpha", "0.0"]) == 0
        assert float(capsys.readouterr().out) == 0.0


class TestValidate:
    def test_sweep_config(self, tmp_path, capsys):
        cfg_file = tmp_path / "sweep.toml"
        cfg_file.write_text(SWEEP_TOML)
        assert main(["validate", str(cfg_file)]) == 0
        resolved = capsys.readouterr().out
        spec = sweep_spec_from_dict(tomllib.loads(resolved))
        assert spec.replicates == 2
        assert list(spec.axes) == ["joint", "rho"]

    def test_malformed_config(self, tmp_path, capsys):
        bad = tmp_path / "bad.toml"
        bad.write_text("[sim]\nn = \n")
        assert main(["validate", str(bad)]) == 1
        bad.write_text("[sim]\nbogus_key = 1\n")
        assert main(["validate", str(bad)]) == 1
        assert main(["validate", str(tmp_path / "missing.toml")]) == 1
        assert capsys.readouterr().err.count("error") == 3
