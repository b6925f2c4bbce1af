import pytest

from coevoplot.cli import main
from coevoplot.io import SchemaError
from coevoplot.render import render_curves, render_heatmap, render_timeseries

CELLS_HEADER = (
    "joint,rho,polarization_mean,polarization_se,radicalization_mean,"
    "radicalization_se,n_components_mean,n_components_se,mean_opinion_mean,"
    "mean_opinion_se,replicates,error"
)


@pytest.fixture
def cells_csv(tmp_path):
    rows = []
    for joint in (0.5, 3.0):
        for rho in (0.0, 0.5, 1.0):
            pol = joint + rho
            rad = 5.0 - (4.0 if rho == 0.5 else 0.0)  # interior dip
            rows.append(f"{joint},{rho},{pol},0.1,{rad},0.1,1,0,0,0,10,")
    f = tmp_path / "sweep_cells.csv"
    f.write_text(CELLS_HEADER + "\n" + "\n".join(rows) + "\n")
    return f


@pytest.fixture
def opinions_csv(tmp_path):
    lines = ["t,node,opinion"]
    for t in (0, 10, 20):
        lines += [f"{t},0,{2.0}", f"{t},1,{-2.0}"]
    f = tmp_path / "opinions.csv"
    f.write_text("\n".join(lines) + "\n")
    return f


class TestHeatmap:
    def test_renders_png(self, cells_csv, tmp_path):
        out = tmp_path / "heat.png"
        render_heatmap(cells_csv, "polarization", out)
        assert out.stat().st_size > 0

    def test_deterministic_output(self, cells_csv, tmp_path):
        a, b = tmp_path / "a.png", tmp_path / "b.png"
        render_heatmap(cells_csv, "n_components", a)
        render_heatmap(cells_csv, "n_components", b)
        assert a.read_bytes() == b.read_bytes()

    def test_unknown_field(self, cells_csv, tmp_path):
        with pytest.raises(SchemaError):
            render_heatmap(cells_csv, "entropy", tmp_path / "x.png")

    def test_single_axis_rejected(self, tmp_path):
        f = tmp_path / "cells.csv"
        f.write_text(CELLS_HEADER.replace("joint,rho", "rho") + "\n"
                     + "0.5,1,0.1,2,0.1,1,0,0,0,10,\n")
        with pytest.raises(SchemaError):
            render_heatmap(f, "polarization", tmp_path / "x.png")

    def test_input_not_modified(self, cells_csv, tmp_path):
        before = cells_csv.read_bytes()
        render_heatmap(cells_csv, "polarization", tmp_path / "h.png")
        assert cells_csv.read_bytes() == before


class TestTimeseries:
    def test_renders_with_config_limits(self, opinions_csv, tmp_path):
        echo = tmp_path / "config.resolved"
        echo.write_text("[dynamics]\nk = 0.1\ngamma = 0.99\nalpha = 0.3\n")
        out = tmp_path / "ts.png"
        render_timeseries(opinions_csv, out, config_echo=echo)
        assert out.stat().st_size > 0

    def test_renders_without_config(self, opinions_csv, tmp_path):
        out = tmp_path / "ts.png"
        render_timeseries(opinions_csv, out)
        assert out.stat().st_size > 0


class TestCurves:
    def test_renders(self, cells_csv, tmp_path):
        out = tmp_path / "curves.png"
        render_curves(cells_csv, out)
        assert out.stat().st_size > 0

    def test_requires_rho_axis(self, tmp_path):
        f = tmp_path / "cells.csv"
        f.write_text(CELLS_HEADER.replace("joint,rho", "joint,eta") + "\n"
                     + "0.5,0.2,1,0.1,2,0.1,1,0,0,0,10,\n")
        with pytest.raises(SchemaError):
            render_curves(f, tmp_path / "x.png")


class TestCli:
    def test_happy_paths(self, cells_csv, opinions_csv, tmp_path, capsys):
        assert main(["heatmap", "--in", str(cells_csv), "--field",
                     "polarization", "--out", str(tmp_path / "h.png")]) == 0
        assert main(["timeseries", "--in", str(opinions_csv),
                     "--out", str(tmp_path / "t.png")]) == 0
        assert main(["curves", "--in", str(cells_csv),
                     "--out", str(tmp_path / "c.png")]) == 0
        out = capsys.readouterr().out.splitlines()
        assert len(out) == 3

    def test_schema_error_exit_code(self, tmp_path, capsys):
        bad = tmp_path / "bad.csv"
        bad.write_text("a,b\n1,2\n")
        assert main(["heatmap", "--in", str(bad), "--out",
                     str(tmp_path / "x.png")]) == 1
        assert "error" in capsys.readouterr().err
