"""End-to-end command-line checks, all in-process via main()."""

import json

import numpy as np
import pytest

import spinscape.cli as cli
from spinscape import MU_B_OVER_KB
from spinscape.eig import ConvergenceError


def _data_lines(path):
    return [l for l in path.read_text().splitlines() if l and not l.startswith("#")]


def test_compounds_listing(capsys):
    assert cli.main(["compounds"]) == 0
    out = capsys.readouterr().out
    assert "3-trigonal" in out
    assert "ii" in out
    assert out.count("\n") >= 18  # header plus 17 entries


def test_compounds_export_and_reuse(tmp_path):
    f = tmp_path / "trig.txt"
    assert cli.main(["compounds", "--export", "3-trigonal", "--out", str(f)]) == 0
    assert "b43 = 0.01" in f.read_text()

    out = tmp_path / "pot.csv"
    code = cli.main([
        "potential", "--compound-file", str(f),
        "--grid", "41", "--out", str(out),
    ])
    assert code == 0
    assert len(_data_lines(out)) == 42  # column row + 41 samples


def test_compounds_export_unknown_id(tmp_path):
    code = cli.main(["compounds", "--export", "nope", "--out", str(tmp_path / "f.txt")])
    assert code == 2


def test_spectrum_output_and_sidecar(tmp_path):
    out = tmp_path / "levels.csv"
    args = [
        "spectrum", "--compound", "3-trigonal",
        "--bz-range=-4:4", "--grid", "17", "--out", str(out),
    ]
    assert cli.main(args) == 0

    lines = out.read_text().splitlines()
    assert lines[0] == "# tool: spinscape 0.1.0"
    data = _data_lines(out)
    assert data[0] == "bz," + ",".join(f"e{i}" for i in range(11))
    assert len(data) == 18
    first = [float(v) for v in data[1].split(",")]
    assert first[0] == -4.0
    assert all(first[i] <= first[i + 1] for i in range(1, 11))

    sidecar = tmp_path / "levels.crossings.csv"
    side = _data_lines(sidecar)
    assert side[0] == "kind,bz"
    kinds = {row.split(",")[0] for row in side[1:]}
    assert "bifurcation" in kinds
    assert "maxwell_minima" in kinds

    # byte-identical rerun
    before = out.read_bytes(), sidecar.read_bytes()
    assert cli.main(args) == 0
    assert (out.read_bytes(), sidecar.read_bytes()) == before


def test_spectrum_skips_sidecar_out_of_plane(tmp_path):
    out = tmp_path / "levels.csv"
    code = cli.main([
        "spectrum", "--compound", "3", "--by", "0.1",
        "--bz-range=-1:1", "--grid", "5", "--out", str(out),
    ])
    assert code == 0
    assert out.exists()
    assert not (tmp_path / "levels.crossings.csv").exists()


def test_spectrum_json_format(tmp_path):
    out = tmp_path / "levels.json"
    code = cli.main([
        "spectrum", "--compound", "3", "--bz-range", "0:1",
        "--grid", "4", "--format", "json", "--out", str(out),
    ])
    assert code == 0
    doc = json.loads(out.read_text())
    assert doc["meta"]["tool"] == "spinscape 0.1.0"
    assert doc["columns"][0] == "bz"
    assert len(doc["rows"]) == 4
    side = json.loads((tmp_path / "levels.crossings.json").read_text())
    assert side["columns"] == ["kind", "bz"]


def test_potential_with_r_params(tmp_path):
    out = tmp_path / "v.csv"
    code = cli.main([
        "potential", "--r-params", "r3=-0.679,r4=0.00076,r5=0.01",
        "--grid", "64", "--out", str(out),
    ])
    assert code == 0
    data = _data_lines(out)
    assert data[0] == "theta,v_plus,v_minus"
    rows = np.array([[float(v) for v in line.split(",")] for line in data[1:]])
    assert rows.shape == (64, 3)
    assert rows[0, 0] == 0.0
    assert abs(rows[-1, 0] - np.pi) < 1e-12
    # the trigonal term separates the branches away from the poles
    assert np.max(np.abs(rows[:, 1] - rows[:, 2])) > 1e-3
    # both branches agree at the poles
    assert abs(rows[0, 1] - rows[0, 2]) < 1e-12
    assert abs(rows[-1, 1] - rows[-1, 2]) < 1e-12


def test_r_params_errors(tmp_path):
    out = str(tmp_path / "v.csv")
    assert cli.main(["potential", "--r-params", "r3=-1,r3=2", "--out", out]) == 2
    assert cli.main(["potential", "--r-params", "r9=-1", "--out", out]) == 2
    assert cli.main(["potential", "--r-params", "r3=abc", "--out", out]) == 2
    assert cli.main(["potential", "--r-params", "r3", "--out", out]) == 2


def test_conflicting_compound_sources(tmp_path):
    f = tmp_path / "c.txt"
    f.write_text("id = x\ntwo_s = 10\nd = -0.5\n")
    code = cli.main([
        "potential", "--compound", "3", "--compound-file", str(f),
        "--out", str(tmp_path / "v.csv"),
    ])
    assert code == 2


def test_unknown_compound_exits_2(tmp_path):
    code = cli.main([
        "spectrum", "--compound", "unobtainium",
        "--bz-range", "0:1", "--out", str(tmp_path / "x.csv"),
    ])
    assert code == 2


def test_unreadable_compound_file(tmp_path):
    code = cli.main([
        "potential", "--compound-file", str(tmp_path / "missing.txt"),
        "--out", str(tmp_path / "v.csv"),
    ])
    assert code == 2


def test_bad_ranges_and_grids(tmp_path):
    out = str(tmp_path / "x.csv")
    assert cli.main(["spectrum", "--compound", "3", "--bz-range", "1:-1", "--out", out]) == 2
    assert cli.main(["spectrum", "--compound", "3", "--bz-range", "zz", "--out", out]) == 2
    assert cli.main(["spectrum", "--compound", "3", "--bz-range", "0:1", "--grid", "1", "--out", out]) == 2
    assert cli.main([
        "fidelity-map", "--compound", "3", "--bz-range", "0:1",
        "--bx-range", "0:1", "--grid", "3x", "--out", out,
    ]) == 2


def test_missing_required_flag_exits_2(tmp_path, capsys):
    assert cli.main(["spectrum", "--compound", "3", "--out", str(tmp_path / "x.csv")]) == 2
    capsys.readouterr()


def test_unwritable_output_path(tmp_path):
    code = cli.main([
        "potential", "--compound", "3",
        "--out", str(tmp_path / "no" / "such" / "dir" / "v.csv"),
    ])
    assert code == 2


def test_numerical_failure_exits_3(tmp_path, monkeypatch):
    def explode(h):
        raise ConvergenceError("synthetic non-convergence")

    monkeypatch.setattr(cli, "eigh", explode)
    code = cli.main([
        "spectrum", "--compound", "3", "--bz-range", "0:1",
        "--grid", "4", "--out", str(tmp_path / "x.csv"),
    ])
    assert code == 3


def test_fidelity_map_grid(tmp_path):
    out = tmp_path / "f.csv"
    code = cli.main([
        "fidelity-map", "--compound", "3-trigonal",
        "--bz-range", "0.13:0.15", "--bx-range", "2.2:2.21",
        "--grid", "5x2", "--out", str(out),
    ])
    assert code == 0
    data = _data_lines(out)
    assert data[0] == "bz,bx,fidelity"
    rows = np.array([[float(v) for v in line.split(",")] for line in data[1:]])
    assert rows.shape == (10, 3)
    assert np.all(rows[:, 2] >= 0.0) and np.all(rows[:, 2] <= 1.0 + 1e-12)
    # bz varies fastest within one bx column
    assert rows[0, 1] == rows[4, 1] == 2.2
    assert rows[5, 1] == 2.21
    assert rows[0, 0] == 0.13 and rows[4, 0] == 0.15


def test_heatcap_map_single_and_multi_temp(tmp_path):
    out = tmp_path / "c.csv"
    base = [
        "heatcap-map", "--compound", "3-trigonal",
        "--bz-range=-0.1:0.4", "--bx-range", "2.2:2.21", "--grid", "4x2",
    ]
    assert cli.main(base + ["--temps", "0.05", "--out", str(out)]) == 0
    assert out.exists()

    assert cli.main(base + ["--temps", "0.05,0.1", "--out", str(out)]) == 0
    t1 = tmp_path / "c-T0.05.csv"
    t2 = tmp_path / "c-T0.1.csv"
    assert t1.exists() and t2.exists()
    for p in (t1, t2):
        rows = np.array([
            [float(v) for v in line.split(",")] for line in _data_lines(p)[1:]
        ])
        assert rows.shape == (8, 3)
        assert np.all(rows[:, 2] >= 0.0)

    assert cli.main(base + ["--temps", "0.05,-0.1", "--out", str(out)]) == 2


def test_separatrix_window(tmp_path):
    out = tmp_path / "sep.csv"
    code = cli.main([
        "separatrix", "--axes", "bz,bx",
        "--r-params", "r3=-0.679,r4=0.00076,r5=0.01",
        "--bz-range=-0.8:0.8", "--bx-range", "1.6:2.4",
        "--grid", "18x16", "--out", str(out),
    ])
    assert code == 0
    data = _data_lines(out)
    kinds = set()
    for line in data[1:]:
        kind, poly, vertex, v1, v2 = line.split(",")
        kinds.add(kind)
        assert -0.8 <= float(v1) <= 0.8
        assert 1.6 <= float(v2) <= 2.4
    assert "bifurcation" in kinds
    assert "maxwell_minima" in kinds


def test_tesla_rescales_fields(tmp_path):
    a = tmp_path / "a.csv"
    b = tmp_path / "b.csv"
    bz_t = 0.5
    assert cli.main([
        "potential", "--compound", "3", "--bz", str(bz_t), "--tesla",
        "--grid", "32", "--out", str(a),
    ]) == 0
    assert cli.main([
        "potential", "--compound", "3", "--bz", repr(bz_t * MU_B_OVER_KB),
        "--grid", "32", "--out", str(b),
    ]) == 0
    assert _data_lines(a) == _data_lines(b)


def test_plot_script_sidecar(tmp_path):
    out = tmp_path / "v.csv"
    code = cli.main([
        "potential", "--compound", "3", "--grid", "16",
        "--plot-script", "--out", str(out),
    ])
    assert code == 0
    gp = tmp_path / "v.gp"
    assert gp.exists()
    assert "v.csv" in gp.read_text()


def test_version_flag(capsys):
    assert cli.main(["--version"]) == 0
    assert "0.1.0" in capsys.readouterr().out
