"""Command-line interface: CSV shape, precedence, determinism, exit codes."""

import math

import pytest

from dephaser.cli import main

PI_4 = repr(math.pi / 4)


def read_csv(path):
    comments, header, rows = [], None, []
    for line in path.read_text().splitlines():
        if line.startswith("# "):
            comments.append(line[2:])
        elif header is None:
            header = line.split(",")
        else:
            rows.append(line.split(","))
    return dict(c.split(" = ", 1) for c in comments), header, rows


def test_gamma_csv_closed_form(tmp_path):
    out = tmp_path / "curve.csv"
    code = main(["gamma", "--gamma-method", "closed", "--regime", "zero-t",
                 "--t-max", "1", "--samples", "5", "--out", str(out)])
    assert code == 0
    meta, header, rows = read_csv(out)
    assert header == ["t", "gamma", "visibility"]
    assert len(rows) == 5
    assert meta["gamma0"] == "0.3"
    assert meta["gamma_method"] == "closed"
    assert meta["regime"] == "zero-t"
    # Worker count and output path must not leak into the byte stream.
    assert "jobs" not in meta and "out" not in meta
    first, last = rows[0], rows[-1]
    assert float(first[0]) == 0.0
    assert float(first[1]) == 0.0
    assert float(first[2]) == 1.0
    assert float(last[1]) == pytest.approx(0.15 * math.log1p(1e4), rel=1e-11)
    for row in rows:
        for cell in row:
            assert math.isfinite(float(cell))


def test_gamma_stdout_default(capsys):
    code = main(["gamma", "--gamma-method", "closed", "--regime", "zero-t",
                 "--t-max", "1", "--samples", "3"])
    assert code == 0
    out = capsys.readouterr().out
    assert "t,gamma,visibility" in out
    assert out.startswith("# omega = ")


def test_gamma_deterministic_across_worker_counts(tmp_path, monkeypatch):
    args = ["gamma", "--gamma-method", "closed", "--regime", "zero-t",
            "--t-max", "2", "--samples", "9"]
    serial = tmp_path / "serial.csv"
    pooled = tmp_path / "pooled.csv"
    assert main(args + ["--out", str(serial), "--jobs", "1"]) == 0
    monkeypatch.setenv("DEPHASER_JOBS", "3")
    assert main(args + ["--out", str(pooled)]) == 0
    assert serial.read_bytes() == pooled.read_bytes()


@pytest.mark.parametrize("argv", [
    [],
    ["gamma", "--t-max", "0"],
    ["gamma", "--samples", "1"],
    ["gamma", "--no-such-flag"],
    ["gamma", "--exponent", "2"],
    ["gamma", "--gamma0", "-1"],
    ["gamma", "--gamma-method", "closed", "--temperature", "1.55"],
    ["gamma", "--jobs", "0"],
    ["phase", "--quad-tol", "0"],
    ["dectime", "--t-probe-max", "0"],
    ["figure1", "--samples", "1", "--out-dir", "unused"],
    ["figure1"],
    ["accept", "--only", "12"],
])
def test_usage_errors_exit_1(argv, capsys):
    assert main(argv) == 1
    err = capsys.readouterr().err
    assert err.startswith("dephaser: error:")
    assert err.count("\n") == 1


def test_numerical_failure_exit_2(tmp_path, capsys):
    code = main(["gamma", "--panel-budget", "2", "--t-max", "1", "--samples", "3",
                 "--out", str(tmp_path / "never.csv")])
    assert code == 2
    assert "dephaser: error:" in capsys.readouterr().err


def test_io_failure_exit_3(tmp_path, capsys):
    target = tmp_path / "no_such_dir" / "out.csv"
    code = main(["gamma", "--gamma-method", "closed", "--regime", "zero-t",
                 "--t-max", "1", "--samples", "3", "--out", str(target)])
    assert code == 3
    assert "dephaser: error:" in capsys.readouterr().err


def test_flags_override_config_and_pin_grid_axes(tmp_path):
    config = tmp_path / "run.ini"
    config.write_text(
        "[bath]\ngamma0 = 0.1\n\n[method]\nkind = closed\nregime = zero-t\n\n"
        "[grid]\ngamma0 = 0.1, 0.2\n")
    out = tmp_path / "curve.csv"
    code = main(["gamma", "--config", str(config), "--gamma0", "0.25",
                 "--t-max", "1", "--samples", "3", "--out", str(out)])
    assert code == 0
    meta, _, _ = read_csv(out)
    assert meta["gamma0"] == "0.25"
    # The pinned parameter no longer sweeps.
    assert "grid.gamma0" not in meta


def test_bad_config_exits_1(tmp_path, capsys):
    config = tmp_path / "run.ini"
    config.write_text("[bath]\nviscosity = 3\n")
    assert main(["gamma", "--config", str(config)]) == 1
    assert "viscosity" in capsys.readouterr().err


def test_phase_csv_both_routes(tmp_path):
    out = tmp_path / "phase.csv"
    code = main(["phase", "--theta0", PI_4, "--gamma0", "0.01",
                 "--temperature", "1000", "--gamma-method", "closed",
                 "--regime", "high-t", "--phase-method", "both",
                 "--delta", "both", "--out", str(out)])
    assert code == 0
    meta, header, rows = read_csv(out)
    assert header == ["theta0", "omega", "exponent_n", "gamma0", "cutoff_lambda",
                      "temperature", "phi_unitary", "phi_exact", "delta_closed",
                      "delta_generic", "residual", "phi_exact_functional"]
    assert len(rows) == 1
    row = dict(zip(header, (float(cell) for cell in rows[0])))
    s2c = math.sin(math.pi / 4) ** 2 * math.cos(math.pi / 4)
    assert row["delta_closed"] == pytest.approx(
        math.pi**2 * 0.01 * math.pi * 1000.0 * s2c, rel=1e-9)
    assert row["phi_unitary"] == pytest.approx(
        math.pi * (1.0 - math.cos(math.pi / 4)), rel=1e-11)
    assert 0.0 <= row["phi_exact"] < 2.0 * math.pi
    assert row["phi_exact_functional"] == pytest.approx(row["phi_exact"], abs=1e-6)
    assert math.isfinite(row["residual"])
    assert meta["phase_method"] == "both"


def test_phase_sweep_preserves_grid_order(tmp_path):
    config = tmp_path / "sweep.ini"
    config.write_text(
        "[bath]\ngamma0 = 0.05\n\n[method]\nkind = closed\nregime = zero-t\n\n"
        "[grid]\ntheta0 = 0.4, 0.8, 1.2\n")
    out = tmp_path / "phase.csv"
    code = main(["phase", "--config", str(config), "--delta", "closed",
                 "--out", str(out)])
    assert code == 0
    meta, header, rows = read_csv(out)
    assert meta["grid.theta0"] == "0.4, 0.8, 1.2"
    tilt = [float(row[0]) for row in rows]
    assert tilt == [0.4, 0.8, 1.2]
    # Only the closed shift was requested; the generic column stays zeroed.
    generic = header.index("delta_generic")
    assert all(float(row[generic]) == 0.0 for row in rows)
    closed = header.index("delta_closed")
    assert all(float(row[closed]) != 0.0 for row in rows)


def test_dectime_csv_crossing(tmp_path):
    out = tmp_path / "dectime.csv"
    code = main(["dectime", "--gamma0", "0.3", "--temperature", "1000",
                 "--gamma-method", "closed", "--regime", "high-t",
                 "--out", str(out)])
    assert code == 0
    meta, header, rows = read_csv(out)
    assert header == ["exponent_n", "gamma0", "cutoff_lambda", "temperature",
                      "verdict", "t_d", "plateau", "formula_t_d", "observable",
                      "margin"]
    assert "margin" in meta["note"]
    row = dict(zip(header, rows[0]))
    formula = 1.0 / (300.0 * math.pi)
    assert row["verdict"] == "time_found"
    assert float(row["t_d"]) == pytest.approx(formula, rel=1e-6)
    assert float(row["formula_t_d"]) == pytest.approx(formula, rel=1e-9)
    assert float(row["plateau"]) == 0.0
    assert row["observable"] == "0"
    assert float(row["margin"]) == pytest.approx(formula / (2.0 * math.pi), rel=1e-6)


def test_dectime_csv_saturation_and_indeterminate(tmp_path):
    out = tmp_path / "sat.csv"
    code = main(["dectime", "--exponent", "3", "--gamma0", "0.3",
                 "--gamma-method", "closed", "--regime", "zero-t",
                 "--out", str(out)])
    assert code == 0
    _, header, rows = read_csv(out)
    row = dict(zip(header, rows[0]))
    assert row["verdict"] == "saturates"
    assert float(row["t_d"]) == 0.0
    assert float(row["plateau"]) == pytest.approx(0.3, abs=1e-3)
    assert row["observable"] == "1"
    assert float(row["margin"]) == pytest.approx(0.7, abs=1e-3)

    out2 = tmp_path / "indet.csv"
    code = main(["dectime", "--exponent", "3", "--gamma0", "0.05",
                 "--temperature", "1000", "--gamma-method", "closed",
                 "--regime", "high-t", "--out", str(out2)])
    assert code == 0
    _, header2, rows2 = read_csv(out2)
    row2 = dict(zip(header2, rows2[0]))
    assert row2["verdict"] == "indeterminate"
    assert row2["observable"] == "-1"
    assert float(row2["margin"]) == 0.0
    assert float(row2["formula_t_d"]) == 0.0


def test_dectime_cells_all_parse(tmp_path):
    out = tmp_path / "grid.csv"
    config = tmp_path / "grid.ini"
    config.write_text(
        "[method]\nkind = closed\nregime = zero-t\n\n"
        "[grid]\nexponent = 1, 3\ngamma0 = 0.3, 4.0\n")
    assert main(["dectime", "--config", str(config), "--out", str(out)]) == 0
    _, header, rows = read_csv(out)
    assert len(rows) == 4
    for row in rows:
        record = dict(zip(header, row))
        assert record["verdict"] in {"time_found", "saturates", "indeterminate"}
        for key in ("t_d", "plateau", "formula_t_d", "margin"):
            assert math.isfinite(float(record[key]))
        assert record["observable"] in {"-1", "0", "1"}


def test_accept_single_criterion(capsys):
    assert main(["accept", "--only", "4"]) == 0
    out = capsys.readouterr().out
    assert "[ 4/11] PASS" in out
    assert out.strip().endswith("all 1 criteria passed")


def test_precision_flag_controls_digits(tmp_path):
    out = tmp_path / "coarse.csv"
    assert main(["gamma", "--gamma-method", "closed", "--regime", "zero-t",
                 "--t-max", "1", "--samples", "3", "--precision", "3",
                 "--out", str(out)]) == 0
    _, _, rows = read_csv(out)
    # %.3g: mantissas carry at most three significant digits.
    assert rows[2][1] == "1.38"
