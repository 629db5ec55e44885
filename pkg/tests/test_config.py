"""Config parsing, serialization round trips, and grid expansion."""

import io
import math

import pytest

from dephaser.config import (ALLOWED_GRID_AXES, RunConfig, dump_config,
                             dumps_config, expand_grid, load_config)
from dephaser.decoherence import ClosedForm, Quadrature
from dephaser.environment import BathSpec, QubitSpec, RegimeTag


def roundtrip(config: RunConfig) -> RunConfig:
    return load_config(io.StringIO(dumps_config(config)))


def test_defaults_from_empty_config():
    config = load_config(io.StringIO(""))
    assert config.qubit == QubitSpec(omega=1.0, theta0=0.0)
    assert config.bath == BathSpec(1, 0.3, 100.0, 0.0)
    assert config.method == Quadrature()
    assert config.grid == ()
    assert config.out_path is None
    assert config.precision == 12


def test_roundtrip_closed_method():
    config = RunConfig(
        qubit=QubitSpec(omega=2.5, theta0=0.1 + 0.2),  # not exactly representable
        bath=BathSpec(3, 0.30000000000000004, 123.456, 1.55),
        method=ClosedForm(RegimeTag.HIGH_T),
        grid=(("theta0", (0.1, 0.2, 0.30000000000000004)),),
        out_path="out/sweep.csv",
        precision=9,
        grid_budget=500)
    assert roundtrip(config) == config


def test_roundtrip_quadrature_method():
    config = RunConfig(
        qubit=QubitSpec(),
        bath=BathSpec(1, 0.07, 100.0, 0.0),
        method=Quadrature(abs_tol=1e-12, rel_tol=3e-9, panel_budget=1000))
    assert roundtrip(config) == config


def test_dump_config_writes_file(tmp_path):
    path = tmp_path / "run.ini"
    config = RunConfig(QubitSpec(), BathSpec(1, 0.3, 100.0), Quadrature())
    dump_config(config, path)
    assert load_config(str(path)) == config


def test_config_file_with_comments_and_spacing():
    text = """
# sweep over tilt angles
[qubit]
omega = 1.0
theta0 = 0.5

[bath]
exponent = 3
gamma0 = 0.05   # weak coupling

[grid]
theta0 = 0.1, 0.6, 1.1
"""
    config = load_config(io.StringIO(text))
    assert config.bath.exponent_n == 3
    assert config.grid == (("theta0", (0.1, 0.6, 1.1)),)


def test_grid_expansion_order():
    config = RunConfig(
        qubit=QubitSpec(theta0=0.5),
        bath=BathSpec(1, 0.3, 100.0, 0.0),
        method=Quadrature(),
        grid=(("theta0", (0.1, 0.2)), ("gamma0", (0.01, 0.02, 0.03))))
    assert config.grid_size == 6
    points = list(expand_grid(config))
    assert len(points) == 6
    # Later axes vary fastest.
    assert [q.theta0 for q, _ in points] == [0.1] * 3 + [0.2] * 3
    assert [b.gamma0 for _, b in points] == [0.01, 0.02, 0.03] * 2
    # Unswept fields ride along from the base specs.
    assert all(b.cutoff_lambda == 100.0 for _, b in points)


def test_grid_exponent_axis_casts_to_int():
    config = RunConfig(
        qubit=QubitSpec(),
        bath=BathSpec(1, 0.3, 100.0, 0.0),
        method=Quadrature(),
        grid=(("exponent", (1.0, 3.0)),))
    exponents = [b.exponent_n for _, b in expand_grid(config)]
    assert exponents == [1, 3]
    assert all(isinstance(n, int) for n in exponents)


def test_empty_grid_yields_base_point():
    config = RunConfig(QubitSpec(theta0=1.0), BathSpec(1, 0.3, 100.0), Quadrature())
    points = list(expand_grid(config))
    assert points == [(config.qubit, config.bath)]


@pytest.mark.parametrize("grid", [
    (("tilt", (0.1,)),),
    (("theta0", ()),),
    (("theta0", (0.1,)), ("theta0", (0.2,))),
    (("exponent", (1.5,)),),
])
def test_grid_validation(grid):
    with pytest.raises(ValueError):
        RunConfig(QubitSpec(), BathSpec(1, 0.3, 100.0), Quadrature(), grid=grid)


def test_grid_budget_enforced():
    with pytest.raises(ValueError, match="budget"):
        RunConfig(QubitSpec(), BathSpec(1, 0.3, 100.0), Quadrature(),
                  grid=(("theta0", (0.1, 0.2, 0.3)), ("gamma0", (0.1, 0.2))),
                  grid_budget=5)


@pytest.mark.parametrize("text", [
    "[rotor]\nspeed = 3\n",
    "[qubit]\nmass = 1\n",
    "[method]\nkind = magic\n",
    "[method]\nkind = closed\n",
    "[method]\nkind = closed\nregime = tepid\n",
    "[bath]\ngamma0 = fast\n",
    "[grid]\ntheta0 = 0.1\ntheta0 = 0.2\n",
    "no header at all\n",
])
def test_malformed_configs_raise_value_error(text):
    with pytest.raises(ValueError):
        load_config(io.StringIO(text))


def test_allowed_axes_cover_both_specs():
    assert set(ALLOWED_GRID_AXES) == {
        "theta0", "omega", "exponent", "gamma0", "cutoff", "temperature"}


def test_precision_and_budget_validation():
    with pytest.raises(ValueError):
        RunConfig(QubitSpec(), BathSpec(1, 0.3, 100.0), Quadrature(), precision=0)
    with pytest.raises(ValueError):
        RunConfig(QubitSpec(), BathSpec(1, 0.3, 100.0), Quadrature(), grid_budget=0)


def test_grid_values_roundtrip_exactly():
    values = tuple(float(x) for x in (0.1, 1.0 / 3.0, math.pi))
    config = RunConfig(QubitSpec(), BathSpec(1, 0.3, 100.0), Quadrature(),
                       grid=(("gamma0", values),))
    assert roundtrip(config).grid == config.grid
