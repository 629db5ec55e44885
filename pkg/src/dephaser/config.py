"""Run configuration: INI-style files round-tripped to and from RunConfig.

The file format is flat ``key = value`` lines under ``[qubit]``, ``[bath]``,
``[method]``, ``[grid]``, and ``[output]`` headers, with ``#`` comments.
Floats are serialized with ``repr`` so a dump/load cycle is value-identical.
Grid axes name sweep parameters of the qubit or bath; ``expand_grid`` walks
their cartesian product in file order, which fixes the row order of every
sweep regardless of how the work is scheduled.
"""

from __future__ import annotations

import configparser
import io
import math
from dataclasses import dataclass, replace
from typing import Iterator

from .decoherence import (DEFAULT_ABS_TOL, DEFAULT_PANEL_BUDGET, DEFAULT_REL_TOL,
                          ClosedForm, GammaMethod, Quadrature)
from .environment import BathSpec, QubitSpec, RegimeTag

DEFAULT_PRECISION = 12
DEFAULT_GRID_BUDGET = 1_000_000

_QUBIT_AXES = ("theta0", "omega")
_BATH_AXES = ("exponent", "gamma0", "cutoff", "temperature")
ALLOWED_GRID_AXES = _QUBIT_AXES + _BATH_AXES

_BATH_FIELD = {"exponent": "exponent_n", "gamma0": "gamma0",
               "cutoff": "cutoff_lambda", "temperature": "temperature"}


@dataclass(frozen=True)
class RunConfig:
    """One sweep: base specs, Γ method, grid axes, and output shape."""

    qubit: QubitSpec
    bath: BathSpec
    method: GammaMethod
    grid: tuple[tuple[str, tuple[float, ...]], ...] = ()
    out_path: str | None = None
    precision: int = DEFAULT_PRECISION
    grid_budget: int = DEFAULT_GRID_BUDGET

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError(f"precision must be >= 1, got {self.precision}")
        if self.grid_budget < 1:
            raise ValueError(f"grid budget must be >= 1, got {self.grid_budget}")
        seen = set()
        size = 1
        for axis, values in self.grid:
            if axis not in ALLOWED_GRID_AXES:
                raise ValueError(
                    f"unknown grid axis {axis!r}; expected one of {ALLOWED_GRID_AXES}")
            if axis in seen:
                raise ValueError(f"grid axis {axis!r} listed twice")
            if not values:
                raise ValueError(f"grid axis {axis!r} has no values")
            if axis == "exponent" and any(not float(v).is_integer() for v in values):
                raise ValueError("exponent grid values must be integers")
            seen.add(axis)
            size *= len(values)
        if size > self.grid_budget:
            raise ValueError(
                f"grid expands to {size} points, over the budget of {self.grid_budget}")

    @property
    def grid_size(self) -> int:
        return math.prod(len(values) for _, values in self.grid)


def expand_grid(config: RunConfig) -> Iterator[tuple[QubitSpec, BathSpec]]:
    """Yield (qubit, bath) for every grid point, in file order.

    Later axes vary fastest, matching nested loops written in the order the
    axes appear.  With no grid this yields the base specs once.
    """

    def walk(i: int, qubit: QubitSpec, bath: BathSpec):
        if i == len(config.grid):
            yield qubit, bath
            return
        axis, values = config.grid[i]
        for value in values:
            if axis in _QUBIT_AXES:
                q, b = replace(qubit, **{axis: value}), bath
            elif axis == "exponent":
                q, b = qubit, replace(bath, exponent_n=int(value))
            else:
                q, b = qubit, replace(bath, **{_BATH_FIELD[axis]: value})
            yield from walk(i + 1, q, b)

    return walk(0, config.qubit, config.bath)


def _get(section, key, cast, default):
    raw = section.get(key)
    if raw is None:
        return default
    try:
        return cast(raw)
    except ValueError as exc:
        raise ValueError(f"bad value for {key!r}: {raw!r}") from exc


def _check_keys(parser: configparser.ConfigParser, section: str, allowed: tuple[str, ...]):
    if not parser.has_section(section):
        return
    for key in parser[section]:
        if key not in allowed:
            raise ValueError(f"unknown key {key!r} in section [{section}]")


def _parse_method(parser: configparser.ConfigParser) -> GammaMethod:
    section = parser["method"] if parser.has_section("method") else {}
    kind = section.get("kind", "quadrature")
    if kind == "closed":
        regime = section.get("regime")
        if regime is None:
            raise ValueError("closed method requires a 'regime' key")
        try:
            tag = RegimeTag(regime)
        except ValueError:
            raise ValueError(f"unknown regime {regime!r}") from None
        return ClosedForm(tag)
    if kind == "quadrature":
        return Quadrature(
            abs_tol=_get(section, "abs_tol", float, DEFAULT_ABS_TOL),
            rel_tol=_get(section, "rel_tol", float, DEFAULT_REL_TOL),
            panel_budget=_get(section, "panel_budget", int, DEFAULT_PANEL_BUDGET))
    raise ValueError(f"unknown method kind {kind!r}")


def load_config(source) -> RunConfig:
    """Parse a config file (path or text stream) into a RunConfig."""
    parser = configparser.ConfigParser(interpolation=None,
                                       inline_comment_prefixes=("#",))
    try:
        if hasattr(source, "read"):
            parser.read_file(source)
        else:
            with open(source) as handle:
                parser.read_file(handle)
    except configparser.Error as exc:
        # Duplicate keys, stray text, and the like are usage errors, not crashes.
        raise ValueError(f"malformed config: {exc}") from exc

    for name in parser.sections():
        if name not in ("qubit", "bath", "method", "grid", "output"):
            raise ValueError(f"unknown section [{name}]")
    _check_keys(parser, "qubit", ("omega", "theta0"))
    _check_keys(parser, "bath", ("exponent", "gamma0", "cutoff", "temperature"))
    _check_keys(parser, "method", ("kind", "regime", "abs_tol", "rel_tol", "panel_budget"))
    _check_keys(parser, "grid", ALLOWED_GRID_AXES)
    _check_keys(parser, "output", ("path", "precision", "grid_budget"))

    qubit_section = parser["qubit"] if parser.has_section("qubit") else {}
    qubit = QubitSpec(
        omega=_get(qubit_section, "omega", float, 1.0),
        theta0=_get(qubit_section, "theta0", float, 0.0))

    bath_section = parser["bath"] if parser.has_section("bath") else {}
    bath = BathSpec(
        exponent_n=_get(bath_section, "exponent", int, 1),
        gamma0=_get(bath_section, "gamma0", float, 0.3),
        cutoff_lambda=_get(bath_section, "cutoff", float, 100.0),
        temperature=_get(bath_section, "temperature", float, 0.0))

    grid: list[tuple[str, tuple[float, ...]]] = []
    if parser.has_section("grid"):
        for axis in parser["grid"]:
            raw = parser["grid"][axis]
            values = tuple(float(piece) for piece in raw.split(",") if piece.strip())
            grid.append((axis, values))

    output = parser["output"] if parser.has_section("output") else {}
    return RunConfig(
        qubit=qubit, bath=bath, method=_parse_method(parser), grid=tuple(grid),
        out_path=_get(output, "path", str, None),
        precision=_get(output, "precision", int, DEFAULT_PRECISION),
        grid_budget=_get(output, "grid_budget", int, DEFAULT_GRID_BUDGET))


def dumps_config(config: RunConfig) -> str:
    """Serialize a RunConfig to the config file text format."""
    out = io.StringIO()
    out.write("[qubit]\n")
    out.write(f"omega = {config.qubit.omega!r}\n")
    out.write(f"theta0 = {config.qubit.theta0!r}\n")
    out.write("\n[bath]\n")
    out.write(f"exponent = {config.bath.exponent_n}\n")
    out.write(f"gamma0 = {config.bath.gamma0!r}\n")
    out.write(f"cutoff = {config.bath.cutoff_lambda!r}\n")
    out.write(f"temperature = {config.bath.temperature!r}\n")
    out.write("\n[method]\n")
    if isinstance(config.method, ClosedForm):
        out.write("kind = closed\n")
        out.write(f"regime = {config.method.regime.value}\n")
    else:
        out.write("kind = quadrature\n")
        out.write(f"abs_tol = {config.method.abs_tol!r}\n")
        out.write(f"rel_tol = {config.method.rel_tol!r}\n")
        out.write(f"panel_budget = {config.method.panel_budget}\n")
    if config.grid:
        out.write("\n[grid]\n")
        for axis, values in config.grid:
            out.write(f"{axis} = {', '.join(repr(v) for v in values)}\n")
    out.write("\n[output]\n")
    if config.out_path is not None:
        out.write(f"path = {config.out_path}\n")
    out.write(f"precision = {config.precision}\n")
    if config.grid_budget != DEFAULT_GRID_BUDGET:
        out.write(f"grid_budget = {config.grid_budget}\n")
    return out.getvalue()


def dump_config(config: RunConfig, path) -> None:
    with open(path, "w") as handle:
        handle.write(dumps_config(config))
