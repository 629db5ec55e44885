"""Command-line front end: deterministic CSV emission for curves, phases,
decoherence times, the six-file comparison figure, and the acceptance suite.

Flags take precedence over config-file values, which take precedence over
built-in defaults (ohmic bath, γ₀ = 0.3, Λ = 100, T = 0, quadrature Γ).
Every CSV starts with the effective configuration echoed as ``# key = value``
comment lines; worker count and output paths are deliberately not echoed so
identical physics gives identical bytes.

Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import os
import sys
from contextlib import nullcontext
from functools import partial

import numpy as np

from .config import (DEFAULT_PRECISION, ALLOWED_GRID_AXES, RunConfig, expand_grid,
                     load_config)
from .decoherence import (DEFAULT_ABS_TOL, DEFAULT_PANEL_BUDGET, DEFAULT_REL_TOL,
                          ClosedForm, Quadrature, gamma_value, sample_curve)
from .decoherence_time import Indeterminate, Saturates, TimeFound, observability_condition
from .environment import BathSpec, QubitSpec, RegimeTag, classify_regime
from .errors import DephaserError
from .geometric_phase import delta_phase_closed, delta_phase_generic, phase_result
from .parallel import ordered_map, resolve_jobs

_FIGURE_CUTOFF = 100.0
_FIGURE_TEMPS = (1000.0, 1.55, 0.0)
_FIGURE_GAMMA0 = (0.3, 0.03)
_FIGURE_PROBE_MAX = 50.0


class _UsageError(Exception):
    """Bad flags or config; mapped to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _fmt(value, precision: int) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), f".{precision}g")


def _echo(value) -> str:
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(handle, pairs, header, rows, precision: int) -> None:
    for key, value in pairs:
        handle.write(f"# {key} = {_echo(value)}\n")
    handle.write(",".join(header) + "\n")
    for row in rows:
        handle.write(",".join(_fmt(cell, precision) for cell in row) + "\n")


def _open_output(path):
    if path is None:
        return nullcontext(sys.stdout)
    return open(path, "w", newline="")


def _pick(args, name, fallback):
    value = getattr(args, name, None)
    return fallback if value is None else value


def _load_base(args) -> RunConfig:
    path = getattr(args, "config", None)
    if path is None:
        return RunConfig(QubitSpec(), BathSpec(1, 0.3, 100.0, 0.0), Quadrature())
    try:
        return load_config(path)
    except ValueError as exc:
        raise _UsageError(f"config {path}: {exc}") from None


def _effective(args) -> RunConfig:
    base = _load_base(args)
    try:
        qubit = QubitSpec(
            omega=_pick(args, "omega", base.qubit.omega),
            theta0=_pick(args, "theta0", base.qubit.theta0))
        bath = BathSpec(
            exponent_n=_pick(args, "exponent", base.bath.exponent_n),
            gamma0=_pick(args, "gamma0", base.bath.gamma0),
            cutoff_lambda=_pick(args, "cutoff", base.bath.cutoff_lambda),
            temperature=_pick(args, "temperature", base.bath.temperature))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None

    kind = getattr(args, "gamma_method", None)
    if kind is None:
        kind = "closed" if isinstance(base.method, ClosedForm) else "quadrature"
    if kind == "closed":
        regime_name = getattr(args, "regime", None)
        if regime_name is not None:
            method = ClosedForm(RegimeTag(regime_name))
        elif isinstance(base.method, ClosedForm):
            method = base.method
        else:
            tag = classify_regime(bath).tag
            if tag is RegimeTag.GENERAL_T:
                raise _UsageError(
                    "closed Γ needs --regime: the bath is between the zero-T and "
                    "high-T regimes")
            method = ClosedForm(tag)
    else:
        quad = base.method if isinstance(base.method, Quadrature) else Quadrature()
        method = Quadrature(
            abs_tol=_pick(args, "abs_tol", quad.abs_tol),
            rel_tol=_pick(args, "rel_tol", quad.rel_tol),
            panel_budget=_pick(args, "panel_budget", quad.panel_budget))

    # A flag that pins a parameter removes it from the sweep grid.
    overridden = {name for name in ALLOWED_GRID_AXES
                  if getattr(args, name, None) is not None}
    grid = tuple((axis, values) for axis, values in base.grid
                 if axis not in overridden)
    try:
        return RunConfig(
            qubit=qubit, bath=bath, method=method, grid=grid,
            out_path=_pick(args, "out", base.out_path),
            precision=_pick(args, "precision", base.precision),
            grid_budget=base.grid_budget)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _base_pairs(config: RunConfig, **extra):
    pairs = [("omega", config.qubit.omega), ("theta0", config.qubit.theta0),
             ("exponent", config.bath.exponent_n), ("gamma0", config.bath.gamma0),
             ("cutoff", config.bath.cutoff_lambda),
             ("temperature", config.bath.temperature)]
    if isinstance(config.method, ClosedForm):
        pairs += [("gamma_method", "closed"), ("regime", config.method.regime.value)]
    else:
        pairs += [("gamma_method", "quadrature"),
                  ("abs_tol", config.method.abs_tol),
                  ("rel_tol", config.method.rel_tol),
                  ("panel_budget", config.method.panel_budget)]
    for axis, values in config.grid:
        pairs.append((f"grid.{axis}", ", ".join(repr(v) for v in values)))
    pairs += list(extra.items())
    pairs.append(("precision", config.precision))
    return pairs


def _resolve_jobs_flag(args) -> int:
    try:
        return resolve_jobs(getattr(args, "jobs", None))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def cmd_gamma(args) -> int:
    config = _effective(args)
    t_max = _pick(args, "t_max", 10.0)
    samples = _pick(args, "samples", 200)
    if t_max <= 0.0:
        raise _UsageError(f"--t-max must be positive, got {t_max}")
    if samples < 2:
        raise _UsageError(f"--samples must be at least 2, got {samples}")
    jobs = _resolve_jobs_flag(args)

    curve = sample_curve(config.bath, config.method, t_max, samples, jobs=jobs)
    rows = zip(curve.times, curve.gamma_values, curve.visibilities)
    pairs = _base_pairs(config, t_max=float(t_max), samples=samples)
    with _open_output(config.out_path) as handle:
        _write_csv(handle, pairs, ("t", "gamma", "visibility"), rows, config.precision)
    return 0


def _phase_row(point, method, route, delta_mode, quad_tol, include_functional):
    qubit, bath = point
    delta_route = {"closed": "closed", "generic": "generic", "both": "auto"}[delta_mode]
    result = phase_result(qubit, bath, method, quad_tol=quad_tol,
                          phase_route=route, delta_route=delta_route)
    tags = dict(result.method_tags)

    delta_closed = 0.0
    delta_generic = 0.0
    if tags["delta"].startswith("closed"):
        delta_closed = result.delta_perturbative
        if delta_mode == "both":
            delta_generic = delta_phase_generic(qubit, bath, method, quad_tol)
    else:
        delta_generic = result.delta_perturbative
        if delta_mode == "both":
            try:
                delta_closed = delta_phase_closed(
                    qubit, bath, classify_regime(bath).tag)
            except DephaserError:
                delta_closed = 0.0

    row = [qubit.theta0, qubit.omega, bath.exponent_n, bath.gamma0,
           bath.cutoff_lambda, bath.temperature, result.phi_unitary,
           result.phi_exact, delta_closed, delta_generic, result.residual]
    if include_functional:
        from .geometric_phase import phase_exact_functional
        row.append(phase_exact_functional(qubit, bath, method, quad_tol))
    return tuple(row)


def cmd_phase(args) -> int:
    config = _effective(args)
    phase_method = _pick(args, "phase_method", "integral")
    delta_mode = _pick(args, "delta", "both")
    quad_tol = _pick(args, "quad_tol", 1e-10)
    if quad_tol <= 0.0:
        raise _UsageError(f"--quad-tol must be positive, got {quad_tol}")
    jobs = _resolve_jobs_flag(args)

    route = "functional" if phase_method == "functional" else "integral"
    include_functional = phase_method == "both"
    points = list(expand_grid(config))
    worker = partial(_phase_row, method=config.method, route=route,
                     delta_mode=delta_mode, quad_tol=quad_tol,
                     include_functional=include_functional)
    rows = ordered_map(worker, points, jobs=jobs)

    header = ["theta0", "omega", "exponent_n", "gamma0", "cutoff_lambda",
              "temperature", "phi_unitary", "phi_exact", "delta_closed",
              "delta_generic", "residual"]
    if include_functional:
        header.append("phi_exact_functional")
    pairs = _base_pairs(config, phase_method=phase_method, delta=delta_mode,
                        quad_tol=quad_tol)
    pairs.append(("note", "delta columns not requested or not applicable are 0"))
    with _open_output(config.out_path) as handle:
        _write_csv(handle, pairs, header, rows, config.precision)
    return 0


def _verdict_cells(verdict):
    outcome = verdict.outcome
    if isinstance(outcome, TimeFound):
        label, t_d = "time_found", outcome.t_d
        plateau, margin = 0.0, outcome.t_d / verdict.tau
    elif isinstance(outcome, Saturates):
        label, t_d = "saturates", 0.0
        plateau, margin = outcome.gamma_sup, 1.0 - outcome.gamma_sup
    else:
        label, t_d, plateau, margin = "indeterminate", 0.0, 0.0, 0.0
    formula = verdict.formula_estimate if verdict.formula_estimate is not None else 0.0
    if verdict.observable_window is None:
        observable = -1
    else:
        observable = int(verdict.observable_window)
    return label, t_d, plateau, formula, observable, margin


def _dectime_row(point, method, t_probe_max):
    qubit, bath = point
    obs = observability_condition(bath, qubit, method, t_probe_max)
    label, t_d, plateau, formula, observable, margin = _verdict_cells(obs.verdict)
    return (bath.exponent_n, bath.gamma0, bath.cutoff_lambda, bath.temperature,
            label, t_d, plateau, formula, observable, margin)


def cmd_dectime(args) -> int:
    config = _effective(args)
    t_probe_max = _pick(args, "t_probe_max", 1e3)
    if t_probe_max <= 0.0:
        raise _UsageError(f"--t-probe-max must be positive, got {t_probe_max}")
    jobs = _resolve_jobs_flag(args)

    points = list(expand_grid(config))
    worker = partial(_dectime_row, method=config.method, t_probe_max=t_probe_max)
    rows = ordered_map(worker, points, jobs=jobs)

    header = ("exponent_n", "gamma0", "cutoff_lambda", "temperature", "verdict",
              "t_d", "plateau", "formula_t_d", "observable", "margin")
    pairs = _base_pairs(config, t_probe_max=float(t_probe_max))
    pairs.append(("note", "margin is t_d/tau for time_found, 1-plateau for "
                          "saturates; observable -1 means indeterminate"))
    with _open_output(config.out_path) as handle:
        _write_csv(handle, pairs, header, rows, config.precision)
    return 0


def _gamma_task(task):
    bath, method, t = task
    return gamma_value(bath, method, t)


def _figure_curve_file(path, bath_high, times, values, samples, precision):
    pairs = [("exponent", bath_high.exponent_n), ("gamma0", bath_high.gamma0),
             ("cutoff", bath_high.cutoff_lambda),
             ("temperatures", ", ".join(repr(t) for t in _FIGURE_TEMPS)),
             ("abs_tol", DEFAULT_ABS_TOL), ("rel_tol", DEFAULT_REL_TOL),
             ("panel_budget", DEFAULT_PANEL_BUDGET),
             ("t_min", float(times[1])), ("t_max", float(times[-1])),
             ("samples", samples), ("precision", precision)]
    header = ("t", "gamma_high_t_closed", "gamma_high_t_quadrature",
              "gamma_low_t_quadrature", "gamma_zero_t_quadrature")
    rows = zip(times, *values)
    with open(path, "w", newline="") as handle:
        _write_csv(handle, pairs, header, rows, precision)


def _fig_dectime_row(bath):
    qubit = QubitSpec()
    obs = observability_condition(bath, qubit, Quadrature(), _FIGURE_PROBE_MAX)
    label, t_d, plateau, formula, observable, margin = _verdict_cells(obs.verdict)
    return (bath.exponent_n, bath.temperature, label, t_d, plateau, formula,
            observable, margin)


def cmd_figure1(args) -> int:
    samples = _pick(args, "samples", 120)
    if samples < 2:
        raise _UsageError(f"--samples must be at least 2, got {samples}")
    precision = _pick(args, "precision", DEFAULT_PRECISION)
    jobs = _resolve_jobs_flag(args)
    out_dir = args.out_dir

    times = np.concatenate(([0.0], np.geomspace(1e-4, 10.0, samples - 1)))
    quad = Quadrature()

    # Column order inside each file: closed and quadrature at T=1000, then
    # quadrature at T=1.55 and T=0.
    column_specs = []
    for gamma0 in _FIGURE_GAMMA0:
        for exponent in (1, 3):
            high = BathSpec(exponent, gamma0, _FIGURE_CUTOFF, _FIGURE_TEMPS[0])
            low = BathSpec(exponent, gamma0, _FIGURE_CUTOFF, _FIGURE_TEMPS[1])
            zero = BathSpec(exponent, gamma0, _FIGURE_CUTOFF, _FIGURE_TEMPS[2])
            column_specs.append([(high, ClosedForm(RegimeTag.HIGH_T)),
                                 (high, quad), (low, quad), (zero, quad)])

    tasks = [(bath, method, float(t))
             for columns in column_specs
             for bath, method in columns
             for t in times]
    flat = ordered_map(_gamma_task, tasks, jobs=jobs)

    dectime_baths = [BathSpec(exponent, gamma0, _FIGURE_CUTOFF, temp)
                     for gamma0 in _FIGURE_GAMMA0
                     for exponent in (1, 3)
                     for temp in _FIGURE_TEMPS]
    dectime_rows = ordered_map(_fig_dectime_row, dectime_baths, jobs=jobs)

    stride = len(times)
    block = 0
    for g_index, gamma0 in enumerate(_FIGURE_GAMMA0):
        sub = os.path.join(out_dir, f"gamma0_{gamma0}")
        os.makedirs(sub, exist_ok=True)
        for e_index, exponent in enumerate((1, 3)):
            columns = []
            for _ in range(4):
                columns.append(flat[block * stride:(block + 1) * stride])
                block += 1
            name = "ohmic.csv" if exponent == 1 else "supraohmic.csv"
            high = column_specs[2 * g_index + e_index][0][0]
            _figure_curve_file(os.path.join(sub, name), high, times, columns,
                               samples, precision)

        pairs = [("gamma0", gamma0), ("cutoff", _FIGURE_CUTOFF),
                 ("temperatures", ", ".join(repr(t) for t in _FIGURE_TEMPS)),
                 ("gamma_method", "quadrature"), ("omega", 1.0),
                 ("t_probe_max", _FIGURE_PROBE_MAX), ("precision", precision),
                 ("note", "margin is t_d/tau for time_found, 1-plateau for "
                          "saturates; observable -1 means indeterminate")]
        header = ("exponent_n", "temperature", "verdict", "t_d", "plateau",
                  "formula_t_d", "observable", "margin")
        rows = [row for row, bath in zip(dectime_rows, dectime_baths)
                if bath.gamma0 == gamma0]
        with open(os.path.join(sub, "dectimes.csv"), "w", newline="") as handle:
            _write_csv(handle, pairs, header, rows, precision)
    return 0


def cmd_accept(args) -> int:
    from .acceptance import run_criteria

    try:
        results = run_criteria(getattr(args, "only", None))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    failed = 0
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(f"[{result.index:2d}/11] {status} {result.name}: {result.detail}")
        failed += not result.passed
    if failed:
        print(f"{failed} of {len(results)} criteria failed")
        return 2
    print(f"all {len(results)} criteria passed")
    return 0


def _add_spec_flags(parser):
    parser.add_argument("--config", metavar="PATH",
                        help="config file; flags override its values")
    parser.add_argument("--omega", type=float, help="level splitting Ω")
    parser.add_argument("--theta0", type=float, help="initial Bloch angle")
    parser.add_argument("--exponent", type=int, choices=(1, 3),
                        help="bath exponent: 1 ohmic, 3 supraohmic")
    parser.add_argument("--gamma0", type=float, help="dissipation constant γ₀")
    parser.add_argument("--cutoff", type=float, help="cutoff frequency Λ")
    parser.add_argument("--temperature", type=float, help="bath temperature T")
    parser.add_argument("--precision", type=int, metavar="DIGITS",
                        help="CSV significant digits (default 12)")
    parser.add_argument("--jobs", type=int,
                        help="worker processes (default: DEPHASER_JOBS or all cores)")


def _add_method_flags(parser):
    parser.add_argument("--gamma-method", choices=("closed", "quadrature"),
                        help="Γ evaluation (default quadrature)")
    parser.add_argument("--regime", choices=("zero-t", "high-t"),
                        help="regime for the closed forms (default: classified)")
    parser.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance")
    parser.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
    parser.add_argument("--panel-budget", type=int, help="quadrature panel limit")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dephaser",
                     description="Dephasing qubit toolkit: decoherence curves, "
                                 "geometric phases, and decoherence times.")
    sub = parser.add_subparsers(dest="command", required=True)

    gamma = sub.add_parser("gamma", help="sample a decoherence curve Γ(t)")
    _add_spec_flags(gamma)
    _add_method_flags(gamma)
    gamma.add_argument("--t-max", type=float, help="last sample time (default 10)")
    gamma.add_argument("--samples", type=int, help="sample count (default 200)")
    gamma.add_argument("--out", metavar="PATH", help="output CSV (default stdout)")
    gamma.set_defaults(func=cmd_gamma)

    figure1 = sub.add_parser("figure1",
                             help="emit the six-file Γ comparison (both bath "
                                  "exponents, three temperatures, two couplings)")
    figure1.add_argument("--out-dir", required=True, metavar="DIR")
    figure1.add_argument("--samples", type=int, help="points per curve (default 120)")
    figure1.add_argument("--precision", type=int, metavar="DIGITS")
    figure1.add_argument("--jobs", type=int)
    figure1.set_defaults(func=cmd_figure1)

    phase = sub.add_parser("phase", help="geometric phases over the sweep grid")
    _add_spec_flags(phase)
    _add_method_flags(phase)
    phase.add_argument("--phase-method", choices=("integral", "functional", "both"),
                       help="exact-phase route (default integral)")
    phase.add_argument("--delta", choices=("closed", "generic", "both"),
                       help="first-order shift route (default both)")
    phase.add_argument("--quad-tol", type=float,
                       help="phase integration tolerance (default 1e-10)")
    phase.add_argument("--out", metavar="PATH")
    phase.set_defaults(func=cmd_phase)

    dectime = sub.add_parser("dectime", help="decoherence-time verdicts")
    _add_spec_flags(dectime)
    _add_method_flags(dectime)
    dectime.add_argument("--t-probe-max", type=float,
                         help="largest probe time (default 1000)")
    dectime.add_argument("--out", metavar="PATH")
    dectime.set_defaults(func=cmd_dectime)

    accept = sub.add_parser("accept", help="run the acceptance checks")
    accept.add_argument("--only", type=int, metavar="N",
                        help="run a single criterion by 1-based index")
    accept.set_defaults(func=cmd_accept)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"dephaser: error: {exc}", file=sys.stderr)
        return 1
    except DephaserError as exc:
        print(f"dephaser: error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"dephaser: error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    raise SystemExit(main())
