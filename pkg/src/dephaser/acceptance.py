"""Acceptance checks: end-to-end numerical guarantees the package commits to.

Each criterion is a self-contained function returning pass/fail plus a detail
string with the measured numbers, so a failure report says what was observed,
not just that something broke.  The CLI ``accept`` subcommand and the test
suite both run this registry.
"""

from __future__ import annotations

import filecmp
import math
import os
import tempfile
import warnings
from dataclasses import dataclass

import numpy as np

from .decoherence import ClosedForm, Quadrature, gamma_closed, gamma_quadrature
from .decoherence_time import Saturates, TimeFound, solve_decoherence_time
from .dynamics import (bloch_vector, density_matrix, eigensystem,
                       master_equation_residual)
from .environment import BathSpec, QubitSpec, RegimeTag
from .geometric_phase import (delta_phase_closed, delta_phase_generic,
                              phase_exact_functional, phase_exact_integral,
                              phase_result, phase_unitary)

_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    detail: str


def _check_gamma_oracle():
    """Quadrature vs the ohmic zero-T closed form over four decades of t."""
    bath = BathSpec(1, 0.3, 100.0, 0.0)
    times = np.geomspace(1e-4, 10.0, 50)
    worst = 0.0
    for t in times:
        exact = gamma_closed(bath, RegimeTag.ZERO_T, float(t))
        quad = gamma_quadrature(bath, float(t))
        worst = max(worst, abs(quad - exact) / exact)
    return worst <= 1e-6, f"max rel error {worst:.3e} (bound 1e-6)"


def _check_high_t_slope():
    """Late-time slope of the ohmic high-T curve approaches πγ₀T."""
    bath = BathSpec(1, 0.3, 100.0, 1000.0)
    times = np.linspace(0.5, 1.0, 6)
    values = [gamma_quadrature(bath, float(t)) for t in times]
    slope = np.polyfit(times, values, 1)[0]
    expected = math.pi * bath.gamma0 * bath.temperature
    rel = abs(slope - expected) / expected
    return rel <= 0.05, f"slope {slope:.6g} vs {expected:.6g}, rel {rel:.3e} (bound 5e-2)"


def _check_saturation():
    """Supraohmic curves flatten below 1 and the solver says so."""
    zero = BathSpec(3, 0.3, 100.0, 0.0)
    g_zero = gamma_quadrature(zero, 10.0)
    ok_zero = abs(g_zero - 0.3) <= 1e-3

    high = BathSpec(3, 0.03, 100.0, 1000.0)
    g_high = gamma_quadrature(high, 10.0)
    plateau = 2.0 * high.temperature * high.gamma0 / high.cutoff_lambda
    ok_high = abs(g_high - plateau) / plateau <= 0.01

    v_zero = solve_decoherence_time(zero, Quadrature())
    v_high = solve_decoherence_time(high, Quadrature())
    ok_verdicts = (isinstance(v_zero.outcome, Saturates)
                   and isinstance(v_high.outcome, Saturates))
    detail = (f"Γ(Λt=10³)={g_zero:.6g} (vs 0.3), Γ_plateau={g_high:.6g} (vs "
              f"{plateau}), verdicts {type(v_zero.outcome).__name__}/"
              f"{type(v_high.outcome).__name__}")
    return ok_zero and ok_high and ok_verdicts, detail


def _check_unitary_limit():
    """At zero coupling the exact phase is the unitary one."""
    bath = BathSpec(1, 0.0, 100.0, 0.0)
    worst = 0.0
    for theta in (math.pi / 6, math.pi / 4, math.pi / 3, math.pi / 2,
                  2.0 * math.pi / 3):
        qubit = QubitSpec(1.0, theta)
        phi = phase_exact_integral(qubit, bath, Quadrature())
        diff = abs(math.remainder(phi - phase_unitary(qubit), _TWO_PI))
        worst = max(worst, diff)
    return worst <= 1e-9, f"max |Φ - Φᵁ| = {worst:.3e} (bound 1e-9)"


def _check_delta_closed_forms():
    """Generic shift integral vs the four closed forms, plus reference spots."""
    qubit = QubitSpec(1.0, math.pi / 4)
    temp = 10.0 / math.pi  # temperature with πT/Ω = 10
    checks = []

    with warnings.catch_warnings():
        # The closed forms are exercised at face value here; validity flags
        # are exercised elsewhere.
        warnings.simplefilter("ignore")
        bath = BathSpec(1, 0.01, 100.0, temp)
        exact_generic = delta_phase_generic(qubit, bath, ClosedForm(RegimeTag.HIGH_T))
        exact_closed = delta_phase_closed(qubit, bath, RegimeTag.HIGH_T)
        checks.append(("ohmic high-T exact", abs(exact_generic - exact_closed), 1e-10))
        checks.append(("ohmic high-T spot", abs(exact_closed - 0.34899) / 0.34899, 1e-3))

        bath10 = BathSpec(1, 0.01, 100.0, 0.0)
        g10 = delta_phase_generic(qubit, bath10, ClosedForm(RegimeTag.ZERO_T))
        c10 = delta_phase_closed(qubit, bath10, RegimeTag.ZERO_T)
        checks.append(("ohmic zero-T rel", abs(g10 - c10) / c10, 0.01))
        checks.append(("ohmic zero-T spot", abs(c10 - 0.060449) / 0.060449, 1e-3))

        bath11 = BathSpec(3, 0.01, 100.0, 1000.0)
        g11 = delta_phase_generic(qubit, bath11, ClosedForm(RegimeTag.HIGH_T))
        c11 = delta_phase_closed(qubit, bath11, RegimeTag.HIGH_T)
        checks.append(("supraohmic high-T rel", abs(g11 - c11) / c11, 0.01))

        bath12 = BathSpec(3, 0.01, 100.0, 0.0)
        g12 = delta_phase_generic(qubit, bath12, Quadrature())
        c12 = delta_phase_closed(qubit, bath12, RegimeTag.ZERO_T)
        checks.append(("supraohmic zero-T rel", abs(g12 - c12) / c12, 0.01))
        checks.append(("supraohmic zero-T spot", abs(c12 - 0.011107) / 0.011107, 1e-3))

    failed = [(label, value, bound) for label, value, bound in checks if value > bound]
    detail = "; ".join(f"{label} {value:.3e} (bound {bound:g})"
                       for label, value, bound in checks)
    return not failed, detail


def _residual_ratio(bath_factory, method):
    qubit = QubitSpec(1.0, math.pi / 4)
    residuals = []
    for gamma0 in (0.01, 0.02):
        with warnings.catch_warnings():
            # πT/Ω = 10 sits between the derived regimes; the validity flag
            # is expected and irrelevant to the scaling being measured.
            warnings.simplefilter("ignore")
            result = phase_result(qubit, bath_factory(gamma0), method,
                                  delta_route="auto")
        residuals.append(abs(result.residual))
    return residuals[1] / residuals[0]


def _check_residual_scaling():
    """Doubling γ₀ quadruples what the first-order shift leaves unexplained."""
    temp = 10.0 / math.pi
    r_high = _residual_ratio(lambda g: BathSpec(1, g, 100.0, temp),
                             ClosedForm(RegimeTag.HIGH_T))
    r_zero = _residual_ratio(lambda g: BathSpec(3, g, 100.0, 0.0), Quadrature())
    ok = 3.2 <= r_high <= 4.8 and 3.2 <= r_zero <= 4.8
    return ok, (f"R(0.02)/R(0.01): ohmic high-T {r_high:.4g}, supraohmic zero-T "
                f"{r_zero:.4g} (band [3.2, 4.8])")


def _check_route_equivalence():
    """Weight-integral and functional phases agree across regimes and angles."""
    method = Quadrature()
    baths = (BathSpec(1, 0.05, 100.0, 0.0), BathSpec(1, 0.05, 100.0, 1000.0),
             BathSpec(3, 0.05, 100.0, 1.55))
    worst = 0.0
    for bath in baths:
        for theta in (math.pi / 6, math.pi / 4, math.pi / 2, 2.0 * math.pi / 3):
            qubit = QubitSpec(1.0, theta)
            a = phase_exact_integral(qubit, bath, method)
            b = phase_exact_functional(qubit, bath, method)
            worst = max(worst, abs(math.remainder(a - b, _TWO_PI)))
    return worst <= 1e-8, f"max route difference {worst:.3e} (bound 1e-8)"


def _check_decoherence_times():
    """Roots match the closed estimates; the never-decohering case is flagged."""
    high = BathSpec(1, 0.3, 100.0, 1000.0)
    v_high = solve_decoherence_time(high, ClosedForm(RegimeTag.HIGH_T))
    formula_high = 1.0 / (math.pi * high.gamma0 * high.temperature)
    ok_high = (isinstance(v_high.outcome, TimeFound)
               and abs(v_high.outcome.t_d - formula_high) / formula_high <= 1e-6)

    zero = BathSpec(1, 0.3, 100.0, 0.0)
    v_zero = solve_decoherence_time(zero, Quadrature())
    formula_zero = math.exp(1.0 / zero.gamma0) / zero.cutoff_lambda
    ok_zero = (isinstance(v_zero.outcome, TimeFound)
               and abs(v_zero.outcome.t_d - formula_zero) / formula_zero <= 0.02)

    sat = solve_decoherence_time(BathSpec(3, 0.3, 100.0, 0.0), Quadrature())
    ok_sat = isinstance(sat.outcome, Saturates)

    detail = (f"high-T t_d={getattr(v_high.outcome, 't_d', None)} vs "
              f"{formula_high:.6g}; zero-T t_d={getattr(v_zero.outcome, 't_d', None)}"
              f" vs {formula_zero:.6g}; supraohmic {type(sat.outcome).__name__}")
    return ok_high and ok_zero and ok_sat, detail


def _check_state_properties():
    """Randomized structural checks on the reduced state and its spectrum."""
    rng = np.random.default_rng(20240817)
    qubit_omega = 1.0
    worst_eig = 0.0
    cases = 1200
    for _ in range(cases):
        theta = rng.uniform(0.0, math.pi)
        gamma_a = 10.0 ** rng.uniform(-3.0, 2.0)
        gamma_b = gamma_a * 10.0 ** rng.uniform(0.0, 1.0)
        t = rng.uniform(0.0, 10.0)
        qubit = QubitSpec(qubit_omega, theta)

        rho = density_matrix(qubit, t, gamma_a)
        if rho.pop_e + rho.pop_g != 1.0:
            return False, f"trace {rho.pop_e + rho.pop_g!r} != 1 at θ0={theta}"
        x, y, z = bloch_vector(rho)
        if math.hypot(math.hypot(x, y), z) > 1.0 + 1e-12:
            return False, f"Bloch norm exceeds 1 at θ0={theta}, Γ={gamma_a}"
        later = density_matrix(qubit, t, gamma_b)
        if later.purity > rho.purity + 1e-15:
            return False, f"purity increased from Γ={gamma_a} to Γ={gamma_b}"

        system = eigensystem(rho, qubit, gamma_a)
        reference = np.linalg.eigvalsh(rho.matrix)
        worst_eig = max(worst_eig,
                        abs(system.eps_plus - reference[1]),
                        abs(system.eps_minus - reference[0]))
    ok = worst_eig <= 1e-12
    return ok, f"{cases} cases, max eigenvalue deviation {worst_eig:.3e} (bound 1e-12)"


def _check_residual_convergence():
    """The equation-of-motion residual shrinks at second order in dt."""
    qubit = QubitSpec(1.0, math.pi / 2)
    bath = BathSpec(1, 0.3, 100.0, 1000.0)
    method = ClosedForm(RegimeTag.HIGH_T)
    r1 = master_equation_residual(qubit, bath, method, 5e-4, 1e-6)
    r2 = master_equation_residual(qubit, bath, method, 5e-4, 5e-7)
    ratio = r1 / r2
    return 3.6 <= ratio <= 4.4, f"residual ratio {ratio:.6g} (band [3.6, 4.4])"


def _check_determinism():
    """The comparison-figure files are byte-identical across runs and workers."""
    from .cli import main

    names = [os.path.join(f"gamma0_{g}", f)
             for g in ("0.3", "0.03")
             for f in ("ohmic.csv", "supraohmic.csv", "dectimes.csv")]
    with tempfile.TemporaryDirectory() as root:
        dirs = [os.path.join(root, d) for d in ("a", "b", "c")]
        for out_dir, jobs in zip(dirs, ("1", "1", "4")):
            code = main(["figure1", "--out-dir", out_dir, "--samples", "8",
                         "--jobs", jobs])
            if code != 0:
                return False, f"figure run into {out_dir} exited {code}"
        mismatches = []
        for other in dirs[1:]:
            match, bad, funny = filecmp.cmpfiles(dirs[0], other, names, shallow=False)
            mismatches += [f"{other}:{name}" for name in bad + funny]
    ok = not mismatches
    detail = ("all six files identical across repeat and 4-worker runs"
              if ok else f"differing files: {', '.join(mismatches)}")
    return ok, detail


CRITERIA = (
    ("closed-form oracle match, ohmic zero-T", _check_gamma_oracle),
    ("ohmic high-T slope", _check_high_t_slope),
    ("supraohmic saturation", _check_saturation),
    ("unitary phase limit", _check_unitary_limit),
    ("first-order shift closed forms", _check_delta_closed_forms),
    ("second-order residual scaling", _check_residual_scaling),
    ("phase route equivalence", _check_route_equivalence),
    ("decoherence-time roots and saturation", _check_decoherence_times),
    ("state and eigensystem properties", _check_state_properties),
    ("equation-of-motion residual order", _check_residual_convergence),
    ("figure output determinism", _check_determinism),
)


def run_criterion(index: int) -> CriterionResult:
    """Run one criterion by 1-based index."""
    if not 1 <= index <= len(CRITERIA):
        raise ValueError(f"criterion index must be in 1..{len(CRITERIA)}, got {index}")
    name, check = CRITERIA[index - 1]
    passed, detail = check()
    return CriterionResult(index, name, passed, detail)


def run_criteria(only: int | None = None) -> list[CriterionResult]:
    """Run all criteria, or a single one when ``only`` is given."""
    indices = range(1, len(CRITERIA) + 1) if only is None else (only,)
    return [run_criterion(i) for i in indices]
