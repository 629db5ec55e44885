"""Decoherence times, saturation verdicts, and the observability window.

The solver answers one question per bath: does Γ(t) cross 1, and if so
when?  Crossing yields a decoherence time t_D with a certificate; flattening
below 1 yields a saturation verdict; a plateau indistinguishable from 1 is
reported as indeterminate rather than forced either way.  The second half
compares the coarse regime inequality for phase observability against the
computed window t_D > τ, including a coupling where the two disagree and a
bath where the compact and exact supraohmic curves return different verdict
kinds.
"""

import math

from dephaser import (BathSpec, ClosedForm, Indeterminate, Quadrature,
                      QubitSpec, RegimeTag, Saturates, TimeFound,
                      observability_condition, solve_decoherence_time)

QUBIT = QubitSpec()


def describe(outcome):
    if isinstance(outcome, TimeFound):
        return f"crosses: t_D = {outcome.t_d:.6g}"
    if isinstance(outcome, Saturates):
        return f"saturates at {outcome.gamma_sup:.4g}"
    assert isinstance(outcome, Indeterminate)
    short = "plateau ~ 1" if "plateau" in outcome.reason else "budget"
    return f"indeterminate ({short})"


# --- one verdict per regime ----------------------------------------------------

print("Solver verdicts, gamma0 = 0.3 unless noted, cutoff = 100")
print(f"{'bath':>26} {'outcome':>26} {'formula t_D':>12}")
rows = [
    ("ohmic, T = 1000", BathSpec(1, 0.3, 100.0, 1000.0), RegimeTag.HIGH_T),
    ("ohmic, T = 0", BathSpec(1, 0.3, 100.0, 0.0), RegimeTag.ZERO_T),
    ("supraohmic, T = 0", BathSpec(3, 0.3, 100.0, 0.0), RegimeTag.ZERO_T),
    ("supraohmic, T = 1000", BathSpec(3, 0.3, 100.0, 1000.0), RegimeTag.HIGH_T),
    ("supraohmic, g0 = 0.05", BathSpec(3, 0.05, 100.0, 1000.0), RegimeTag.HIGH_T),
]
for label, bath, tag in rows:
    verdict = solve_decoherence_time(bath, ClosedForm(tag))
    est = "none" if verdict.formula_estimate is None \
        else f"{verdict.formula_estimate:.6g}"
    print(f"{label:>26} {describe(verdict.outcome):>26} {est:>12}")

print()
print("The ohmic high-T formula 1/(pi gamma0 T) is exact.  The other two are")
print("leading-order estimates: the T = 0 one drops the -1 inside expm1 and")
print("lands a hair above the bisected root, and the supraohmic one keeps")
print("only the initial quadratic growth, about 9% below the root here.  The")
print("last row's plateau sits at 1 to within the certificate tolerance, so")
print("neither crossing nor saturation can be certified and the solver says")
print("so instead of guessing.")
print()

# --- where the compact and exact supraohmic curves part ways --------------------

strong = BathSpec(3, 0.92, 100.0, 0.0)
compact = solve_decoherence_time(strong, ClosedForm(RegimeTag.ZERO_T))
exact = solve_decoherence_time(strong, Quadrature())
print("Supraohmic T = 0 at gamma0 = 0.92, compact form vs exact integral:")
print(f"  compact:  {describe(compact.outcome)}")
print(f"  exact:    {describe(exact.outcome)}")
print()
print("Both curves share the plateau 0.92 < 1, but the exact integral")
print("overshoots to (9/8) * 0.92 = 1.035 on the way, so coherence is lost")
print("transiently even though the compact form promises it survives.  Any")
print("threshold-based verdict in this corner depends on which curve you")
print("trust; the exact one is the defining integral.")
print()

# --- coarse inequality vs computed window ----------------------------------------

print("Observability of the cyclic phase (window: t_D > tau = 2*pi):")
print(f"{'bath':>26} {'inequality':>10} {'margin t_D/tau':>14} {'observable':>10}")
cases = [
    ("ohmic, T = 0", BathSpec(1, 0.3, 100.0, 0.0), ClosedForm(RegimeTag.ZERO_T)),
    ("ohmic, T = 1000", BathSpec(1, 0.3, 100.0, 1000.0), ClosedForm(RegimeTag.HIGH_T)),
    ("supraohmic, T = 0", BathSpec(3, 0.3, 100.0, 0.0), ClosedForm(RegimeTag.ZERO_T)),
    ("ohmic, T = 1.55", BathSpec(1, 0.3, 100.0, 1.55), Quadrature()),
]
for label, bath, method in cases:
    result = observability_condition(bath, QUBIT, method)
    criterion = {True: "met", False: "violated", None: "n/a"}[result.criterion_met]
    observable = {True: "yes", False: "no", None: "unknown"}[result.observable]
    print(f"{label:>26} {criterion:>10} {result.margin:>14.4g} {observable:>10}")

print()
print("The first row is the instructive one: the zero-T inequality gamma0 < 1")
print("holds comfortably, yet the computed window fails by a factor of about")
print("twenty because the inequality never asks how t_D compares with tau.")
print("Saturation below 1 leaves some coherence at every time, hence the")
print("infinite margin; in the crossover regime no inequality applies and")
print("only the computed window speaks.")
