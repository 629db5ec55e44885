"""Decoherence-time solver: where does Γ(t) reach 1, if ever?

Γ is probed geometrically from t = 1/Λ.  Three things can happen:

* Γ crosses 1: the crossing is bisected to relative time tolerance and the
  verdict carries the root plus a certificate value Γ(t_D);
* Γ flattens below 1 (the supraohmic saturation curves): the verdict carries
  the plateau;
* the probe budget runs out first, or the plateau sits within 1e-3 of the
  threshold where "reaches 1" and "saturates below 1" cannot be told apart:
  the verdict is indeterminate with diagnostics instead of a guess.

Flattening is judged by the absolute change per doubling of t.  The signed
change would misfire on the zero-T supraohmic curve, which overshoots its
plateau (peak 9γ₀/8 at Λt = √3) and approaches it from above; a curve
descending through its hump is not yet flat.

The closed t_D formulas are attached as ``formula_estimate`` when the bath
pins one: 1/(πγ₀T) for ohmic high T, e^(1/γ₀)/Λ for ohmic zero T, and
(1/Λ)√(Λ/(2Tγ₀)) for supraohmic high T, the last only when the plateau
2Tγ₀/Λ exceeds 1 so the rising branch actually reaches the threshold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .decoherence import ClosedForm, GammaMethod, Quadrature, gamma_value
from .environment import BathSpec, QubitSpec, RegimeTag, classify_regime
from .errors import DephaserError, PanelBudgetError

GAMMA_TOL = 1e-6
FLATTEN_TOL = 1e-6
TIME_REL_TOL = 1e-10


@dataclass(frozen=True)
class TimeFound:
    """Γ crossed 1 at ``t_d``; ``gamma_at_t_d`` is the re-evaluated certificate."""

    t_d: float
    gamma_at_t_d: float


@dataclass(frozen=True)
class Saturates:
    """Γ flattened at ``gamma_sup`` < 1; ``flattened_at`` is where the change
    per doubling first dropped below tolerance."""

    gamma_sup: float
    flattened_at: float


@dataclass(frozen=True)
class Indeterminate:
    """No verdict: budget exhausted, or plateau indistinguishable from 1."""

    reason: str
    probed_to: float
    gamma_at_probe: float


Outcome = TimeFound | Saturates | Indeterminate


@dataclass(frozen=True)
class DecoherenceVerdict:
    """Solver outcome plus the derived observability data.

    ``observable_window`` is t_D > τ for a found root, True for saturation
    below 1, and None when indeterminate.  ``formula_estimate`` is the closed
    t_D for the bath's regime, or None when no formula applies.
    """

    outcome: Outcome
    observable_window: bool | None
    formula_estimate: float | None
    tau: float


def _bisect_threshold(gamma_of, lo: float, hi: float) -> float:
    # Invariant: Γ(lo) < 1 <= Γ(hi).
    while hi - lo > TIME_REL_TOL * hi:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        if gamma_of(mid) >= 1.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def _formula_estimate(bath: BathSpec, tag: RegimeTag) -> float | None:
    g0, lam, temp = bath.gamma0, bath.cutoff_lambda, bath.temperature
    if g0 == 0.0:
        return None
    if bath.exponent_n == 1:
        if tag is RegimeTag.HIGH_T and temp > 0.0:
            return 1.0 / (math.pi * g0 * temp)
        if tag is RegimeTag.ZERO_T:
            return math.exp(1.0 / g0) / lam
    else:
        if tag is RegimeTag.HIGH_T and temp > 0.0 and 2.0 * temp * g0 / lam > 1.0:
            return math.sqrt(lam / (2.0 * temp * g0)) / lam
    return None


def _regime_for(bath: BathSpec, method: GammaMethod) -> RegimeTag:
    if isinstance(method, ClosedForm):
        return method.regime
    return classify_regime(bath).tag


def solve_decoherence_time(bath: BathSpec, method: GammaMethod,
                           t_probe_max: float = 1e3, *,
                           omega: float = 1.0) -> DecoherenceVerdict:
    """Find t_D with Γ(t_D) = 1, or certify that Γ saturates below 1.

    Probing starts at t = 1/Λ and doubles until Γ brackets 1, flattens, or
    exceeds ``t_probe_max``.  A bracket is bisected to relative time
    tolerance 1e-10 and the root re-checked against |Γ - 1| <= 1e-6.
    ``omega`` sets the period τ = 2π/Ω used for the observability window.
    """
    if t_probe_max <= 0.0:
        raise ValueError(f"t_probe_max must be positive, got {t_probe_max}")
    if omega <= 0.0:
        raise ValueError(f"omega must be positive, got {omega}")
    tau = 2.0 * math.pi / omega

    def gamma_of(t: float) -> float:
        return gamma_value(bath, method, t)

    def finish(outcome: Outcome) -> DecoherenceVerdict:
        if isinstance(outcome, TimeFound):
            window: bool | None = outcome.t_d > tau
        elif isinstance(outcome, Saturates):
            window = outcome.gamma_sup < 1.0
        else:
            window = None
        tag = _regime_for(bath, method)
        return DecoherenceVerdict(outcome, window, _formula_estimate(bath, tag), tau)

    def certified_root(lo: float, hi: float) -> TimeFound:
        t_d = _bisect_threshold(gamma_of, lo, hi)
        g_d = gamma_of(t_d)
        if abs(g_d - 1.0) > GAMMA_TOL:
            raise DephaserError(
                f"root certificate failed: Γ({t_d!r}) = {g_d!r} is not within "
                f"{GAMMA_TOL} of 1")
        return TimeFound(t_d, g_d)

    t = min(1.0 / bath.cutoff_lambda, t_probe_max)
    g = gamma_of(t)
    if g >= 1.0:
        # Already past threshold at the first probe; shrink until below.
        while g >= 1.0:
            if t < 1e-280:
                return finish(Indeterminate(
                    "Γ >= 1 at every representable probe time", t, g))
            t *= 0.25
            g = gamma_of(t)
        return finish(certified_root(t, 4.0 * t))

    while 2.0 * t <= t_probe_max:
        t_next = 2.0 * t
        try:
            g_next = gamma_of(t_next)
        except PanelBudgetError:
            # Probing got too expensive before a verdict; report how far we got.
            return finish(Indeterminate(
                "quadrature panel budget exhausted while probing", t, g))
        if g_next >= 1.0:
            return finish(certified_root(t, t_next))
        if abs(g_next - g) < FLATTEN_TOL * max(g_next, 1e-12):
            if abs(g_next - 1.0) <= 1e-3:
                return finish(Indeterminate(
                    "plateau indistinguishable from the Γ = 1 threshold",
                    t_next, g_next))
            return finish(Saturates(g_next, t_next))
        t, g = t_next, g_next

    return finish(Indeterminate(
        "probe budget exhausted without a bracket or a plateau", t, g))


@dataclass(frozen=True)
class ObservabilityResult:
    """Coarse inequality vs computed window, reported side by side.

    ``criterion_met`` is the regime inequality (γ₀ < Λ/T at high T, γ₀ < 1 at
    zero T, None in between).  ``margin`` is t_D/τ for a found root, inf for
    saturation below 1, nan when indeterminate.  The two can disagree: the
    inequality ignores both the crossover window and the prefactor of τ.
    """

    criterion_met: bool | None
    margin: float
    observable: bool | None
    verdict: DecoherenceVerdict


def observability_condition(bath: BathSpec, qubit: QubitSpec,
                            method: GammaMethod | None = None,
                            t_probe_max: float = 1e3) -> ObservabilityResult:
    """Can the phase be read out before coherence is gone (t_D > τ)?"""
    tag = classify_regime(bath).tag
    if tag is RegimeTag.HIGH_T:
        criterion: bool | None = bath.gamma0 < bath.cutoff_lambda / bath.temperature
    elif tag is RegimeTag.ZERO_T:
        criterion = bath.gamma0 < 1.0
    else:
        criterion = None

    verdict = solve_decoherence_time(
        bath, method if method is not None else Quadrature(),
        t_probe_max, omega=qubit.omega)
    if isinstance(verdict.outcome, TimeFound):
        margin = verdict.outcome.t_d / verdict.tau
    elif isinstance(verdict.outcome, Saturates):
        margin = math.inf
    else:
        margin = math.nan
    return ObservabilityResult(criterion, margin, verdict.observable_window, verdict)
