"""Decoherence factor Γ(t), diffusion coefficient D(t), and visibility.

Definitions, with coth ≡ 1 at T = 0:

    Γ(t) = 4 ∫₀^∞ dω J(ω) coth(ω/2T) (1 - cos ωt)/ω²
    D(t) =   ∫₀^∞ dω J(ω) coth(ω/2T) sin(ωt)/ω

so dΓ/dt = 4 D(t).  Γ is evaluated two independent ways: closed forms for the
four derived (exponent, regime) pairs, and adaptive quadrature of the defining
integral at the bath's actual temperature.  1 - cos(ωt) is always computed as
2 sin²(ωt/2), which is cancellation-free.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import partial

import numpy as np

from . import quadrature
from .environment import (
    BathSpec,
    RegimeTag,
    TemperatureRegime,
    classify_regime,
    coth_kernel,
    spectral_density,
)
from .errors import QuadratureConvergenceError, RegimeValidityWarning, UnsupportedRegimeError
from .parallel import ordered_map

DEFAULT_ABS_TOL = 1e-10
DEFAULT_REL_TOL = 1e-8
DEFAULT_PANEL_BUDGET = 400_000


@dataclass(frozen=True)
class ClosedForm:
    """Select the closed-form Γ for a zero- or high-temperature regime."""

    regime: RegimeTag

    def __post_init__(self):
        if self.regime is RegimeTag.GENERAL_T:
            raise UnsupportedRegimeError("no closed form exists for the general-T regime")


@dataclass(frozen=True)
class Quadrature:
    """Select adaptive quadrature of the defining integral (any temperature)."""

    abs_tol: float = DEFAULT_ABS_TOL
    rel_tol: float = DEFAULT_REL_TOL
    panel_budget: int = DEFAULT_PANEL_BUDGET


GammaMethod = ClosedForm | Quadrature


@dataclass(frozen=True, eq=False)
class DecoherenceCurve:
    """Γ sampled on a strictly increasing time grid, with its provenance."""

    times: np.ndarray
    gamma_values: np.ndarray
    method: GammaMethod
    bath: BathSpec

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        g = np.asarray(self.gamma_values, dtype=float)
        if t.shape != g.shape or t.ndim != 1:
            raise ValueError("times and gamma_values must be matching 1-d arrays")
        if not np.all(np.diff(t) > 0.0):
            raise ValueError("times must be strictly increasing")
        if np.any(g < 0.0):
            raise ValueError("gamma_values must be nonnegative")
        if t[0] == 0.0 and g[0] != 0.0:
            raise ValueError("gamma must vanish at t = 0")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "gamma_values", g)

    @property
    def visibilities(self) -> np.ndarray:
        return np.exp(-self.gamma_values)


def _regime_tag(regime) -> RegimeTag:
    if isinstance(regime, TemperatureRegime):
        return regime.tag
    if isinstance(regime, RegimeTag):
        return regime
    raise TypeError(f"expected a regime or regime tag, got {type(regime).__name__}")


def _check_closed_pair(bath: BathSpec, tag: RegimeTag):
    if tag is RegimeTag.GENERAL_T:
        raise UnsupportedRegimeError("no closed form exists for the general-T regime")
    if tag is RegimeTag.HIGH_T and bath.temperature == 0.0:
        raise UnsupportedRegimeError("high-T closed form is meaningless at T = 0")
    actual = classify_regime(bath).tag
    if actual is not tag:
        warnings.warn(
            f"closed form for {tag.value} requested, but the bath classifies as "
            f"{actual.value}; the result is outside its validity regime",
            RegimeValidityWarning,
            stacklevel=3,
        )


def gamma_closed(bath: BathSpec, regime, t):
    """Closed-form Γ(t) for the four derived (exponent, regime) pairs.

    ohmic, high T:       π γ₀ T t
    ohmic, zero T:       (γ₀/2) ln(1 + Λ²t²)
    supraohmic, high T:  (2 T γ₀/Λ) Λ²t²/(1 + Λ²t²)
    supraohmic, zero T:  γ₀ Λ⁴t⁴/(1 + Λ²t²)²

    The supraohmic high-T expression is a single rational interpolation that
    reproduces both derived limits, 2Tγ₀Λt² at small t and saturation at
    2Tγ₀/Λ; it happens to be the exact frequency integral once coth is
    replaced by 2T/ω.  A :class:`RegimeValidityWarning` is emitted when the
    bath does not classify into the requested regime.
    """
    tag = _regime_tag(regime)
    _check_closed_pair(bath, tag)
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0):
        raise ValueError("gamma_closed requires t >= 0")
    g0 = bath.gamma0
    lam = bath.cutoff_lambda
    temp = bath.temperature
    u = (lam * tt) ** 2
    s = 1.0 / (1.0 + u)  # stays finite for arbitrarily large t
    if bath.exponent_n == 1:
        if tag is RegimeTag.HIGH_T:
            out = math.pi * g0 * temp * tt
        else:
            out = 0.5 * g0 * np.log1p(u)
    else:
        if tag is RegimeTag.HIGH_T:
            out = (2.0 * temp * g0 / lam) * (1.0 - s)
        else:
            out = g0 * (1.0 - s) ** 2
    if np.isscalar(t) or tt.ndim == 0:
        return float(out)
    return out


def gamma_closed_derivative(bath: BathSpec, regime, t):
    """Time derivative of :func:`gamma_closed`, branch for branch."""
    tag = _regime_tag(regime)
    _check_closed_pair(bath, tag)
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0):
        raise ValueError("gamma_closed_derivative requires t >= 0")
    g0 = bath.gamma0
    lam = bath.cutoff_lambda
    temp = bath.temperature
    u = (lam * tt) ** 2
    s = 1.0 / (1.0 + u)
    if bath.exponent_n == 1:
        if tag is RegimeTag.HIGH_T:
            out = math.pi * g0 * temp * np.ones_like(tt)
        else:
            out = g0 * lam**2 * tt * s
    else:
        if tag is RegimeTag.HIGH_T:
            out = (4.0 * temp * g0 * lam) * tt * s**2
        else:
            out = 4.0 * g0 * lam**2 * tt * u * s**3
    if np.isscalar(t) or tt.ndim == 0:
        return float(out)
    return out


def gamma_supraohmic_zero_t_exact(bath: BathSpec, t):
    """Exact frequency integral of Γ for n = 3 at T = 0.

    Direct integration gives γ₀ u(3 + u)/(1 + u)² with u = Λ²t², which carries
    an extra O(u) small-time term relative to the γ₀ u²/(1 + u)² closed form
    and overshoots to (9/8)γ₀ at u = 3 before settling onto the shared
    plateau γ₀.  Kept as a named reference so the two curves can be compared.
    """
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0):
        raise ValueError("t must be nonnegative")
    u = (bath.cutoff_lambda * tt) ** 2
    s = 1.0 / (1.0 + u)
    out = bath.gamma0 * (1.0 - s) * (1.0 + 2.0 * s)
    if np.isscalar(t) or tt.ndim == 0:
        return float(out)
    return out


def gamma_ohmic_high_t_exact(bath: BathSpec, t):
    """Exact frequency integral of Γ for n = 1 with coth replaced by 2T/ω.

    Equals 2γ₀T [t arctan(Λt) - ln(1 + Λ²t²)/(2Λ)]; its slope tends to πγ₀T,
    so it pins the linear high-temperature growth without the classifier's
    validity threshold entering.
    """
    tt = np.asarray(t, dtype=float)
    if np.any(tt < 0.0):
        raise ValueError("t must be nonnegative")
    lam = bath.cutoff_lambda
    out = 2.0 * bath.gamma0 * bath.temperature * (
        tt * np.arctan(lam * tt) - np.log1p((lam * tt) ** 2) / (2.0 * lam))
    if np.isscalar(t) or tt.ndim == 0:
        return float(out)
    return out


def _frequency_edges(bath: BathSpec, t: float, abs_tol: float, panel_budget: int):
    """Initial panels: oscillation-scale widths while e^(-ω/Λ) is non-negligible,
    cutoff-scale widths beyond, truncated where the envelope bounds the tail."""
    lam = bath.cutoff_lambda
    omega_max = lam * max(40.0, math.log(1.0 / abs_tol) if abs_tol > 0 else 40.0)
    fine_end = min(omega_max, 12.0 * lam)
    width = min(math.pi / t, 0.5 * lam)
    n_fine = int(math.ceil(fine_end / width))
    if n_fine + 1 > panel_budget:
        raise QuadratureConvergenceError(
            f"oscillation scale pi/{t} needs {n_fine} initial panels, over budget "
            f"{panel_budget}", t=t)
    edges = [np.linspace(0.0, fine_end, n_fine + 1)]
    if fine_end < omega_max:
        n_coarse = int(math.ceil((omega_max - fine_end) / lam))
        edges.append(np.linspace(fine_end, omega_max, n_coarse + 1)[1:])
    return np.concatenate(edges)


def _gamma_integrand(bath: BathSpec, t: float, w):
    j = spectral_density(bath, w)
    half = np.sin(0.5 * t * w)
    osc = 2.0 * half * half / (w * w)
    if bath.temperature == 0.0:
        return 4.0 * j * osc
    return 4.0 * j * coth_kernel(w / (2.0 * bath.temperature)) * osc


def _diffusion_integrand(bath: BathSpec, t: float, w):
    j = spectral_density(bath, w)
    osc = np.sin(t * w) / w
    if bath.temperature == 0.0:
        return j * osc
    return j * coth_kernel(w / (2.0 * bath.temperature)) * osc


def gamma_quadrature(bath: BathSpec, t: float, tol: Quadrature | None = None) -> float:
    """Γ(t) by adaptive quadrature of the defining integral.

    Valid at any temperature, including the general regime where no closed
    form exists.  The ω = 0 endpoint is never sampled (the panel rule is
    open), and every factor of the integrand is individually stable there,
    so the finite ω → 0 limit (γ₀T t² for n = 1, T > 0) is reproduced
    without an explicit series splice.
    """
    if t < 0.0:
        raise ValueError("gamma_quadrature requires t >= 0")
    if t == 0.0 or bath.gamma0 == 0.0:
        return 0.0
    tol = tol if tol is not None else Quadrature()
    edges = _frequency_edges(bath, t, tol.abs_tol, tol.panel_budget)
    try:
        res = quadrature.integrate(
            partial(_gamma_integrand, bath, t), edges,
            abs_tol=tol.abs_tol, rel_tol=tol.rel_tol, panel_budget=tol.panel_budget)
    except QuadratureConvergenceError as exc:
        if exc.t is None:
            exc.t = t
        raise
    return res.value


def diffusion_coefficient(bath: BathSpec, t: float, tol: Quadrature | None = None) -> float:
    """D(t) = ∫₀^∞ dω J(ω) coth(ω/2T) sin(ωt)/ω.

    The time integral of the underlying cos(ωs) kernel is done analytically,
    leaving a single frequency integral on the same panel scheme as
    :func:`gamma_quadrature`.  D(0) = 0 and dΓ/dt = 4D.
    """
    if t < 0.0:
        raise ValueError("diffusion_coefficient requires t >= 0")
    if t == 0.0 or bath.gamma0 == 0.0:
        return 0.0
    tol = tol if tol is not None else Quadrature()
    edges = _frequency_edges(bath, t, tol.abs_tol, tol.panel_budget)
    try:
        res = quadrature.integrate(
            partial(_diffusion_integrand, bath, t), edges,
            abs_tol=tol.abs_tol, rel_tol=tol.rel_tol, panel_budget=tol.panel_budget)
    except QuadratureConvergenceError as exc:
        if exc.t is None:
            exc.t = t
        raise
    return res.value


def gamma_value(bath: BathSpec, method: GammaMethod, t: float) -> float:
    """Evaluate Γ(t) by whichever method is selected."""
    if isinstance(method, ClosedForm):
        return float(gamma_closed(bath, method.regime, t))
    if isinstance(method, Quadrature):
        return gamma_quadrature(bath, t, method)
    raise TypeError(f"unknown gamma method {method!r}")


def visibility(gamma):
    """Interference-fringe contrast F = e^(-Γ) for Γ >= 0."""
    g = np.asarray(gamma, dtype=float)
    if np.any(g < 0.0):
        raise ValueError("visibility requires gamma >= 0")
    out = np.exp(-g)
    if np.isscalar(gamma) or g.ndim == 0:
        return float(out)
    return out


def _curve_point(bath: BathSpec, method: GammaMethod, t: float) -> float:
    try:
        return gamma_value(bath, method, t)
    except QuadratureConvergenceError as exc:
        if exc.t is None:
            exc.t = t
        raise


def sample_curve(bath: BathSpec, method: GammaMethod, t_max: float, samples: int,
                 jobs: int | None = 1) -> DecoherenceCurve:
    """Γ on a uniform grid over [0, t_max] including both endpoints.

    Per-sample evaluations may fan out to ``jobs`` worker processes; results
    are assembled in grid order either way, so the curve is identical for any
    worker count.  Quadrature failures propagate with the failing t attached.
    """
    if not t_max > 0.0:
        raise ValueError(f"t_max must be positive, got {t_max}")
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}")
    times = np.linspace(0.0, t_max, samples)
    values = ordered_map(partial(_curve_point, bath, method), times.tolist(), jobs=jobs)
    return DecoherenceCurve(times, np.asarray(values), method, bath)
