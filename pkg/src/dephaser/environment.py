"""Bath and qubit parameter types, the spectral density, and regime tags.

Units: ħ = k_B = 1 throughout.  Frequencies, temperatures and inverse times
are expressed in units of the qubit splitting Ω (Ω = 1 by default), so every
quantity in the package is dimensionless.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

# Below this argument the Laurent form of coth is accurate to ~1e-13 relative;
# above the upper cutoff, coth(x) - 1 < 2e-38 underflows double precision.
_COTH_SERIES_CUTOFF = 0.02
_COTH_UNITY_CUTOFF = 19.0

DEFAULT_HIGH_T_THRESHOLD = 10.0


class RegimeTag(enum.Enum):
    """Temperature-regime labels used to select closed-form results."""

    ZERO_T = "zero-t"
    HIGH_T = "high-t"
    GENERAL_T = "general-t"


@dataclass(frozen=True)
class TemperatureRegime:
    """A regime tag plus the dimensionless ratio that justifies it.

    ``validity_ratio`` is 2T/Λ for T > 0 and 0.0 at T = 0.
    """

    tag: RegimeTag
    validity_ratio: float


@dataclass(frozen=True)
class BathSpec:
    """Bosonic environment: J(ω) = (γ₀/4) ω^n Λ^(1-n) e^(-ω/Λ) at temperature T.

    ``exponent_n`` selects ohmic (1) or supraohmic (3) spectra.  ``gamma0`` is
    the dimensionless coupling; 0 is allowed and gives the decoherence-free
    limit.  ``cutoff_lambda`` and ``temperature`` are in units of Ω.
    """

    exponent_n: int
    gamma0: float
    cutoff_lambda: float
    temperature: float = 0.0

    def __post_init__(self):
        if self.exponent_n not in (1, 3):
            raise ValueError(f"exponent_n must be 1 or 3, got {self.exponent_n}")
        if not self.gamma0 >= 0.0:
            raise ValueError(f"gamma0 must be nonnegative, got {self.gamma0}")
        if not self.cutoff_lambda > 0.0:
            raise ValueError(f"cutoff_lambda must be positive, got {self.cutoff_lambda}")
        if not self.temperature >= 0.0:
            raise ValueError(f"temperature must be nonnegative, got {self.temperature}")

    @property
    def regime_ratio(self) -> float:
        """Λ/(2T), defined only for T > 0."""
        if self.temperature == 0.0:
            raise ValueError("regime_ratio is undefined at zero temperature")
        return self.cutoff_lambda / (2.0 * self.temperature)


@dataclass(frozen=True)
class QubitSpec:
    """Two-level system: splitting Ω > 0 and initial Bloch polar angle θ₀."""

    omega: float = 1.0
    theta0: float = 0.0

    def __post_init__(self):
        if not self.omega > 0.0:
            raise ValueError(f"omega must be positive, got {self.omega}")
        if not 0.0 <= self.theta0 <= math.pi:
            raise ValueError(f"theta0 must lie in [0, pi], got {self.theta0}")

    @property
    def tau(self) -> float:
        """Quasicyclic period 2π/Ω (always derived, never stored)."""
        return 2.0 * math.pi / self.omega


def spectral_density(bath: BathSpec, omega_freq):
    """Evaluate J(ω) = (γ₀/4) ω^n Λ^(1-n) e^(-ω/Λ).

    Accepts a scalar or an array of frequencies; negative frequencies are
    rejected.  Computed as (γ₀/4) Λ (ω/Λ)^n e^(-ω/Λ) so both exponents share
    one dimensionally uniform expression.
    """
    w = np.asarray(omega_freq, dtype=float)
    if np.any(w < 0.0):
        raise ValueError("spectral_density requires omega_freq >= 0")
    lam = bath.cutoff_lambda
    x = w / lam
    out = 0.25 * bath.gamma0 * lam * x**bath.exponent_n * np.exp(-x)
    if np.isscalar(omega_freq) or w.ndim == 0:
        return float(out)
    return out


def classify_regime(bath: BathSpec, threshold: float = DEFAULT_HIGH_T_THRESHOLD) -> TemperatureRegime:
    """Assign a temperature regime from the ratio 2T/Λ.

    ZeroT holds exactly at T = 0.  HighT needs 2T/Λ >= threshold, since the
    high-temperature forms replace coth(ω/2T) by 2T/ω for all ω up to ~Λ.
    Everything else is GeneralT and must go through quadrature.
    """
    if not threshold > 0.0:
        raise ValueError(f"threshold must be positive, got {threshold}")
    if bath.temperature == 0.0:
        return TemperatureRegime(RegimeTag.ZERO_T, 0.0)
    ratio = 2.0 * bath.temperature / bath.cutoff_lambda
    if ratio >= threshold:
        return TemperatureRegime(RegimeTag.HIGH_T, ratio)
    return TemperatureRegime(RegimeTag.GENERAL_T, ratio)


def coth_kernel(x):
    """Numerically stable coth(x) for x > 0, scalar or array.

    Uses the Laurent expansion 1/x + x/3 - x^3/45 below a small-argument
    cutoff, 1/tanh(x) in the middle, and exactly 1.0 once the exponential
    correction underflows.  Relative error stays below 1e-12 across both
    switch points.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0.0):
        raise ValueError("coth_kernel requires x > 0")
    small = arr < _COTH_SERIES_CUTOFF
    large = arr > _COTH_UNITY_CUTOFF
    mid = ~(small | large)
    out = np.ones_like(arr)
    xs = arr[small]
    out[small] = 1.0 / xs + xs / 3.0 - xs**3 / 45.0
    out[mid] = 1.0 / np.tanh(arr[mid])
    if np.isscalar(x) or arr.ndim == 0:
        return float(out)
    return out
