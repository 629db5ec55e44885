"""Parameter types, spectral density, regime classification, coth kernel."""

import math

import numpy as np
import pytest

from dephaser.environment import (BathSpec, QubitSpec, RegimeTag,
                                  classify_regime, coth_kernel,
                                  spectral_density)


@pytest.mark.parametrize("kwargs", [
    dict(exponent_n=2, gamma0=0.3, cutoff_lambda=100.0),
    dict(exponent_n=1, gamma0=-0.1, cutoff_lambda=100.0),
    dict(exponent_n=1, gamma0=float("nan"), cutoff_lambda=100.0),
    dict(exponent_n=1, gamma0=0.3, cutoff_lambda=0.0),
    dict(exponent_n=1, gamma0=0.3, cutoff_lambda=-5.0),
    dict(exponent_n=1, gamma0=0.3, cutoff_lambda=100.0, temperature=-1.0),
])
def test_bath_spec_rejects_bad_parameters(kwargs):
    with pytest.raises(ValueError):
        BathSpec(**kwargs)


def test_bath_spec_zero_coupling_allowed():
    assert BathSpec(1, 0.0, 100.0).gamma0 == 0.0


def test_regime_ratio():
    bath = BathSpec(1, 0.3, 100.0, 25.0)
    assert bath.regime_ratio == pytest.approx(2.0)
    with pytest.raises(ValueError):
        _ = BathSpec(1, 0.3, 100.0, 0.0).regime_ratio


def test_qubit_spec_validation_and_period():
    qubit = QubitSpec(omega=2.0, theta0=math.pi / 3)
    assert qubit.tau == pytest.approx(math.pi, rel=1e-15)
    for bad in (dict(omega=0.0), dict(omega=-1.0), dict(theta0=-0.1),
                dict(theta0=math.pi + 0.1)):
        with pytest.raises(ValueError):
            QubitSpec(**bad)


def test_spectral_density_reference_point():
    # At ω = Λ both exponents give (γ0/4)Λ e^{-1}.
    bath = BathSpec(1, 0.3, 100.0)
    assert spectral_density(bath, 100.0) == pytest.approx(
        7.5 * math.exp(-1.0), rel=1e-15)
    supra = BathSpec(3, 0.3, 100.0)
    assert spectral_density(supra, 100.0) == pytest.approx(
        spectral_density(bath, 100.0), rel=1e-15)


def test_spectral_density_exponent_scaling():
    # The two spectra differ by exactly (ω/Λ)² at equal coupling.
    ohmic = BathSpec(1, 0.3, 100.0)
    supra = BathSpec(3, 0.3, 100.0)
    for w in (1.0, 37.5, 250.0):
        ratio = spectral_density(supra, w) / spectral_density(ohmic, w)
        assert ratio == pytest.approx((w / 100.0) ** 2, rel=1e-13)


def test_spectral_density_array_and_edges():
    bath = BathSpec(3, 0.2, 50.0)
    w = np.array([0.0, 1.0, 50.0, 500.0])
    out = spectral_density(bath, w)
    assert out.shape == w.shape
    assert out[0] == 0.0
    assert np.all(out >= 0.0)
    assert isinstance(spectral_density(bath, 1.0), float)
    with pytest.raises(ValueError):
        spectral_density(bath, -1.0)


def test_classify_regime_boundaries():
    assert classify_regime(BathSpec(1, 0.3, 100.0, 0.0)).tag is RegimeTag.ZERO_T
    assert classify_regime(BathSpec(1, 0.3, 100.0, 500.0)).tag is RegimeTag.HIGH_T
    assert classify_regime(BathSpec(1, 0.3, 100.0, 499.0)).tag is RegimeTag.GENERAL_T
    assert classify_regime(BathSpec(1, 0.3, 100.0, 1.55)).tag is RegimeTag.GENERAL_T


def test_classify_regime_threshold_override():
    bath = BathSpec(1, 0.3, 100.0, 250.0)
    assert classify_regime(bath).tag is RegimeTag.GENERAL_T
    assert classify_regime(bath, threshold=5.0).tag is RegimeTag.HIGH_T
    with pytest.raises(ValueError):
        classify_regime(bath, threshold=0.0)


def test_classify_regime_reports_ratio():
    regime = classify_regime(BathSpec(1, 0.3, 100.0, 1000.0))
    assert regime.validity_ratio == pytest.approx(20.0)
    assert classify_regime(BathSpec(1, 0.3, 100.0, 0.0)).validity_ratio == 0.0


def test_coth_reference_value():
    # cosh(1)/sinh(1), evaluated independently.
    expected = math.cosh(1.0) / math.sinh(1.0)
    assert coth_kernel(1.0) == pytest.approx(expected, rel=1e-14)
    assert coth_kernel(1.0) == pytest.approx(1.3130352854993312, rel=1e-14)


def test_coth_series_branch_consistency():
    # The Laurent branch must hand over smoothly to 1/tanh at the cutoff.
    for x in (1e-8, 1e-4, 0.019, 0.02, 0.021):
        assert coth_kernel(x) == pytest.approx(1.0 / math.tanh(x), rel=1e-12)


def test_coth_small_argument_growth():
    # coth(x) ≈ 1/x for tiny x; naive 1/tanh would already be noisy here.
    assert coth_kernel(1e-12) == pytest.approx(1e12, rel=1e-12)


def test_coth_saturates_to_one():
    assert coth_kernel(19.5) == 1.0
    assert coth_kernel(25.0) == 1.0
    assert coth_kernel(18.0) > 1.0


def test_coth_array_and_validation():
    x = np.array([1e-3, 0.5, 30.0])
    out = coth_kernel(x)
    assert out.shape == x.shape
    assert np.all(np.diff(out) < 0.0)
    for bad in (0.0, -1.0):
        with pytest.raises(ValueError):
            coth_kernel(bad)
