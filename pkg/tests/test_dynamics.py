"""Dephased density matrix, its eigensystem, and the master-equation residual."""

import cmath
import math

import numpy as np
import pytest

from dephaser.decoherence import ClosedForm, Quadrature
from dephaser.dynamics import (ReducedDensityMatrix, bloch_vector,
                               density_matrix, eigensystem, evolve,
                               master_equation_residual)
from dephaser.environment import BathSpec, QubitSpec, RegimeTag

GAMMA_REF = 0.15 * math.log1p(1e4)


def test_density_matrix_structure():
    qubit = QubitSpec(theta0=math.pi / 2)
    rho = density_matrix(qubit, 1.0, GAMMA_REF)
    assert rho.pop_e + rho.pop_g == 1.0
    assert rho.pop_e == pytest.approx(0.5, rel=1e-15)
    assert abs(rho.coherence) == pytest.approx(0.12559243776897272, rel=1e-12)
    m = rho.matrix
    assert m.shape == (2, 2)
    assert np.allclose(m, m.conj().T, atol=0.0)
    assert np.trace(m) == 1.0 + 0.0j


def test_coherence_phase_advances_with_omega():
    qubit = QubitSpec(omega=2.0, theta0=math.pi / 2)
    rho = density_matrix(qubit, 0.7, 0.0)
    assert rho.coherence == pytest.approx(0.5 * cmath.exp(1.4j), rel=1e-15)


def test_populations_unaffected_by_decoherence():
    qubit = QubitSpec(theta0=math.pi / 3)
    weak = density_matrix(qubit, 2.0, 0.01)
    strong = density_matrix(qubit, 2.0, 50.0)
    assert weak.pop_e == strong.pop_e == pytest.approx(0.75, rel=1e-15)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        density_matrix(QubitSpec(), 1.0, -0.1)
    with pytest.raises(ValueError):
        ReducedDensityMatrix(0.9, 0.1, 0.4 + 0.0j)
    with pytest.raises(ValueError):
        ReducedDensityMatrix(1.2, -0.2, 0.0j)


def test_purity_equals_trace_of_square():
    qubit = QubitSpec(theta0=1.1)
    rho = density_matrix(qubit, 0.4, 0.8)
    direct = float(np.trace(rho.matrix @ rho.matrix).real)
    assert rho.purity == pytest.approx(direct, rel=1e-14)


def test_evolve_composes_gamma_and_state():
    qubit = QubitSpec(theta0=math.pi / 3)
    bath = BathSpec(1, 0.3, 100.0, 0.0)
    rho = evolve(qubit, bath, ClosedForm(RegimeTag.ZERO_T), 1.0)
    # sin(π/3) times the equator amplitude 0.12559243776897272.
    assert abs(rho.coherence) == pytest.approx(0.10876624163114658, rel=1e-12)
    same = density_matrix(qubit, 1.0, GAMMA_REF)
    assert rho.coherence == pytest.approx(same.coherence, rel=1e-15)
    with pytest.raises(ValueError):
        evolve(qubit, bath, ClosedForm(RegimeTag.ZERO_T), -1.0)


def test_eigensystem_reference_case():
    qubit = QubitSpec(theta0=math.pi / 3)
    rho = density_matrix(qubit, 1.0, GAMMA_REF)
    system = eigensystem(rho, qubit, GAMMA_REF)
    assert system.eps_plus == pytest.approx(0.7726354623275649, rel=1e-12)
    assert system.eps_plus + system.eps_minus == 1.0
    assert system.theta_t == pytest.approx(0.8207295677875339, rel=1e-12)
    # Winding carried by the coherence: e^(-iΩt) at t = 1.
    assert system.phase_factor == pytest.approx(cmath.exp(-1.0j), rel=1e-12)
    reference = np.linalg.eigvalsh(rho.matrix)
    assert system.eps_minus == pytest.approx(reference[0], abs=1e-14)
    assert system.eps_plus == pytest.approx(reference[1], abs=1e-14)


def test_eigensystem_angle_convention():
    # tan(θ_t/2) = e^(-Γ) cot(θ0/2): lands on π - θ0 at Γ = 0, closes onto the
    # pole as Γ grows.
    qubit = QubitSpec(theta0=1.0)
    fresh = eigensystem(density_matrix(qubit, 0.0, 0.0), qubit, 0.0)
    assert fresh.theta_t == pytest.approx(math.pi - 1.0, rel=1e-14)
    crushed = eigensystem(density_matrix(qubit, 0.0, 30.0), qubit, 30.0)
    assert crushed.theta_t == pytest.approx(2.0 * math.exp(-30.0) / math.tan(0.5),
                                            rel=1e-6)


def test_equator_angle_versus_eigenvector_weight():
    # At θ0 = π/2 the populations are degenerate, so the dominant eigenvector
    # keeps weight exactly 1/2 on |e> for every Γ > 0; the angle field instead
    # tracks the shrinking coherence amplitude.  The two are distinct on
    # purpose: phase accumulation needs the weight, not the angle.
    qubit = QubitSpec(theta0=math.pi / 2)
    rho = density_matrix(qubit, 0.0, 3.0)
    _, vectors = np.linalg.eigh(rho.matrix)
    weight = abs(vectors[0, 1]) ** 2
    assert weight == pytest.approx(0.5, abs=1e-12)
    system = eigensystem(rho, qubit, 3.0)
    angle_weight = math.sin(0.5 * system.theta_t) ** 2
    assert angle_weight == pytest.approx(
        math.exp(-6.0) / (1.0 + math.exp(-6.0)), rel=1e-12)
    assert angle_weight < 0.01


def test_eigensystem_zero_coherence_phase_default():
    qubit = QubitSpec(theta0=0.0)
    rho = density_matrix(qubit, 5.0, 1.0)
    system = eigensystem(rho, qubit, 1.0)
    assert rho.coherence == 0.0j
    assert system.phase_factor == 1.0 + 0.0j
    assert system.eps_plus == 1.0


def test_eigensystem_matches_solver_in_bulk():
    rng = np.random.default_rng(42)
    worst = 0.0
    for _ in range(200):
        theta = rng.uniform(0.0, math.pi)
        gamma = 10.0 ** rng.uniform(-3.0, 2.0)
        t = rng.uniform(0.0, 10.0)
        qubit = QubitSpec(theta0=theta)
        rho = density_matrix(qubit, t, gamma)
        system = eigensystem(rho, qubit, gamma)
        reference = np.linalg.eigvalsh(rho.matrix)
        worst = max(worst,
                    abs(system.eps_minus - reference[0]),
                    abs(system.eps_plus - reference[1]))
        x, y, z = bloch_vector(rho)
        assert math.hypot(math.hypot(x, y), z) <= 1.0 + 1e-12
    assert worst < 1e-13


def test_purity_decays_with_gamma():
    qubit = QubitSpec(theta0=0.9)
    gammas = [0.0, 0.3, 1.0, 4.0]
    purities = [density_matrix(qubit, 0.0, g).purity for g in gammas]
    assert purities[0] == pytest.approx(1.0, abs=1e-15)
    assert all(a >= b - 1e-15 for a, b in zip(purities, purities[1:]))


def test_bloch_vector_components():
    qubit = QubitSpec(theta0=math.pi / 3)
    rho = density_matrix(qubit, 0.5, 0.2)
    x, y, z = bloch_vector(rho)
    decay = math.sin(math.pi / 3) * math.exp(-0.2)
    assert x == pytest.approx(decay * math.cos(0.5), rel=1e-14)
    assert y == pytest.approx(decay * math.sin(0.5), rel=1e-14)
    assert z == pytest.approx(0.5, rel=1e-14)


def test_residual_second_order_closed_form():
    qubit = QubitSpec(theta0=math.pi / 2)
    bath = BathSpec(1, 0.3, 100.0, 1000.0)
    method = ClosedForm(RegimeTag.HIGH_T)
    coarse = master_equation_residual(qubit, bath, method, 5e-4, 1e-6)
    fine = master_equation_residual(qubit, bath, method, 5e-4, 5e-7)
    assert 3.6 < coarse / fine < 4.4


def test_residual_second_order_quadrature():
    # Halving dt must quarter the defect with D evaluated from the same
    # integral family as Γ; tight tolerances keep quadrature noise below the
    # O(dt²) signal.
    qubit = QubitSpec(theta0=math.pi / 4)
    bath = BathSpec(1, 0.01, 100.0, 10.0 / math.pi)
    method = Quadrature(abs_tol=1e-13, rel_tol=1e-11)
    coarse = master_equation_residual(qubit, bath, method, 1.0, 4e-3)
    fine = master_equation_residual(qubit, bath, method, 1.0, 2e-3)
    assert 3.6 < coarse / fine < 4.4


def test_residual_validation():
    qubit = QubitSpec(theta0=1.0)
    bath = BathSpec(1, 0.3, 100.0, 0.0)
    method = ClosedForm(RegimeTag.ZERO_T)
    with pytest.raises(ValueError):
        master_equation_residual(qubit, bath, method, 1.0, 0.0)
    with pytest.raises(ValueError):
        master_equation_residual(qubit, bath, method, 0.5, 0.6)
