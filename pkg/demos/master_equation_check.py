"""State evolution and its time-local master equation, checked numerically.

The dephased state has frozen populations and a coherence that rotates at Ω
while its magnitude decays through e^(-Γ).  That state solves
dρ/dt = i(Ω/2)[σ_z, ρ] - D(t)[σ_z, [σ_z, ρ]] with a time-dependent rate
tied to Γ by dΓ/dt = 4D(t).  This script evolves a state and prints the
familiar signatures (purity loss, Bloch spiral, eigenvalue motion), then
verifies the rate identity by finite differences and shows the equation's
residual vanishing quadratically in the step used to probe it.
"""

import math

from dephaser import (BathSpec, ClosedForm, Quadrature, QubitSpec, RegimeTag,
                      bloch_vector, diffusion_coefficient, eigensystem, evolve,
                      gamma_quadrature, gamma_value,
                      master_equation_residual)

QUBIT = QubitSpec(theta0=math.pi / 3)
BATH = BathSpec(1, 0.3, 100.0, 0.0)
METHOD = ClosedForm(RegimeTag.ZERO_T)


# --- the state itself -----------------------------------------------------------

print("Evolution at theta0 = pi/3, ohmic bath, T = 0, gamma0 = 0.3")
print(f"{'t':>6} {'|coherence|':>12} {'purity':>9} {'eps_plus':>10} {'angle':>8}")
for t in (0.0, 0.5, 1.0, 2.0, 5.0):
    rho = evolve(QUBIT, BATH, METHOD, t)
    gamma = gamma_value(BATH, METHOD, t)
    eig = eigensystem(rho, QUBIT, gamma)
    print(f"{t:>6.2f} {abs(rho.coherence):>12.6f} {rho.purity:>9.6f}"
          f" {eig.eps_plus:>10.6f} {eig.theta_t:>8.5f}")

rho = evolve(QUBIT, BATH, METHOD, 1.0)
x, y, z = bloch_vector(rho)
print(f"\nBloch vector at t = 1: ({x:+.6f}, {y:+.6f}, {z:+.6f}),"
      f" length {math.hypot(math.hypot(x, y), z):.6f}")
print("Populations never move; the coherence spirals inward, purity falls")
print("toward the dephased mixture, and the effective tilt angle swings")
print("toward the nearest pole as the transverse component dies.")
print()

# --- the rate identity dGamma/dt = 4 D(t) ----------------------------------------

print("Central difference of quadrature Gamma vs 4*D from its own integral:")
print(f"{'t':>6} {'dGamma/dt (diff)':>17} {'4*D(t)':>12}")
tol = Quadrature(abs_tol=1e-12, rel_tol=1e-10)
for t, h in ((0.3, 1e-4), (1.0, 1e-4), (3.0, 1e-4)):
    hot = BathSpec(1, 0.3, 100.0, 1.55)
    slope = (gamma_quadrature(hot, t + h, tol)
             - gamma_quadrature(hot, t - h, tol)) / (2.0 * h)
    four_d = 4.0 * diffusion_coefficient(hot, t, tol)
    print(f"{t:>6.2f} {slope:>17.9f} {four_d:>12.9f}")

print()

# --- the residual is O(dt^2) ------------------------------------------------------

print("Master-equation residual as the probe step halves:")
cases = [
    ("closed high-T", QubitSpec(theta0=math.pi / 2),
     BathSpec(1, 0.3, 100.0, 1000.0), ClosedForm(RegimeTag.HIGH_T),
     5e-4, (1e-6, 5e-7, 2.5e-7)),
    ("quadrature", QubitSpec(theta0=math.pi / 4),
     BathSpec(1, 0.01, 100.0, 10.0 / math.pi), Quadrature(1e-13, 1e-11),
     1.0, (4e-3, 2e-3, 1e-3)),
]
for label, qubit, bath, method, t, steps in cases:
    values = [master_equation_residual(qubit, bath, method, t, dt)
              for dt in steps]
    shown = "  ".join(f"dt={dt:g}: {r:.3e}" for dt, r in zip(steps, values))
    ratios = "  ".join(f"{a / b:.2f}" for a, b in zip(values, values[1:]))
    print(f"  {label}: {shown}")
    print(f"  {' ' * len(label)}  halving ratios {ratios} (quadratic => 4)")

print()
print("Each halving of dt cuts the defect by four, so the state satisfies the")
print("equation itself; what is left is pure finite-difference error.  The")
print("quadrature route only achieves this because its D comes from the same")
print("integral family as its Gamma; mixing a closed-form rate with a")
print("quadrature evolution (or vice versa) would leave an O(1) defect.")
