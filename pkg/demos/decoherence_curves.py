"""Decoherence curves Γ(t) across bath exponents and temperatures.

Walks the four derived closed forms against adaptive quadrature of the
defining integral, then looks closely at the supraohmic zero-T case, where
the compact saturation formula and the exact frequency integral tell two
different stories at early times: the exact curve rises three hundred times
faster below Λt ~ 0.1 and overshoots its plateau by a factor 9/8 before
settling.  Run as a script; a PNG lands next to this file when matplotlib
is importable.
"""

import math
import os

import numpy as np

from dephaser import (BathSpec, ClosedForm, Quadrature, RegimeTag,
                      gamma_closed, gamma_ohmic_high_t_exact, gamma_quadrature,
                      gamma_supraohmic_zero_t_exact, sample_curve, visibility)

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

CUTOFF = 100.0
OUT_DIR = os.path.join(os.path.dirname(__file__), "output")


# --- closed forms against the defining integral ------------------------------

print("Closed forms vs quadrature, gamma0 = 0.3, cutoff = 100")
print(f"{'bath':>22} {'t':>8} {'closed':>14} {'quadrature':>14} {'rel diff':>10}")
cases = [
    ("ohmic, T = 0", BathSpec(1, 0.3, CUTOFF, 0.0), RegimeTag.ZERO_T),
    ("ohmic, T = 1000", BathSpec(1, 0.3, CUTOFF, 1000.0), RegimeTag.HIGH_T),
    ("supraohmic, T = 0", BathSpec(3, 0.3, CUTOFF, 0.0), RegimeTag.ZERO_T),
    ("supraohmic, T = 1000", BathSpec(3, 0.3, CUTOFF, 1000.0), RegimeTag.HIGH_T),
]
for label, bath, tag in cases:
    for t in (0.05, 1.0):
        closed = gamma_closed(bath, tag, t)
        quad = gamma_quadrature(bath, t)
        rel = abs(quad - closed) / max(abs(quad), 1e-300)
        print(f"{label:>22} {t:>8.2f} {closed:>14.6g} {quad:>14.6g} {rel:>10.1e}")

print()
print("The ohmic zero-T form is exact outright and the supraohmic high-T one")
print("is exact once coth -> 2T/omega, so those rows only carry the O(omega/T)")
print("thermal corrections.  The linear ohmic high-T form is additionally a")
print("Lambda*t >> 1 asymptote; keeping the full linearized kernel isolates")
print("the logarithmic transient it drops:")
print()

hot = BathSpec(1, 0.3, CUTOFF, 1000.0)
print(f"{'t':>8} {'pi*g0*T*t':>12} {'linearized':>12} {'quadrature':>12}")
for t in (0.05, 1.0):
    print(f"{t:>8.2f} {gamma_closed(hot, RegimeTag.HIGH_T, t):>12.6g}"
          f" {gamma_ohmic_high_t_exact(hot, t):>12.6g}"
          f" {gamma_quadrature(hot, t):>12.6g}")
print()

# --- the two supraohmic zero-T curves ----------------------------------------

supra = BathSpec(3, 0.3, CUTOFF, 0.0)
print("Supraohmic zero-T: compact saturation form vs exact integral")
print(f"{'Lambda*t':>9} {'compact':>12} {'exact':>12} {'ratio':>8}")
for lam_t in (0.03, 0.1, 0.3, 1.0, math.sqrt(3.0), 10.0, 100.0):
    t = lam_t / CUTOFF
    compact = gamma_closed(supra, RegimeTag.ZERO_T, t)
    exact = gamma_supraohmic_zero_t_exact(supra, t)
    print(f"{lam_t:>9.3f} {compact:>12.5g} {exact:>12.5g} {exact / compact:>8.1f}")

peak = gamma_supraohmic_zero_t_exact(supra, math.sqrt(3.0) / CUTOFF)
print()
print(f"Exact curve peaks at (9/8) gamma0 = {peak:.6f} at Lambda*t = sqrt(3),")
print("then approaches the shared plateau gamma0 = 0.3 from above; the compact")
print("form rises monotonically and never overshoots.  Both quote the same")
print("plateau, so they agree on whether coherence survives, but not on when")
print("it is lost: see the decoherence_windows demo for a coupling where the")
print("overshoot crosses 1 and the compact curve does not.")
print()

# --- visibility curves --------------------------------------------------------

print("Visibility F = exp(-Gamma) at t = 1 for a few temperatures (ohmic):")
for temp in (0.0, 1.55, 10.0, 1000.0):
    bath = BathSpec(1, 0.3, CUTOFF, temp)
    fringe = visibility(gamma_quadrature(bath, 1.0))
    print(f"  T = {temp:>6.4g}: F = {fringe:.6g}")

if plt is not None:
    os.makedirs(OUT_DIR, exist_ok=True)
    times = np.linspace(1e-4, 0.1, 400)
    figure, (left, right) = plt.subplots(1, 2, figsize=(10, 4))
    left.plot(CUTOFF * times, gamma_closed(supra, RegimeTag.ZERO_T, times),
              label="compact form")
    left.plot(CUTOFF * times, gamma_supraohmic_zero_t_exact(supra, times),
              label="exact integral")
    left.axhline(0.3, color="gray", lw=0.8, ls=":")
    left.set_xlabel(r"$\Lambda t$")
    left.set_ylabel(r"$\Gamma(t)$")
    left.set_title("supraohmic, T = 0")
    left.legend()

    curve = sample_curve(BathSpec(1, 0.3, CUTOFF, 1.55), Quadrature(), 5.0, 80)
    right.plot(curve.times, curve.visibilities, label="T = 1.55 (quadrature)")
    cold = sample_curve(BathSpec(1, 0.3, CUTOFF, 0.0),
                        ClosedForm(RegimeTag.ZERO_T), 5.0, 80)
    right.plot(cold.times, cold.visibilities, label="T = 0 (closed)")
    right.set_xlabel("t")
    right.set_ylabel("visibility")
    right.set_title("ohmic fringe contrast")
    right.legend()

    figure.tight_layout()
    target = os.path.join(OUT_DIR, "decoherence_curves.png")
    figure.savefig(target, dpi=150)
    print(f"\nwrote {target}")
else:
    print("\nmatplotlib not installed; skipped the figure")
