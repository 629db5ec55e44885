"""Pure dephasing of a two-level system in a bosonic bath.

The package follows one thread: a bath spectral density with a power-law
low-frequency exponent and an exponential cutoff determines a decoherence
factor Γ(t), which damps the qubit's coherence, bends its geometric phase
away from the unitary value π(1 - cos θ₀), and sets the decoherence time
Γ(t_D) = 1.  Closed forms exist in the zero- and high-temperature regimes;
adaptive quadrature covers everything, and every quantity is available
through both so they can be checked against each other.
"""

from .config import (ALLOWED_GRID_AXES, RunConfig, dump_config, dumps_config,
                     expand_grid, load_config)
from .decoherence import (DecoherenceCurve, ClosedForm, GammaMethod, Quadrature,
                          diffusion_coefficient, gamma_closed,
                          gamma_closed_derivative, gamma_ohmic_high_t_exact,
                          gamma_quadrature, gamma_supraohmic_zero_t_exact,
                          gamma_value, sample_curve, visibility)
from .decoherence_time import (DecoherenceVerdict, Indeterminate,
                               ObservabilityResult, Saturates, TimeFound,
                               observability_condition, solve_decoherence_time)
from .dynamics import (EigenSystem, ReducedDensityMatrix, bloch_vector,
                       density_matrix, eigensystem, evolve,
                       master_equation_residual)
from .environment import (BathSpec, QubitSpec, RegimeTag, TemperatureRegime,
                          classify_regime, coth_kernel, spectral_density)
from .errors import (DephaserError, PanelBudgetError, PhaseUndefinedError,
                     QuadratureConvergenceError, RegimeValidityWarning,
                     UnsupportedRegimeError)
from .geometric_phase import (PhaseResult, delta_phase_closed,
                              delta_phase_generic, phase_exact_functional,
                              phase_exact_integral, phase_result, phase_unitary)
from .quadrature import QuadratureResult, integrate

__version__ = "0.1.0"

__all__ = [
    "ALLOWED_GRID_AXES", "BathSpec", "ClosedForm", "DecoherenceCurve",
    "DecoherenceVerdict", "DephaserError", "EigenSystem", "GammaMethod",
    "Indeterminate", "ObservabilityResult", "PanelBudgetError", "PhaseResult",
    "PhaseUndefinedError", "Quadrature", "QuadratureConvergenceError",
    "QuadratureResult", "QubitSpec", "ReducedDensityMatrix", "RegimeTag",
    "RegimeValidityWarning", "RunConfig", "Saturates", "TemperatureRegime",
    "TimeFound", "UnsupportedRegimeError", "bloch_vector", "classify_regime",
    "coth_kernel", "delta_phase_closed", "delta_phase_generic",
    "density_matrix", "diffusion_coefficient", "dump_config", "dumps_config",
    "eigensystem", "evolve", "expand_grid", "gamma_closed",
    "gamma_closed_derivative", "gamma_ohmic_high_t_exact", "gamma_quadrature",
    "gamma_supraohmic_zero_t_exact", "gamma_value", "integrate", "load_config",
    "master_equation_residual", "observability_condition",
    "phase_exact_functional", "phase_exact_integral", "phase_result",
    "phase_unitary", "sample_curve", "solve_decoherence_time",
    "spectral_density", "visibility",
]
