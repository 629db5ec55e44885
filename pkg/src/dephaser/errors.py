"""Exception types and warning categories shared across the package."""


class DephaserError(Exception):
    """Base class for every error this package raises on purpose."""


class QuadratureConvergenceError(DephaserError):
    """Adaptive integration stopped before reaching the requested tolerance.

    Carries the best available value and the achieved error estimate so a
    caller can decide whether the partial result is still usable.  All
    attributes ride in ``args`` so the exception survives pickling across
    worker processes.
    """

    def __init__(self, message, value=None, error_estimate=None, t=None):
        super().__init__(message, value, error_estimate, t)
        self.value = value
        self.error_estimate = error_estimate
        self._t = t

    @property
    def t(self):
        return self._t

    @t.setter
    def t(self, value):
        # Keep args in sync: callers attach the failing time after the fact,
        # and pickling rebuilds the exception from args alone.
        self._t = value
        self.args = self.args[:3] + (value,)

    def __str__(self):
        parts = [self.args[0]]
        if self.value is not None:
            parts.append(f"value={self.value!r}")
        if self.error_estimate is not None:
            parts.append(f"error_estimate={self.error_estimate!r}")
        if self.t is not None:
            parts.append(f"t={self.t!r}")
        return " ".join(parts)


class PanelBudgetError(QuadratureConvergenceError):
    """Panel subdivision exceeded the configured budget (a resource limit)."""


class UnsupportedRegimeError(DephaserError, ValueError):
    """Closed forms exist only for the derived (exponent, regime) pairs."""


class PhaseUndefinedError(DephaserError):
    """The phase functional's modulus vanished, so its argument is undefined."""


class RegimeValidityWarning(UserWarning):
    """A closed form was evaluated outside the regime it was derived for."""
