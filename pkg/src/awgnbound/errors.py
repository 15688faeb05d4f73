"""Exceptions raised by the numerical routines."""


class DegenerateParameterError(ArithmeticError):
    """A closed-form parameter left its admissible range (internal failure)."""


class QuadratureError(RuntimeError):
    """Adaptive integration did not reach the requested tolerance."""


class OptimizationError(RuntimeError):
    """A local search did not converge within its budget."""


class OracleDegeneracyError(ArithmeticError):
    """Blahut-Arimoto hit an infinite divergence for a used input."""
