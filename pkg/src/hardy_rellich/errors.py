"""Exception types shared across the package."""


class HardyRellichError(Exception):
    """Base class for all package errors."""


class NumericalFailure(HardyRellichError):
    """Quadrature did not converge within the allowed refinement budget."""

    def __init__(self, message, last_values=None):
        super().__init__(message)
        self.last_values = last_values


class DegenerateProfile(HardyRellichError):
    """A quotient was requested for a profile with vanishing denominator."""


class SolverFailure(HardyRellichError):
    """Eigen-solver or minimizer breakdown (factorization, bracketing, iteration cap)."""
