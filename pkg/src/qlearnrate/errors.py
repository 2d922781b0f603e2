"""Exception types shared across the package.

Exit-code mapping for the CLI: ConfigurationError -> 1, any other
QLearnRateError surfacing from a validation run -> 2.
"""


class QLearnRateError(Exception):
    """Base class for all package errors."""


class ConfigurationError(QLearnRateError):
    """Invalid run configuration, grid, or quadrature specification."""


class DomainError(QLearnRateError):
    """Argument outside the mathematical domain of an operation."""


class InvariantError(QLearnRateError):
    """A structural invariant (hermiticity, completeness, ...) is violated."""


class NegativityError(InvariantError):
    """Operator has an eigenvalue below the allowed negativity cutoff."""


class TruncationError(QLearnRateError):
    """Basis truncation too small for the state being produced."""


class UnsupportedDriveError(QLearnRateError):
    """Drive protocol not representable by the separable integrator."""


class UnsupportedInputError(QLearnRateError):
    """Input outside the supported class (e.g. mixed initial state)."""


class PerturbationRangeError(QLearnRateError):
    """Drive amplitude too large for the linearised treatment."""


class DegenerateDynamicsError(QLearnRateError):
    """Dynamics carry no energy resource (E_tau <= 0)."""


class PreconditionError(QLearnRateError):
    """A documented precondition of an operation does not hold."""
