"""Exception types raised across the package."""


class DftBoundError(Exception):
    """Base class for all package errors."""


class DomainError(DftBoundError, ValueError):
    """A parameter lies outside the domain where the object is defined."""


class SupportAsymmetry(DftBoundError, ValueError):
    """A support point lacks its negation."""


class SupportMismatch(DftBoundError, ValueError):
    """Two distributions do not share the support required by the operation."""


class QuadratureFailure(DftBoundError, ArithmeticError):
    """Numerical integration did not reach the requested tolerance."""


class DivergentPartition(DftBoundError, ArithmeticError):
    """The partition function diverges for this (support, lambda) pair."""


class UnattainableMean(DftBoundError, ValueError):
    """No parameter value reproduces the requested mean."""


class DegenerateMean(DftBoundError, ValueError):
    """The requested mean only corresponds to a limiting, improper distribution."""


class InsufficientData(DftBoundError, ValueError):
    """Too few samples (or qualifying bins) for a statistical check."""
