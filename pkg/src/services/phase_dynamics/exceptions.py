"""
Phase Dynamics Exceptions

Custom exceptions for the three-wave-mixing integrators.
"""

from src.exceptions import PdcnetError


class IntegrationError(PdcnetError):
    """Base exception for integration errors."""
    pass


class SingularStartError(IntegrationError):
    """Raised when the amplitude-phase form starts at a zero signal or idler amplitude."""
    pass


class NonFiniteStateError(IntegrationError):
    """Raised when the integrator produces NaN or infinite values."""
    pass


class InvariantDriftError(IntegrationError):
    """Raised when a constant of motion drifts beyond its tolerance."""

    def __init__(self, message: str, diagnostics: dict = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
