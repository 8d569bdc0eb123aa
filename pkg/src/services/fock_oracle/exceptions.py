"""
Fock Oracle Exceptions

Custom exceptions for the truncated Fock-space simulator.
"""

from src.exceptions import PdcnetError


class OracleError(PdcnetError):
    """Base exception for oracle errors."""
    pass


class BasisBudgetError(OracleError):
    """Raised when the product basis would exceed the configured dimension budget."""
    pass


class CutoffLeakageError(OracleError):
    """
    Raised when population reaches the top Fock level of a mode (or a
    truncated displacement loses norm) beyond the leakage tolerance.
    """

    def __init__(self, message: str, mode: str = None, leakage: float = None):
        super().__init__(message)
        self.mode = mode
        self.leakage = leakage


class UnsupportedComponentError(OracleError):
    """Raised for components the oracle cannot simulate."""
    pass
