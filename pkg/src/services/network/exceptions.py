"""
Network Service Exceptions

Custom exceptions for network compilation and rate evaluation.
"""

from src.exceptions import PdcnetError


class NetworkError(PdcnetError):
    """Base exception for network errors."""
    pass


class ConfigurationError(NetworkError):
    """Raised when a network references undefined modes or reuses a detected mode."""
    pass


class NetworkValidationError(NetworkError):
    """Raised when a component parameter is out of range."""
    pass


class UnknownDetectorError(NetworkError):
    """Raised when a rate is requested for a detector the network does not define."""
    pass


class NonPhysicalRateError(NetworkError):
    """Raised when a computed rate has a significant imaginary or negative part."""
    pass
