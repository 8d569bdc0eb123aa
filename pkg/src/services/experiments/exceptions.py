"""
Experiments Service Exceptions

Custom exceptions for preset construction, parameter scans and
visibility extraction.
"""

from src.exceptions import PdcnetError


class ExperimentError(PdcnetError):
    """Base exception for experiment errors."""
    pass


class PresetParameterError(ExperimentError):
    """Raised when preset parameters are outside their valid ranges."""
    pass


class ScanError(ExperimentError):
    """Raised for unknown scan parameters or empty / unordered grids."""
    pass


class VisibilityError(ExperimentError):
    """Raised when a scan is too short to bracket the fringe extrema."""
    pass
