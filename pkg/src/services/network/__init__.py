"""
Network Service

Compiles a declarative interferometer network into detector field
expressions and evaluates single and coincidence count rates.

Usage:
    from src.services.network import compile_network, detector_rate

    fields = compile_network(spec)
    rate = detector_rate(fields, "A")

For detailed documentation, see README.md
"""
from .exceptions import (
    NetworkError,
    ConfigurationError,
    NetworkValidationError,
    UnknownDetectorError,
    NonPhysicalRateError,
)
from .fields import FieldSeries, series_product, truncated_product
from .propagation import PropagationState, DetectorSnapshot, apply_component
from .builder import NetworkBuilder
from .compiler import DetectorField, DetectorFields, compile_network
from .rates import rate_expression, detector_rate, coincidence_rate

__all__ = [
    # Exceptions
    'NetworkError',
    'ConfigurationError',
    'NetworkValidationError',
    'UnknownDetectorError',
    'NonPhysicalRateError',

    # Field series
    'FieldSeries',
    'series_product',
    'truncated_product',

    # Construction, propagation and compilation
    'NetworkBuilder',
    'PropagationState',
    'DetectorSnapshot',
    'apply_component',
    'DetectorField',
    'DetectorFields',
    'compile_network',

    # Rates
    'rate_expression',
    'detector_rate',
    'coincidence_rate',
]
