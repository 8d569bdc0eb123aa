"""Analytics services: optional HTML plots."""
from .graphing import GraphingService

__all__ = ['GraphingService']
