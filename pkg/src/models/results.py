"""
Result containers for scans and visibility extraction.
"""

import math
from dataclasses import dataclass, field
from typing import Any, Optional

from src.enums import ScanParameter


NEGATIVE_RATE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ScanResult:
    """
    Rates over an ordered parameter grid.

    ``analytic`` holds the closed-form reference rate per grid point when
    one is known for the scanned setup.
    """
    parameter: ScanParameter
    grid: tuple[float, ...]
    rates: tuple[float, ...]
    metadata: dict[str, Any] = field(default_factory=dict)
    analytic: Optional[tuple[float, ...]] = None

    def __post_init__(self):
        if len(self.grid) != len(self.rates):
            raise ValueError(f"Grid has {len(self.grid)} points but {len(self.rates)} rates were given")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise ValueError("Scan grid must be strictly increasing")
        if any(not math.isfinite(r) or r < -NEGATIVE_RATE_TOLERANCE for r in self.rates):
            raise ValueError("Scan rates must be finite and nonnegative")
        if self.analytic is not None and len(self.analytic) != len(self.grid):
            raise ValueError("Analytic reference must have one value per grid point")

    @property
    def unit(self) -> str:
        return 'dimensionless' if self.parameter == ScanParameter.TAU else 'rad'

    @property
    def span(self) -> float:
        return self.grid[-1] - self.grid[0] if self.grid else 0.0

    def __len__(self) -> int:
        return len(self.grid)


@dataclass(frozen=True)
class VisibilityReport:
    visibility: float
    r_max: float
    r_min: float
    fit_period: Optional[float] = None
    fit_phase: Optional[float] = None

    def __post_init__(self):
        if not -1e-12 <= self.visibility <= 1 + 1e-12:
            raise ValueError(f"Visibility {self.visibility} outside [0, 1]")


@dataclass(frozen=True)
class CurvePoint:
    x: float
    visibility: float
    reference: Optional[float] = None

    @property
    def difference(self) -> Optional[float]:
        return None if self.reference is None else abs(self.visibility - self.reference)


@dataclass(frozen=True)
class VisibilityCurve:
    """Visibility as a function of one parameter (τ or n), with the reference law."""
    variable: str
    points: tuple[CurvePoint, ...]
    law: Optional[str] = None
    metadata: dict[str, Any] = field(default_factory=dict)

    @property
    def xs(self) -> tuple[float, ...]:
        return tuple(p.x for p in self.points)

    @property
    def visibilities(self) -> tuple[float, ...]:
        return tuple(p.visibility for p in self.points)

    def max_difference(self) -> float:
        diffs = [p.difference for p in self.points if p.difference is not None]
        return max(diffs) if diffs else 0.0


@dataclass(frozen=True)
class ComplementarityReport:
    """Which-path distinguishability against fringe visibility for the filter setup."""
    tau: float
    idler_overlap: complex
    distinguishability: float
    visibility: float

    @property
    def bound(self) -> float:
        """K² + V², at most 1 for a physical setup."""
        return self.distinguishability ** 2 + self.visibility ** 2

    @property
    def satisfied(self) -> bool:
        return self.bound <= 1.0 + 1e-9


@dataclass(frozen=True)
class OracleResult:
    """
    Rates measured on the final truncated Fock state of one network run.

    ``leakage`` is the largest top-level population (or truncated
    displacement norm loss) met along the way.
    """
    rates: dict[str, float]
    coincidences: dict[tuple[str, str], float]
    basis: dict[str, int]
    leakage: float
    norm_deviation: float
    series_terms: int

    @property
    def dimension(self) -> int:
        return math.prod(c + 1 for c in self.basis.values())


@dataclass(frozen=True)
class OracleGap:
    quantity: str
    engine: float
    oracle: float

    @property
    def absolute(self) -> float:
        return abs(self.engine - self.oracle)

    @property
    def relative(self) -> float:
        scale = max(abs(self.engine), abs(self.oracle))
        return self.absolute / scale if scale > 0 else 0.0


@dataclass(frozen=True)
class OracleComparison:
    """Engine against oracle for every detector (and requested pair) of one network."""
    gaps: tuple[OracleGap, ...]
    oracle: OracleResult

    def worst_relative(self) -> float:
        return max((g.relative for g in self.gaps), default=0.0)

    def __getitem__(self, quantity: str) -> OracleGap:
        for gap in self.gaps:
            if gap.quantity == quantity:
                return gap
        raise KeyError(quantity)
