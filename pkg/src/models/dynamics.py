"""
States and trajectories of the classical three-wave-mixing equations.
"""

import cmath
import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from src.enums import LockingBranch


def fold_phase(angle: float) -> float:
    """Fold an angle into (−π, π]."""
    folded = math.remainder(angle, 2.0 * math.pi)
    return math.pi if folded == -math.pi else folded


@dataclass(frozen=True)
class WaveState:
    """Complex signal, idler and pump amplitudes at propagation distance ``z``."""
    e_s: complex
    e_i: complex
    e_p: complex
    z: float = 0.0

    @classmethod
    def from_polar(cls, r_s: float, r_i: float, r_p: float,
                   theta_s: float = 0.0, theta_i: float = 0.0, theta_p: float = 0.0) -> 'WaveState':
        return cls(cmath.rect(r_s, theta_s), cmath.rect(r_i, theta_i), cmath.rect(r_p, theta_p))

    @property
    def amplitudes(self) -> tuple[float, float, float]:
        return abs(self.e_s), abs(self.e_i), abs(self.e_p)

    @property
    def delta_theta(self) -> float:
        """θ_p − θ_s − θ_i folded to (−π, π]."""
        return fold_phase(cmath.phase(self.e_p) - cmath.phase(self.e_s) - cmath.phase(self.e_i))

    def amplitude_phase(self) -> 'AmplitudePhaseState':
        r_s, r_i, r_p = self.amplitudes
        return AmplitudePhaseState(r_s, r_i, r_p, self.delta_theta, self.z)


@dataclass(frozen=True)
class AmplitudePhaseState:
    r_s: float
    r_i: float
    r_p: float
    delta_theta: float
    z: float = 0.0

    def __post_init__(self):
        if min(self.r_s, self.r_i, self.r_p) < 0:
            raise ValueError("Amplitudes must be nonnegative")


@dataclass(frozen=True)
class Trajectory:
    """
    Samples of one integration.

    ``amplitudes`` has one row (R_s, R_i, R_p) per sample; ``fields`` holds
    the complex amplitudes when the complex form was integrated. ``drift``
    is the largest deviation of either constant of motion from its start.
    """
    z: np.ndarray
    amplitudes: np.ndarray
    delta_theta: np.ndarray
    steps: int
    drift: float
    formulation: str
    fields: Optional[np.ndarray] = None
    stopped_early: bool = False
    diagnostics: dict = field(default_factory=dict)

    def __post_init__(self):
        if len(self.z) == 0:
            raise ValueError("Trajectory has no samples")
        if np.any(np.diff(self.z) <= 0):
            raise ValueError("Trajectory samples must have strictly increasing z")

    def __len__(self) -> int:
        return len(self.z)

    @property
    def samples(self) -> list[tuple[float, AmplitudePhaseState]]:
        return [
            (float(z), AmplitudePhaseState(float(r[0]), float(r[1]), float(r[2]), float(d), float(z)))
            for z, r, d in zip(self.z, self.amplitudes, self.delta_theta)
        ]

    @property
    def growth(self) -> float:
        """Final over initial signal amplitude."""
        start = self.amplitudes[0, 0]
        return float(self.amplitudes[-1, 0] / start) if start > 0 else math.inf


@dataclass(frozen=True)
class LockingReport:
    initial_delta_theta: float
    z_lock: Optional[float]
    delta_theta_limit: float
    branch: LockingBranch
    growth: float
    final_cos: float
    drift: float
    steps: int
    trajectory: Optional[Trajectory] = field(default=None, repr=False, compare=False)

    @property
    def locked(self) -> bool:
        return self.z_lock is not None
