"""
Phase-locking detection and initial-phase ensembles.
"""

import math
from typing import Optional, Sequence

import numpy as np

from src.enums import LockingBranch
from src.models.dynamics import LockingReport, Trajectory, WaveState, fold_phase
from src.utils import Logger, ordered_map
from .integrators import DEFAULT_SAMPLES, DEFAULT_TOLERANCE, integrate_complex


DEFAULT_EPSILON = 1e-3
DEFAULT_GROWTH = 100.0
DEFAULT_SEED = 1e-3
ENSEMBLE_SIZE = 16
BRANCH_WINDOW = 0.1

# θ_s + θ_i = θ_p − π/2, i.e. Δθ = +π/2
REFERENCE_BRANCH = LockingBranch.PLUS_HALF_PI


def detect_locking(t: Trajectory, epsilon: float = DEFAULT_EPSILON) -> tuple[Optional[float], float]:
    """
    Smallest sampled z after which |cosΔθ| < ε for every remaining sample
    (None if the last sample is not locked), and the final Δθ in (−π, π].
    """
    cos = np.abs(np.cos(t.delta_theta))
    limit = fold_phase(float(t.delta_theta[-1]))
    unlocked = np.nonzero(cos >= epsilon)[0]
    if len(unlocked) == 0:
        return float(t.z[0]), limit
    last = int(unlocked[-1])
    if last == len(t) - 1:
        return None, limit
    return float(t.z[last + 1]), limit


def classify_branch(z_lock: Optional[float], delta_theta: float) -> LockingBranch:
    if z_lock is None:
        return LockingBranch.UNLOCKED
    if abs(delta_theta - math.pi / 2) < BRANCH_WINDOW:
        return LockingBranch.PLUS_HALF_PI
    if abs(delta_theta + math.pi / 2) < BRANCH_WINDOW:
        return LockingBranch.MINUS_HALF_PI
    return LockingBranch.UNLOCKED


def ensemble_phases(count: int = ENSEMBLE_SIZE) -> tuple[float, ...]:
    """Midpoints of ``count`` equal slices of (−π, π)."""
    if count < 1:
        raise ValueError("Ensemble needs at least one member")
    return tuple(-math.pi + (k + 0.5) * 2.0 * math.pi / count for k in range(count))


def locking_run(
    delta_theta: float,
    kappa: float = 1.0,
    z_max: float = 20.0,
    seed: float = DEFAULT_SEED,
    pump: float = 1.0,
    growth: Optional[float] = DEFAULT_GROWTH,
    epsilon: float = DEFAULT_EPSILON,
    tol: float = DEFAULT_TOLERANCE,
    samples: int = DEFAULT_SAMPLES,
) -> LockingReport:
    """One trajectory with equal signal and idler seeds and initial phase difference ``delta_theta``."""
    init = WaveState.from_polar(seed, seed, pump, theta_s=-delta_theta / 2.0, theta_i=-delta_theta / 2.0)
    trajectory = integrate_complex(init, kappa, z_max, tol, samples, stop_gain=growth)
    z_lock, limit = detect_locking(trajectory, epsilon)
    return LockingReport(
        initial_delta_theta=delta_theta,
        z_lock=z_lock,
        delta_theta_limit=limit,
        branch=classify_branch(z_lock, limit),
        growth=trajectory.growth,
        final_cos=float(abs(math.cos(trajectory.delta_theta[-1]))),
        drift=trajectory.drift,
        steps=trajectory.steps,
        trajectory=trajectory,
    )


def locking_ensemble(
    phases: Optional[Sequence[float]] = None,
    kappa: float = 1.0,
    z_max: float = 20.0,
    seed: float = DEFAULT_SEED,
    growth: Optional[float] = DEFAULT_GROWTH,
    epsilon: float = DEFAULT_EPSILON,
    tol: float = DEFAULT_TOLERANCE,
    samples: int = DEFAULT_SAMPLES,
    workers: Optional[int] = None,
) -> tuple[LockingReport, ...]:
    """Locking reports for every initial Δθ, in the given order."""
    phases = tuple(phases) if phases is not None else ensemble_phases()
    Logger.info(f"Phase-locking ensemble of {len(phases)} trajectories (growth stop {growth})")

    def run(delta: float) -> LockingReport:
        return locking_run(delta, kappa, z_max, seed, 1.0, growth, epsilon, tol, samples)

    reports = tuple(ordered_map(run, phases, workers))
    branches = {r.branch for r in reports}
    if len(branches) > 1:
        Logger.warning(f"Ensemble locked to several branches: {sorted(b.value for b in branches)}")
    return reports


def common_branch(reports: Sequence[LockingReport]) -> LockingBranch:
    """The branch shared by every report, or UNLOCKED if they differ."""
    branches = {r.branch for r in reports}
    return branches.pop() if len(branches) == 1 else LockingBranch.UNLOCKED
