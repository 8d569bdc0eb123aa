"""
Integrators for the coupled signal, idler and pump equations

    dE_s/dz = −iκ E_p E_i*,   dE_i/dz = −iκ E_p E_s*,   dE_p/dz = −iκ E_s E_i

and for their amplitude-phase form. Writing E_j = R_j e^{iθ_j} and
Δθ = θ_p − θ_s − θ_i gives

    dR_s/dz = κ R_i R_p sinΔθ,   dR_i/dz = κ R_s R_p sinΔθ,
    dR_p/dz = −κ R_s R_i sinΔθ,
    dΔθ/dz = κ cosΔθ (R_p R_i/R_s + R_p R_s/R_i − R_s R_i/R_p),

which conserve R_s² − R_i² and R_s² + R_p².
"""

import math
from typing import Callable, Optional

import numpy as np
from scipy.integrate import solve_ivp

from src.models.dynamics import AmplitudePhaseState, Trajectory, WaveState
from src.utils import Logger
from .exceptions import IntegrationError, InvariantDriftError, NonFiniteStateError, SingularStartError


DEFAULT_TOLERANCE = 1e-10
DEFAULT_SAMPLES = 512
DRIFT_FACTOR = 100.0
METHOD = 'DOP853'


def complex_rhs(kappa: float) -> Callable[[float, np.ndarray], np.ndarray]:
    def rhs(z: float, y: np.ndarray) -> np.ndarray:
        e_s, e_i, e_p = y
        return -1j * kappa * np.array([e_p * np.conj(e_i), e_p * np.conj(e_s), e_s * e_i])
    return rhs


def amplitude_phase_rhs(kappa: float) -> Callable[[float, np.ndarray], np.ndarray]:
    def rhs(z: float, y: np.ndarray) -> np.ndarray:
        r_s, r_i, r_p, delta = y
        sin, cos = math.sin(delta), math.cos(delta)
        return np.array([
            kappa * r_i * r_p * sin,
            kappa * r_s * r_p * sin,
            -kappa * r_s * r_i * sin,
            kappa * cos * (r_p * r_i / r_s + r_p * r_s / r_i - r_s * r_i / r_p),
        ])
    return rhs


def constants_of_motion(amplitudes: np.ndarray) -> np.ndarray:
    """Columns R_s² − R_i² and R_s² + R_p² for rows of (R_s, R_i, R_p)."""
    squared = np.abs(amplitudes) ** 2
    return np.column_stack([squared[:, 0] - squared[:, 1], squared[:, 0] + squared[:, 2]])


def _check_arguments(kappa: float, z_max: float, tol: float, samples: int) -> None:
    if kappa <= 0:
        raise IntegrationError(f"Coupling κ must be positive, got {kappa}")
    if z_max <= 0:
        raise IntegrationError(f"z_max must be positive, got {z_max}")
    if tol <= 0:
        raise IntegrationError(f"Tolerance must be positive, got {tol}")
    if samples < 2:
        raise IntegrationError("At least 2 output samples are required")


def _gain_event(start: float, factor: float):
    def event(z: float, y: np.ndarray) -> float:
        return abs(y[0]) - factor * start
    event.terminal = True
    event.direction = 1
    return event


def _solve(rhs, y0: np.ndarray, z_max: float, tol: float, samples: int, events):
    solution = solve_ivp(
        rhs,
        (0.0, z_max),
        y0,
        method=METHOD,
        rtol=tol,
        atol=tol * 1e-3,
        dense_output=True,
        events=events,
    )
    if solution.status == -1:
        raise NonFiniteStateError(f"Integration failed: {solution.message}")
    z_end = float(solution.t[-1])
    if z_end <= 0:
        raise IntegrationError("Integration stopped at z = 0")
    grid = np.linspace(0.0, z_end, samples)
    values = solution.sol(grid).T
    if not np.all(np.isfinite(values)):
        raise NonFiniteStateError(f"Non-finite state reached before z = {z_end:.6g}")
    steps = len(solution.sol.ts) - 1
    return grid, values, steps, solution.status == 1, int(solution.nfev)


def _drift(amplitudes: np.ndarray, tol: float, formulation: str) -> float:
    invariants = constants_of_motion(amplitudes)
    drift = float(np.max(np.abs(invariants - invariants[0])))
    scale = max(1.0, float(np.max(np.abs(invariants[0]))))
    if drift > DRIFT_FACTOR * tol * scale:
        raise InvariantDriftError(
            f"Constants of motion drifted by {drift:.3e} in the {formulation} integration "
            f"(limit {DRIFT_FACTOR * tol * scale:.1e})",
            diagnostics={
                'drift': drift,
                'initial': invariants[0].tolist(),
                'final': invariants[-1].tolist(),
            },
        )
    return drift


def integrate_complex(
    init: WaveState,
    kappa: float = 1.0,
    z_max: float = 20.0,
    tol: float = DEFAULT_TOLERANCE,
    samples: int = DEFAULT_SAMPLES,
    stop_gain: Optional[float] = None,
) -> Trajectory:
    """
    Integrate the complex amplitude equations from ``init``.

    With ``stop_gain`` set the integration ends once |E_s| has grown by that
    factor, before pump depletion turns the energy flow around.
    """
    _check_arguments(kappa, z_max, tol, samples)
    y0 = np.array([init.e_s, init.e_i, init.e_p], dtype=complex)
    events = None
    if stop_gain is not None and abs(init.e_s) > 0:
        events = _gain_event(abs(init.e_s), stop_gain)

    grid, values, steps, stopped, evaluations = _solve(complex_rhs(kappa), y0, z_max, tol, samples, events)
    amplitudes = np.abs(values)
    phases = np.angle(values)
    delta = np.angle(np.exp(1j * (phases[:, 2] - phases[:, 0] - phases[:, 1])))
    drift = _drift(amplitudes, tol, 'complex')

    Logger.info(f"Complex-form integration finished at z={grid[-1]:.6g} after {steps} steps (drift {drift:.2e})")
    return Trajectory(
        z=grid + init.z,
        amplitudes=amplitudes,
        delta_theta=delta,
        steps=steps,
        drift=drift,
        formulation='complex',
        fields=values,
        stopped_early=stopped,
        diagnostics={'evaluations': evaluations, 'tolerance': tol, 'kappa': kappa},
    )


def integrate_amplitude_phase(
    init: AmplitudePhaseState,
    kappa: float = 1.0,
    z_max: float = 20.0,
    tol: float = DEFAULT_TOLERANCE,
    samples: int = DEFAULT_SAMPLES,
    stop_gain: Optional[float] = None,
) -> Trajectory:
    """Integrate (R_s, R_i, R_p, Δθ); the phase equation is singular at zero amplitudes."""
    _check_arguments(kappa, z_max, tol, samples)
    if init.r_s <= 0 or init.r_i <= 0 or init.r_p <= 0:
        raise SingularStartError(
            f"Amplitude-phase integration needs nonzero amplitudes, got "
            f"R_s={init.r_s}, R_i={init.r_i}, R_p={init.r_p}"
        )
    y0 = np.array([init.r_s, init.r_i, init.r_p, init.delta_theta], dtype=float)
    events = _gain_event(init.r_s, stop_gain) if stop_gain is not None else None

    grid, values, steps, stopped, evaluations = _solve(
        amplitude_phase_rhs(kappa), y0, z_max, tol, samples, events
    )
    amplitudes = values[:, :3]
    if np.any(amplitudes <= 0):
        raise NonFiniteStateError("An amplitude crossed zero; use the complex form near full depletion")
    drift = _drift(amplitudes, tol, 'amplitude-phase')

    Logger.info(
        f"Amplitude-phase integration finished at z={grid[-1]:.6g} after {steps} steps (drift {drift:.2e})"
    )
    return Trajectory(
        z=grid + init.z,
        amplitudes=amplitudes,
        delta_theta=np.angle(np.exp(1j * values[:, 3])),
        steps=steps,
        drift=drift,
        formulation='amplitude-phase',
        stopped_early=stopped,
        diagnostics={'evaluations': evaluations, 'tolerance': tol, 'kappa': kappa},
    )
