"""
Fringe visibility extraction.

V = (R_max − R_min)/(R_max + R_min), with the discrete extrema refined by
a parabola through the neighbouring samples. For phase scans a
least-squares sinusoid fit additionally reports the fringe period.
"""

import math
import warnings
from typing import Optional

import numpy as np
from scipy.optimize import OptimizeWarning, curve_fit

from src.enums import ScanParameter
from src.models.results import ScanResult, VisibilityReport
from src.utils import Logger
from .exceptions import VisibilityError


FULL_PERIOD = 2.0 * math.pi
PERIOD_SLACK = 1e-9
FLAT_TOLERANCE = 1e-12
# Relative to the largest rate in the scan.
CLAMP_TOLERANCE = 1e-9


def _refine(rates: np.ndarray, index: int, maximum: bool) -> float:
    """Vertex value of the parabola through samples index-1, index, index+1."""
    value = float(rates[index])
    if index == 0 or index == len(rates) - 1:
        return value
    y0, y1, y2 = rates[index - 1], rates[index], rates[index + 1]
    curvature = y2 - 2.0 * y1 + y0
    if curvature == 0.0:
        return value
    vertex = float(y1 - (y2 - y0) ** 2 / (8.0 * curvature))
    if maximum:
        return max(value, vertex)
    return min(value, vertex)


def _sinusoid(x, offset, amplitude, period, phase):
    return offset + amplitude * np.cos(2.0 * np.pi * x / period + phase)


def fit_sinusoid(grid: np.ndarray, rates: np.ndarray) -> Optional[tuple[float, float]]:
    """
    Least-squares fit of offset + amplitude·cos(2πx/P + ψ); returns (P, ψ) or
    None if the data are flat or the fit does not converge.
    """
    span = grid[-1] - grid[0]
    if len(grid) < 5 or span <= 0 or np.ptp(rates) <= FLAT_TOLERANCE * max(np.max(np.abs(rates)), 1.0):
        return None

    uniform = np.linspace(grid[0], grid[-1], len(grid))
    resampled = np.interp(uniform, grid, rates)
    spectrum = np.abs(np.fft.rfft(resampled - resampled.mean()))
    cycles = int(np.argmax(spectrum[1:]) + 1) if len(spectrum) > 1 else 1
    step = uniform[1] - uniform[0]
    period_guess = (len(uniform) * step) / cycles

    guess = [float(rates.mean()), float(np.ptp(rates) / 2.0), float(period_guess), 0.0]
    best = None
    for phase in (0.0, math.pi / 2, math.pi, -math.pi / 2):
        guess[3] = phase
        try:
            with warnings.catch_warnings():
                warnings.simplefilter('ignore', OptimizeWarning)
                params, _ = curve_fit(_sinusoid, grid, rates, p0=guess, maxfev=20000)
        except RuntimeError:
            continue
        residual = float(np.sum((_sinusoid(grid, *params) - rates) ** 2))
        if best is None or residual < best[0]:
            best = (residual, params)
    if best is None:
        Logger.warning("Sinusoid fit did not converge; no fringe period reported")
        return None

    _, (offset, amplitude, period, phase) = best
    if amplitude < 0:
        amplitude, phase = -amplitude, phase + math.pi
    period = abs(float(period))
    phase = float(math.remainder(phase, 2.0 * math.pi))
    return period, phase


def visibility(r: ScanResult, fit: bool = True) -> VisibilityReport:
    """
    Fringe visibility of a scan.

    Phase scans must cover at least one full period, otherwise the extrema
    are not bracketed and VisibilityError is raised. A parabolic refinement
    of the minimum that dips below zero is clamped with a warning.
    """
    if len(r) < 3:
        raise VisibilityError(f"Need at least 3 scan points to extract a visibility, got {len(r)}")
    periodic = r.parameter in (ScanParameter.PHI, ScanParameter.PHI_P)
    if periodic and r.span < FULL_PERIOD * (1.0 - PERIOD_SLACK):
        raise VisibilityError(
            f"Scan over {r.parameter} spans {r.span:.6g} rad, less than one full period (2π)"
        )

    grid = np.asarray(r.grid, dtype=float)
    rates = np.asarray(r.rates, dtype=float)

    r_max = _refine(rates, int(np.argmax(rates)), maximum=True)
    r_min = _refine(rates, int(np.argmin(rates)), maximum=False)
    if r_min < -CLAMP_TOLERANCE * max(r_max, FLAT_TOLERANCE):
        Logger.warning(f"Interpolated minimum {r_min:.6g} is negative; clamping it to 0")
    r_min = max(0.0, r_min)

    total = r_max + r_min
    v = (r_max - r_min) / total if total > 0 else 0.0

    fit_period = fit_phase = None
    if fit and periodic:
        fitted = fit_sinusoid(grid, rates)
        if fitted is not None:
            fit_period, fit_phase = fitted

    return VisibilityReport(
        visibility=v,
        r_max=r_max,
        r_min=r_min,
        fit_period=fit_period,
        fit_phase=fit_phase,
    )
