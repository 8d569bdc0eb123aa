"""
Parameter scans over preset (or custom) networks.

Each grid point rebuilds and recompiles the network with the parameter
bound numerically. Points are independent and run on a thread pool;
results are always reported in grid order.
"""

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Union

import numpy as np

from src.enums import PresetId, ScanParameter, SeedTreatment
from src.models.components import NetworkSpec
from src.models.results import ScanResult
from src.services.network import coincidence_rate, compile_network, detector_rate
from src.utils import Logger, ordered_map
from .closed_forms import closed_form_coincidence, closed_form_rate
from .exceptions import ScanError
from .presets import (
    PUMP_WAVELENGTH_NM,
    SIGNAL_DETECTOR,
    SIGNAL_WAVELENGTH_NM,
    PresetParameters,
    build_preset,
)


@dataclass(frozen=True)
class PresetTemplate:
    """A preset with every parameter fixed except the one being scanned."""
    preset: PresetId
    parameters: PresetParameters

    def bind(self, parameter: ScanParameter, value: float) -> NetworkSpec:
        return build_preset(self.preset, self.parameters.bind(parameter, value))

    def reference(
        self,
        parameter: ScanParameter,
        value: float,
        treatment: SeedTreatment,
        coincidence: bool,
    ) -> Optional[float]:
        bound = self.parameters.bind(parameter, value)
        if coincidence:
            if self.preset != PresetId.FILTER_SETUP:
                return None
            return closed_form_coincidence(bound, treatment)
        return closed_form_rate(self.preset, bound, treatment)


NetworkTemplate = Union[PresetTemplate, Callable[[ScanParameter, float], NetworkSpec]]


def make_grid(start: float, stop: float, step: float) -> tuple[float, ...]:
    """
    Inclusive grid ``start, start+step, ..., stop``. The endpoint is included
    when it lies on the grid within rounding.
    """
    if step <= 0:
        raise ScanError(f"Grid step must be positive, got {step}")
    if stop < start:
        raise ScanError(f"Grid stop {stop} is below start {start}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return tuple(float(start + k * step) for k in range(count))


def phase_grid(points: int = 401, periods: float = 1.0, start: float = 0.0) -> tuple[float, ...]:
    """Uniform phase grid with ``points`` samples per 2π (ends included) over ``periods`` periods."""
    total = int(round((points - 1) * periods)) + 1
    return tuple(float(x) for x in np.linspace(start, start + 2.0 * math.pi * periods, total))


def _check_grid(grid: Sequence[float]) -> tuple[float, ...]:
    values = tuple(float(v) for v in grid)
    if not values:
        raise ScanError("Scan grid is empty")
    if any(not math.isfinite(v) for v in values):
        raise ScanError("Scan grid contains non-finite values")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ScanError("Scan grid must be strictly increasing")
    return values


def _parameter(param: Union[ScanParameter, str]) -> ScanParameter:
    try:
        return ScanParameter(param)
    except ValueError:
        allowed = ', '.join(p.value for p in ScanParameter)
        raise ScanError(f"Unknown scan parameter '{param}' (allowed: {allowed})") from None


def _path_metadata(parameter: ScanParameter, template: NetworkTemplate) -> dict:
    if parameter == ScanParameter.PHI:
        metadata = {'path_per_fringe_nm': SIGNAL_WAVELENGTH_NM}
        if isinstance(template, PresetTemplate) and template.parameters.couple_phases:
            metadata['phase_ratio'] = template.parameters.phase_ratio
        return metadata
    if parameter == ScanParameter.PHI_P:
        return {'path_per_fringe_nm': PUMP_WAVELENGTH_NM}
    return {}


def scan(
    template: NetworkTemplate,
    param: Union[ScanParameter, str],
    grid: Sequence[float],
    detector: str = SIGNAL_DETECTOR,
    coincidence: Optional[tuple[str, str]] = None,
    treatment: SeedTreatment = SeedTreatment.EXACT,
    workers: Optional[int] = None,
) -> ScanResult:
    """
    Rate at ``detector`` (or the coincidence rate of the detector pair)
    at every grid point of ``param``.
    """
    parameter = _parameter(param)
    values = _check_grid(grid)
    treatment = SeedTreatment(treatment)
    bind = template.bind if isinstance(template, PresetTemplate) else template

    def evaluate(value: float) -> float:
        fields = compile_network(bind(parameter, value))
        if coincidence is not None:
            return coincidence_rate(fields, coincidence[0], coincidence[1], treatment=treatment)
        return detector_rate(fields, detector, treatment=treatment)

    label = f"coincidence {coincidence[0]},{coincidence[1]}" if coincidence else f"detector {detector}"
    Logger.info(f"Scan of {parameter} over {len(values)} points ({label}, {treatment})")
    rates = ordered_map(evaluate, values, workers)

    analytic = None
    metadata = {
        'detector': detector if coincidence is None else None,
        'coincidence': list(coincidence) if coincidence else None,
        'treatment': treatment.value,
        **_path_metadata(parameter, template),
    }
    if isinstance(template, PresetTemplate):
        p = template.parameters
        metadata.update({
            'preset': template.preset.value,
            'seed_amplitude': p.seed_amplitude,
            'gains': list(p.gains),
            'tau': p.tau,
            'theta': p.theta,
        })
        references = [template.reference(parameter, v, treatment, coincidence is not None) for v in values]
        if all(r is not None for r in references):
            analytic = tuple(references)

    Logger.info(f"Scan of {parameter} finished")
    return ScanResult(
        parameter=parameter,
        grid=values,
        rates=tuple(rates),
        metadata=metadata,
        analytic=analytic,
    )
