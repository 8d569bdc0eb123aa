"""
End-to-end oracle runs, oracle scans and engine comparisons.
"""

import math
from typing import Callable, Optional, Sequence, Union

from src.enums import ScanParameter
from src.models.components import (
    Combiner,
    Crystal,
    Detector,
    Filter,
    Mirror,
    NetworkSpec,
    PhaseShift,
    Seed,
)
from src.models.results import OracleComparison, OracleGap, OracleResult, ScanResult
from src.services.network import coincidence_rate, compile_network, detector_rate
from src.utils import Logger, ordered_map
from .basis import DEFAULT_SETTINGS, FockState, OracleSettings, plan_basis
from .exceptions import OracleError, UnsupportedComponentError
from .measurement import measure_coincidence, measure_rate
from .operations import apply_linear, apply_squeezer, initial_state


Pair = tuple[str, str]
NetworkFactory = Callable[[ScanParameter, float], NetworkSpec]


def _evolve(spec: NetworkSpec, settings: OracleSettings) -> tuple[FockState, dict[str, tuple[int, float]]]:
    """Final state plus, per detector, the basis slot and field scale it reads."""
    basis = plan_basis(spec, settings)
    amplitudes = {mode: spec.initial_state.amplitude(mode) for mode in spec.initial_state.coherent_modes()}
    psi = initial_state(basis, amplitudes, settings)

    readouts: dict[str, tuple[int, float]] = {}
    frozen: set[str] = set()
    for component in spec.components:
        touched = set(component.modes()) & frozen
        if touched and not isinstance(component, Detector):
            raise OracleError(f"{type(component).__name__} acts on detected mode(s) {sorted(touched)}")
        if isinstance(component, Crystal):
            psi = apply_squeezer(psi, component.signal, component.idler, component.gain, component.pump_phase, settings)
        elif isinstance(component, (PhaseShift, Mirror, Filter, Combiner, Seed)):
            psi = apply_linear(psi, component, settings)
        elif isinstance(component, Detector):
            if component.name in readouts:
                raise OracleError(f"Duplicate detector name '{component.name}'")
            readouts[component.name] = (psi.slot(component.mode), psi.scale(component.mode))
            frozen.add(component.mode)
        else:
            raise UnsupportedComponentError(f"Oracle cannot simulate {type(component).__name__}")
    return psi, readouts


def oracle_run(
    n: NetworkSpec,
    coincidences: Sequence[Pair] = (),
    settings: OracleSettings = DEFAULT_SETTINGS,
) -> OracleResult:
    """
    Simulate ``n`` on a truncated Fock space and measure every detector plus
    the requested detector pairs.
    """
    psi, readouts = _evolve(n, settings)
    view = psi.evolved(
        psi.amplitudes,
        slots={name: slot for name, (slot, _) in readouts.items()},
        scales={name: scale for name, (_, scale) in readouts.items()},
    )
    for a, b in coincidences:
        for name in (a, b):
            if name not in readouts:
                raise OracleError(f"Unknown detector '{name}' (defined: {', '.join(readouts)})")

    if psi.norm_deviation > settings.norm_warning:
        Logger.warning(
            f"Oracle state norm deviates from 1 by {psi.norm_deviation:.3e}; cutoffs may be insufficient"
        )
    Logger.info(
        f"Oracle run of {n.name or 'network'}: dimension {psi.basis.dimension}, "
        f"leakage {psi.leakage:.2e}"
    )
    return OracleResult(
        rates={name: measure_rate(view, name) for name in readouts},
        coincidences={(a, b): measure_coincidence(view, a, b) for a, b in coincidences},
        basis=dict(zip(psi.basis.modes, psi.basis.cutoffs)),
        leakage=psi.leakage,
        norm_deviation=psi.norm_deviation,
        series_terms=psi.series_terms,
    )


def oracle_scan(
    factory: NetworkFactory,
    parameter: Union[ScanParameter, str],
    grid: Sequence[float],
    detector: str = 'A',
    coincidence: Optional[Pair] = None,
    settings: OracleSettings = DEFAULT_SETTINGS,
    workers: Optional[int] = None,
) -> ScanResult:
    """Oracle rates over a parameter grid; ``factory`` builds the network at each point."""
    parameter = ScanParameter(parameter)
    values = tuple(float(v) for v in grid)

    def evaluate(value: float) -> float:
        result = oracle_run(factory(parameter, value), (coincidence,) if coincidence else (), settings)
        if coincidence:
            return result.coincidences[coincidence]
        if detector not in result.rates:
            raise OracleError(f"Unknown detector '{detector}'")
        return result.rates[detector]

    Logger.info(f"Oracle scan of {parameter} over {len(values)} points")
    rates = ordered_map(evaluate, values, workers)
    return ScanResult(
        parameter=parameter,
        grid=values,
        rates=tuple(rates),
        metadata={
            'source': 'oracle',
            'detector': None if coincidence else detector,
            'coincidence': list(coincidence) if coincidence else None,
        },
    )


def oracle_compare(
    n: NetworkSpec,
    coincidences: Sequence[Pair] = (),
    settings: OracleSettings = DEFAULT_SETTINGS,
) -> OracleComparison:
    """Exact-treatment engine rates next to oracle rates for the same network."""
    fields = compile_network(n)
    oracle = oracle_run(n, coincidences, settings)
    gaps = [OracleGap(quantity=name, engine=detector_rate(fields, name), oracle=rate)
            for name, rate in oracle.rates.items()]
    gaps += [
        OracleGap(quantity=f"{a},{b}", engine=coincidence_rate(fields, a, b), oracle=oracle.coincidences[(a, b)])
        for a, b in coincidences
    ]
    comparison = OracleComparison(gaps=tuple(gaps), oracle=oracle)
    Logger.info(f"Oracle comparison of {n.name or 'network'}: worst relative gap {comparison.worst_relative():.3e}")
    return comparison


def gap_scaling(
    build: Callable[[float], NetworkSpec],
    gain: float,
    quantity: str = 'A',
    settings: OracleSettings = DEFAULT_SETTINGS,
) -> tuple[float, float]:
    """
    Relative engine–oracle gap of one detector at gain C and at C/2. The
    engine drops O(C²) relative corrections, so the ratio is close to 4.
    """
    gaps = []
    for value in (gain, gain / 2.0):
        comparison = oracle_compare(build(value), settings=settings)
        gaps.append(comparison[quantity].relative)
    if not all(math.isfinite(g) for g in gaps):
        raise OracleError("Engine–oracle gap is not finite")
    return gaps[0], gaps[1]
