"""
Network Propagation - first-order input/output rules per component.

``PropagationState`` holds the current field series of every live mode
plus the bookkeeping needed to reject invalid topologies: modes frozen by
a detector, modes consumed by a combiner, ancillas already introduced,
seeds lifted into the initial state, and the number of mid-network
displacements carried as classical amplitudes.
"""

import cmath
from dataclasses import dataclass, field, replace
from typing import Callable, Mapping

from src.models.components import (
    ComponentBase,
    Combiner,
    Crystal,
    Detector,
    Filter,
    Mirror,
    PhaseShift,
    Seed,
)
from src.models.modes import ModeRef, mode_label
from src.utils import Logger
from .exceptions import ConfigurationError
from .fields import FieldSeries


@dataclass(frozen=True)
class DetectorSnapshot:
    """Field of a detector's mode at the point the detector sits."""
    name: str
    mode: str
    series: FieldSeries


@dataclass(frozen=True)
class PropagationState:
    fields: Mapping[str, FieldSeries]
    max_order: int = 1
    frozen: frozenset[str] = frozenset()
    consumed: frozenset[str] = frozenset()
    ancillas: frozenset[str] = frozenset()
    seeds: Mapping[str, complex] = field(default_factory=dict)
    displacements: int = 0
    detectors: tuple[DetectorSnapshot, ...] = ()

    @classmethod
    def initial(cls, modes: tuple[ModeRef, ...], max_order: int = 1) -> 'PropagationState':
        """Identity fields a_m for every declared input mode."""
        labels = [mode_label(m) for m in modes]
        return cls(
            fields={label: FieldSeries.mode(label, max_order) for label in labels},
            max_order=max_order,
        )

    def field_of(self, mode: ModeRef) -> FieldSeries:
        """Current field of a live mode; raises ConfigurationError otherwise."""
        label = mode_label(mode)
        if label in self.frozen:
            raise ConfigurationError(f"Mode '{label}' is reused after it feeds a detector")
        if label in self.consumed:
            raise ConfigurationError(f"Mode '{label}' was consumed by a combiner and cannot be reused")
        if label not in self.fields:
            raise ConfigurationError(f"Reference to undefined mode '{label}'")
        return self.fields[label]

    def is_known(self, label: str) -> bool:
        return label in self.fields or label in self.ancillas or label in self.consumed

    def with_fields(self, updates: Mapping[str, FieldSeries], **changes) -> 'PropagationState':
        fields = dict(self.fields)
        fields.update(updates)
        return replace(self, fields=fields, **changes)


def _apply_crystal(state: PropagationState, c: Crystal) -> PropagationState:
    signal_in = state.field_of(c.signal)
    idler_in = state.field_of(c.idler)
    zeta = c.zeta
    return state.with_fields({
        c.signal: signal_in + idler_in.adjoint().raised(zeta),
        c.idler: idler_in + signal_in.adjoint().raised(zeta),
    })


def _apply_phase(state: PropagationState, c: PhaseShift) -> PropagationState:
    return state.with_fields({c.mode: state.field_of(c.mode).scaled(cmath.exp(1j * c.phi))})


def _apply_mirror(state: PropagationState, c: Mirror) -> PropagationState:
    return state.with_fields({c.mode: state.field_of(c.mode).scaled(1j)})


def _apply_filter(state: PropagationState, c: Filter) -> PropagationState:
    field_in = state.field_of(c.mode)
    if state.is_known(c.ancilla):
        raise ConfigurationError(f"Filter ancilla '{c.ancilla}' is not a fresh mode")
    ancilla = FieldSeries.mode(c.ancilla, state.max_order).scaled(c.loss_amplitude)
    return state.with_fields(
        {c.mode: field_in.scaled(c.tau) + ancilla},
        ancillas=state.ancillas | {c.ancilla},
    )


def _references(state: PropagationState, label: str) -> bool:
    """True if any live field other than ``label`` itself involves mode ``label``."""
    return any(
        label in series.total().modes
        for other, series in state.fields.items()
        if other != label and other not in state.consumed
    ) or any(label in snapshot.series.total().modes for snapshot in state.detectors)


def _apply_seed(state: PropagationState, c: Seed) -> PropagationState:
    field_in = state.field_of(c.mode)
    if field_in.is_input_mode(c.mode) and not _references(state, c.mode):
        # Displacement of an untouched input mode is the same as a coherent input state.
        seeds = dict(state.seeds)
        seeds[c.mode] = seeds.get(c.mode, 0j) + complex(c.alpha)
        return replace(state, seeds=seeds)
    # Otherwise the displacement is a classical amplitude on its own symbol.
    label = f"{c.mode}.{state.displacements}"
    return state.with_fields(
        {c.mode: field_in.displaced(label, complex(c.alpha))},
        displacements=state.displacements + 1,
    )


def _apply_combiner(state: PropagationState, c: Combiner) -> PropagationState:
    inputs = [state.field_of(label) for label in c.inputs]
    if c.output not in c.inputs and state.is_known(c.output):
        raise ConfigurationError(f"Combiner output '{c.output}' collides with an existing mode")
    combined = FieldSeries.zero(state.max_order)
    for series, weight in zip(inputs, c.weights):
        combined = combined + series.scaled(weight)
    consumed = frozenset(label for label in c.inputs if label != c.output)
    fields = {label: series for label, series in state.fields.items() if label not in consumed}
    fields[c.output] = combined
    return replace(state, fields=fields, consumed=state.consumed | consumed)


def _apply_detector(state: PropagationState, c: Detector) -> PropagationState:
    if any(snapshot.name == c.name for snapshot in state.detectors):
        raise ConfigurationError(f"Duplicate detector name '{c.name}'")
    series = state.field_of(c.mode)
    snapshot = DetectorSnapshot(name=c.name, mode=c.mode, series=series)
    return replace(
        state,
        frozen=state.frozen | {c.mode},
        detectors=state.detectors + (snapshot,),
    )


_HANDLERS: dict[type, Callable[[PropagationState, ComponentBase], PropagationState]] = {
    Crystal: _apply_crystal,
    PhaseShift: _apply_phase,
    Mirror: _apply_mirror,
    Filter: _apply_filter,
    Seed: _apply_seed,
    Combiner: _apply_combiner,
    Detector: _apply_detector,
}


def apply_component(state: PropagationState, component: ComponentBase) -> PropagationState:
    """
    Propagate the fields through one component.

    Crystal: signal += ζ·a†(idler), idler += ζ·a†(signal) with ζ = C·e^{iφ_p},
    both computed from the incoming fields and raised by one gain order.
    PhaseShift and Mirror multiply by e^{iφ} and i. Filter mixes in a fresh
    vacuum ancilla. Seed displaces the mode. Combiner sums weighted inputs.
    Detector records the field and freezes its mode.
    """
    handler = _HANDLERS.get(type(component))
    if handler is None:
        raise ConfigurationError(f"Unsupported component type {type(component).__name__}")
    Logger.debug(f"Applying {component.kind} component on modes {component.modes()}")
    return handler(state, component)
