"""
Builder for NetworkSpec instances.

Components are validated as they are added, so a bad parameter is
reported at the call that introduced it.
"""

from typing import Optional, Sequence

from pydantic import ValidationError

from src.enums import CombinerStyle, ModeKind
from src.models.components import (
    Combiner,
    ComponentBase,
    Crystal,
    Detector,
    Filter,
    Mirror,
    NetworkSpec,
    PhaseShift,
    Seed,
)
from src.models.modes import ModeId, StateSpec
from .exceptions import NetworkValidationError


def _validated(factory, **kwargs) -> ComponentBase:
    try:
        return factory(**kwargs)
    except ValidationError as e:
        raise NetworkValidationError(f"Invalid {factory.__name__}: {e}") from e


class NetworkBuilder:
    """Fluent construction of an ordered component list."""

    def __init__(self, name: Optional[str] = None):
        self.name = name
        self.modes: list[ModeId] = []
        self.components: list[ComponentBase] = []
        self.max_field_order = 1
        self.max_product_order = 2

    def mode(self, label: str, kind: ModeKind = ModeKind.SIGNAL) -> 'NetworkBuilder':
        self.modes.append(ModeId(label, kind))
        return self

    def signal(self, *labels: str) -> 'NetworkBuilder':
        for label in labels:
            self.mode(label, ModeKind.SIGNAL)
        return self

    def idler(self, *labels: str) -> 'NetworkBuilder':
        for label in labels:
            self.mode(label, ModeKind.IDLER)
        return self

    def add(self, component: ComponentBase) -> 'NetworkBuilder':
        self.components.append(component)
        return self

    def crystal(self, signal: str, idler: str, gain: complex, pump_phase: float = 0.0) -> 'NetworkBuilder':
        return self.add(_validated(Crystal, signal=signal, idler=idler, gain=gain, pump_phase=pump_phase))

    def phase(self, mode: str, phi: float) -> 'NetworkBuilder':
        return self.add(_validated(PhaseShift, mode=mode, phi=phi))

    def mirror(self, mode: str) -> 'NetworkBuilder':
        return self.add(_validated(Mirror, mode=mode))

    def filter(self, mode: str, tau: complex, ancilla: str) -> 'NetworkBuilder':
        return self.add(_validated(Filter, mode=mode, tau=tau, ancilla=ancilla))

    def seed(self, mode: str, alpha: complex) -> 'NetworkBuilder':
        return self.add(_validated(Seed, mode=mode, alpha=alpha))

    def combiner(
        self,
        inputs: Sequence[str],
        output: str,
        weights: Optional[Sequence[complex]] = None,
        style: CombinerStyle = CombinerStyle.FOLDED,
    ) -> 'NetworkBuilder':
        if weights is None:
            try:
                component = Combiner.with_style(tuple(inputs), output, style)
            except (ValidationError, ValueError) as e:
                raise NetworkValidationError(f"Invalid Combiner: {e}") from e
            return self.add(component)
        return self.add(_validated(Combiner, inputs=tuple(inputs), output=output, weights=tuple(weights)))

    def detector(self, name: str, mode: str) -> 'NetworkBuilder':
        return self.add(_validated(Detector, name=name, mode=mode))

    def orders(self, max_field_order: int, max_product_order: int) -> 'NetworkBuilder':
        self.max_field_order = max_field_order
        self.max_product_order = max_product_order
        return self

    def build(self, initial_state: Optional[StateSpec] = None) -> NetworkSpec:
        try:
            return NetworkSpec(
                modes=tuple(self.modes),
                components=tuple(self.components),
                initial_state=initial_state or StateSpec.vacuum(),
                max_field_order=self.max_field_order,
                max_product_order=self.max_product_order,
                name=self.name,
            )
        except ValidationError as e:
            raise NetworkValidationError(f"Invalid network: {e}") from e
