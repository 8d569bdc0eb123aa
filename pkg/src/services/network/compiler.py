"""
Network Compiler

Folds ``apply_component`` over a ``NetworkSpec`` and packages the detector
fields with everything rate evaluation needs.
"""

from dataclasses import dataclass, field
from functools import reduce
from types import MappingProxyType
from typing import Mapping, Optional

from src.models.components import NetworkSpec
from src.models.modes import StateSpec
from src.services.mode_algebra import OperatorExpr, adjoint
from src.utils import Logger
from .exceptions import ConfigurationError, UnknownDetectorError
from .fields import FieldSeries
from .propagation import PropagationState, apply_component


@dataclass(frozen=True)
class DetectorField:
    """Positive- and negative-frequency field at one detector."""
    name: str
    mode: str
    series: FieldSeries
    e_plus: OperatorExpr = field(init=False)
    e_minus: OperatorExpr = field(init=False)

    def __post_init__(self):
        e_plus = self.series.total()
        object.__setattr__(self, 'e_plus', e_plus)
        object.__setattr__(self, 'e_minus', adjoint(e_plus))


@dataclass(frozen=True)
class DetectorFields:
    """
    Compiled network: detector fields keyed by detector name.

    ``seeds`` holds the coherent amplitudes lifted from Seed components on
    untouched input modes; rate evaluation merges them with the state it
    is given. Instances are immutable and safe to share between threads.
    """
    detectors: Mapping[str, DetectorField]
    initial_state: StateSpec
    seeds: StateSpec
    max_product_order: int = 2
    name: Optional[str] = None

    def __getitem__(self, detector: str) -> DetectorField:
        try:
            return self.detectors[detector]
        except KeyError:
            known = ', '.join(sorted(self.detectors)) or 'none'
            raise UnknownDetectorError(f"Unknown detector '{detector}' (defined: {known})") from None

    def __contains__(self, detector: str) -> bool:
        return detector in self.detectors

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.detectors)

    def state(self, s: Optional[StateSpec] = None) -> StateSpec:
        """The state rates are evaluated in: ``s`` (or the network's own) plus lifted seeds."""
        base = self.initial_state if s is None else s
        return base.merged(self.seeds)


def compile_network(n: NetworkSpec) -> DetectorFields:
    """
    Compile a network into detector fields.

    Raises ConfigurationError for undefined modes, reuse of a detected or
    consumed mode, and non-fresh ancillas.
    """
    start = PropagationState.initial(n.modes, max_order=n.max_field_order)
    final = reduce(apply_component, n.components, start)

    undeclared = set(n.initial_state.coherent_modes()) - {m.label for m in n.modes}
    if undeclared:
        raise ConfigurationError(
            f"Initial state assigns amplitudes to undeclared modes: {', '.join(sorted(undeclared))}"
        )

    detectors = {
        snapshot.name: DetectorField(snapshot.name, snapshot.mode, snapshot.series)
        for snapshot in final.detectors
    }
    Logger.debug(
        f"Compiled network '{n.name or 'unnamed'}': {len(n.components)} components, "
        f"detectors {sorted(detectors)}"
    )
    return DetectorFields(
        detectors=MappingProxyType(detectors),
        initial_state=n.initial_state,
        seeds=StateSpec.coherent(final.seeds),
        max_product_order=n.max_product_order,
        name=n.name,
    )
