"""
Mode identifiers and initial-state assignments.

A mode is identified by its label; the kind (signal, idler, ancilla) is
descriptive only and does not take part in equality. Initial states are
products of per-mode vacuum or coherent states.
"""

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping, Union

from src.enums import ModeKind


@dataclass(frozen=True)
class ModeId:
    """A labeled bosonic mode. Equality and hashing use the label only."""
    label: str
    kind: ModeKind = field(default=ModeKind.SIGNAL, compare=False)

    def __str__(self) -> str:
        return self.label


ModeRef = Union[ModeId, str]


def mode_label(mode: ModeRef) -> str:
    """Return the label of a mode given either a ModeId or a bare label."""
    return mode.label if isinstance(mode, ModeId) else str(mode)


@dataclass(frozen=True)
class Vacuum:
    """Vacuum assignment."""

    @property
    def alpha(self) -> complex:
        return 0j


@dataclass(frozen=True)
class Coherent:
    """Coherent-state assignment with complex amplitude alpha."""
    alpha: complex


ModeState = Union[Vacuum, Coherent]


class StateSpec:
    """
    Product initial state: one assignment per mode.

    Modes without an assignment are in vacuum.
    """

    __slots__ = ('_assignments',)

    def __init__(self, assignments: Mapping[ModeRef, ModeState] | None = None):
        normalized = {}
        for mode, state in (assignments or {}).items():
            if not isinstance(state, (Vacuum, Coherent)):
                state = Coherent(complex(state))
            normalized[mode_label(mode)] = state
        self._assignments = MappingProxyType(dict(sorted(normalized.items())))

    @classmethod
    def vacuum(cls) -> 'StateSpec':
        return cls()

    @classmethod
    def coherent(cls, amplitudes: Mapping[ModeRef, complex]) -> 'StateSpec':
        """Build a state with the given coherent amplitudes, vacuum elsewhere."""
        return cls({mode: Coherent(complex(alpha)) for mode, alpha in amplitudes.items()})

    @property
    def assignments(self) -> Mapping[str, ModeState]:
        return self._assignments

    def amplitude(self, mode: ModeRef) -> complex:
        state = self._assignments.get(mode_label(mode))
        return complex(state.alpha) if state is not None else 0j

    def coherent_modes(self) -> tuple[str, ...]:
        """Labels carrying a nonzero coherent amplitude."""
        return tuple(
            label for label, state in self._assignments.items()
            if isinstance(state, Coherent) and state.alpha != 0
        )

    def is_vacuum(self) -> bool:
        return not self.coherent_modes()

    def with_assignment(self, mode: ModeRef, state: ModeState) -> 'StateSpec':
        updated = dict(self._assignments)
        updated[mode_label(mode)] = state
        return StateSpec(updated)

    def merged(self, other: 'StateSpec') -> 'StateSpec':
        """
        Combine two assignments. Coherent amplitudes on the same mode add,
        since successive displacements compose to a displacement by the sum.
        """
        labels = set(self._assignments) | set(other.assignments)
        combined = {}
        for label in labels:
            alpha = self.amplitude(label) + other.amplitude(label)
            combined[label] = Coherent(alpha) if alpha != 0 else Vacuum()
        return StateSpec(combined)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StateSpec):
            return NotImplemented
        labels = set(self._assignments) | set(other.assignments)
        return all(self.amplitude(label) == other.amplitude(label) for label in labels)

    def __hash__(self) -> int:
        return hash(tuple((label, self.amplitude(label)) for label in self.coherent_modes()))

    def __repr__(self) -> str:
        parts = ', '.join(f"{label}={self.amplitude(label)}" for label in self.coherent_modes())
        return f"StateSpec({parts or 'vacuum'})"
