"""
Truncated multimode Fock basis and state vectors.

The state is a dense complex vector over occupation tuples in C-order
(first mode most significant), the same layout ``to_matrix`` uses, so
operator matrices built by the mode algebra act on it directly.
"""

import math
from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

import numpy as np
from scipy.stats import poisson

from src.models.components import Combiner, Filter, NetworkSpec, Seed
from src.utils import Logger
from .exceptions import BasisBudgetError, OracleError


@dataclass(frozen=True)
class OracleSettings:
    unseeded_cutoff: int = 4
    basis_budget: int = 2_000_000
    leakage_tolerance: float = 1e-10
    series_tolerance: float = 1e-14
    poisson_tail: float = 1e-12
    max_seed_amplitude: float = 2.0
    norm_warning: float = 1e-6
    max_series_terms: int = 500


DEFAULT_SETTINGS = OracleSettings()


@dataclass(frozen=True)
class FockBasis:
    """Ordered modes with an inclusive maximum occupation per mode."""
    modes: tuple[str, ...]
    cutoffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.modes) != len(self.cutoffs):
            raise OracleError("FockBasis needs one cutoff per mode")
        if len(set(self.modes)) != len(self.modes):
            raise OracleError(f"Duplicate modes in basis: {self.modes}")
        if any(c < 1 for c in self.cutoffs):
            raise OracleError("Every cutoff must be at least 1")

    @classmethod
    def create(
        cls,
        modes: Sequence[str],
        cutoffs: Sequence[int],
        budget: int = DEFAULT_SETTINGS.basis_budget,
    ) -> 'FockBasis':
        basis = cls(tuple(modes), tuple(int(c) for c in cutoffs))
        if basis.dimension > budget:
            raise BasisBudgetError(
                f"Basis dimension {basis.dimension} for cutoffs {dict(zip(basis.modes, basis.cutoffs))} "
                f"exceeds the budget of {budget}"
            )
        return basis

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(c + 1 for c in self.cutoffs)

    @property
    def dimension(self) -> int:
        return math.prod(self.shape)

    def index(self, mode: str) -> int:
        try:
            return self.modes.index(mode)
        except ValueError:
            raise OracleError(f"Mode '{mode}' is not part of the basis {self.modes}") from None


@dataclass(frozen=True)
class FockState:
    """
    State vector plus the bookkeeping of a network run.

    ``slots`` maps the current label of each live mode to its basis slot
    (combiner outputs take over an input slot); ``scales`` holds the field
    scale of normalized combiner outputs. ``leakage`` is the largest
    top-level population seen so far.
    """
    basis: FockBasis
    amplitudes: np.ndarray
    slots: Mapping[str, int] = field(default_factory=dict)
    scales: Mapping[str, float] = field(default_factory=dict)
    leakage: float = 0.0
    series_terms: int = 0

    @classmethod
    def vacuum(cls, basis: FockBasis) -> 'FockState':
        amplitudes = np.zeros(basis.dimension, dtype=complex)
        amplitudes[0] = 1.0
        slots = {mode: k for k, mode in enumerate(basis.modes)}
        return cls(basis=basis, amplitudes=amplitudes, slots=slots)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def norm_deviation(self) -> float:
        return abs(self.norm - 1.0)

    def slot(self, mode: str) -> int:
        try:
            return self.slots[mode]
        except KeyError:
            raise OracleError(f"Mode '{mode}' is not live in the oracle state") from None

    def scale(self, mode: str) -> float:
        return self.scales.get(mode, 1.0)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape(self.basis.shape)

    def probabilities(self) -> np.ndarray:
        return (np.abs(self.amplitudes) ** 2).reshape(self.basis.shape)

    def top_population(self, slot: int) -> float:
        """Population in the highest Fock level of one slot."""
        marginal = self.probabilities().sum(axis=tuple(k for k in range(len(self.basis.modes)) if k != slot))
        return float(marginal[-1])

    def evolved(self, amplitudes: np.ndarray, **changes) -> 'FockState':
        return replace(self, amplitudes=amplitudes, **changes)


def seeded_cutoff(alpha: complex, settings: OracleSettings = DEFAULT_SETTINGS) -> int:
    """
    Cutoff for a coherent amplitude: at least |α|² + 6|α|, raised until the
    Poisson tail beyond it falls below the configured tolerance.
    """
    mean = abs(alpha) ** 2
    cutoff = max(settings.unseeded_cutoff, math.ceil(mean + 6.0 * abs(alpha)))
    while poisson.sf(cutoff, mean) >= settings.poisson_tail:
        cutoff += 1
    return cutoff


def _linked_groups(spec: NetworkSpec, labels: list[str]) -> dict[str, str]:
    """Union modes that exchange photons through filters or combiners."""
    parent = {label: label for label in labels}

    def find(label: str) -> str:
        while parent[label] != label:
            parent[label] = parent[parent[label]]
            label = parent[label]
        return label

    def union(a: str, b: str) -> None:
        if a in parent and b in parent:
            parent[find(a)] = find(b)

    for component in spec.components:
        if isinstance(component, Filter):
            union(component.mode, component.ancilla)
        elif isinstance(component, Combiner):
            for other in component.inputs[1:]:
                union(component.inputs[0], other)
    return {label: find(label) for label in labels}


def plan_basis(spec: NetworkSpec, settings: OracleSettings = DEFAULT_SETTINGS) -> FockBasis:
    """
    Basis for simulating ``spec``: declared modes then filter ancillas, with
    seeded cutoffs shared across modes linked by filters or combiners.
    """
    labels = [m.label for m in spec.modes]
    labels += [c.ancilla for c in spec.components if isinstance(c, Filter) and c.ancilla not in labels]

    amplitude: dict[str, float] = {label: abs(spec.initial_state.amplitude(label)) for label in labels}
    for component in spec.components:
        if isinstance(component, Seed) and component.mode in amplitude:
            amplitude[component.mode] += abs(component.alpha)

    for label, alpha in amplitude.items():
        if alpha > settings.max_seed_amplitude:
            raise OracleError(
                f"Seed amplitude |α|={alpha:.3g} on '{label}' is outside the oracle regime "
                f"(|α| ≤ {settings.max_seed_amplitude})"
            )

    cutoffs = {label: seeded_cutoff(alpha, settings) if alpha > 0 else settings.unseeded_cutoff
               for label, alpha in amplitude.items()}
    groups = _linked_groups(spec, labels)
    group_cutoff: dict[str, int] = {}
    for label, root in groups.items():
        group_cutoff[root] = max(group_cutoff.get(root, 0), cutoffs[label])

    basis = FockBasis.create(labels, [group_cutoff[groups[label]] for label in labels], settings.basis_budget)
    Logger.debug(f"Oracle basis {dict(zip(basis.modes, basis.cutoffs))}, dimension {basis.dimension}")
    return basis
