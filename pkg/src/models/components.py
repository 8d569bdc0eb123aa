"""
Pydantic schemas for interferometer network components.

Each component is an immutable, validated record with a ``kind``
discriminator, so networks can be parsed from configuration files and
dumped back without loss.
"""

import cmath
import math
from typing import Annotated, Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.enums import CombinerStyle, ModeKind
from src.models.modes import ModeId, StateSpec
from src.utils import Logger


GAIN_WARNING_THRESHOLD = 0.1


class ComponentBase(BaseModel):
    """Common configuration for every component schema."""
    model_config = ConfigDict(frozen=True, extra='forbid')

    def modes(self) -> tuple[str, ...]:
        """Mode labels this component reads."""
        return ()


class Crystal(ComponentBase):
    """Down-conversion crystal with pump folded into ``gain`` and ``pump_phase``."""
    kind: Literal['crystal'] = 'crystal'
    signal: str
    idler: str
    gain: complex = Field(..., description="Crystal gain C (|C| << 1)")
    pump_phase: float = Field(0.0, description="Pump phase delay in radians")

    @model_validator(mode='after')
    def check_modes_and_gain(self) -> 'Crystal':
        if self.signal == self.idler:
            raise ValueError(f"Crystal signal and idler must be distinct modes, got '{self.signal}' twice")
        if abs(self.gain) > GAIN_WARNING_THRESHOLD:
            Logger.warning(
                f"Crystal gain |C|={abs(self.gain):.3g} exceeds {GAIN_WARNING_THRESHOLD}; "
                f"first-order propagation is inaccurate"
            )
        return self

    @property
    def zeta(self) -> complex:
        """Effective squeezing parameter C·exp(i φ_p)."""
        return self.gain * cmath.exp(1j * self.pump_phase)

    def modes(self) -> tuple[str, ...]:
        return self.signal, self.idler


class PhaseShift(ComponentBase):
    kind: Literal['phase'] = 'phase'
    mode: str
    phi: float

    def modes(self) -> tuple[str, ...]:
        return (self.mode,)


class Mirror(ComponentBase):
    """Reflection; multiplies the field by i."""
    kind: Literal['mirror'] = 'mirror'
    mode: str

    def modes(self) -> tuple[str, ...]:
        return (self.mode,)


class Filter(ComponentBase):
    """
    Attenuator with complex field transmission ``tau``.

    The lost amplitude is replaced by a fresh vacuum ancilla mode so the
    transmitted mode keeps the canonical commutator.
    """
    kind: Literal['filter'] = 'filter'
    mode: str
    tau: complex
    ancilla: str

    @field_validator('tau')
    @classmethod
    def validate_transmission(cls, v: complex) -> complex:
        if abs(v) > 1.0 + 1e-12:
            raise ValueError(f"Filter transmission must satisfy |tau| <= 1, got |tau|={abs(v):.6g}")
        return v

    @model_validator(mode='after')
    def check_ancilla(self) -> 'Filter':
        if self.ancilla == self.mode:
            raise ValueError("Filter ancilla must differ from the filtered mode")
        return self

    @property
    def loss_amplitude(self) -> float:
        """√(1−|τ|²), the ancilla weight."""
        return math.sqrt(max(0.0, 1.0 - abs(self.tau) ** 2))

    def modes(self) -> tuple[str, ...]:
        return (self.mode,)


class Seed(ComponentBase):
    """Coherent displacement of a mode by ``alpha``."""
    kind: Literal['seed'] = 'seed'
    mode: str
    alpha: complex

    def modes(self) -> tuple[str, ...]:
        return (self.mode,)


class Combiner(ComponentBase):
    """Linear combination ``output = Σ weights_k · inputs_k``."""
    kind: Literal['combiner'] = 'combiner'
    inputs: tuple[str, ...]
    output: str
    weights: tuple[complex, ...]

    @model_validator(mode='after')
    def check_weights(self) -> 'Combiner':
        if not self.inputs:
            raise ValueError("Combiner needs at least one input")
        if len(self.inputs) != len(self.weights):
            raise ValueError(
                f"Combiner has {len(self.inputs)} inputs but {len(self.weights)} weights"
            )
        if len(set(self.inputs)) != len(self.inputs):
            raise ValueError("Combiner inputs must be distinct")
        if all(w == 0 for w in self.weights):
            raise ValueError("Combiner weights cannot all be zero")
        return self

    @classmethod
    def with_style(cls, inputs: tuple[str, ...], output: str, style: CombinerStyle) -> 'Combiner':
        """
        Folded weights are all 1 (beam-splitter ratio absorbed into the gains);
        the physical 50:50 option uses 1/√2 and i/√2.
        """
        if style == CombinerStyle.PHYSICAL:
            if len(inputs) != 2:
                raise ValueError("The physical 50:50 combiner takes exactly two inputs")
            weights = (1 / math.sqrt(2), 1j / math.sqrt(2))
        else:
            weights = tuple(1.0 + 0j for _ in inputs)
        return cls(inputs=tuple(inputs), output=output, weights=weights)

    @property
    def norm_squared(self) -> float:
        return sum(abs(w) ** 2 for w in self.weights)

    def modes(self) -> tuple[str, ...]:
        return self.inputs


class Detector(ComponentBase):
    kind: Literal['detector'] = 'detector'
    name: str
    mode: str

    def modes(self) -> tuple[str, ...]:
        return (self.mode,)


ComponentSpec = Annotated[
    Union[Crystal, PhaseShift, Mirror, Filter, Seed, Combiner, Detector],
    Field(discriminator='kind'),
]


class NetworkSpec(BaseModel):
    """
    Ordered description of an interferometer network.

    ``modes`` declares the input modes; filter ancillas and combiner outputs
    are introduced by their components.
    """
    model_config = ConfigDict(frozen=True, extra='forbid', arbitrary_types_allowed=True)

    modes: tuple[ModeId, ...]
    components: tuple[ComponentSpec, ...] = ()
    initial_state: StateSpec = Field(default_factory=StateSpec.vacuum)
    max_field_order: int = Field(1, ge=0, description="Highest crystal-gain order kept in fields")
    max_product_order: int = Field(2, ge=0, description="Highest crystal-gain order kept in rate products")
    name: Optional[str] = None

    @field_validator('modes')
    @classmethod
    def validate_unique_labels(cls, v: tuple[ModeId, ...]) -> tuple[ModeId, ...]:
        labels = [m.label for m in v]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise ValueError(f"Duplicate mode labels: {', '.join(duplicates)}")
        return v

    @property
    def detectors(self) -> tuple[Detector, ...]:
        return tuple(c for c in self.components if isinstance(c, Detector))

    def mode_kinds(self) -> dict[str, ModeKind]:
        return {m.label: m.kind for m in self.modes}
