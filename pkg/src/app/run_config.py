"""
Validated run configuration for the command-line application.
"""

from typing import Any, Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.enums import ComponentKind, ModeKind, OutputKind, PresetId, ScanParameter, SeedTreatment
from src.services.experiments import PRESETS, PresetParameters


PLACEHOLDERS = ('$phi', '$phi_p', '$tau', '$theta')


class GridSpec(BaseModel):
    """Inclusive grid ``start:stop:step``."""
    model_config = ConfigDict(frozen=True)

    start: float
    stop: float
    step: float = Field(..., gt=0.0)

    @model_validator(mode='after')
    def check_order(self) -> 'GridSpec':
        if self.stop < self.start:
            raise ValueError(f"grid stop {self.stop} is below start {self.start}")
        return self


class ComponentEntry(BaseModel):
    """One ``[component.<n>]`` section with its typed values."""
    model_config = ConfigDict(frozen=True)

    index: int = Field(..., ge=0)
    kind: ComponentKind
    values: dict[str, Any] = Field(default_factory=dict)


class NetworkDefinition(BaseModel):
    """An inline network; numeric fields may hold a scan placeholder such as ``$phi``."""
    model_config = ConfigDict(frozen=True)

    modes: tuple[tuple[str, ModeKind], ...]
    initial: tuple[tuple[str, complex], ...] = ()
    components: tuple[ComponentEntry, ...] = ()

    @field_validator('modes')
    @classmethod
    def validate_unique_labels(cls, v: tuple[tuple[str, ModeKind], ...]) -> tuple[tuple[str, ModeKind], ...]:
        labels = [label for label, _ in v]
        duplicates = sorted({label for label in labels if labels.count(label) > 1})
        if duplicates:
            raise ValueError(f"Duplicate mode labels: {', '.join(duplicates)}")
        return v

    @property
    def detectors(self) -> tuple[str, ...]:
        return tuple(c.values['name'] for c in self.components if c.kind == ComponentKind.DETECTOR)

    @property
    def placeholders(self) -> frozenset[str]:
        return frozenset(
            value for c in self.components for value in c.values.values()
            if isinstance(value, str) and value in PLACEHOLDERS
        )


class RunConfig(BaseModel):
    """Everything one ``run`` needs: the network, its parameters and the outputs."""
    model_config = ConfigDict(frozen=True, extra='forbid')

    preset: Optional[PresetId] = None
    network: Optional[NetworkDefinition] = None
    name: Optional[str] = None
    parameters: PresetParameters = Field(default_factory=PresetParameters)
    max_field_order: int = Field(1, ge=0)
    max_product_order: int = Field(2, ge=0)

    outputs: tuple[OutputKind, ...] = ()
    scan: ScanParameter = ScanParameter.PHI
    phi_grid: Optional[GridSpec] = None
    phi_p_grid: Optional[GridSpec] = None
    tau_grid: Optional[GridSpec] = None
    n_grid: Optional[GridSpec] = None
    detector: str = 'A'
    coincidence: Optional[tuple[str, str]] = None
    treatment: Optional[SeedTreatment] = None

    oracle: bool = False
    ensemble: int = Field(16, ge=1)
    growth: float = Field(100.0, gt=1.0)

    out: str = 'out'
    json_output: bool = False
    plot: bool = False

    @model_validator(mode='after')
    def check_network_source(self) -> 'RunConfig':
        if self.preset is not None and self.network is not None:
            raise ValueError("give either a preset or an inline network, not both")
        needs_network = any(o != OutputKind.PHASE_LOCK for o in self.outputs)
        if needs_network and self.preset is None and self.network is None:
            raise ValueError("a preset or an inline network is required for the requested outputs")
        return self

    @property
    def detectors(self) -> tuple[str, ...]:
        if self.network is not None:
            return self.network.detectors
        if self.preset is not None:
            return PRESETS[self.preset].detectors
        return ()
