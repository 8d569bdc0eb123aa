"""
Preset Networks

Deterministic builders for the five interferometer configurations:
the two-crystal cascade with a shared idler (``cascade12``), two parallel
crystals with separately seeded idlers (``parallel23``), the pump-delay
cascade sharing one signal path (``cascade13``), all three crystals
together (``three-crystal``) and the cascade with a variable filter in
the idler path (``filter``).

Mode labels used by every preset:
    s1, s2, s3   signal modes of crystals 1-3
    i1, i2, i3   idler modes (i1 is shared by crystals 1 and 2 where aligned)
    l1           filter ancilla
    sA           signal output at detector A
Detector ``A`` watches the combined signal, detector ``D`` the idler
behind crystal 2 (filter setup only).
"""

import math
from dataclasses import dataclass
from typing import Callable

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.enums import CombinerStyle, PresetId, ScanParameter
from src.models.components import NetworkSpec
from src.services.network import NetworkBuilder, NetworkError
from src.utils import Logger
from .exceptions import PresetParameterError


SIGNAL_WAVELENGTH_NM = 808.0
PUMP_WAVELENGTH_NM = 355.0
IDLER_WAVELENGTH_NM = 1.0 / (1.0 / PUMP_WAVELENGTH_NM - 1.0 / SIGNAL_WAVELENGTH_NM)

MAX_PRESET_GAIN = 0.1
DEFAULT_GAIN = 0.01

SIGNAL_DETECTOR = 'A'
IDLER_DETECTOR = 'D'


class PresetParameters(BaseModel):
    """Numeric bindings for a preset network."""
    model_config = ConfigDict(frozen=True, extra='forbid')

    gains: tuple[complex, complex, complex] = Field(
        (DEFAULT_GAIN, DEFAULT_GAIN, DEFAULT_GAIN),
        description="Crystal gains C1, C2, C3",
    )
    phi: float = Field(0.0, description="Signal path phase φ (radians)")
    phi_p: float = Field(0.0, description="Pump 3 phase delay φ_p (radians)")
    tau: float = Field(1.0, ge=0.0, le=1.0, description="Filter amplitude transmission |τ|")
    theta: float = Field(0.0, description="Filter transmission phase θ (radians)")
    alpha: complex = Field(1.0, description="Seed amplitude α_L, used when seeded")
    seeded: bool = False
    combiner: CombinerStyle = CombinerStyle.FOLDED
    couple_phases: bool = Field(False, description="Advance φ_p together with φ at the wavelength ratio")
    phase_ratio: float = Field(
        SIGNAL_WAVELENGTH_NM / PUMP_WAVELENGTH_NM,
        gt=0.0,
        description="dφ_p/dφ for coupled scans (λ_s/λ_p for equal path-length rates)",
    )

    @field_validator('gains')
    @classmethod
    def validate_gains(cls, v: tuple[complex, complex, complex]) -> tuple[complex, complex, complex]:
        for index, gain in enumerate(v, start=1):
            if abs(gain) > MAX_PRESET_GAIN:
                raise ValueError(f"|C{index}|={abs(gain):.3g} exceeds {MAX_PRESET_GAIN}")
        return v

    @model_validator(mode='after')
    def check_seed(self) -> 'PresetParameters':
        if self.seeded and self.alpha == 0:
            raise ValueError("A seeded preset needs a nonzero seed amplitude alpha")
        return self

    @classmethod
    def uniform(cls, gain: complex = DEFAULT_GAIN, **kwargs) -> 'PresetParameters':
        """Parameters with the same gain on every crystal."""
        return cls(gains=(gain, gain, gain), **kwargs)

    @property
    def seed_amplitude(self) -> complex:
        return self.alpha if self.seeded else 0j

    @property
    def photon_number(self) -> float:
        """n = |α_L|² of the seed (0 when unseeded)."""
        return abs(self.seed_amplitude) ** 2

    @property
    def pump_phase(self) -> float:
        """Effective pump-3 phase, including the coupled advance with φ."""
        if self.couple_phases:
            return self.phi_p + self.phase_ratio * self.phi
        return self.phi_p

    @property
    def transmission(self) -> complex:
        return self.tau * complex(math.cos(self.theta), math.sin(self.theta))

    def bind(self, parameter: ScanParameter, value: float) -> 'PresetParameters':
        """Copy with one scan parameter set to ``value``."""
        field_name = {
            ScanParameter.PHI: 'phi',
            ScanParameter.PHI_P: 'phi_p',
            ScanParameter.TAU: 'tau',
        }[ScanParameter(parameter)]
        return make_parameters(**{**self.model_dump(), field_name: value})


def make_parameters(**kwargs) -> PresetParameters:
    """Validate preset parameters, reporting range problems as PresetParameterError."""
    try:
        return PresetParameters(**kwargs)
    except ValidationError as e:
        raise PresetParameterError(f"Invalid preset parameters: {e}") from e


def _seed_idlers(builder: NetworkBuilder, p: PresetParameters, *idlers: str) -> None:
    if p.seeded:
        for idler in idlers:
            builder.seed(idler, p.alpha)


def _cascade12(p: PresetParameters) -> NetworkSpec:
    c1, c2, _ = p.gains
    builder = NetworkBuilder(PresetId.CASCADE12).signal('s1', 's2').idler('i1')
    _seed_idlers(builder, p, 'i1')
    return (
        builder
        .crystal('s1', 'i1', c1)
        .phase('s1', p.phi)
        .mirror('s1')
        .crystal('s2', 'i1', c2)
        .combiner(('s1', 's2'), 'sA', style=p.combiner)
        .detector(SIGNAL_DETECTOR, 'sA')
        .build()
    )


def _parallel23(p: PresetParameters) -> NetworkSpec:
    _, c2, c3 = p.gains
    builder = NetworkBuilder(PresetId.PARALLEL23).signal('s2', 's3').idler('i2', 'i3')
    _seed_idlers(builder, p, 'i2', 'i3')
    return (
        builder
        .crystal('s2', 'i2', c2)
        .crystal('s3', 'i3', c3, pump_phase=p.pump_phase)
        .phase('s3', p.phi)
        .mirror('s3')
        .combiner(('s3', 's2'), 'sA', style=p.combiner)
        .detector(SIGNAL_DETECTOR, 'sA')
        .build()
    )


def _cascade13(p: PresetParameters) -> NetworkSpec:
    c1, _, c3 = p.gains
    builder = NetworkBuilder(PresetId.CASCADE13).signal('s1').idler('i1', 'i3')
    _seed_idlers(builder, p, 'i1', 'i3')
    return (
        builder
        .crystal('s1', 'i1', c1)
        .crystal('s1', 'i3', c3, pump_phase=p.pump_phase)
        .phase('s1', p.phi)
        .mirror('s1')
        .detector(SIGNAL_DETECTOR, 's1')
        .build()
    )


def _three_crystal(p: PresetParameters) -> NetworkSpec:
    c1, c2, c3 = p.gains
    builder = NetworkBuilder(PresetId.THREE_CRYSTAL).signal('s1', 's2').idler('i1', 'i3')
    _seed_idlers(builder, p, 'i1', 'i3')
    return (
        builder
        .crystal('s1', 'i1', c1)
        .crystal('s1', 'i3', c3, pump_phase=p.pump_phase)
        .phase('s1', p.phi)
        .mirror('s1')
        .crystal('s2', 'i1', c2)
        .combiner(('s1', 's2'), 'sA', style=p.combiner)
        .detector(SIGNAL_DETECTOR, 'sA')
        .build()
    )


def _filter_setup(p: PresetParameters) -> NetworkSpec:
    c1, c2, _ = p.gains
    builder = NetworkBuilder(PresetId.FILTER_SETUP).signal('s1', 's2').idler('i1')
    _seed_idlers(builder, p, 'i1')
    return (
        builder
        .crystal('s1', 'i1', c1)
        .filter('i1', p.transmission, 'l1')
        .phase('s1', p.phi)
        .mirror('s1')
        .crystal('s2', 'i1', c2)
        .combiner(('s1', 's2'), 'sA', style=p.combiner)
        .detector(SIGNAL_DETECTOR, 'sA')
        .detector(IDLER_DETECTOR, 'i1')
        .build()
    )


@dataclass(frozen=True)
class PresetInfo:
    preset: PresetId
    description: str
    builder: Callable[[PresetParameters], NetworkSpec]
    detectors: tuple[str, ...] = (SIGNAL_DETECTOR,)


PRESETS: dict[PresetId, PresetInfo] = {
    PresetId.CASCADE12: PresetInfo(
        PresetId.CASCADE12,
        "Crystals 1 and 2 in cascade; idler i1 aligned with i2 (induced coherence)",
        _cascade12,
    ),
    PresetId.PARALLEL23: PresetInfo(
        PresetId.PARALLEL23,
        "Crystals 2 and 3 with distinct idler modes, both seeded identically",
        _parallel23,
    ),
    PresetId.CASCADE13: PresetInfo(
        PresetId.CASCADE13,
        "Crystals 1 and 3 sharing the signal path; fringes in the pump-3 phase",
        _cascade13,
    ),
    PresetId.THREE_CRYSTAL: PresetInfo(
        PresetId.THREE_CRYSTAL,
        "All three crystals; beating between signal and pump fringes",
        _three_crystal,
    ),
    PresetId.FILTER_SETUP: PresetInfo(
        PresetId.FILTER_SETUP,
        "Cascade 1-2 with a variable filter in the idler path and an idler detector D",
        _filter_setup,
        detectors=(SIGNAL_DETECTOR, IDLER_DETECTOR),
    ),
}


def build_preset(preset: PresetId, p: PresetParameters) -> NetworkSpec:
    """Build the network for ``preset`` with parameters ``p`` bound numerically."""
    info = PRESETS[PresetId(preset)]
    try:
        spec = info.builder(p)
    except NetworkError as e:
        raise PresetParameterError(f"Cannot build preset {preset}: {e}") from e
    Logger.debug(f"Built preset {info.preset} with {len(spec.components)} components")
    return spec
