try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        def __str__(self) -> str:
            return str(self.value)

        def __format__(self, format_spec: str) -> str:
            return str(self.value).__format__(format_spec)


class ConfigName(StrEnum):
    DEVELOPMENT = "development"
    PRODUCTION = "production"
    TESTING = "testing"
    DEFAULT = "default"


class ModeKind(StrEnum):
    SIGNAL = "signal"
    IDLER = "idler"
    ANCILLA = "ancilla"


class ComponentKind(StrEnum):
    CRYSTAL = "crystal"
    PHASE = "phase"
    MIRROR = "mirror"
    FILTER = "filter"
    SEED = "seed"
    COMBINER = "combiner"
    DETECTOR = "detector"


class CombinerStyle(StrEnum):
    FOLDED = "folded"
    PHYSICAL = "physical"


class SeedTreatment(StrEnum):
    EXACT = "exact"
    CLASSICAL = "classical"


class PresetId(StrEnum):
    CASCADE12 = "cascade12"
    PARALLEL23 = "parallel23"
    CASCADE13 = "cascade13"
    THREE_CRYSTAL = "three-crystal"
    FILTER_SETUP = "filter"


class ScanParameter(StrEnum):
    PHI = "phi"
    PHI_P = "phi_p"
    TAU = "tau"


class OutputKind(StrEnum):
    DETECTOR_RATE = "rate"
    COINCIDENCE = "coincidence"
    VISIBILITY = "visibility"
    VISIBILITY_VS_TAU = "visibility-vs-tau"
    VISIBILITY_VS_N = "visibility-vs-n"
    PHASE_LOCK = "phase-lock"
    ORACLE_COMPARE = "oracle-compare"
    COMPLEMENTARITY = "complementarity"


class LockingBranch(StrEnum):
    PLUS_HALF_PI = "+pi/2"
    MINUS_HALF_PI = "-pi/2"
    UNLOCKED = "unlocked"
