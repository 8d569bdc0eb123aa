"""
Fock Oracle Service

Brute-force verification of the symbolic engine: networks are simulated as
state vectors on a truncated multimode Fock space, with exact squeezing,
displacement and passive mode mixing, and count rates are read off as
photon-number moments.

Usage:
    from src.services.fock_oracle import oracle_run, oracle_compare

    result = oracle_run(spec, coincidences=[("A", "D")])
    result.rates["A"], result.leakage

    oracle_compare(spec).worst_relative()

For detailed documentation, see README.md
"""
from .exceptions import (
    OracleError,
    BasisBudgetError,
    CutoffLeakageError,
    UnsupportedComponentError,
)
from .basis import (
    OracleSettings,
    DEFAULT_SETTINGS,
    FockBasis,
    FockState,
    seeded_cutoff,
    plan_basis,
)
from .operations import (
    apply_squeezer,
    apply_linear,
    displace,
    displacement_matrix,
    completed_unitary,
    initial_state,
)
from .measurement import measure_rate, measure_coincidence
from .runner import oracle_run, oracle_scan, oracle_compare, gap_scaling

__all__ = [
    # Exceptions
    'OracleError',
    'BasisBudgetError',
    'CutoffLeakageError',
    'UnsupportedComponentError',

    # Basis and state
    'OracleSettings',
    'DEFAULT_SETTINGS',
    'FockBasis',
    'FockState',
    'seeded_cutoff',
    'plan_basis',

    # Evolution
    'apply_squeezer',
    'apply_linear',
    'displace',
    'displacement_matrix',
    'completed_unitary',
    'initial_state',

    # Measurement
    'measure_rate',
    'measure_coincidence',

    # Runs
    'oracle_run',
    'oracle_scan',
    'oracle_compare',
    'gap_scaling',
]
