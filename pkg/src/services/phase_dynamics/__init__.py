"""
Phase Dynamics Service

Classical signal, idler and pump propagation in a nonlinear crystal:
integration of the complex and amplitude-phase equations, detection of
signal–idler phase locking, and the linear-regime correlation check.

Usage:
    from src.services.phase_dynamics import locking_ensemble, common_branch

    reports = locking_ensemble()          # 16 initial phases, stop at 100x gain
    common_branch(reports)                # LockingBranch.PLUS_HALF_PI

For detailed documentation, see README.md
"""
from .exceptions import (
    IntegrationError,
    SingularStartError,
    NonFiniteStateError,
    InvariantDriftError,
)
from .integrators import (
    DEFAULT_TOLERANCE,
    DEFAULT_SAMPLES,
    complex_rhs,
    amplitude_phase_rhs,
    constants_of_motion,
    integrate_complex,
    integrate_amplitude_phase,
)
from .locking import (
    REFERENCE_BRANCH,
    detect_locking,
    classify_branch,
    ensemble_phases,
    locking_run,
    locking_ensemble,
    common_branch,
)
from .correlation import propagated_fields, linear_correlation, anomalous_correlation

__all__ = [
    # Exceptions
    'IntegrationError',
    'SingularStartError',
    'NonFiniteStateError',
    'InvariantDriftError',

    # Integration
    'DEFAULT_TOLERANCE',
    'DEFAULT_SAMPLES',
    'complex_rhs',
    'amplitude_phase_rhs',
    'constants_of_motion',
    'integrate_complex',
    'integrate_amplitude_phase',

    # Locking
    'REFERENCE_BRANCH',
    'detect_locking',
    'classify_branch',
    'ensemble_phases',
    'locking_run',
    'locking_ensemble',
    'common_branch',

    # Linear regime
    'propagated_fields',
    'linear_correlation',
    'anomalous_correlation',
]
