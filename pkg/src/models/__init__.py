"""
Models package for pdcnet.

Immutable domain records shared by the services: modes and initial
states, network components, scan and oracle results, and wave states of
the phase-dynamics integrators.
"""

# Modes and states
from .modes import ModeId, ModeRef, mode_label, Vacuum, Coherent, StateSpec

# Network components
from .components import (
    ComponentBase,
    Crystal,
    PhaseShift,
    Mirror,
    Filter,
    Seed,
    Combiner,
    Detector,
    ComponentSpec,
    NetworkSpec,
)

# Results
from .results import (
    ScanResult,
    VisibilityReport,
    CurvePoint,
    VisibilityCurve,
    ComplementarityReport,
    OracleResult,
    OracleGap,
    OracleComparison,
)

# Phase dynamics
from .dynamics import WaveState, AmplitudePhaseState, Trajectory, LockingReport, fold_phase


__all__ = [
    # Modes and states
    'ModeId',
    'ModeRef',
    'mode_label',
    'Vacuum',
    'Coherent',
    'StateSpec',

    # Network components
    'ComponentBase',
    'Crystal',
    'PhaseShift',
    'Mirror',
    'Filter',
    'Seed',
    'Combiner',
    'Detector',
    'ComponentSpec',
    'NetworkSpec',

    # Results
    'ScanResult',
    'VisibilityReport',
    'CurvePoint',
    'VisibilityCurve',
    'ComplementarityReport',
    'OracleResult',
    'OracleGap',
    'OracleComparison',

    # Phase dynamics
    'WaveState',
    'AmplitudePhaseState',
    'Trajectory',
    'LockingReport',
    'fold_phase',
]
