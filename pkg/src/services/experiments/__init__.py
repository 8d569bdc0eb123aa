"""
Experiments Service

Preset networks for the five crystal configurations, parameter scans,
closed-form reference rates and fringe-visibility extraction.

Usage:
    from src.services.experiments import PresetTemplate, PresetParameters, scan, visibility

    template = PresetTemplate(PresetId.CASCADE12, PresetParameters(seeded=True))
    result = scan(template, ScanParameter.PHI, phase_grid(401, periods=2))
    visibility(result).fit_period   # ≈ 2π

For detailed documentation, see README.md
"""
from .exceptions import (
    ExperimentError,
    PresetParameterError,
    ScanError,
    VisibilityError,
)
from .presets import (
    PresetParameters,
    PresetInfo,
    PRESETS,
    build_preset,
    make_parameters,
    SIGNAL_DETECTOR,
    IDLER_DETECTOR,
    SIGNAL_WAVELENGTH_NM,
    PUMP_WAVELENGTH_NM,
    IDLER_WAVELENGTH_NM,
)
from .closed_forms import (
    supports_closed_form,
    closed_form_rate,
    closed_form_coincidence,
    printed_rate,
    printed_coincidence,
    stimulated_visibility_law,
    induced_visibility_law,
    seeded_visibility_law,
)
from .scanning import PresetTemplate, scan, make_grid, phase_grid
from .visibility import visibility, fit_sinusoid
from .curves import (
    visibility_vs_tau,
    stimulated_visibility_vs_n,
    idler_overlap,
    complementarity,
    stimulated_enhancement,
)

__all__ = [
    # Exceptions
    'ExperimentError',
    'PresetParameterError',
    'ScanError',
    'VisibilityError',

    # Presets
    'PresetParameters',
    'PresetInfo',
    'PRESETS',
    'build_preset',
    'make_parameters',
    'SIGNAL_DETECTOR',
    'IDLER_DETECTOR',
    'SIGNAL_WAVELENGTH_NM',
    'PUMP_WAVELENGTH_NM',
    'IDLER_WAVELENGTH_NM',

    # Closed forms
    'supports_closed_form',
    'closed_form_rate',
    'closed_form_coincidence',
    'printed_rate',
    'printed_coincidence',
    'stimulated_visibility_law',
    'induced_visibility_law',
    'seeded_visibility_law',

    # Scans and visibility
    'PresetTemplate',
    'scan',
    'make_grid',
    'phase_grid',
    'visibility',
    'fit_sinusoid',

    # Curves and reports
    'visibility_vs_tau',
    'stimulated_visibility_vs_n',
    'idler_overlap',
    'complementarity',
    'stimulated_enhancement',
]
