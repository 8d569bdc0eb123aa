"""
Visibility curves and derived reports.

Every point runs a full φ-scan of the relevant preset and extracts the
fringe visibility, so the curves exercise the same path as a user scan.
"""

import math
from typing import Optional, Sequence

from src.enums import PresetId, ScanParameter, SeedTreatment
from src.models.components import Crystal
from src.models.modes import StateSpec
from src.models.results import ComplementarityReport, CurvePoint, VisibilityCurve
from src.services.mode_algebra import OperatorExpr, expectation, multiply
from src.services.network import PropagationState, apply_component, compile_network, detector_rate
from src.utils import Logger
from .closed_forms import induced_visibility_law, seeded_visibility_law, stimulated_visibility_law
from .exceptions import PresetParameterError, ScanError
from .presets import IDLER_DETECTOR, SIGNAL_DETECTOR, PresetParameters, build_preset, make_parameters
from .scanning import PresetTemplate, phase_grid, scan
from .visibility import visibility


DEFAULT_PHASE_POINTS = 401


def _phi_visibility(
    preset: PresetId,
    p: PresetParameters,
    coincidence: bool,
    treatment: SeedTreatment,
    phi_points: int,
    workers: Optional[int],
) -> float:
    result = scan(
        PresetTemplate(preset, p),
        ScanParameter.PHI,
        phase_grid(phi_points),
        coincidence=(SIGNAL_DETECTOR, IDLER_DETECTOR) if coincidence else None,
        treatment=treatment,
        workers=workers,
    )
    return visibility(result, fit=False).visibility


def visibility_vs_tau(
    seeded: bool,
    coincidence: bool,
    tau_grid: Sequence[float],
    parameters: Optional[PresetParameters] = None,
    treatment: Optional[SeedTreatment] = None,
    phi_points: int = DEFAULT_PHASE_POINTS,
    workers: Optional[int] = None,
) -> VisibilityCurve:
    """
    Filter-setup visibility for every τ in ``tau_grid``.

    Seeded curves default to the classical-seed limit and are compared with
    2τ/(1+τ²); the unseeded single-detector curve is compared with V = τ.
    The unseeded coincidence curve carries both candidate laws in its
    metadata and no single reference.
    """
    if not tau_grid:
        raise ScanError("τ grid is empty")
    if any(not 0.0 <= t <= 1.0 for t in tau_grid):
        raise ScanError("τ grid must lie within [0, 1]")

    base = parameters or PresetParameters()
    base = make_parameters(**{**base.model_dump(), 'seeded': seeded})
    if treatment is None:
        treatment = SeedTreatment.CLASSICAL if seeded else SeedTreatment.EXACT

    if seeded:
        law, reference = "2τ/(1+τ²)", stimulated_visibility_law
    elif not coincidence:
        law, reference = "τ", induced_visibility_law
    else:
        law, reference = None, None

    Logger.info(
        f"Visibility vs τ over {len(tau_grid)} points "
        f"({'seeded' if seeded else 'unseeded'}, {'coincidence' if coincidence else 'single detector'})"
    )
    points = []
    for tau in tau_grid:
        p = base.bind(ScanParameter.TAU, tau)
        v = _phi_visibility(PresetId.FILTER_SETUP, p, coincidence, treatment, phi_points, workers)
        points.append(CurvePoint(x=float(tau), visibility=v, reference=reference(tau) if reference else None))

    metadata = {'seeded': seeded, 'coincidence': coincidence, 'treatment': SeedTreatment(treatment).value}
    if law is None:
        metadata['candidate_laws'] = {
            'linear': [induced_visibility_law(t) for t in tau_grid],
            'stimulated': [stimulated_visibility_law(t) for t in tau_grid],
        }
    return VisibilityCurve(variable='tau', points=tuple(points), law=law, metadata=metadata)


def stimulated_visibility_vs_n(
    n_grid: Sequence[float],
    preset: PresetId = PresetId.PARALLEL23,
    parameters: Optional[PresetParameters] = None,
    phi_points: int = DEFAULT_PHASE_POINTS,
    workers: Optional[int] = None,
) -> VisibilityCurve:
    """
    Exact-rate visibility against the seed photon number n = |α_L|².

    Parallel23 follows n/(n+1). Cascade12 has V = 1 for every n, since the
    shared idler already makes the two sources indistinguishable.
    """
    preset = PresetId(preset)
    if preset not in (PresetId.PARALLEL23, PresetId.CASCADE12):
        raise PresetParameterError(f"Visibility vs n is defined for cascade12 and parallel23, not {preset}")
    if any(n < 0 for n in n_grid):
        raise ScanError("Photon numbers must be nonnegative")

    base = parameters or PresetParameters()
    points = []
    for n in n_grid:
        seeded = n > 0
        p = make_parameters(**{**base.model_dump(), 'seeded': seeded, 'alpha': math.sqrt(n) if seeded else 1.0})
        v = _phi_visibility(preset, p, False, SeedTreatment.EXACT, phi_points, workers)
        reference = seeded_visibility_law(n) if preset == PresetId.PARALLEL23 else 1.0
        points.append(CurvePoint(x=float(n), visibility=v, reference=reference))

    law = "n/(n+1)" if preset == PresetId.PARALLEL23 else "1"
    return VisibilityCurve(variable='n', points=tuple(points), law=law, metadata={'preset': preset.value})


def idler_overlap(parameters: PresetParameters) -> complex:
    """
    Vacuum cross-correlation ⟨a_{i2} a†_{i1}⟩ between the idler field entering
    crystal 2 and the idler leaving crystal 1, at zeroth order in the gains.
    """
    spec = build_preset(PresetId.FILTER_SETUP, parameters.model_copy(update={'seeded': False}))
    state = PropagationState.initial(spec.modes, max_order=spec.max_field_order)
    crystals_seen = 0
    for component in spec.components:
        if isinstance(component, Crystal):
            crystals_seen += 1
            if crystals_seen == 2:
                break
        state = apply_component(state, component)
    entering = state.field_of('i1').annihilation_part(0)
    return expectation(multiply(entering, OperatorExpr.creator('i1')), StateSpec.vacuum())


def complementarity(
    tau: float,
    parameters: Optional[PresetParameters] = None,
    phi_points: int = DEFAULT_PHASE_POINTS,
    workers: Optional[int] = None,
) -> ComplementarityReport:
    """Distinguishability K = √(1−|g|²) and unseeded visibility V of the filter setup."""
    base = parameters or PresetParameters()
    p = make_parameters(**{**base.model_dump(), 'seeded': False, 'tau': tau})
    g = idler_overlap(p)
    k = math.sqrt(max(0.0, 1.0 - abs(g) ** 2))
    v = _phi_visibility(PresetId.FILTER_SETUP, p, False, SeedTreatment.EXACT, phi_points, workers)
    report = ComplementarityReport(tau=float(tau), idler_overlap=g, distinguishability=k, visibility=v)
    if not report.satisfied:
        Logger.warning(f"Complementarity bound violated at τ={tau}: K²+V²={report.bound:.6g}")
    return report


def stimulated_enhancement(
    preset: PresetId,
    n: float,
    parameters: Optional[PresetParameters] = None,
) -> float:
    """
    R(n)/R(0) at detector A for the same phases: the factor by which a seed
    of n photons raises the count rate over spontaneous emission.
    """
    base = parameters or PresetParameters()
    unseeded = make_parameters(**{**base.model_dump(), 'seeded': False})
    seeded = make_parameters(**{**base.model_dump(), 'seeded': n > 0, 'alpha': math.sqrt(n) if n > 0 else 1.0})
    r0 = detector_rate(compile_network(build_preset(preset, unseeded)), SIGNAL_DETECTOR)
    rn = detector_rate(compile_network(build_preset(preset, seeded)), SIGNAL_DETECTOR)
    if r0 == 0:
        raise ScanError(f"Spontaneous rate of {preset} vanishes at these phases; enhancement undefined")
    return rn / r0
