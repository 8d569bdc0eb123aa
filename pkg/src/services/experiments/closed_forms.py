"""
Closed-form reference rates for the preset networks.

Three flavours are provided:
    exact      all vacuum contributions kept; equals the first-order engine
    classical  only the terms quadratic (single) or quartic (coincidence)
               in the seed amplitude
    printed    the expression as commonly quoted in the literature where it
               differs from both of the above

The formulas assume one common gain on every crystal and the folded
combiner; ``supports_closed_form`` reports whether that holds.
"""

import cmath
from math import cos, sin
from typing import Optional

from src.enums import CombinerStyle, PresetId, SeedTreatment
from .presets import PresetParameters


def supports_closed_form(p: PresetParameters) -> bool:
    c1, c2, c3 = p.gains
    return c1 == c2 == c3 and p.combiner == CombinerStyle.FOLDED


def _cascade12(c2: float, n: float, p: PresetParameters, classical: bool) -> float:
    fringe = 1.0 - sin(p.phi)
    return 2.0 * c2 * fringe * (n if classical else n + 1.0)


def _parallel23(c2: float, n: float, p: PresetParameters, classical: bool) -> float:
    stimulated = n * (1.0 - sin(p.phi + p.pump_phase))
    return 2.0 * c2 * (stimulated if classical else 1.0 + stimulated)


def _cascade13(c2: float, n: float, p: PresetParameters, classical: bool) -> float:
    stimulated = n * (1.0 + cos(p.pump_phase))
    return 2.0 * c2 * (stimulated if classical else 1.0 + stimulated)


def _three_crystal(c2: float, n: float, p: PresetParameters, classical: bool) -> float:
    phi, phi_p = p.phi, p.pump_phase
    cross = 2.0 * n * (cos(phi_p) - sin(phi + phi_p))
    if classical:
        return c2 * (n * (3.0 - 2.0 * sin(phi)) + cross)
    return c2 * ((n + 1.0) * (3.0 - 2.0 * sin(phi)) + cross)


def _filter_setup(c2: float, n: float, p: PresetParameters, classical: bool) -> float:
    tau = p.tau
    fringe = 1.0 + tau ** 2 - 2.0 * tau * sin(p.phi + p.theta)
    if classical:
        return c2 * n * fringe
    return c2 * (fringe * (n + 1.0) + 1.0 - tau ** 2)


_RATES = {
    PresetId.CASCADE12: _cascade12,
    PresetId.PARALLEL23: _parallel23,
    PresetId.CASCADE13: _cascade13,
    PresetId.THREE_CRYSTAL: _three_crystal,
    PresetId.FILTER_SETUP: _filter_setup,
}


def closed_form_rate(
    preset: PresetId,
    p: PresetParameters,
    treatment: SeedTreatment = SeedTreatment.EXACT,
) -> Optional[float]:
    """
    Single-detector rate at detector A, or None when the parameters fall
    outside the closed-form assumptions.

    The classical form of an unseeded setup falls back to the exact one,
    matching ``detector_rate``.
    """
    if not supports_closed_form(p):
        return None
    c2 = abs(p.gains[0]) ** 2
    n = p.photon_number
    classical = SeedTreatment(treatment) == SeedTreatment.CLASSICAL and n > 0
    return _RATES[PresetId(preset)](c2, n, p, classical)


def printed_rate(preset: PresetId, p: PresetParameters) -> Optional[float]:
    """
    Rates in the form usually quoted: the seeded expressions drop the
    vacuum terms and the unseeded ones keep them.

    For the seeded three-crystal setup the quoted form
    2|C|²n{1 − sinφ − sin(φ+φ_p) + cosφ_p} omits the direct contribution of
    crystal 3 and sits exactly |C|²n below the classical limit.
    """
    if not supports_closed_form(p):
        return None
    preset = PresetId(preset)
    c2 = abs(p.gains[0]) ** 2
    n = p.photon_number
    if preset == PresetId.THREE_CRYSTAL:
        if n == 0:
            return c2 * (2.0 * (1.0 - sin(p.phi)) + 1.0)
        return 2.0 * c2 * n * (1.0 - sin(p.phi) - sin(p.phi + p.pump_phase) + cos(p.pump_phase))
    if preset == PresetId.CASCADE13 and n > 0:
        return 2.0 * c2 * (1.0 + cos(p.pump_phase)) * n
    return closed_form_rate(preset, p, SeedTreatment.EXACT)


def closed_form_coincidence(
    p: PresetParameters,
    treatment: SeedTreatment = SeedTreatment.EXACT,
) -> Optional[float]:
    """
    Coincidence rate between detectors A and D of the filter setup.

    With t = τe^{iθ} and w = 1 + i·t·e^{iφ}:
        exact      |C|²[|w(n+1) − (1−τ²)n|² + τ²n(2 − 2τ sin(φ+θ))]
        classical  |C|²n²τ²(1 + τ² − 2τ sin(φ+θ))
    Unseeded this is |C|²|w|², with visibility 2τ/(1+τ²).
    """
    if not supports_closed_form(p):
        return None
    c2 = abs(p.gains[0]) ** 2
    n = p.photon_number
    tau = p.tau
    fringe = 1.0 + tau ** 2 - 2.0 * tau * sin(p.phi + p.theta)
    if SeedTreatment(treatment) == SeedTreatment.CLASSICAL and n > 0:
        return c2 * n ** 2 * tau ** 2 * fringe
    w = 1.0 + 1j * tau * cmath.exp(1j * (p.phi + p.theta))
    coherent = w * (n + 1.0) - (1.0 - tau ** 2) * n
    return c2 * (abs(coherent) ** 2 + tau ** 2 * n * (2.0 - 2.0 * tau * sin(p.phi + p.theta)))


def printed_coincidence(p: PresetParameters) -> Optional[float]:
    """The quoted unseeded form 4|C|²[1 − τ sin(θ+φ)]; its fringe visibility is τ."""
    if not supports_closed_form(p):
        return None
    return 4.0 * abs(p.gains[0]) ** 2 * (1.0 - p.tau * sin(p.theta + p.phi))


def stimulated_visibility_law(tau: float) -> float:
    """V = 2τ/(1+τ²): seeded filter setup and the induced-coherence coincidence."""
    return 2.0 * tau / (1.0 + tau ** 2)


def induced_visibility_law(tau: float) -> float:
    """V = τ: unseeded single-detector filter setup."""
    return tau


def seeded_visibility_law(n: float) -> float:
    """V = n/(n+1) for the exact two-crystal rates with seed photon number n."""
    return n / (n + 1.0)
