"""
Count rates from compiled detector fields.

Rates are expectation values of normally ordered field products,
truncated at the network's ``max_product_order`` in the crystal gains.
"""

from typing import Optional, Sequence

from src.enums import SeedTreatment
from src.models.modes import StateSpec
from src.services.mode_algebra import OperatorExpr, expectation_by_degree, is_classical
from src.utils import Logger
from .compiler import DetectorFields
from .exceptions import NonPhysicalRateError
from .fields import truncated_product


IMAGINARY_TOLERANCE = 1e-10
NEGATIVE_TOLERANCE = 1e-12


def rate_expression(f: DetectorFields, detectors: Sequence[str]) -> OperatorExpr:
    """
    Normally ordered E⁻_1 ... E⁻_k E⁺_k ... E⁺_1 for the given detectors,
    truncated at the compiled product order.
    """
    fields = [f[name] for name in detectors]
    factors = [d.series.adjoint() for d in fields] + [d.series for d in reversed(fields)]
    return truncated_product(factors, f.max_product_order)


def _real_rate(contributions: dict[int, complex], label: str) -> float:
    value = sum(contributions.values(), 0j)
    scale = sum(abs(c) for c in contributions.values())
    if abs(value.imag) > IMAGINARY_TOLERANCE * max(scale, 1e-300):
        raise NonPhysicalRateError(
            f"Rate {label} has imaginary part {value.imag:.3e} (real part {value.real:.3e})"
        )
    if value.real < -NEGATIVE_TOLERANCE * max(scale, 1.0):
        raise NonPhysicalRateError(f"Rate {label} is negative: {value.real:.3e}")
    return max(0.0, value.real)


def _evaluate(
    f: DetectorFields,
    detectors: Sequence[str],
    s: Optional[StateSpec],
    treatment: SeedTreatment,
) -> float:
    state = f.state(s)
    expr = rate_expression(f, detectors)
    contributions = expectation_by_degree(expr, state)
    label = ','.join(detectors)

    if treatment == SeedTreatment.CLASSICAL:
        seeded = not state.is_vacuum() or any(is_classical(m) for m in expr.modes)
        if not seeded:
            Logger.warning(f"Classical-seed limit requested for rate {label} without seeds; using exact rate")
        else:
            degree = 2 * len(detectors)
            contributions = {degree: contributions.get(degree, 0j)}

    return _real_rate(contributions, label)


def detector_rate(
    f: DetectorFields,
    d: str,
    s: Optional[StateSpec] = None,
    treatment: SeedTreatment = SeedTreatment.EXACT,
) -> float:
    """
    Single-detector rate R = ⟨E⁻E⁺⟩.

    ``s`` defaults to the network's initial state; seeds lifted from Seed
    components are always added. The classical treatment keeps only the
    contribution quadratic in the seed amplitudes.
    """
    return _evaluate(f, (d,), s, SeedTreatment(treatment))


def coincidence_rate(
    f: DetectorFields,
    d_a: str,
    d_b: str,
    s: Optional[StateSpec] = None,
    treatment: SeedTreatment = SeedTreatment.EXACT,
) -> float:
    """Coincidence rate ⟨E⁻_A E⁻_B E⁺_B E⁺_A⟩."""
    return _evaluate(f, (d_a, d_b), s, SeedTreatment(treatment))
