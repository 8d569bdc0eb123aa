"""
Signal–idler correlations in the undepleted-pump (linear) regime.

With a strong pump the equations for E_s and E_i* are linear. To first
order in K = κ E_p L the propagation maps are

    E_s(L) = a_s − iK a_i†,    E_i(L) = a_i − iK a_s†,

and the exact solution replaces 1 by cosh|K| and K by e^{i arg K} sinh|K|.
Vacuum inputs give no phase correlation ⟨E_s⁻ E_i⁺⟩ while the pair
moment ⟨E_s⁺ E_i⁺⟩ is nonzero.
"""

import cmath
import math

from src.models.modes import StateSpec
from src.services.mode_algebra import OperatorExpr, adjoint, expectation, multiply


SIGNAL_INPUT = 's0'
IDLER_INPUT = 'i0'


def propagated_fields(k: complex, exact: bool = False) -> tuple[OperatorExpr, OperatorExpr]:
    """E_s⁺(L) and E_i⁺(L) as expressions in the input modes."""
    k = complex(k)
    if exact:
        direct = math.cosh(abs(k))
        cross = cmath.exp(1j * cmath.phase(k)) * math.sinh(abs(k)) if k != 0 else 0j
    else:
        direct, cross = 1.0, k
    signal = OperatorExpr.annihilator(SIGNAL_INPUT, direct) + OperatorExpr.creator(IDLER_INPUT, -1j * cross)
    idler = OperatorExpr.annihilator(IDLER_INPUT, direct) + OperatorExpr.creator(SIGNAL_INPUT, -1j * cross)
    return signal, idler


def linear_correlation(k: complex, exact: bool = False, state: StateSpec | None = None) -> complex:
    """⟨E_s⁻(L) E_i⁺(L)⟩, zero for vacuum inputs."""
    signal, idler = propagated_fields(k, exact)
    return expectation(multiply(adjoint(signal), idler), state or StateSpec.vacuum())


def anomalous_correlation(k: complex, exact: bool = False, state: StateSpec | None = None) -> complex:
    """⟨E_s⁺(L) E_i⁺(L)⟩: −iK to first order for vacuum inputs."""
    signal, idler = propagated_fields(k, exact)
    return expectation(multiply(signal, idler), state or StateSpec.vacuum())
