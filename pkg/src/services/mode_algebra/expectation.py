"""
Expectation values in product vacuum/coherent states.

For a normally ordered monomial every annihilator a_m acts on the ket and
every creator a†_m on the bra, so a coherent state contributes alpha_m and
conj(alpha_m) respectively, and vacuum modes contribute zero. Classical
symbols evaluate to 1; their amplitude already sits in the coefficient.
The result is exact; no Fock truncation is involved.
"""

from collections import defaultdict

from src.models.modes import StateSpec
from .operators import Monomial, OperatorExpr, is_classical


def _monomial_value(monomial: Monomial, state: StateSpec) -> complex:
    value = monomial.coeff
    for label, power in monomial.creators:
        if not is_classical(label):
            value *= state.amplitude(label).conjugate() ** power
    for label, power in monomial.annihilators:
        if not is_classical(label):
            value *= state.amplitude(label) ** power
    return value


def expectation(e: OperatorExpr, s: StateSpec) -> complex:
    """⟨s| e |s⟩ for a product vacuum/coherent state ``s``."""
    return sum((_monomial_value(m, s) for m in e.monomials()), 0j)


def expectation_by_degree(e: OperatorExpr, s: StateSpec) -> dict[int, complex]:
    """
    Split ⟨s| e |s⟩ by the number of ladder symbols in each monomial.

    Only monomials acting entirely on coherent modes and classical symbols
    contribute, so the key is the degree of the contribution in the seed
    amplitudes. The classical-seed limit of a rate keeps the top-degree entry.
    """
    by_degree: dict[int, complex] = defaultdict(complex)
    for monomial in e.monomials():
        value = _monomial_value(monomial, s)
        if value != 0:
            by_degree[monomial.degree] += value
    return dict(sorted(by_degree.items()))
