"""
Mode Algebra Service.

Exact symbolic algebra of bosonic mode operators: products and normal
ordering through the canonical commutator [a, a†] = 1, adjoints,
commutators, and expectation values in vacuum/coherent product states.

Usage:
    from src.services.mode_algebra import OperatorExpr, multiply, adjoint, expectation

    a = OperatorExpr.annihilator("i1")
    n_plus_one = multiply(a, adjoint(a))          # a†a + 1
    expectation(n_plus_one, StateSpec.coherent({"i1": 2}))   # 5
"""

from .operators import OperatorExpr, Monomial, Signature, PRUNE_THRESHOLD, CLASSICAL_PREFIX, is_classical
from .algebra import (
    LadderOp,
    word,
    normal_order,
    multiply,
    multiply_all,
    adjoint,
    commutator,
)
from .expectation import expectation, expectation_by_degree
from .matrices import to_matrix, ladder_matrix


__all__ = [
    # Types
    'OperatorExpr',
    'Monomial',
    'Signature',
    'LadderOp',
    'PRUNE_THRESHOLD',
    'CLASSICAL_PREFIX',
    'is_classical',

    # Operations
    'word',
    'normal_order',
    'multiply',
    'multiply_all',
    'adjoint',
    'commutator',
    'expectation',
    'expectation_by_degree',

    # Matrix representations
    'to_matrix',
    'ladder_matrix',
]
