"""
Public operations of the bosonic mode algebra.

All functions are pure and return canonical (normally ordered) expressions.
"""

from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Union

from src.models.modes import ModeRef, mode_label
from .operators import OperatorExpr


@dataclass(frozen=True)
class LadderOp:
    """A single creation (``dagger=True``) or annihilation operator."""
    mode: str
    dagger: bool = False

    @classmethod
    def a(cls, mode: ModeRef) -> 'LadderOp':
        return cls(mode_label(mode), False)

    @classmethod
    def adag(cls, mode: ModeRef) -> 'LadderOp':
        return cls(mode_label(mode), True)

    def as_expr(self) -> OperatorExpr:
        if self.dagger:
            return OperatorExpr.creator(self.mode)
        return OperatorExpr.annihilator(self.mode)


OperatorWord = Sequence[LadderOp]


def word(factors: OperatorWord, coeff: complex = 1.0) -> OperatorExpr:
    """Normally ordered form of ``coeff`` times the ordered product of ``factors``."""
    expr = OperatorExpr.scalar(coeff)
    for factor in factors:
        expr = multiply(expr, factor.as_expr())
    return expr


def normal_order(e: Union[OperatorExpr, OperatorWord]) -> OperatorExpr:
    """
    Canonical normally ordered form.

    Accepts either an expression (already canonical by construction; the
    result is a re-merged, pruned copy) or an operator word in arbitrary
    order. Idempotent.
    """
    if isinstance(e, OperatorExpr):
        return OperatorExpr(e.terms)
    return word(e)


def multiply(e1: OperatorExpr, e2: OperatorExpr) -> OperatorExpr:
    """Operator product ``e1 · e2`` in canonical form."""
    return e1 * e2


def multiply_all(factors: Iterable[OperatorExpr]) -> OperatorExpr:
    return reduce(multiply, factors, OperatorExpr.identity())


def adjoint(e: OperatorExpr) -> OperatorExpr:
    """
    Hermitian conjugate.

    Conjugating a normally ordered monomial swaps creators and annihilators
    and reverses the order, which yields a normally ordered monomial again.
    """
    return OperatorExpr({
        (annihilators, creators): coeff.conjugate()
        for (creators, annihilators), coeff in e.terms.items()
    })


def commutator(e1: OperatorExpr, e2: OperatorExpr) -> OperatorExpr:
    """``[e1, e2] = e1·e2 − e2·e1`` in canonical form."""
    return multiply(e1, e2) - multiply(e2, e1)
