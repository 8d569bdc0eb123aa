"""
Field expressions expanded in powers of the crystal gains.

A ``FieldSeries`` stores the positive-frequency field of one mode as a
tuple of operator expressions, entry k holding the terms of total
crystal-gain order k. Truncation is explicit: series never hold terms
above their ``max_order`` and products drop terms above the requested
total order.
"""

from dataclasses import dataclass
from typing import Iterable, Sequence

from src.models.modes import ModeRef
from src.services.mode_algebra import OperatorExpr, adjoint, multiply


@dataclass(frozen=True)
class FieldSeries:
    orders: tuple[OperatorExpr, ...]

    @classmethod
    def zero(cls, max_order: int) -> 'FieldSeries':
        return cls(tuple(OperatorExpr.zero() for _ in range(max_order + 1)))

    @classmethod
    def of(cls, expr: OperatorExpr, max_order: int, order: int = 0) -> 'FieldSeries':
        orders = [OperatorExpr.zero() for _ in range(max_order + 1)]
        if order <= max_order:
            orders[order] = expr
        return cls(tuple(orders))

    @classmethod
    def mode(cls, mode: ModeRef, max_order: int) -> 'FieldSeries':
        """The untouched input field a_m."""
        return cls.of(OperatorExpr.annihilator(mode), max_order)

    @property
    def max_order(self) -> int:
        return len(self.orders) - 1

    def total(self) -> OperatorExpr:
        result = OperatorExpr.zero()
        for expr in self.orders:
            result = result + expr
        return result

    def order(self, k: int) -> OperatorExpr:
        return self.orders[k] if k <= self.max_order else OperatorExpr.zero()

    def is_input_mode(self, mode: ModeRef) -> bool:
        """True while the field is still exactly a_m with nothing at higher order."""
        identity = FieldSeries.mode(mode, self.max_order)
        return self == identity

    def __add__(self, other: 'FieldSeries') -> 'FieldSeries':
        size = max(len(self.orders), len(other.orders))
        return FieldSeries(tuple(self.order(k) + other.order(k) for k in range(size)))

    def scaled(self, factor: complex) -> 'FieldSeries':
        return FieldSeries(tuple(expr.scaled(factor) for expr in self.orders))

    def displaced(self, label: str, value: complex) -> 'FieldSeries':
        """Add a classical amplitude, tagged by ``label``, to the zeroth-order part."""
        orders = list(self.orders)
        orders[0] = orders[0] + OperatorExpr.classical(label, value)
        return FieldSeries(tuple(orders))

    def raised(self, factor: complex) -> 'FieldSeries':
        """Multiply by a first-order gain factor: order k moves to k+1, the top order is dropped."""
        zero = OperatorExpr.zero()
        shifted = (zero,) + tuple(expr.scaled(factor) for expr in self.orders[:-1])
        return FieldSeries(shifted)

    def adjoint(self) -> 'FieldSeries':
        return FieldSeries(tuple(adjoint(expr) for expr in self.orders))

    def annihilation_part(self, order: int = 0) -> OperatorExpr:
        return self.order(order).annihilation_part()


def series_product(factors: Sequence[FieldSeries], max_order: int) -> FieldSeries:
    """Ordered product of series, keeping total gain order ≤ ``max_order``."""
    result = FieldSeries.of(OperatorExpr.identity(), max_order)
    for factor in factors:
        orders = [OperatorExpr.zero() for _ in range(max_order + 1)]
        for i, left in enumerate(result.orders):
            if left.is_zero():
                continue
            for j, right in enumerate(factor.orders):
                if i + j > max_order or right.is_zero():
                    continue
                orders[i + j] = orders[i + j] + multiply(left, right)
        result = FieldSeries(tuple(orders))
    return result


def truncated_product(factors: Iterable[FieldSeries], max_order: int) -> OperatorExpr:
    """Normally ordered operator of the product, summed over kept orders."""
    return series_product(list(factors), max_order).total()
