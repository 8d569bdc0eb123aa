"""
Normally ordered bosonic operator expressions.

An ``OperatorExpr`` is a finite sum of complex-weighted monomials. Each
monomial is stored by its signature: per-mode exponents of the creation
operators and of the annihilation operators. Because the canonical form
is normally ordered (all creators left of all annihilators, modes sorted
by label inside each group), the signature determines the operator and
terms with equal signatures merge in O(1).
"""

from collections import Counter
from dataclasses import dataclass
from itertools import product
from math import comb, factorial, prod
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Union

from src.models.modes import ModeRef, mode_label


PRUNE_THRESHOLD = 1e-15

Exponents = tuple[tuple[str, int], ...]
Signature = tuple[Exponents, Exponents]

Scalar = Union[int, float, complex]

IDENTITY_SIGNATURE: Signature = ((), ())

# Labels with this prefix are classical amplitudes: their ladder symbols commute
# with their own adjoints and evaluate to 1 in every state.
CLASSICAL_PREFIX = "~"


def is_classical(label: str) -> bool:
    return label.startswith(CLASSICAL_PREFIX)


def _canonical(counts: Mapping[str, int]) -> Exponents:
    return tuple(sorted((label, power) for label, power in counts.items() if power > 0))


@dataclass(frozen=True)
class Monomial:
    """A single normally ordered term ``coeff * (creators)(annihilators)``."""
    coeff: complex
    creators: Exponents
    annihilators: Exponents

    @property
    def signature(self) -> Signature:
        return self.creators, self.annihilators

    @property
    def degree(self) -> int:
        """Total number of ladder operators in the monomial."""
        return sum(power for _, power in self.creators) + sum(power for _, power in self.annihilators)

    @property
    def modes(self) -> frozenset[str]:
        return frozenset(label for label, _ in self.creators + self.annihilators)

    def __str__(self) -> str:
        factors = [f"a†_{label}" + (f"^{power}" if power > 1 else "") for label, power in self.creators]
        factors += [f"a_{label}" + (f"^{power}" if power > 1 else "") for label, power in self.annihilators]
        return f"({self.coeff:.6g})" + ("·" + "·".join(factors) if factors else "")


def multiply_signatures(left: Signature, right: Signature) -> Iterator[tuple[Signature, int]]:
    """
    Normally order the product of two normally ordered monomials.

    Only the annihilators of ``left`` meeting the creators of ``right`` on the
    same mode need reordering; per mode
    a^q a†^r = Σ_k C(q,k) C(r,k) k! a†^(r-k) a^(q-k).
    Classical symbols never contract.
    Yields (signature, integer weight) pairs.
    """
    left_creators, left_annihilators = left
    right_creators, right_annihilators = right

    left_ann = dict(left_annihilators)
    right_cre = dict(right_creators)
    shared = sorted(label for label in set(left_ann) & set(right_cre) if not is_classical(label))

    contraction_choices = [
        [(k, comb(left_ann[label], k) * comb(right_cre[label], k) * factorial(k))
         for k in range(min(left_ann[label], right_cre[label]) + 1)]
        for label in shared
    ]

    for choice in product(*contraction_choices):
        creators = Counter(dict(left_creators))
        creators.update(right_cre)
        annihilators = Counter(left_ann)
        annihilators.update(dict(right_annihilators))
        for label, (k, _) in zip(shared, choice):
            creators[label] -= k
            annihilators[label] -= k
        weight = prod(w for _, w in choice)
        yield (_canonical(creators), _canonical(annihilators)), weight


class OperatorExpr:
    """
    Immutable sum of normally ordered monomials.

    Construction merges equal signatures and drops coefficients whose
    magnitude falls below ``PRUNE_THRESHOLD``.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Mapping[Signature, Scalar] | Iterable[tuple[Signature, Scalar]] | None = None):
        merged: dict[Signature, complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else (terms or ())
        for signature, coeff in items:
            merged[signature] = merged.get(signature, 0j) + complex(coeff)
        self._terms = MappingProxyType({
            signature: coeff for signature, coeff in sorted(merged.items())
            if abs(coeff) >= PRUNE_THRESHOLD
        })

    # ------------------------------------------------------------------
    # Constructors
    # ------------------------------------------------------------------

    @classmethod
    def zero(cls) -> 'OperatorExpr':
        return cls()

    @classmethod
    def scalar(cls, value: Scalar) -> 'OperatorExpr':
        return cls({IDENTITY_SIGNATURE: value})

    @classmethod
    def identity(cls) -> 'OperatorExpr':
        return cls.scalar(1.0)

    @classmethod
    def annihilator(cls, mode: ModeRef, coeff: Scalar = 1.0) -> 'OperatorExpr':
        return cls({((), ((mode_label(mode), 1),)): coeff})

    @classmethod
    def creator(cls, mode: ModeRef, coeff: Scalar = 1.0) -> 'OperatorExpr':
        return cls({(((mode_label(mode), 1),), ()): coeff})

    @classmethod
    def classical(cls, label: str, value: Scalar) -> 'OperatorExpr':
        """A classical amplitude ``value`` carried by the commuting symbol ``label``."""
        if not is_classical(label):
            label = CLASSICAL_PREFIX + label
        return cls.annihilator(label, value)

    @classmethod
    def number(cls, mode: ModeRef) -> 'OperatorExpr':
        label = mode_label(mode)
        return cls({(((label, 1),), ((label, 1),)): 1.0})

    # ------------------------------------------------------------------
    # Inspection
    # ------------------------------------------------------------------

    @property
    def terms(self) -> Mapping[Signature, complex]:
        return self._terms

    def monomials(self) -> Iterator[Monomial]:
        for (creators, annihilators), coeff in self._terms.items():
            yield Monomial(coeff, creators, annihilators)

    @property
    def modes(self) -> frozenset[str]:
        labels: set[str] = set()
        for monomial in self.monomials():
            labels |= monomial.modes
        return frozenset(labels)

    def is_zero(self) -> bool:
        return not self._terms

    def scalar_part(self) -> complex:
        return self._terms.get(IDENTITY_SIGNATURE, 0j)

    def annihilation_part(self) -> 'OperatorExpr':
        """Terms built from annihilators only (no creators, no constant)."""
        return OperatorExpr({
            sig: coeff for sig, coeff in self._terms.items() if not sig[0] and sig[1]
        })

    def coefficient(self, creators: Exponents = (), annihilators: Exponents = ()) -> complex:
        return self._terms.get((creators, annihilators), 0j)

    def allclose(self, other: 'OperatorExpr', atol: float = 1e-12) -> bool:
        signatures = set(self._terms) | set(other.terms)
        return all(
            abs(self._terms.get(sig, 0j) - other.terms.get(sig, 0j)) <= atol
            for sig in signatures
        )

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: Union['OperatorExpr', Scalar]) -> 'OperatorExpr':
        other = _as_expr(other)
        return OperatorExpr(list(self._terms.items()) + list(other.terms.items()))

    __radd__ = __add__

    def __neg__(self) -> 'OperatorExpr':
        return OperatorExpr({sig: -coeff for sig, coeff in self._terms.items()})

    def __sub__(self, other: Union['OperatorExpr', Scalar]) -> 'OperatorExpr':
        return self + (-_as_expr(other))

    def __rsub__(self, other: Scalar) -> 'OperatorExpr':
        return _as_expr(other) - self

    def scaled(self, factor: Scalar) -> 'OperatorExpr':
        factor = complex(factor)
        return OperatorExpr({sig: coeff * factor for sig, coeff in self._terms.items()})

    def __mul__(self, other: Union['OperatorExpr', Scalar]) -> 'OperatorExpr':
        if isinstance(other, OperatorExpr):
            return _product(self, other)
        return self.scaled(other)

    def __rmul__(self, other: Scalar) -> 'OperatorExpr':
        return self.scaled(other)

    # ------------------------------------------------------------------
    # Dunder plumbing
    # ------------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, float, complex)):
            other = OperatorExpr.scalar(other)
        if not isinstance(other, OperatorExpr):
            return NotImplemented
        return dict(self._terms) == dict(other.terms)

    def __hash__(self) -> int:
        return hash(tuple(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        if not self._terms:
            return "OperatorExpr(0)"
        return "OperatorExpr(" + " + ".join(str(m) for m in self.monomials()) + ")"


def _as_expr(value: Union[OperatorExpr, Scalar]) -> OperatorExpr:
    return value if isinstance(value, OperatorExpr) else OperatorExpr.scalar(value)


def _product(left: OperatorExpr, right: OperatorExpr) -> OperatorExpr:
    accumulated: list[tuple[Signature, complex]] = []
    for left_sig, left_coeff in left.terms.items():
        for right_sig, right_coeff in right.terms.items():
            coeff = left_coeff * right_coeff
            for signature, weight in multiply_signatures(left_sig, right_sig):
                accumulated.append((signature, coeff * weight))
    return OperatorExpr(accumulated)
