"""
Truncated Fock-space matrix representations of operator expressions.

Modes are laid out in the given order with the first mode most significant
(C-order), matching ``numpy.reshape`` of the multimode amplitude tensor.
"""

from functools import lru_cache
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .operators import OperatorExpr


@lru_cache(maxsize=256)
def _ladder_power(cutoff: int, creators: int, annihilators: int) -> sp.csr_matrix:
    """Single-mode (a†)^creators (a)^annihilators on levels 0..cutoff."""
    a = sp.diags(np.sqrt(np.arange(1, cutoff + 1, dtype=float)), offsets=1,
                 shape=(cutoff + 1, cutoff + 1), format='csr', dtype=complex)
    result = sp.identity(cutoff + 1, dtype=complex, format='csr')
    for _ in range(creators):
        result = result @ a.T
    for _ in range(annihilators):
        result = result @ a
    return result.tocsr()


def to_matrix(e: OperatorExpr, modes: Sequence[str], cutoffs: Sequence[int]) -> sp.csr_matrix:
    """
    Sparse matrix of ``e`` on the truncated product space.

    Each normally ordered monomial is represented as (a†)^p (a)^q per mode,
    which is exact on every matrix element whose occupations stay at least
    the monomial degree below the cutoff.
    """
    if len(modes) != len(cutoffs):
        raise ValueError("modes and cutoffs must have the same length")
    missing = e.modes - set(modes)
    if missing:
        raise ValueError(f"expression acts on modes outside the basis: {sorted(missing)}")

    dimension = int(np.prod([c + 1 for c in cutoffs]))
    total = sp.csr_matrix((dimension, dimension), dtype=complex)
    for monomial in e.monomials():
        creators = dict(monomial.creators)
        annihilators = dict(monomial.annihilators)
        factor = sp.identity(1, dtype=complex, format='csr')
        for label, cutoff in zip(modes, cutoffs):
            factor = sp.kron(
                factor,
                _ladder_power(cutoff, creators.get(label, 0), annihilators.get(label, 0)),
                format='csr',
            )
        total = total + monomial.coeff * factor
    return total.tocsr()


def ladder_matrix(mode_index: int, cutoffs: Sequence[int], dagger: bool = False) -> sp.csr_matrix:
    """Matrix of a single a_m (or a†_m) on the truncated product space."""
    factor = sp.identity(1, dtype=complex, format='csr')
    for index, cutoff in enumerate(cutoffs):
        if index == mode_index:
            block = _ladder_power(cutoff, int(dagger), int(not dagger))
        else:
            block = sp.identity(cutoff + 1, dtype=complex, format='csr')
        factor = sp.kron(factor, block, format='csr')
    return factor
