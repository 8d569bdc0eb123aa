"""
Photon-counting moments of an oracle state.
"""

import numpy as np

from .basis import FockState


def _occupations(state: FockState, slot: int) -> np.ndarray:
    shape = [1] * len(state.basis.shape)
    shape[slot] = state.basis.shape[slot]
    return np.arange(state.basis.shape[slot], dtype=float).reshape(shape)


def measure_rate(psi: FockState, m: str) -> float:
    """⟨a†_m a_m⟩ of the live mode ``m``, including any combiner scale."""
    slot = psi.slot(m)
    probabilities = psi.probabilities()
    mean = float(np.sum(probabilities * _occupations(psi, slot)))
    return psi.scale(m) ** 2 * mean


def measure_coincidence(psi: FockState, m1: str, m2: str) -> float:
    """
    ⟨a†_{m1} a†_{m2} a_{m2} a_{m1}⟩; for m1 == m2 this is the factorial
    moment ⟨n(n−1)⟩.
    """
    slot_1, slot_2 = psi.slot(m1), psi.slot(m2)
    probabilities = psi.probabilities()
    n1 = _occupations(psi, slot_1)
    if slot_1 == slot_2:
        moment = probabilities * n1 * (n1 - 1.0)
    else:
        moment = probabilities * n1 * _occupations(psi, slot_2)
    return psi.scale(m1) ** 2 * psi.scale(m2) ** 2 * float(np.sum(moment))
