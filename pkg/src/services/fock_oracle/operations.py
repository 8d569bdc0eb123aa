"""
State-vector evolution for oracle runs.

Component unitaries are built so that their Heisenberg action matches the
network rules: U†aU = e^{iφ}a for a phase shift, the two-mode squeezer
gives U†a_sU = cosh|ζ| a_s + e^{i arg ζ} sinh|ζ| a†_i, and a passive linear
component with mode matrix M is U = exp(Σ_jk (log M)_jk a†_j a_k).
"""

import math
from typing import Mapping, Optional, Sequence

import numpy as np
import scipy.sparse as sp
from scipy.linalg import logm, qr
from scipy.sparse.linalg import expm_multiply
from scipy.special import eval_genlaguerre, gammaln

from src.models.components import Combiner, ComponentBase, Filter, Mirror, PhaseShift, Seed
from src.services.mode_algebra import OperatorExpr, ladder_matrix, to_matrix
from src.utils import Logger
from .basis import DEFAULT_SETTINGS, FockState, OracleSettings
from .exceptions import CutoffLeakageError, OracleError, UnsupportedComponentError


def _check_leakage(state: FockState, slots: Sequence[int], settings: OracleSettings) -> FockState:
    worst = max(state.top_population(slot) for slot in slots)
    if worst > settings.leakage_tolerance:
        mode = state.basis.modes[max(slots, key=state.top_population)]
        raise CutoffLeakageError(
            f"Population {worst:.3e} reached the cutoff of mode '{mode}' "
            f"(tolerance {settings.leakage_tolerance:.1e})",
            mode=mode,
            leakage=worst,
        )
    return state.evolved(state.amplitudes, leakage=max(state.leakage, worst))


def apply_squeezer(
    psi: FockState,
    s: str,
    i: str,
    c: complex,
    phi_p: float = 0.0,
    settings: OracleSettings = DEFAULT_SETTINGS,
    min_terms: int = 0,
) -> FockState:
    """
    Apply exp(ζ a†_s a†_i − ζ* a_s a_i), ζ = C·e^{iφ_p}, by Taylor series.

    Terms are added until the norm of the last one drops below the series
    tolerance (and at least ``min_terms`` have been summed).
    """
    if s == i:
        raise OracleError("Squeezer modes must be distinct")
    zeta = complex(c) * complex(math.cos(phi_p), math.sin(phi_p))
    if zeta == 0:
        return psi

    slot_s, slot_i = psi.slot(s), psi.slot(i)
    name_s, name_i = psi.basis.modes[slot_s], psi.basis.modes[slot_i]
    pair = OperatorExpr.creator(name_s) * OperatorExpr.creator(name_i)
    generator_expr = pair.scaled(zeta) - (OperatorExpr.annihilator(name_s) * OperatorExpr.annihilator(name_i)).scaled(
        zeta.conjugate()
    )
    generator = to_matrix(generator_expr, psi.basis.modes, psi.basis.cutoffs)

    result = psi.amplitudes.copy()
    term = psi.amplitudes.copy()
    k = 0
    while True:
        k += 1
        term = generator @ term / k
        result = result + term
        if np.linalg.norm(term) < settings.series_tolerance and k >= min_terms:
            break
        if k >= settings.max_series_terms:
            raise OracleError(f"Squeezer series did not converge in {k} terms")

    Logger.debug(f"Squeezer on ({s}, {i}) converged after {k} terms")
    state = psi.evolved(result, series_terms=max(psi.series_terms, k))
    return _check_leakage(state, (slot_s, slot_i), settings)


def displacement_matrix(alpha: complex, cutoff: int) -> np.ndarray:
    """
    Exact matrix elements ⟨m|D(α)|n⟩ for m, n ≤ cutoff:
    √(n!/m!) α^{m−n} e^{−|α|²/2} L_n^{(m−n)}(|α|²) for m ≥ n, and the
    mirrored expression with −α* for m < n.
    """
    x = abs(alpha) ** 2
    matrix = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for m in range(cutoff + 1):
        for n in range(cutoff + 1):
            if m >= n:
                low, high, amp = n, m, alpha
            else:
                low, high, amp = m, n, -alpha.conjugate()
            prefactor = math.exp(0.5 * (gammaln(low + 1) - gammaln(high + 1)) - x / 2.0)
            matrix[m, n] = prefactor * amp ** (high - low) * eval_genlaguerre(low, high - low, x)
    return matrix


def _single_mode_operator(state: FockState, slot: int, block: np.ndarray) -> sp.csr_matrix:
    factor = sp.identity(1, dtype=complex, format='csr')
    for index, cutoff in enumerate(state.basis.cutoffs):
        piece = sp.csr_matrix(block) if index == slot else sp.identity(cutoff + 1, dtype=complex, format='csr')
        factor = sp.kron(factor, piece, format='csr')
    return factor


def displace(
    psi: FockState,
    mode: str,
    alpha: complex,
    settings: OracleSettings = DEFAULT_SETTINGS,
) -> FockState:
    """Apply D(α); the norm lost to the truncation is the leakage."""
    slot = psi.slot(mode)
    operator = _single_mode_operator(psi, slot, displacement_matrix(complex(alpha), psi.basis.cutoffs[slot]))
    amplitudes = operator @ psi.amplitudes
    lost = max(0.0, psi.norm ** 2 - float(np.linalg.norm(amplitudes)) ** 2)
    if lost > settings.leakage_tolerance:
        raise CutoffLeakageError(
            f"Displacement by α={alpha} on '{mode}' loses {lost:.3e} of the norm at cutoff "
            f"{psi.basis.cutoffs[slot]}",
            mode=mode,
            leakage=lost,
        )
    return psi.evolved(amplitudes, leakage=max(psi.leakage, lost))


def _mode_unitary(state: FockState, slots: Sequence[int], matrix: np.ndarray) -> sp.csr_matrix:
    """Generator Σ_jk (log M)_jk a†_j a_k on the given slots."""
    log = logm(matrix)
    log = 0.5 * (log - log.conj().T)
    generator = sp.csr_matrix((state.basis.dimension, state.basis.dimension), dtype=complex)
    cutoffs = state.basis.cutoffs
    for row, slot_j in enumerate(slots):
        creator = ladder_matrix(slot_j, cutoffs, dagger=True)
        for col, slot_k in enumerate(slots):
            if abs(log[row, col]) < 1e-15:
                continue
            generator = generator + log[row, col] * (creator @ ladder_matrix(slot_k, cutoffs))
    return generator.tocsr()


def _apply_mode_matrix(
    psi: FockState,
    slots: Sequence[int],
    matrix: np.ndarray,
    settings: OracleSettings,
) -> FockState:
    generator = _mode_unitary(psi, slots, matrix)
    amplitudes = expm_multiply(generator, psi.amplitudes)
    return _check_leakage(psi.evolved(amplitudes), slots, settings)


def _phase(psi: FockState, mode: str, phi: float) -> FockState:
    slot = psi.slot(mode)
    cutoff = psi.basis.cutoffs[slot]
    block = np.diag(np.exp(1j * phi * np.arange(cutoff + 1)))
    return psi.evolved(_single_mode_operator(psi, slot, block) @ psi.amplitudes)


def completed_unitary(row: Sequence[complex]) -> np.ndarray:
    """Unitary matrix whose first row is the given unit vector."""
    row = np.asarray(row, dtype=complex)
    size = len(row)
    seed = np.eye(size, dtype=complex)
    seed[:, 0] = row.conj()
    q, _ = qr(seed)
    first = q[:, 0]
    pivot = int(np.argmax(np.abs(first)))
    q[:, 0] *= row.conj()[pivot] / first[pivot]
    return q.conj().T


def _filter(psi: FockState, c: Filter, settings: OracleSettings) -> FockState:
    slots = (psi.slot(c.mode), psi.slot(c.ancilla))
    tau = complex(c.tau)
    loss = c.loss_amplitude
    matrix = np.array([[tau, loss], [-loss, tau.conjugate()]], dtype=complex)
    if np.allclose(matrix, np.eye(2)):
        return psi
    return _apply_mode_matrix(psi, slots, matrix, settings)


def _combiner(psi: FockState, c: Combiner, settings: OracleSettings) -> FockState:
    """
    Σ w_k a_k = N·b with b a canonical mode: the unitary completing b/N is
    applied, b takes the slot of the output (or of the first input) and the
    rate scale N is remembered for measurements.
    """
    order = list(c.inputs)
    if c.output in order:
        order.remove(c.output)
        order.insert(0, c.output)
    weights = [c.weights[c.inputs.index(label)] for label in order]
    norm = math.sqrt(sum(abs(w) ** 2 for w in weights))
    if any(psi.scale(label) != 1.0 for label in order):
        raise UnsupportedComponentError("Combining already-scaled combiner outputs is not supported")

    slots = [psi.slot(label) for label in order]
    matrix = completed_unitary(np.asarray(weights) / norm)
    state = _apply_mode_matrix(psi, slots, matrix, settings)

    remaining = {label: slot for label, slot in state.slots.items() if label not in c.inputs}
    remaining[c.output] = slots[0]
    scales = {label: value for label, value in state.scales.items() if label not in c.inputs}
    scales[c.output] = norm
    return state.evolved(state.amplitudes, slots=remaining, scales=scales)


def apply_linear(
    psi: FockState,
    component: ComponentBase,
    settings: OracleSettings = DEFAULT_SETTINGS,
) -> FockState:
    """Apply a PhaseShift, Mirror, Filter, Combiner or Seed component."""
    if isinstance(component, PhaseShift):
        return _phase(psi, component.mode, component.phi)
    if isinstance(component, Mirror):
        return _phase(psi, component.mode, math.pi / 2)
    if isinstance(component, Filter):
        return _filter(psi, component, settings)
    if isinstance(component, Combiner):
        return _combiner(psi, component, settings)
    if isinstance(component, Seed):
        return displace(psi, component.mode, complex(component.alpha), settings)
    raise UnsupportedComponentError(f"{type(component).__name__} is not a linear component")


def initial_state(
    basis,
    amplitudes: Optional[Mapping[str, complex]] = None,
    settings: OracleSettings = DEFAULT_SETTINGS,
) -> FockState:
    """Vacuum, displaced on every mode listed in ``amplitudes``."""
    state = FockState.vacuum(basis)
    for mode, alpha in (amplitudes or {}).items():
        if alpha != 0:
            state = displace(state, mode, complex(alpha), settings)
    return state
