"""
Brute-force Fock-space reference for small systems.

Basis states are integers whose bit ``i`` is the occupation of mode ``i``.
A basis state stands for c^dag_{i1} c^dag_{i2} ... |0> with i1 < i2 < ...,
so c^dag_m picks up (-1)^(number of occupied modes below m).
This module is independent of the Gaussian machinery and is used to check it.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse as sp

from .entanglement import EdgeSelection, log_negativity
from .errors import TooLarge
from .model import LadderParams, real_space_hamiltonian

__all__ = [
    "MAX_MODES",
    "FockState",
    "ladder_op",
    "many_body_hamiltonian",
    "sector_states",
    "fock_ground_state",
    "fock_expectation",
    "fock_correlations",
    "reorder_modes",
    "reduced_density_matrix",
    "fock_number_distribution",
    "fock_projected_density_matrix",
    "fock_operational_entanglement",
]

MAX_MODES = 14


def _check_size(n_modes):
    if n_modes > MAX_MODES:
        raise TooLarge(f"{n_modes} modes exceeds the oracle limit of {MAX_MODES}")


@dataclass
class FockState:
    amplitudes: np.ndarray  # length 2**n_modes
    n_modes: int
    energy: float = float("nan")
    gap: float = float("nan")  # to the next state in the same particle-number sector


def _popcount(x):
    return np.bitwise_count(x).astype(np.int64)


def ladder_op(n_modes: int, mode: int, dagger: bool) -> sp.csr_matrix:
    """Sparse matrix of c^dag_mode (``dagger``) or c_mode on the full Fock space."""
    _check_size(n_modes)
    states = np.arange(2**n_modes, dtype=np.int64)
    bit = 1 << mode
    occupied = (states & bit) != 0
    src = states[~occupied] if dagger else states[occupied]
    dst = src | bit if dagger else src & ~bit
    sign = 1.0 - 2.0 * (_popcount(src & (bit - 1)) % 2)
    return sp.csr_matrix((sign, (dst, src)), shape=(2**n_modes, 2**n_modes))


def many_body_hamiltonian(h) -> sp.csr_matrix:
    """sum_ij h_ij c^dag_i c_j on the full Fock space."""
    h = np.asarray(h)
    n = h.shape[0]
    _check_size(n)
    states = np.arange(2**n, dtype=np.int64)
    rows, cols, data = [], [], []
    for i, j in zip(*np.nonzero(h)):
        bi, bj = 1 << int(i), 1 << int(j)
        s = states[(states & bj) != 0]
        s1 = s & ~bj
        sign = 1.0 - 2.0 * (_popcount(s & (bj - 1)) % 2)
        ok = (s1 & bi) == 0
        s, s1, sign = s[ok], s1[ok], sign[ok]
        sign = sign * (1.0 - 2.0 * (_popcount(s1 & (bi - 1)) % 2))
        rows.append(s1 | bi)
        cols.append(s)
        data.append(h[i, j] * sign)
    if not rows:
        return sp.csr_matrix((2**n, 2**n), dtype=complex)
    return sp.coo_matrix(
        (np.concatenate(data).astype(complex), (np.concatenate(rows), np.concatenate(cols))),
        shape=(2**n, 2**n),
    ).tocsr()


def sector_states(n_modes: int, n_particles: int) -> np.ndarray:
    states = np.arange(2**n_modes, dtype=np.int64)
    return states[_popcount(states) == n_particles]


def fock_ground_state(system, n_particles=None) -> FockState:
    """Lowest eigenstate of the many-body Hamiltonian with ``n_particles`` fermions.

    ``system`` is a :class:`LadderParams` or a single-particle matrix h.
    Half filling by default. The global phase is fixed by making the first
    non-negligible amplitude real and positive.
    """
    h = real_space_hamiltonian(system) if isinstance(system, LadderParams) else np.asarray(system)
    n = h.shape[0]
    _check_size(n)
    n_particles = n // 2 if n_particles is None else n_particles
    idx = sector_states(n, n_particles)
    H = many_body_hamiltonian(h)[idx][:, idx].toarray()
    if not np.iscomplexobj(h) or not np.abs(H.imag).any():
        H = H.real
    E, V = scipy.linalg.eigh(H, subset_by_index=[0, min(1, len(idx) - 1)])
    vec = V[:, 0].astype(complex)
    first = vec[np.flatnonzero(np.abs(vec) > 1e-12)[0]]
    vec = vec * (abs(first) / first)
    amps = np.zeros(2**n, dtype=complex)
    amps[idx] = vec
    gap = float(E[1] - E[0]) if len(E) > 1 else float("inf")
    return FockState(amps, n, float(E[0]), gap)


def fock_expectation(state: FockState, terms) -> complex:
    """<state| sum_t coef_t * op_t |state>.

    ``terms`` is a list of ``(coef, [(mode, dagger), ...])``; each operator
    string is read left to right as written, e.g. ``[(i, True), (j, False)]``
    is c^dag_i c_j.
    """
    total = 0j
    psi = state.amplitudes
    for coef, ops in terms:
        v = psi
        for mode, dagger in reversed(ops):
            v = ladder_op(state.n_modes, mode, dagger) @ v
        total += coef * np.vdot(psi, v)
    return complex(total)


def fock_correlations(state: FockState) -> np.ndarray:
    """C_ij = <c^dag_i c_j> computed in Fock space."""
    n = state.n_modes
    cs = [ladder_op(n, i, False) @ state.amplitudes for i in range(n)]
    # <c^dag_i c_j> = (c_i psi)^dag (c_j psi)
    return np.array([[np.vdot(cs[i], cs[j]) for j in range(n)] for i in range(n)])


def reorder_modes(state: FockState, order) -> FockState:
    """Relabel modes so that old mode ``order[k]`` becomes mode ``k``."""
    n = state.n_modes
    order = list(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the modes")
    newpos = np.empty(n, dtype=int)
    newpos[order] = np.arange(n)
    states = np.arange(2**n, dtype=np.int64)
    occ = [(states >> m) & 1 for m in range(n)]
    inversions = np.zeros(2**n, dtype=np.int64)
    for p, q in itertools.combinations(range(n), 2):
        if newpos[p] > newpos[q]:
            inversions += occ[p] & occ[q]
    new_index = np.zeros(2**n, dtype=np.int64)
    for m in range(n):
        new_index |= occ[m] << newpos[m]
    amps = np.zeros_like(state.amplitudes)
    amps[new_index] = state.amplitudes * (1 - 2 * (inversions % 2))
    return FockState(amps, n, state.energy, state.gap)


def reduced_density_matrix(state: FockState, modes) -> np.ndarray:
    """Exact reduced density matrix of ``modes``.

    Index of a local basis state: sum_k n_{modes[k]} 2^k.
    """
    modes = list(modes)
    rest = [m for m in range(state.n_modes) if m not in modes]
    psi = reorder_modes(state, modes + rest).amplitudes
    psi = psi.reshape(2 ** len(rest), 2 ** len(modes))
    return psi.T @ psi.conj()


def _local_numbers(n_local):
    s = np.arange(2**n_local)
    return np.array([(s >> k) & 1 for k in range(n_local)])


def fock_number_distribution(state: FockState, sel: EdgeSelection) -> np.ndarray:
    rho = reduced_density_matrix(state, sel.modes)
    occ = _local_numbers(4)
    nA, nB = occ[0] + occ[1], occ[2] + occ[3]
    p = np.zeros((3, 3))
    np.add.at(p, (nA, nB), np.diag(rho).real)
    return p


def fock_projected_density_matrix(state: FockState, sel: EdgeSelection):
    """(rho^{1,1}, p(1,1)) in the basis (A1B1, A1B2, A2B1, A2B2)."""
    rho = reduced_density_matrix(state, sel.modes)
    # |A_i B_j>: A1 is local bit 0, A2 bit 1, B1 bit 2, B2 bit 3
    basis = [(1 << i) | (1 << (2 + j)) for i in range(2) for j in range(2)]
    block = rho[np.ix_(basis, basis)]
    w = float(np.trace(block).real)
    return block / w, w


def fock_operational_entanglement(state: FockState, sel: EdgeSelection, tol: float = 1e-12):
    """sum over all (n_A, n_B) sectors of p(n_A, n_B) E_neg[rho^{n_A, n_B}].

    Returns ``(total, {(n_A, n_B): (p, E_neg)})``.
    """
    rho = reduced_density_matrix(state, sel.modes)
    s = np.arange(16)
    a, b = s & 3, s >> 2  # Alice's two bits, Bob's two bits
    perm = np.argsort(a * 4 + b)  # local index ordered with Alice as the slow factor
    rho = rho[np.ix_(perm, perm)]
    occ = _local_numbers(4)[:, perm]
    nA, nB = occ[0] + occ[1], occ[2] + occ[3]
    total, sectors = 0.0, {}
    for na, nb in itertools.product(range(3), repeat=2):
        keep = ((nA == na) & (nB == nb)).astype(float)
        block = keep[:, None] * rho * keep[None, :]
        p = float(np.trace(block).real)
        if p <= tol:
            sectors[(na, nb)] = (p, 0.0)
            continue
        e = log_negativity(block / p, dims=(4, 4))
        sectors[(na, nb)] = (p, e)
        total += p * e
    return total, sectors
