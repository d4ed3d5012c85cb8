"""
Number-conserving Gaussian states described by C_ij = <c_i^dag c_j>.

All functions take and return plain complex ``ndarray`` correlation
matrices in the real-space basis of the Hamiltonian they came from.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np
from scipy.special import expit

from .model import LadderParams, real_space_hamiltonian, sublattice_mask

__all__ = [
    "ground_state_correlations",
    "ladder_ground_state",
    "thermal_correlations",
    "ladder_thermal_state",
    "evolve",
    "evolve_many",
    "wick_expectation",
    "validate_correlations",
    "is_pure",
]


def _from_orbitals(V, occupation=None):
    # C = sum_n f_n phi_n^* phi_n^T
    if occupation is None:
        return V.conj() @ V.T
    return (V.conj() * occupation) @ V.T


def ground_state_correlations(h, n_filled=None, sublattice=None) -> np.ndarray:
    """Slater-determinant ground state with the ``n_filled`` lowest orbitals filled.

    Parameters
    ----------
    h : (N, N) array
        Hermitian hopping matrix.
    n_filled : int, optional
        Particle number; half filling ``N // 2`` by default.
    sublattice : (N,) bool array, optional
        Chiral grading of ``h`` (``h`` only couples True to False sites).
        At half filling the occupied subspace is then built from the polar
        factor of the off-diagonal block. This is the limit of an
        infinitesimal particle-hole splitting and stays well defined when
        edge modes are degenerate to machine precision, where eigenvectors
        returned by a dense eigensolver would mix the two sublattices
        arbitrarily.

    Notes
    -----
    Without ``sublattice``, orbitals are taken in ascending eigenvalue order
    as returned by ``numpy.linalg.eigh`` (ties keep the solver's order).
    """
    h = np.asarray(h)
    N = h.shape[0]
    n_filled = N // 2 if n_filled is None else int(n_filled)
    if not 0 <= n_filled <= N:
        raise ValueError(f"n_filled={n_filled} outside 0..{N}")
    if sublattice is not None and 2 * n_filled == N:
        mask = np.asarray(sublattice, dtype=bool)
        if 2 * mask.sum() == N:
            return _chiral_half_filling(h, mask)
    E, V = np.linalg.eigh(h)
    order = np.argsort(E, kind="stable")
    return _from_orbitals(V[:, order[:n_filled]])


def _chiral_half_filling(h, mask):
    up, dn = np.flatnonzero(mask), np.flatnonzero(~mask)
    if np.abs(h[np.ix_(up, up)]).max(initial=0) > 1e-12 or np.abs(h[np.ix_(dn, dn)]).max(initial=0) > 1e-12:
        raise ValueError("h is not off-diagonal in the given sublattice grading")
    W, _, Vh = np.linalg.svd(h[np.ix_(up, dn)])
    q = W @ Vh
    n = up.size
    # projector on the occupied orbitals (u, -v)/sqrt(2): P = (1 - [[0, q], [q^dag, 0]]) / 2
    P = np.zeros(h.shape, dtype=complex)
    P[np.ix_(up, up)] = 0.5 * np.eye(n)
    P[np.ix_(dn, dn)] = 0.5 * np.eye(n)
    P[np.ix_(up, dn)] = -0.5 * q
    P[np.ix_(dn, up)] = -0.5 * q.conj().T
    return P.conj()


def ladder_ground_state(params: LadderParams, n_filled=None) -> np.ndarray:
    """Ground-state correlations of a ladder, half filled by default."""
    return ground_state_correlations(
        real_space_hamiltonian(params), n_filled, sublattice=sublattice_mask(params)
    )


def thermal_correlations(h, beta: float) -> np.ndarray:
    """Grand-canonical correlations at inverse temperature ``beta`` and mu = 0."""
    if beta < 0:
        raise ValueError("beta must be non-negative")
    E, V = np.linalg.eigh(np.asarray(h))
    return _from_orbitals(V, expit(-beta * E))


def ladder_thermal_state(params: LadderParams, beta: float) -> np.ndarray:
    return thermal_correlations(real_space_hamiltonian(params), beta)


def _propagator(h, t):
    E, V = np.linalg.eigh(np.asarray(h))
    return (V * np.exp(-1j * E * t)) @ V.conj().T


def evolve(C, h_prime, t: float) -> np.ndarray:
    """Correlations after evolving for time ``t`` with hopping matrix ``h_prime``.

    With W = exp(-i h' t) this is C(t) = W^* C W^T, i.e.
    C(t) = exp(i h'^T t) C exp(-i h'^T t).
    """
    W = _propagator(h_prime, t)
    return W.conj() @ np.asarray(C) @ W.T


def evolve_many(C, h_prime, times) -> np.ndarray:
    """:func:`evolve` for every time in ``times``; shape ``(len(times), N, N)``."""
    E, V = np.linalg.eigh(np.asarray(h_prime))
    Ct = V.T @ np.asarray(C) @ V.conj()  # C in the eigenbasis of h'^T
    out = []
    for t in np.atleast_1d(times):
        ph = np.exp(1j * E * t)
        out.append(V.conj() @ (ph[:, None] * Ct * ph.conj()[None, :]) @ V.T)
    return np.array(out)


def wick_expectation(C, creators: Sequence[int], annihilators: Sequence[int]) -> complex:
    """<c^dag_{i1} ... c^dag_{ip} c_{jp} ... c_{j1}> = det[C_{i_a j_b}].

    Lists of different length violate particle-number conservation and give 0.
    """
    if len(creators) != len(annihilators):
        return 0j
    if not creators:
        return 1 + 0j
    return complex(np.linalg.det(np.asarray(C)[np.ix_(list(creators), list(annihilators))]))


def validate_correlations(C, atol: float = 1e-10) -> None:
    """Raise ``ValueError`` unless ``C`` is Hermitian with spectrum in [0, 1]."""
    C = np.asarray(C)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"correlation matrix must be square, got shape {C.shape}")
    if np.abs(C - C.conj().T).max(initial=0) > atol:
        raise ValueError("correlation matrix is not Hermitian")
    w = np.linalg.eigvalsh(C)
    if w.size and (w.min() < -atol or w.max() > 1 + atol):
        raise ValueError(f"occupations outside [0, 1]: [{w.min():.3g}, {w.max():.3g}]")


def is_pure(C, atol: float = 1e-10) -> bool:
    C = np.asarray(C)
    return bool(np.linalg.norm(C @ C - C) < atol)
