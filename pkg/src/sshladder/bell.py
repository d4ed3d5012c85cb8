"""
CHSH tests and the rotation protocol on the projected edge-mode state.

Measurement directions lie in the x-z plane, a.sigma = cos(t) sigma_z + sin(t) sigma_x,
and the CHSH combination is

    Sigma = E(a, b) - E(a', b) + E(a, b') + E(a', b').

One-parameter scans use theta_a = t, theta_b' = 2t, theta_a' = 3t, theta_b = 0,
which reaches 2 sqrt(2) at t = pi/4 for a Bell state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import EdgeSelection, fidelity, projected_density_matrix
from .errors import EmptySector
from .gaussian import evolve_many, ladder_ground_state, ladder_thermal_state, wick_expectation
from .model import LadderParams, real_space_hamiltonian

__all__ = [
    "PAULI",
    "ChshAngles",
    "ProtocolResult",
    "angle_schedule",
    "pauli_correlator",
    "wick_pauli_correlator",
    "chsh_sigma",
    "chsh_scan",
    "max_sigma",
    "thermal_chsh",
    "ground_state_chsh",
    "rotation_matrix",
    "protocol_hamiltonian",
    "rotation_protocol",
]

PAULI = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class ChshAngles:
    theta_a: float
    theta_a_prime: float
    theta_b: float
    theta_b_prime: float


def angle_schedule(theta: float) -> ChshAngles:
    return ChshAngles(theta_a=theta, theta_a_prime=3 * theta, theta_b=0.0, theta_b_prime=2 * theta)


def _rho(state):
    return state.rho if hasattr(state, "rho") else np.asarray(state)


def pauli_correlator(rho, axis_a: str, axis_b: str) -> float:
    """tr(rho sigma_a (x) sigma_b) in the two-qubit edge basis."""
    return float(np.trace(_rho(rho) @ np.kron(PAULI[axis_a], PAULI[axis_b])).real)


def _side_terms(axis, m1, m2):
    # sigma on one side as (coefficient, created, annihilated) bilinears
    if axis == "z":
        return [(1, m1, m1), (-1, m2, m2)]
    if axis == "x":
        return [(1, m1, m2), (1, m2, m1)]
    return [(-1j, m1, m2), (1j, m2, m1)]


def wick_pauli_correlator(C, sel: EdgeSelection, axis_a: str, axis_b: str) -> float:
    """<sigma_a sigma_b>_{1,1} straight from Wick contractions of C.

    On the one-particle-per-side sector the Pauli operators reduce to mode
    bilinears, so the correlator is a sum of four-point functions divided
    by p(1, 1). This bypasses the projected density matrix entirely.
    """
    from .entanglement import sector_weight

    w = sector_weight(C, sel)
    if w <= 1e-12:
        raise EmptySector(f"p(1,1) = {w:.3g}")
    total = 0j
    for ca, x, y in _side_terms(axis_a, sel.A1, sel.A2):
        for cb, u, v in _side_terms(axis_b, sel.B1, sel.B2):
            total += ca * cb * wick_expectation(C, [x, u], [y, v])
    return float((total / w).real)


def _direction(theta):
    return np.cos(theta) * PAULI["z"] + np.sin(theta) * PAULI["x"]


def chsh_sigma(rho, angles: ChshAngles) -> float:
    rho = _rho(rho)
    a, ap = _direction(angles.theta_a), _direction(angles.theta_a_prime)
    b, bp = _direction(angles.theta_b), _direction(angles.theta_b_prime)
    E = lambda x, y: np.trace(rho @ np.kron(x, y)).real  # noqa: E731
    return float(E(a, b) - E(ap, b) + E(a, bp) + E(ap, bp))


def chsh_scan(C, sel: EdgeSelection, thetas) -> list[tuple[float, float]]:
    """``(theta, Sigma)`` along the angle schedule; Sigma is NaN for an empty sector."""
    try:
        rho = projected_density_matrix(C, sel).rho
    except EmptySector:
        return [(float(t), float("nan")) for t in thetas]
    return [(float(t), chsh_sigma(rho, angle_schedule(t))) for t in thetas]


def max_sigma(scan) -> float:
    vals = np.array([s for _, s in scan], dtype=float)
    return float(np.nanmax(vals)) if np.isfinite(vals).any() else float("nan")


def thermal_chsh(params: LadderParams, sel: EdgeSelection, beta: float, thetas):
    """:func:`chsh_scan` on the Fermi-Dirac state at inverse temperature ``beta``."""
    return chsh_scan(ladder_thermal_state(params, beta), sel, thetas)


def ground_state_chsh(params: LadderParams, sel: EdgeSelection, thetas):
    return chsh_scan(ladder_ground_state(params), sel, thetas)


def rotation_matrix(angle: float = np.pi / 2) -> np.ndarray:
    """exp(-i angle/2 sigma_y): rotation by ``angle`` about y."""
    c, s = np.cos(angle / 2), np.sin(angle / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def protocol_hamiltonian(params: LadderParams, sel: EdgeSelection, kappa: float) -> np.ndarray:
    """h + lambda B1^dag B2 + h.c. with lambda = -i kappa."""
    h = real_space_hamiltonian(params).astype(complex)
    lam = -1j * kappa
    h[sel.B1, sel.B2] += lam
    h[sel.B2, sel.B1] += np.conj(lam)
    return h


@dataclass
class ProtocolResult:
    times: np.ndarray
    F1: np.ndarray
    F2: np.ndarray


def rotation_protocol(params: LadderParams, sel: EdgeSelection, kappa: float = 10.0,
                      times=None) -> ProtocolResult:
    """Fidelities of the evolved projected state with the initial and the B-rotated one.

    ``times`` defaults to 200 points on [0, 20].
    """
    times = np.linspace(0.0, 20.0, 200) if times is None else np.asarray(times, dtype=float)
    C0 = ladder_ground_state(params)
    rho = projected_density_matrix(C0, sel).rho
    R = np.kron(np.eye(2), rotation_matrix(np.pi / 2))
    target = R @ rho @ R.conj().T
    F1, F2 = [], []
    for Ct in evolve_many(C0, protocol_hamiltonian(params, sel, kappa), times):
        sigma = projected_density_matrix(Ct, sel).rho
        F1.append(fidelity(rho, sigma))
        F2.append(fidelity(target, sigma))
    return ProtocolResult(times=times, F1=np.array(F1), F2=np.array(F2))
