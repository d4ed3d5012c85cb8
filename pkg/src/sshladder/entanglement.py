"""
Particle-number-resolved entanglement of two pairs of edge modes.

Alice holds modes (A1, A2), Bob holds (B1, B2). With one particle on each
side the four modes form two qubits, encoded as

    qubit A: |0> <-> particle in A1, |1> <-> particle in A2   (same for B)

so the ordered two-qubit basis is (A1B1, A1B2, A2B1, A2B2) with
|A_i B_j> = A_i^dag B_j^dag |0>, qubit A being the first tensor factor.
All entropies are in nats.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, EmptySector, NumericalError
from .gaussian import wick_expectation
from .model import LadderParams, mode_index

__all__ = [
    "EdgeSelection",
    "ProjectedDensityMatrix",
    "joint_number_distribution",
    "sector_weight",
    "number_entropy",
    "projected_density_matrix",
    "partial_transpose",
    "log_negativity",
    "concurrence",
    "entanglement_of_formation",
    "operational_entanglement",
    "fidelity",
    "clamp_nonnegative",
]

CLAMP_TOL = 1e-10
HARD_TOL = 1e-6
EMPTY_TOL = 1e-12


def clamp_nonnegative(x, what="value"):
    """Clip roundoff negatives to zero; clearly negative input is an error."""
    x = np.asarray(x, dtype=float)
    if x.size and x.min() < -HARD_TOL:
        raise NumericalError(f"{what} is negative beyond roundoff: {x.min():.3g}")
    return np.clip(x, 0.0, None)


@dataclass(frozen=True)
class EdgeSelection:
    """Four distinct mode indices: (A1, A2) for Alice, (B1, B2) for Bob."""

    A1: int
    A2: int
    B1: int
    B2: int

    def __post_init__(self):
        if len({self.A1, self.A2, self.B1, self.B2}) != 4:
            raise ValueError("edge modes must be four distinct indices")

    @classmethod
    def default(cls, params: LadderParams) -> "EdgeSelection":
        """a_1^1, a_1^3 on the left edge and b_L^1, b_L^3 on the right edge.

        For ladders with fewer than three legs the outermost leg M replaces leg 3.
        """
        far = min(3, params.M)
        if far == 1:
            raise ValueError("the default selection needs at least two legs")
        return cls(
            mode_index(params, "a", 1, 1),
            mode_index(params, "a", far, 1),
            mode_index(params, "b", 1, params.L),
            mode_index(params, "b", far, params.L),
        )

    @property
    def A(self):
        return (self.A1, self.A2)

    @property
    def B(self):
        return (self.B1, self.B2)

    @property
    def modes(self):
        return (self.A1, self.A2, self.B1, self.B2)


def _density_product(C, modes):
    return wick_expectation(C, modes, modes).real


def joint_number_distribution(C, sel: EdgeSelection) -> np.ndarray:
    """Table ``p[n_A, n_B]`` of local particle numbers, shape (3, 3).

    Every occupation pattern of the four modes is evaluated as
    <prod n (1 - n)>, expanded into density products and Wick determinants.
    """
    modes = sel.modes
    p = np.zeros((3, 3))
    for occ in itertools.product((0, 1), repeat=4):
        full = [m for m, o in zip(modes, occ) if o]
        empty = [m for m, o in zip(modes, occ) if not o]
        prob = 0.0
        for r in range(len(empty) + 1):
            for sub in itertools.combinations(empty, r):
                prob += (-1) ** r * _density_product(C, full + list(sub))
        p[occ[0] + occ[1], occ[2] + occ[3]] += prob
    return p


def sector_weight(C, sel: EdgeSelection) -> float:
    """<P^A P^B>: probability of one particle on each side (nine-term expansion)."""
    a1, a2, b1, b2 = sel.modes
    n = lambda *m: _density_product(C, list(m))  # noqa: E731
    return (
        n(a1, b1) + n(a1, b2) + n(a2, b1) + n(a2, b2)
        - 2 * n(a1, b1, b2) - 2 * n(a2, b1, b2)
        - 2 * n(a1, a2, b1) - 2 * n(a1, a2, b2)
        + 4 * n(a1, a2, b1, b2)
    )


def number_entropy(p) -> float:
    """Shannon entropy -sum p ln p of a number distribution (0 ln 0 = 0)."""
    p = clamp_nonnegative(np.ravel(p), "probability")
    p = p[p > 0]
    return float(-(p * np.log(p)).sum())


@dataclass(frozen=True)
class ProjectedDensityMatrix:
    """Normalized two-qubit state in the (1, 1) sector and that sector's weight."""

    rho: np.ndarray
    weight: float


def _local_terms(k, i, other):
    # P (c_k^dag c_i) P restricted to one particle on this side, as a list of
    # (coefficient, [(created, annihilated), ...]) normal-ordered pair products
    if k != i:
        return [(1.0, [(k, i)])]
    return [(1.0, [(i, i)]), (-1.0, [(i, i), (other, other)])]


def projected_density_matrix(C, sel: EdgeSelection, tol: float = EMPTY_TOL) -> ProjectedDensityMatrix:
    """rho^{1,1} with elements <A_k^dag B_l^dag B_j A_i> / p(1, 1).

    Row index ``(i, j)``, column index ``(k, l)``, both flattened as 2*i + j.
    Raises ``EmptySector`` when p(1, 1) <= ``tol``.
    """
    weight = sector_weight(C, sel)
    if weight <= tol:
        raise EmptySector(f"p(1,1) = {weight:.3g}")
    A, B = sel.A, sel.B
    rho = np.zeros((4, 4), dtype=complex)
    for i, j, k, l in itertools.product(range(2), repeat=4):
        total = 0j
        for ca, pa in _local_terms(A[k], A[i], A[1 - i]):
            for cb, pb in _local_terms(B[l], B[j], B[1 - j]):
                pairs = pa + pb
                total += ca * cb * wick_expectation(C, [x for x, _ in pairs], [y for _, y in pairs])
        rho[2 * i + j, 2 * k + l] = total
    rho /= weight
    return ProjectedDensityMatrix(rho=0.5 * (rho + rho.conj().T), weight=float(weight))


def partial_transpose(rho, dims=(2, 2)) -> np.ndarray:
    """Partial transpose over the first tensor factor."""
    da, db = dims
    r = np.asarray(rho).reshape(da, db, da, db)
    return r.transpose(2, 1, 0, 3).reshape(da * db, da * db)


def log_negativity(rho, dims=(2, 2)) -> float:
    """ln || rho^{T_A} ||_1.

    The trace norm is at least |tr rho| = 1, so roundoff below zero is clipped.
    """
    ev = np.linalg.eigvalsh(partial_transpose(rho, dims))
    return max(0.0, float(np.log(np.abs(ev).sum())))


_YY = np.kron([[0, -1j], [1j, 0]], [[0, -1j], [1j, 0]])


def _psd_sqrt(a):
    w, v = np.linalg.eigh(a)
    w = clamp_nonnegative(w, "eigenvalue")
    return (v * np.sqrt(w)) @ v.conj().T


def concurrence(rho) -> float:
    """Wootters concurrence of a two-qubit state."""
    rho = np.asarray(rho)
    tilde = _YY @ rho.conj() @ _YY
    s = _psd_sqrt(rho)
    lam = np.sqrt(clamp_nonnegative(np.linalg.eigvalsh(s @ tilde @ s), "eigenvalue"))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def entanglement_of_formation(rho) -> float:
    """Two-qubit entanglement of formation from the concurrence, in nats."""
    c = min(concurrence(rho), 1.0)
    x = 0.5 + 0.5 * np.sqrt(1 - c * c)
    return float(-sum(v * np.log(v) for v in (x, 1 - x) if 0 < v < 1)) + 0.0


_MEASURES = {"negativity": log_negativity, "formation": entanglement_of_formation}


def operational_entanglement(C, sel: EdgeSelection, measure: str = "negativity") -> float:
    """p(1, 1) E[rho^{1,1}]; an empty (1, 1) sector contributes zero.

    The other occupation sectors leave at least one side with a fixed,
    one-dimensional local state and so carry no entanglement.
    """
    try:
        pdm = projected_density_matrix(C, sel)
    except EmptySector:
        return 0.0
    return pdm.weight * _MEASURES[measure](pdm.rho)


def fidelity(rho, sigma) -> float:
    """Uhlmann fidelity [tr sqrt(sqrt(sigma) rho sqrt(sigma))]^2, clamped to [0, 1]."""
    rho, sigma = np.asarray(rho), np.asarray(sigma)
    if rho.shape != sigma.shape:
        raise DimensionMismatch(f"{rho.shape} vs {sigma.shape}")
    s = _psd_sqrt(sigma)
    ev = clamp_nonnegative(np.linalg.eigvalsh(s @ rho @ s), "eigenvalue")
    return float(np.clip(np.sqrt(ev).sum() ** 2, 0.0, 1.0))
