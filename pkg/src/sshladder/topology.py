"""
Winding-number invariants of the SSH ladder.

Two numerical routes are provided and are meant to be checked against each
other:

* :func:`winding_green` integrates tr[U g^{-1} dg/dk] / (4 pi i) with
  g = H^{-1}, using the midpoint rule and a symmetric finite difference for
  dg/dk on the same grid.
* :func:`winding_projector` forms Q(k) = 1 - 2P(k) from the occupied Bloch
  states, reads off the off-diagonal block q(k) in the eigenbasis of U and
  counts how often det q(k) winds around the origin.

No gauge fixing of Bloch eigenvectors is needed: P(k) and det q(k) are gauge
invariant. Orientation is fixed so that a single chain with delta > 0 has
winding +1.

:func:`winding_analytic` is the closed-form result for uniform dimerization
and weak interchain coupling.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GaplessSpectrum, LadderError, UnderResolved
from .model import LadderParams, SymmetryKind, bloch_hamiltonian, chiral_unitary, momentum_grid

__all__ = [
    "InvariantResult",
    "NotApplicable",
    "DEFAULT_NK",
    "band_gap",
    "winding_green",
    "winding_projector",
    "winding_analytic",
    "invariant",
    "phase_grid",
]

DEFAULT_NK = 256
ROUND_TOL = 1e-3
GAP_TOL = 1e-8


@dataclass(frozen=True)
class InvariantResult:
    value: int
    raw: float
    residual: float
    gap: float


class _NotApplicableType:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "NotApplicable"

    def __bool__(self):
        return False


NotApplicable = _NotApplicableType()


def band_gap(params: LadderParams, n_k: int = DEFAULT_NK) -> float:
    """Smallest |E(k)| over the grid k = 2 pi n / n_k."""
    E = np.linalg.eigvalsh(bloch_hamiltonian(params, momentum_grid(n_k)))
    return float(np.abs(E).min())


def _checked_gap(params, n_k, gap_tol, *grids):
    gap = band_gap(params, n_k)
    for Hk in grids:
        gap = min(gap, float(np.abs(np.linalg.eigvalsh(Hk)).min()))
    if gap <= gap_tol:
        raise GaplessSpectrum(f"spectrum closes on the grid (gap = {gap:.3g})")
    return gap


def _finish(raw, gap, round_tol):
    value = int(np.rint(raw))
    residual = abs(raw - value)
    if residual >= round_tol:
        raise UnderResolved(f"winding {raw:.6f} is not close to an integer")
    return InvariantResult(value=value, raw=float(raw), residual=float(residual), gap=gap)


def winding_green(
    params: LadderParams,
    kind=SymmetryKind.S,
    n_k: int = DEFAULT_NK,
    round_tol: float = ROUND_TOL,
    gap_tol: float = GAP_TOL,
) -> InvariantResult:
    """Green's-function winding number on an ``n_k``-point midpoint grid."""
    U = chiral_unitary(params, kind)
    dk = 2 * np.pi / n_k
    H = bloch_hamiltonian(params, momentum_grid(n_k, midpoint=True))
    gap = _checked_gap(params, n_k, gap_tol, H)
    g = np.linalg.inv(H)
    dg = (np.roll(g, -1, axis=0) - np.roll(g, 1, axis=0)) / (2 * dk)
    # g^{-1} = H
    integrand = np.einsum("ij,kjl,kli->k", U, H, dg)
    raw = (integrand.sum() * dk / (4j * np.pi)).real
    return _finish(raw, gap, round_tol)


def _block_basis(U):
    # columns: +1 eigenvectors of U first, then -1 eigenvectors
    w, W = np.linalg.eigh(U)
    return W[:, np.argsort(-w, kind="stable")]


def q_matrices(params: LadderParams, kind=SymmetryKind.S, n_k: int = DEFAULT_NK) -> np.ndarray:
    """Off-diagonal block q(k) of Q(k) = 1 - 2P(k) on the midpoint grid."""
    M = params.M
    W = _block_basis(chiral_unitary(params, kind))
    H = bloch_hamiltonian(params, momentum_grid(n_k, midpoint=True))
    E, V = np.linalg.eigh(H)
    occ = V[:, :, :M]  # eigh sorts ascending; chiral symmetry puts M states below 0
    P = occ @ occ.conj().transpose(0, 2, 1)
    Q = np.eye(2 * M) - 2 * P
    Q = W.conj().T @ Q @ W
    return Q[:, :M, M:]


def winding_projector(
    params: LadderParams,
    kind=SymmetryKind.S,
    n_k: int = DEFAULT_NK,
    round_tol: float = ROUND_TOL,
    gap_tol: float = GAP_TOL,
    max_step: float = np.pi / 2,
) -> InvariantResult:
    """Projector winding number: phase winding of det q(k), counted per step.

    A phase increment larger than ``max_step`` between neighbouring grid points
    means the grid does not resolve the band structure; ``UnderResolved`` is
    raised instead of guessing the branch.
    """
    H = bloch_hamiltonian(params, momentum_grid(n_k, midpoint=True))
    gap = _checked_gap(params, n_k, gap_tol, H)
    det = np.linalg.det(q_matrices(params, kind, n_k))
    steps = np.angle(np.roll(det, -1) / det)
    if np.abs(steps).max() > max_step:
        raise UnderResolved("det q(k) changes phase too fast for this grid")
    raw = steps.sum() / (-2 * np.pi)
    return _finish(raw, gap, round_tol)


def winding_analytic(params: LadderParams, margin: float = 1e-9):
    """Closed-form winding for uniform dimerization delta and |z| cos(pi/(M+1)) < |delta|.

    Returns ``NotApplicable`` outside that regime. The strict inequality must
    hold by ``margin``: on the boundary itself the gap closes.
    """
    d = params.deltas
    if max(d) - min(d) > 1e-12:
        return NotApplicable
    delta = d[0]
    if not abs(params.z) * np.cos(np.pi / (params.M + 1)) < abs(delta) - margin:
        return NotApplicable
    if delta < 0:
        return 0
    return 1 if params.M % 2 == 1 else 0


_METHODS = {"green": winding_green, "projector": winding_projector}


def invariant(params, kind=SymmetryKind.S, n_k=DEFAULT_NK, method="green") -> float:
    """Integer invariant as a float, NaN where it is undefined.

    Used as the per-point function of :func:`phase_grid`.
    """
    try:
        return float(_METHODS[method](params, kind, n_k).value)
    except (GaplessSpectrum, UnderResolved):
        return float("nan")


def phase_grid(template: LadderParams, x_axis, y_axis, kind=SymmetryKind.S,
               n_k=DEFAULT_NK, method="green", workers=None):
    """Invariant over a two-parameter grid; undefined points are NaN.

    ``x_axis`` and ``y_axis`` are ``(name, values)`` pairs understood by
    :func:`sshladder.sweep.apply_axis`.
    """
    from .sweep import grid_map

    return grid_map(
        _InvariantPoint(SymmetryKind.parse(kind), n_k, method),
        template, x_axis, y_axis, workers=workers,
    )


@dataclass(frozen=True)
class _InvariantPoint:
    kind: SymmetryKind
    n_k: int
    method: str

    def __call__(self, params):
        try:
            return {"I": invariant(params, self.kind, self.n_k, self.method)}
        except LadderError:
            return {"I": float("nan")}
