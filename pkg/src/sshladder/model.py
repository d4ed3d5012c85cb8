"""
Single-particle Hamiltonians of the M-leg SSH ladder.

Every matrix produced here is written in the *chiral ordering* of the
ladder's sites. Inside one unit cell the 2M orbitals are arranged as

    odd M  : (a^1, b^2, a^3, ..., a^M | b^1, a^2, b^3, ..., b^M)
    even M : (a^1, b^2, a^3, ..., b^M | b^1, a^2, b^3, ..., a^M)

so that the chiral operator is diag(1_M, -1_M) and every Bloch block is
off-block-diagonal. Chains ``s`` and cells ``j`` are labelled from 1, as in
the usual notation a_j^s, b_j^s. A real-space orbital has index
``(j - 1) * 2M + position(kind, s)``; see :func:`mode_index`.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import InvalidSymmetry

__all__ = [
    "LadderParams",
    "SymmetryKind",
    "chiral_position",
    "mode_index",
    "mode_label",
    "sublattice_mask",
    "bloch_hamiltonian",
    "real_space_hamiltonian",
    "chiral_unitary",
    "momentum_grid",
]


@dataclass(frozen=True)
class LadderParams:
    """Parameters of one ladder instance.

    Attributes
    ----------
    M : int
        Number of legs (chains).
    L : int
        Number of unit cells per chain.
    deltas : tuple of float
        Dimerization of each chain; intrachain bonds are ``J(1 - delta)``
        inside a cell and ``J(1 + delta)`` between cells.
    z : float
        Interchain hopping between same-type sites on neighbouring legs.
    J : float
        Intrachain hopping scale.
    boundary : {"open", "periodic"}
        Boundary condition along the chains. The transverse direction is
        always open (leg M is not coupled back to leg 1).
    """

    M: int
    L: int
    deltas: tuple[float, ...]
    z: float = 0.0
    J: float = 1.0
    boundary: str = "open"

    def __post_init__(self):
        object.__setattr__(self, "deltas", tuple(float(d) for d in self.deltas))
        if self.M < 1 or self.L < 1:
            raise ValueError(f"M and L must be >= 1, got M={self.M}, L={self.L}")
        if len(self.deltas) != self.M:
            raise ValueError(f"expected {self.M} dimerizations, got {len(self.deltas)}")
        if self.boundary not in ("open", "periodic"):
            raise ValueError(f"boundary must be 'open' or 'periodic', not {self.boundary!r}")
        if any(abs(d) >= 1 for d in self.deltas):
            warnings.warn("|delta| >= 1 gives non-positive intrachain hopping", stacklevel=3)

    @classmethod
    def uniform(cls, M: int, delta: float, z: float = 0.0, L: int = 1, **kw) -> "LadderParams":
        return cls(M=M, L=L, deltas=(delta,) * M, z=z, **kw)

    def with_(self, **changes) -> "LadderParams":
        """Copy with some fields replaced; ``delta1``..``deltaM`` address single chains."""
        deltas = list(self.deltas)
        for key in [k for k in changes if k.startswith("delta") and k[5:].isdigit()]:
            s = int(key[5:])
            if not 1 <= s <= self.M:
                raise KeyError(f"{key} does not exist for M={self.M}")
            deltas[s - 1] = float(changes.pop(key))
        changes.setdefault("deltas", tuple(deltas))
        return replace(self, **changes)

    @property
    def n_sites(self) -> int:
        return 2 * self.M * self.L


class SymmetryKind(enum.Enum):
    """Which chiral symmetry defines the winding number."""

    S = "S"    # generic chiral symmetry, always present
    S2 = "S2"  # M = 2 with delta_1 = delta_2
    S3 = "S3"  # M = 3 with delta_1 = delta_3

    @classmethod
    def parse(cls, value) -> "SymmetryKind":
        return value if isinstance(value, cls) else cls(str(value).upper())


def chiral_position(M: int, kind: str, chain: int) -> int:
    """Position of orbital ``kind`` ('a' or 'b') of chain ``chain`` inside a cell."""
    if kind not in ("a", "b"):
        raise ValueError(f"orbital kind must be 'a' or 'b', not {kind!r}")
    if not 1 <= chain <= M:
        raise ValueError(f"chain {chain} outside 1..{M}")
    upper = (kind == "a") == (chain % 2 == 1)
    return chain - 1 if upper else M + chain - 1


def mode_index(params: LadderParams, kind: str, chain: int, cell: int) -> int:
    """Real-space index of orbital ``kind`` on chain ``chain`` in cell ``cell``."""
    if not 1 <= cell <= params.L:
        raise ValueError(f"cell {cell} outside 1..{params.L}")
    return (cell - 1) * 2 * params.M + chiral_position(params.M, kind, chain)


def mode_label(params: LadderParams, index: int) -> tuple[str, int, int]:
    """Inverse of :func:`mode_index`: ``(kind, chain, cell)``."""
    M = params.M
    cell, pos = divmod(int(index), 2 * M)
    if not 0 <= cell < params.L:
        raise ValueError(f"index {index} outside 0..{params.n_sites - 1}")
    upper = pos < M
    chain = pos + 1 if upper else pos - M + 1
    kind = "a" if upper == (chain % 2 == 1) else "b"
    return kind, chain, cell + 1


def sublattice_mask(params: LadderParams) -> np.ndarray:
    """Boolean mask of real-space orbitals with chiral eigenvalue +1."""
    pos = np.arange(params.n_sites) % (2 * params.M)
    return pos < params.M


def momentum_grid(n_k: int, midpoint: bool = False) -> np.ndarray:
    """``2 pi n / n_k`` for ``n = 0..n_k-1``, optionally shifted by half a step."""
    shift = 0.5 if midpoint else 0.0
    return 2 * np.pi * (np.arange(n_k) + shift) / n_k


def _x(params: LadderParams, k) -> np.ndarray:
    # shape (..., M): J[(1 - d) + (1 + d) e^{-ik}], conjugated on even chains
    d = np.asarray(params.deltas)
    k = np.asarray(k, dtype=float)[..., None]
    x = params.J * ((1 - d) + (1 + d) * np.exp(-1j * k))
    even = np.arange(1, params.M + 1) % 2 == 0
    return np.where(even, x.conj(), x)


def bloch_hamiltonian(params: LadderParams, k) -> np.ndarray:
    """Bloch Hamiltonian H(k), shape (2M, 2M) or (len(k), 2M, 2M) for array ``k``.

    The upper-right block D(k) carries x_s(k) on the diagonal (x_s^* on even
    chains) and z on the first off-diagonals.
    """
    M = params.M
    scalar = np.ndim(k) == 0
    ks = np.atleast_1d(np.asarray(k, dtype=float))
    D = np.zeros((ks.size, M, M), dtype=complex)
    idx = np.arange(M)
    D[:, idx, idx] = _x(params, ks)
    if M > 1:
        D[:, idx[:-1], idx[1:]] = params.z
        D[:, idx[1:], idx[:-1]] = params.z
    H = np.zeros((ks.size, 2 * M, 2 * M), dtype=complex)
    H[:, :M, M:] = D
    H[:, M:, :M] = D.conj().transpose(0, 2, 1)
    return H[0] if scalar else H


def real_space_hamiltonian(params: LadderParams) -> np.ndarray:
    """Hopping matrix h with H = sum_ij c_i^dag h_ij c_j, in chiral ordering."""
    M, L, J = params.M, params.L, params.J
    h = np.zeros((params.n_sites, params.n_sites))

    def bond(i, j, t):
        h[i, j] += t
        h[j, i] += t

    for s, d in enumerate(params.deltas, start=1):
        for j in range(1, L + 1):
            bond(mode_index(params, "a", s, j), mode_index(params, "b", s, j), J * (1 - d))
            if j < L:
                bond(mode_index(params, "b", s, j), mode_index(params, "a", s, j + 1), J * (1 + d))
            elif params.boundary == "periodic":
                bond(mode_index(params, "b", s, L), mode_index(params, "a", s, 1), J * (1 + d))
    for s in range(1, M):
        for j in range(1, L + 1):
            for kind in "ab":
                bond(mode_index(params, kind, s, j), mode_index(params, kind, s + 1, j), params.z)
    return h


_U_S2 = np.array(
    [[0, 0, 0, 1j], [0, 0, 1j, 0], [0, -1j, 0, 0], [-1j, 0, 0, 0]], dtype=complex
)
_U_S3 = np.array(
    [
        [0, 0, 1, 0, 0, 0],
        [0, 1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, 0, 0, 0, 0, -1],
        [0, 0, 0, 0, -1, 0],
        [0, 0, 0, -1, 0, 0],
    ],
    dtype=complex,
)


def chiral_unitary(params: LadderParams, kind=SymmetryKind.S, atol: float = 1e-12) -> np.ndarray:
    """Momentum-independent unitary U with U H(k) U^dag = -H(k).

    Raises
    ------
    InvalidSymmetry
        If ``kind`` is S2 (S3) and the ladder is not a two-leg (three-leg)
        ladder with delta_1 = delta_2 (delta_1 = delta_3).
    """
    kind = SymmetryKind.parse(kind)
    M = params.M
    if kind is SymmetryKind.S:
        return np.diag(np.r_[np.ones(M), -np.ones(M)]).astype(complex)
    if kind is SymmetryKind.S2:
        if M != 2 or abs(params.deltas[0] - params.deltas[1]) > atol:
            raise InvalidSymmetry("S2 requires M = 2 and delta_1 = delta_2")
        return _U_S2.copy()
    if M != 3 or abs(params.deltas[0] - params.deltas[2]) > atol:
        raise InvalidSymmetry("S3 requires M = 3 and delta_1 = delta_3")
    return _U_S3.copy()
