"""Per-point evaluators and two-parameter maps of edge entanglement."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import (
    EdgeSelection,
    entanglement_of_formation,
    joint_number_distribution,
    log_negativity,
    number_entropy,
    projected_density_matrix,
)
from .errors import EmptySector, LadderError
from .gaussian import ladder_ground_state
from .model import LadderParams, mode_index
from .sweep import grid_map

__all__ = ["EdgeSpec", "EntanglementPoint", "entanglement_map", "number_entropy_map"]


@dataclass(frozen=True)
class EdgeSpec:
    """Edge modes as ``(kind, chain, cell)`` labels; cell ``-1`` means the last cell.

    ``None`` selects :meth:`EdgeSelection.default`.
    """

    labels: tuple | None = None

    def resolve(self, params: LadderParams) -> EdgeSelection:
        if self.labels is None:
            return EdgeSelection.default(params)
        idx = []
        for kind, chain, cell in self.labels:
            cell = params.L + 1 + cell if cell < 0 else cell
            idx.append(mode_index(params, kind, chain, cell))
        return EdgeSelection(*idx)


@dataclass(frozen=True)
class EntanglementPoint:
    """Ground-state edge quantities at one parameter point.

    Keys: ``p11``, ``E_n``, ``E_neg``, ``E_F``, ``E_op`` (= p11 * E_neg). The
    entanglement values are 0 when the (1, 1) sector is empty.
    """

    edges: EdgeSpec = EdgeSpec()
    with_formation: bool = True

    def __call__(self, params: LadderParams) -> dict[str, float]:
        nan = float("nan")
        try:
            C = ladder_ground_state(params)
            sel = self.edges.resolve(params)
            p = joint_number_distribution(C, sel)
            out = {"p11": float(p[1, 1]), "E_n": number_entropy(p)}
        except LadderError:
            return dict.fromkeys(("p11", "E_n", "E_neg", "E_F", "E_op"), nan)
        try:
            pdm = projected_density_matrix(C, sel)
            e_neg = log_negativity(pdm.rho)
            e_f = entanglement_of_formation(pdm.rho) if self.with_formation else nan
        except EmptySector:
            e_neg, e_f = 0.0, 0.0
        except LadderError:
            e_neg, e_f = nan, nan
        out.update(E_neg=e_neg, E_F=e_f, E_op=out["p11"] * e_neg)
        return out


def entanglement_map(template: LadderParams, x_axis, y_axis, edges: EdgeSpec = EdgeSpec(),
                     workers=None):
    """Edge entanglement (negativity, formation, operational) over a parameter grid."""
    return grid_map(EntanglementPoint(edges), template, x_axis, y_axis, workers)


@dataclass(frozen=True)
class _NumberEntropyPoint:
    edges: EdgeSpec = EdgeSpec()

    def __call__(self, params):
        try:
            p = joint_number_distribution(ladder_ground_state(params), self.edges.resolve(params))
        except LadderError:
            return {"E_n": float("nan"), "p11": float("nan")}
        return {"E_n": number_entropy(p), "p11": float(p[1, 1])}


def number_entropy_map(template: LadderParams, x_axis, y_axis, edges: EdgeSpec = EdgeSpec(),
                       workers=None):
    """Generalized number entropy of the edge modes over a parameter grid."""
    return grid_map(_NumberEntropyPoint(edges), template, x_axis, y_axis, workers)
