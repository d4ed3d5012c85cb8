import numpy as np
import pytest

from sshladder.errors import GaplessSpectrum, UnderResolved
from sshladder.model import LadderParams, real_space_hamiltonian
from sshladder.topology import (
    NotApplicable,
    band_gap,
    invariant,
    phase_grid,
    q_matrices,
    winding_analytic,
    winding_green,
    winding_projector,
)

BOTH = [winding_green, winding_projector]


def ssh_winding_oracle(delta, n_k=2048):
    # winding of x(k) = (1 - d) + (1 + d) e^{-ik} around the origin, by unwrapping
    k = np.linspace(0, 2 * np.pi, n_k + 1)
    phase = np.unwrap(np.angle((1 - delta) + (1 + delta) * np.exp(-1j * k)))
    return int(np.rint((phase[0] - phase[-1]) / (2 * np.pi)))


@pytest.mark.parametrize("fn", BOTH)
@pytest.mark.parametrize("delta", [-0.7, -0.2, 0.2, 0.7])
def test_single_chain_matches_phase_unwrapping(fn, delta):
    p = LadderParams.uniform(1, delta)
    assert fn(p).value == ssh_winding_oracle(delta)


def test_sign_convention_positive_delta_single_chain():
    assert winding_green(LadderParams.uniform(1, 0.5)).value == 1


@pytest.mark.parametrize("fn", BOTH)
def test_decoupled_chains_add_with_alternating_sign(fn):
    # z = 0: each chain is an SSH chain; even chains enter conjugated
    rng = np.random.default_rng(4)
    for _ in range(10):
        M = int(rng.integers(1, 5))
        d = rng.choice([-0.6, -0.3, 0.3, 0.6], M)
        p = LadderParams(M=M, L=1, deltas=tuple(d), z=0.0)
        expected = sum((-1) ** s * ssh_winding_oracle(x) for s, x in enumerate(d))
        assert fn(p).value == expected


@pytest.mark.parametrize(
    "M,delta,z,expected",
    [(1, 0.5, 0.0, 1), (2, 0.5, 0.3, 0), (3, -0.5, 0.2, 0), (3, 0.5, 0.3, 1), (4, 0.6, 0.2, 0)],
)
def test_known_uniform_values(M, delta, z, expected):
    p = LadderParams.uniform(M, delta, z)
    assert winding_green(p).value == winding_projector(p).value == expected
    assert winding_analytic(p) == expected


@pytest.mark.parametrize("delta2", [-0.75, -0.25, 0.25])
def test_three_leg_reference_points_have_winding_two(delta2):
    p = LadderParams(M=3, L=1, deltas=(0.9, delta2, 0.8), z=0.9)
    assert winding_green(p).value == winding_projector(p).value == 2


@pytest.mark.parametrize(
    "deltas,z",
    [((0.9, -0.75, 0.8), 0.9), ((0.5, 0.5, 0.5), 0.3), ((-0.5, -0.5, -0.5), 0.2), ((0.6, 0.4), 0.5)],
)
def test_edge_zero_modes_count_winding(deltas, z):
    # bulk-boundary correspondence on an open ladder: 2|I| near-zero energies
    p = LadderParams(M=len(deltas), L=40, deltas=deltas, z=z)
    E = np.abs(np.linalg.eigvalsh(real_space_hamiltonian(p)))
    assert (E < 1e-6).sum() == 2 * abs(winding_green(p).value)


def test_analytic_not_applicable_outside_regime():
    assert winding_analytic(LadderParams(M=2, L=1, deltas=(0.1, 0.2))) is NotApplicable
    assert winding_analytic(LadderParams.uniform(2, 0.1, 0.9)) is NotApplicable
    assert not NotApplicable


def test_gapless_and_underresolved():
    with pytest.raises(GaplessSpectrum):
        winding_green(LadderParams.uniform(1, 0.0))
    assert np.isnan(invariant(LadderParams.uniform(1, 0.0)))
    # nearly gapless point on a coarse grid: the sum is not an integer
    p = LadderParams.uniform(1, 0.02)
    with pytest.raises(UnderResolved):
        winding_green(p, n_k=8)
    with pytest.raises(UnderResolved):
        winding_projector(p, n_k=8)


def test_band_gap_single_chain():
    # |x(k)| is smallest at k = pi where it equals 2|delta|
    assert band_gap(LadderParams.uniform(1, 0.3)) == pytest.approx(0.6)


def test_q_is_unitary():
    q = q_matrices(LadderParams(M=3, L=1, deltas=(0.9, -0.75, 0.8), z=0.9), n_k=32)
    eye = np.eye(3)
    for qk in q:
        np.testing.assert_allclose(qk @ qk.conj().T, eye, atol=1e-12)


def test_mirror_invariant_differs_from_generic():
    # three legs, small delta1 = delta3 > 0 and larger delta2: I3 = -2 while I = 0
    p = LadderParams(M=3, L=1, deltas=(0.25, 0.6, 0.25), z=0.9)
    assert winding_green(p, "S3").value == winding_projector(p, "S3").value == -2
    assert winding_green(p).value == 0


def test_phase_grid_layout_and_nan():
    p = LadderParams.uniform(1, 0.5)
    g = phase_grid(p, ("delta", [-0.5, 0.0, 0.5]), ("z", [0.0, 0.1]), workers=1)
    assert g["I"].shape == (3, 2)
    np.testing.assert_array_equal(g["I"][0], [0, 0])
    assert np.isnan(g["I"][1]).all()
    np.testing.assert_array_equal(g["I"][2], [1, 1])
    assert [(x, y) for x, y, _ in g.rows()][:2] == [(-0.5, 0.0), (-0.5, 0.1)]
