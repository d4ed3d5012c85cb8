import itertools

import numpy as np
import pytest

from sshladder.bell import (
    PAULI,
    ChshAngles,
    angle_schedule,
    chsh_scan,
    chsh_sigma,
    max_sigma,
    pauli_correlator,
    protocol_hamiltonian,
    rotation_matrix,
    rotation_protocol,
    thermal_chsh,
    wick_pauli_correlator,
)
from sshladder.entanglement import EdgeSelection, projected_density_matrix
from sshladder.errors import EmptySector
from sshladder.fock import fock_ground_state, fock_projected_density_matrix
from sshladder.gaussian import ladder_ground_state
from sshladder.model import LadderParams, real_space_hamiltonian

BELL = np.array([1, 0, 0, 1]) / np.sqrt(2)
SINGLET = np.array([0, 1, -1, 0]) / np.sqrt(2)


def pure(v):
    return np.outer(v, np.conj(v)).astype(complex)


def test_schedule_reaches_tsirelson_on_bell_states():
    # for |Phi+> E(a, b) = cos(ta - tb), so Sigma(t) = 3 cos t - cos 3t
    for t in (0.1, np.pi / 4, 1.2):
        assert chsh_sigma(pure(BELL), angle_schedule(t)) == pytest.approx(3 * np.cos(t) - np.cos(3 * t))
    assert chsh_sigma(pure(BELL), angle_schedule(np.pi / 4)) == pytest.approx(2 * np.sqrt(2))
    # the singlet has E = -cos(ta - tb) and violates at 3 pi / 4
    assert chsh_sigma(pure(SINGLET), angle_schedule(3 * np.pi / 4)) == pytest.approx(2 * np.sqrt(2))


def test_product_states_never_violate():
    rng = np.random.default_rng(0)
    for _ in range(200):
        a, b = rng.normal(size=2) + 1j * rng.normal(size=2), rng.normal(size=2) + 1j * rng.normal(size=2)
        v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        assert abs(chsh_sigma(pure(v), ChshAngles(*rng.uniform(0, 2 * np.pi, 4)))) <= 2 + 1e-12


def test_pauli_correlator_bell():
    rho = pure(BELL)
    assert pauli_correlator(rho, "z", "z") == pytest.approx(1)
    assert pauli_correlator(rho, "x", "x") == pytest.approx(1)
    assert pauli_correlator(rho, "y", "y") == pytest.approx(-1)
    assert pauli_correlator(rho, "x", "z") == pytest.approx(0)


@pytest.mark.parametrize("M,L", [(3, 5), (2, 4)])
def test_wick_correlators_match_projected_state(M, L):
    # two independent routes to <sigma_a sigma_b> in the (1,1) sector
    rng = np.random.default_rng(M)
    p = LadderParams(M=M, L=L, deltas=tuple(rng.uniform(-0.8, 0.8, M)), z=0.7)
    sel = EdgeSelection.default(p)
    C = ladder_ground_state(p)
    rho = projected_density_matrix(C, sel).rho
    for a, b in itertools.product("xyz", repeat=2):
        assert wick_pauli_correlator(C, sel, a, b) == pytest.approx(pauli_correlator(rho, a, b), abs=1e-12)


def test_chsh_matches_fock_projected_state():
    p = LadderParams(M=3, L=2, deltas=(0.6, -0.5, 0.4), z=0.6)
    sel = EdgeSelection.default(p)
    rho_fock, _ = fock_projected_density_matrix(fock_ground_state(p), sel)
    thetas = np.linspace(0, np.pi, 13)
    scan = chsh_scan(ladder_ground_state(p), sel, thetas)
    for t, s in scan:
        assert s == pytest.approx(chsh_sigma(rho_fock, angle_schedule(t)), abs=1e-10)


def test_empty_sector_gives_nan():
    sel = EdgeSelection(0, 1, 2, 3)
    scan = chsh_scan(np.zeros((4, 4)), sel, [0.0, 1.0])
    assert all(np.isnan(s) for _, s in scan)
    assert np.isnan(max_sigma(scan))
    with pytest.raises(EmptySector):
        wick_pauli_correlator(np.zeros((4, 4)), sel, "z", "z")


def test_infinite_temperature_has_no_correlations():
    p = LadderParams(M=3, L=4, deltas=(0.9, -0.75, 0.8), z=0.9)
    scan = thermal_chsh(p, EdgeSelection.default(p), 0.0, np.linspace(0, np.pi, 7))
    assert max(abs(s) for _, s in scan) < 1e-12


def test_rotation_matrix_turns_z_into_x():
    R = rotation_matrix(np.pi / 2)
    np.testing.assert_allclose(R @ R.conj().T, np.eye(2), atol=1e-15)
    np.testing.assert_allclose(R @ PAULI["z"] @ R.conj().T, PAULI["x"], atol=1e-15)


def test_protocol_hamiltonian_adds_imaginary_bob_coupling():
    p = LadderParams(M=3, L=4, deltas=(0.9, -0.75, 0.8), z=0.9)
    sel = EdgeSelection.default(p)
    h = protocol_hamiltonian(p, sel, 2.0)
    np.testing.assert_allclose(h, h.conj().T)
    diff = h - real_space_hamiltonian(p)
    assert diff[sel.B1, sel.B2] == -2j and diff[sel.B2, sel.B1] == 2j
    assert np.count_nonzero(diff) == 2


def test_protocol_without_coupling_is_stationary():
    p = LadderParams(M=3, L=6, deltas=(0.9, -0.75, 0.8), z=0.9)
    res = rotation_protocol(p, EdgeSelection.default(p), kappa=0.0, times=np.linspace(0, 5, 6))
    np.testing.assert_allclose(res.F1, 1, atol=1e-9)


def test_protocol_reaches_rotated_state():
    p = LadderParams(M=3, L=16, deltas=(0.9, -0.75, 0.8), z=0.9)
    res = rotation_protocol(p, EdgeSelection.default(p), kappa=10.0, times=np.linspace(0, 0.4, 401))
    assert res.F1[0] == pytest.approx(1)
    assert res.F2.max() > 0.99
    # the rotated state is reached a quarter period in
    assert res.times[np.argmax(res.F2)] == pytest.approx(0.0785, abs=2e-3)
