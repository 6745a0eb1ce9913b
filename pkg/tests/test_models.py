import math

import numpy as np
import pytest
import scipy.linalg as sla
from hypothesis import given, settings, strategies as st

from krylov_ipr.core import PAULIS, eigensystem, rotation_operator, spin_operators, unitarity_error
from krylov_ipr.diagnostics import gap_ratios, ipr_state
from krylov_ipr.errors import InvalidArgument, ResourceLimit
from krylov_ipr.models import (
    KickedTopSpec,
    RmteSpec,
    TfimSpec,
    collective_operator,
    collective_spin,
    kicked_top_unitary,
    parity_operator,
    parity_sector,
    project_positive_parity,
    rmte_components,
    rmte_unitary,
    rotated_collective_operator,
    rotated_eigenvector_seed,
    rotated_operator_seed,
    sample_cue,
    spin_coherent_state,
    tfim_hamiltonian,
)
from krylov_ipr.rng import derived_seed, substream, tag_hash


# ---- random matrices --------------------------------------------------------------

def test_cue_unitary():
    for d in (1, 2, 7, 25):
        assert unitarity_error(sample_cue(d, substream(1, d, "test.cue"))) < 1e-12


def test_cue_first_moment():
    # Haar: E|U_11|^2 = 1/d, Var = (d-1)/(d^2 (d+1))
    d, n = 25, 500
    x = np.array([abs(sample_cue(d, substream(2, i, "test.moment"))[0, 0]) ** 2 for i in range(n)])
    sigma = math.sqrt((d - 1) / (d * d * (d + 1)) / n)
    assert abs(x.mean() - 1 / d) < 3 * sigma


def test_cue_phase_fix_matters():
    # the phase correction makes eigenphases uniform; without it arg(U_11) would concentrate
    phases = [np.angle(sample_cue(3, substream(3, i, "test.phase"))[0, 0]) for i in range(2000)]
    counts, _ = np.histogram(phases, bins=4, range=(-math.pi, math.pi))
    assert counts.min() > 400


def test_rmte_epsilon_zero_is_tensor_product():
    spec = RmteSpec(5, 0.0, 11)
    c = rmte_components(spec)
    assert np.array_equal(rmte_unitary(spec), np.kron(c.u1, c.u2))


def test_rmte_coupling_structure():
    spec = RmteSpec(4, 0.6, 12)
    c = rmte_components(spec)
    assert np.all(c.xi >= -0.5) and np.all(c.xi < 0.5)
    U = rmte_unitary(spec)
    coupling = np.diag(np.exp(2j * math.pi * 0.6 * c.xi.ravel()))
    assert np.allclose(U, coupling @ np.kron(c.u1, c.u2), atol=1e-14)
    assert unitarity_error(U) < 1e-10


def test_rmte_draws_shared_across_epsilon():
    a, b = rmte_components(RmteSpec(3, 0.1, 5)), rmte_components(RmteSpec(3, 0.9, 5))
    assert np.array_equal(a.u1, b.u1) and np.array_equal(a.xi, b.xi)
    other = rmte_components(RmteSpec(3, 0.1, 5, realization=1))
    assert not np.array_equal(a.u1, other.u1)


def test_rmte_deterministic():
    assert np.array_equal(rmte_unitary(RmteSpec(5, 0.4, 99)), rmte_unitary(RmteSpec(5, 0.4, 99)))


@pytest.mark.parametrize("kwargs", [dict(d=1, epsilon=0.5, seed=1), dict(d=3, epsilon=1.5, seed=1),
                                    dict(d=3, epsilon=0.5, seed=-1)])
def test_rmte_spec_validation(kwargs):
    with pytest.raises(InvalidArgument):
        RmteSpec(**kwargs)


def test_rmte_gap_ratio_limits():
    r0 = np.mean([gap_ratios(eigensystem(rmte_unitary(RmteSpec(5, 0.0, 3, i)), "unitary").values,
                             "eigenphases").mean for i in range(200)])
    r1 = np.mean([gap_ratios(eigensystem(rmte_unitary(RmteSpec(5, 1.0, 3, i)), "unitary").values,
                             "eigenphases").mean for i in range(200)])
    assert abs(r0 - 0.386) < 0.02
    assert abs(r1 - 0.599) < 0.015


def test_rng_streams_are_stable_and_distinct():
    assert tag_hash("rmte.u1") == tag_hash("rmte.u1")
    assert tag_hash("rmte.u1") != tag_hash("rmte.u2")
    a = substream(5, 3, "x").standard_normal(4)
    assert np.array_equal(a, substream(5, 3, "x").standard_normal(4))
    assert not np.array_equal(a, substream(5, 4, "x").standard_normal(4))
    assert 0 <= derived_seed(5, 3, "x") < 2 ** 64


# ---- kicked top ---------------------------------------------------------------------

def test_kicked_top_zero_kick_is_rotation():
    s = spin_operators(3)
    U = kicked_top_unitary(KickedTopSpec(3, 0.0, 0.7))
    assert np.allclose(U, sla.expm(-0.7j * s.jy), atol=1e-12)


def test_kicked_top_spin_half_torsion_is_phase():
    U = kicked_top_unitary(KickedTopSpec(0.5, 4.0))
    R = sla.expm(-1j * math.pi / 2 * spin_operators(0.5).jy)
    ratio = U @ np.linalg.inv(R)
    assert np.allclose(ratio, ratio[0, 0] * np.eye(2), atol=1e-12)


def test_kicked_top_matches_expm_oracle():
    s = spin_operators(15)
    U = kicked_top_unitary(KickedTopSpec(15, 6.0))
    oracle = sla.expm(-1j * 6.0 / 30 * s.jz @ s.jz) @ sla.expm(-1j * math.pi / 2 * s.jy)
    assert np.max(np.abs(U - oracle)) < 1e-10
    assert unitarity_error(U) < 1e-10


def test_kicked_top_spec_validation():
    with pytest.raises(InvalidArgument):
        KickedTopSpec(1.2, 1.0)
    with pytest.raises(InvalidArgument):
        KickedTopSpec(1, float("nan"))


def test_coherent_state_north_pole_and_norm():
    psi = spin_coherent_state(4, 0.0, 1.0)
    assert np.allclose(psi, np.eye(9)[0])
    g = substream(6, 0, "test.coherent")
    for theta, phi in g.uniform(0, 2 * math.pi, size=(10, 2)):
        assert abs(np.linalg.norm(spin_coherent_state(7.5, theta, phi)) - 1) < 1e-12


@settings(max_examples=30, deadline=None)
@given(st.floats(0, math.pi), st.floats(0, 2 * math.pi))
def test_coherent_state_points_along_bloch_vector(theta, phi):
    # R(theta, phi) |j,j> has <J> = j (sin t cos p, sin t sin p, cos t)
    j = 2.5
    s = spin_operators(j)
    psi = spin_coherent_state(j, theta, phi)
    mean = [np.vdot(psi, op @ psi).real for op in (s.jx, s.jy, s.jz)]
    expected = j * np.array([math.sin(theta) * math.cos(phi), math.sin(theta) * math.sin(phi),
                             math.cos(theta)])
    assert np.allclose(mean, expected, atol=1e-10)


# ---- rotated seeds --------------------------------------------------------------------

@pytest.fixture(scope="module")
def rmte():
    U = rmte_unitary(RmteSpec(5, 1.0, 7))
    return U, eigensystem(U, "unitary")


def test_rotated_eigenvector_zero_angle(rmte):
    U, eig = rmte
    psi = rotated_eigenvector_seed(U, 0, 0.0, 0.4, eig=eig)
    assert np.allclose(psi, eig.vectors[:, 0])
    assert ipr_state(psi, eig) == pytest.approx(1)


def test_rotated_eigenvector_ipr_decreases(rmte):
    U, eig = rmte
    iprs = [ipr_state(rotated_eigenvector_seed(U, 0, t, 0.3, eig=eig), eig) for t in (0.2, 0.6, 1.2)]
    assert iprs[0] > iprs[1] > iprs[2]


def test_rotated_eigenvector_bad_index(rmte):
    U, eig = rmte
    with pytest.raises(InvalidArgument):
        rotated_eigenvector_seed(U, 25, 0.1, 0.1, eig=eig)


def test_rotated_operator_seed(rmte):
    U, _ = rmte
    assert np.allclose(rotated_operator_seed(U, 0.0, 1.0), U)
    R = rotation_operator(0.3, 0.2, collective_spin(25))
    O = rotated_operator_seed(U, 0.3, 0.2)
    assert np.allclose(O, R @ U @ R.conj().T)
    assert np.allclose(np.sort(np.angle(np.linalg.eigvals(O))), eig_phases(U), atol=1e-10)


def eig_phases(U):
    return np.sort(np.angle(np.linalg.eigvals(U)))


# ---- Ising chain -------------------------------------------------------------------

def test_tfim_classical_limit():
    H = tfim_hamiltonian(TfimSpec(2, J=0.7, hx=0.0, hz=0.0))
    assert np.allclose(np.sort(np.linalg.eigvalsh(H)), [-0.7, -0.7, 0.7, 0.7])


def test_tfim_single_spin():
    H = tfim_hamiltonian(TfimSpec(1, J=5.0, hx=0.3, hz=0.4))
    assert np.allclose(np.linalg.eigvalsh(H), [-0.5, 0.5])


def test_tfim_matches_kron_construction():
    L, J, hx, hz = 6, 1.0, 1.0, 0.2
    X, Z, I = PAULIS["x"], PAULIS["z"], np.eye(2)

    def site(op, k):
        mats = [op if m == k else I for m in range(L)]
        out = mats[0]
        for m in mats[1:]:
            out = np.kron(out, m)
        return out

    oracle = sum(hx * site(X, k) + hz * site(Z, k) for k in range(L))
    oracle = oracle - J * sum(site(Z, k) @ site(Z, k + 1) for k in range(L - 1))
    H = tfim_hamiltonian(TfimSpec(L, J, hx, hz))
    assert np.max(np.abs(H - H.conj().T)) < 1e-14
    assert np.max(np.abs(H - oracle)) < 1e-14
    assert np.allclose(np.linalg.eigvalsh(H), sla.eigh(oracle, eigvals_only=True), atol=1e-12)


def test_tfim_size_guard():
    with pytest.raises(ResourceLimit):
        tfim_hamiltonian(TfimSpec(13))
    with pytest.raises(InvalidArgument):
        TfimSpec(0)


@pytest.mark.parametrize("L, dim", [(2, 3), (3, 6), (6, 36), (7, 72)])
def test_parity_sector_dimension(L, dim):
    V = parity_sector(L)
    assert V.shape == (2 ** L, dim)
    assert np.allclose(V.T @ V, np.eye(dim))
    assert np.allclose(parity_operator(L) @ V, V)


def test_parity_sector_two_sites():
    V = parity_sector(2)
    expected = np.array([[1, 0, 0], [0, 1 / math.sqrt(2), 0], [0, 1 / math.sqrt(2), 0], [0, 0, 1]])
    assert np.allclose(V, expected)


@settings(max_examples=20, deadline=None)
@given(st.floats(-3, 3), st.floats(-3, 3), st.floats(-3, 3))
def test_tfim_commutes_with_parity(J, hx, hz):
    H = tfim_hamiltonian(TfimSpec(5, J, hx, hz))
    P = parity_operator(5)
    assert np.max(np.abs(H @ P - P @ H)) < 1e-12


def test_collective_operators():
    assert np.allclose(collective_operator(1, "y"), PAULIS["y"])
    assert np.allclose(np.sort(np.linalg.eigvalsh(collective_operator(2, "z"))), [-2, 0, 0, 2])
    P = parity_operator(6)
    Sx = collective_operator(6, "x")
    assert np.linalg.norm(Sx @ P - P @ Sx) < 1e-13
    with pytest.raises(InvalidArgument):
        collective_operator(3, "w")


def test_rotated_collective_operator_stays_in_sector():
    L = 4
    O = rotated_collective_operator(L, 0.8, 2.1)
    P = parity_operator(L)
    assert np.linalg.norm(O @ P - P @ O) < 1e-12
    assert np.allclose(O, O.conj().T)
    assert np.allclose(rotated_collective_operator(L, 0.0, 0.3), collective_operator(L, "x"))


def test_projection_preserves_sector_action():
    L = 4
    V = parity_sector(L)
    H = tfim_hamiltonian(TfimSpec(L, 1.0, 1.0, 0.5))
    Hs = project_positive_parity(H, V)
    assert np.allclose(V @ Hs, H @ V)
