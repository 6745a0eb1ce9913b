"""
Model builders: random matrix transition ensemble (RMTE), quantum kicked
top, and the tilted-field Ising chain with its reflection-parity sector.
Also seed states/operators (coherent states, rotated eigenvectors,
collective spin operators).

Every builder is a pure function of its spec; randomness comes from
`krylov_ipr.rng.substream` keyed by the spec's seed.
"""

from dataclasses import dataclass
import math
from typing import Optional

import numpy as np

from .core import (
    PAULIS,
    Eigensystem,
    as_operator,
    basis_state,
    eigensystem,
    expi_hermitian,
    rotation_operator,
    site_operator,
    spin_operators,
)
from .errors import InvalidArgument, ResourceLimit
from .rng import substream

MAX_CHAIN = 12


# ---------------------------------------------------------------------------
# random matrices
# ---------------------------------------------------------------------------

def sample_cue(d: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random ``d x d`` unitary.

    QR of a complex Ginibre matrix, with each column multiplied by the phase
    of the matching diagonal entry of R so the distribution is exactly Haar.
    """
    if d < 1:
        raise InvalidArgument("CUE dimension must be >= 1")
    z = (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    diag = np.diag(r)
    return q * (diag / np.abs(diag))


@dataclass(frozen=True)
class RmteSpec:
    """Two CUE subsystems of dimension `d` coupled with strength `epsilon`.

    `seed` and `realization` select the random draws; the coupling strength
    does not, so specs differing only in `epsilon` share ``U1``, ``U2`` and
    the coupling phases.
    """

    d: int
    epsilon: float
    seed: int
    realization: int = 0

    def __post_init__(self):
        if int(self.d) != self.d or self.d < 2:
            raise InvalidArgument("RMTE subsystem dimension d must be an integer >= 2")
        if not 0.0 <= self.epsilon <= 1.0:
            raise InvalidArgument("RMTE coupling epsilon must lie in [0, 1]")
        if self.seed < 0 or self.realization < 0:
            raise InvalidArgument("RMTE seed and realization must be non-negative")


@dataclass(frozen=True)
class RmteComponents:
    u1: np.ndarray
    u2: np.ndarray
    xi: np.ndarray


def rmte_components(spec: RmteSpec) -> RmteComponents:
    d = spec.d
    u1 = sample_cue(d, substream(spec.seed, spec.realization, "rmte.u1"))
    u2 = sample_cue(d, substream(spec.seed, spec.realization, "rmte.u2"))
    xi = substream(spec.seed, spec.realization, "rmte.xi").uniform(-0.5, 0.5, size=(d, d))
    return RmteComponents(u1, u2, xi)


def rmte_unitary(spec: RmteSpec) -> np.ndarray:
    """``U_eps = U12(eps) (U1 (x) U2)`` with ``U12 = diag(exp(2 pi i eps xi_{n1 n2}))``."""
    c = rmte_components(spec)
    coupling = np.exp(2j * math.pi * spec.epsilon * c.xi).ravel()
    return coupling[:, None] * np.kron(c.u1, c.u2)


# ---------------------------------------------------------------------------
# kicked top
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class KickedTopSpec:
    j: float
    kappa: float
    alpha: float = math.pi / 2

    def __post_init__(self):
        two_j = 2 * float(self.j)
        if abs(two_j - round(two_j)) > 1e-12 or two_j < 1:
            raise InvalidArgument("kicked top needs a half-integer j >= 1/2")
        if not (math.isfinite(self.kappa) and math.isfinite(self.alpha)):
            raise InvalidArgument("kick strength and precession angle must be finite")


def kicked_top_unitary(spec: KickedTopSpec) -> np.ndarray:
    """Floquet operator ``exp(-i kappa/(2j) Jz^2) exp(-i alpha Jy)``."""
    spin = spin_operators(spec.j)
    m = spin.m_values
    torsion = np.exp(-1j * spec.kappa / (2 * float(spin.j)) * m ** 2)
    precession = expi_hermitian(spin.jy, -spec.alpha)
    return torsion[:, None] * precession


def spin_coherent_state(j, theta: float, phi: float) -> np.ndarray:
    """``R(theta, phi) |j, j>``."""
    spin = spin_operators(j)
    return rotation_operator(theta, phi, spin) @ basis_state(spin.dim, 0)


def collective_spin(dim: int):
    """Spin matrices for a ``dim``-dimensional space viewed as one spin ``(dim-1)/2``."""
    return spin_operators((dim - 1) / 2)


def rotated_eigenvector_seed(U_dyn, which: int, theta: float, phi: float,
                             eig: Optional[Eigensystem] = None) -> np.ndarray:
    """``R(theta, phi) |v_which>`` with eigenvectors ordered by ascending phase.

    The rotation is generated by the collective spin of the full space.
    """
    U_dyn = as_operator(U_dyn)
    eig = eigensystem(U_dyn, "unitary") if eig is None else eig
    if not 0 <= which < eig.dim:
        raise InvalidArgument(f"eigenvector index {which} out of range 0..{eig.dim - 1}")
    R = rotation_operator(theta, phi, collective_spin(eig.dim))
    return R @ eig.vectors[:, which]


def rotated_operator_seed(U_dyn, theta: float, phi: float) -> np.ndarray:
    """Similarity-rotated dynamics ``R U R^dag`` (same spectrum, tilted eigenbasis)."""
    U_dyn = as_operator(U_dyn)
    R = rotation_operator(theta, phi, collective_spin(U_dyn.shape[0]))
    return R @ U_dyn @ R.conj().T


def uniform_superposition(eig: Eigensystem) -> np.ndarray:
    """Equal-weight, equal-phase superposition of all eigenvectors."""
    return eig.vectors.sum(axis=1) / math.sqrt(eig.dim)


# ---------------------------------------------------------------------------
# Ising chain
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TfimSpec:
    """Open chain ``H = sum_k (hx X_k + hz Z_k) - J sum_k Z_k Z_{k+1}``."""

    L: int
    J: float = 1.0
    hx: float = 1.0
    hz: float = 0.2

    def __post_init__(self):
        if int(self.L) != self.L or self.L < 1:
            raise InvalidArgument("chain length L must be a positive integer")


def _check_chain(L: int):
    if L > MAX_CHAIN:
        raise ResourceLimit(f"L={L} exceeds the dense limit L <= {MAX_CHAIN}")


def tfim_hamiltonian(spec: TfimSpec) -> np.ndarray:
    L = spec.L
    _check_chain(L)
    # Z and ZZ terms are diagonal: build them from bit patterns
    states = np.arange(2 ** L)
    bits = (states[:, None] >> (L - 1 - np.arange(L))[None, :]) & 1
    z = 1 - 2 * bits
    diag = spec.hz * z.sum(axis=1) - spec.J * (z[:, :-1] * z[:, 1:]).sum(axis=1)
    H = np.diag(diag.astype(complex))
    for k in range(L):
        H = H + spec.hx * site_operator(PAULIS["x"], k, L)
    return H


def collective_operator(L: int, axis: str) -> np.ndarray:
    """``S_axis = sum_k sigma_k^axis``."""
    _check_chain(L)
    if axis not in PAULIS:
        raise InvalidArgument(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    return sum(site_operator(PAULIS[axis], k, L) for k in range(L))


def qubit_rotation(theta: float, phi: float) -> np.ndarray:
    """``exp[i theta (sigma_x sin(phi) - sigma_y cos(phi))]`` on one qubit."""
    G = PAULIS["x"] * math.sin(phi) - PAULIS["y"] * math.cos(phi)
    return expi_hermitian(G, theta)


def rotated_collective_operator(L: int, theta: float, phi: float, axis: str = "x") -> np.ndarray:
    """``sum_k r sigma_k^axis r^dag`` with the same qubit rotation on every site."""
    _check_chain(L)
    r = qubit_rotation(theta, phi)
    local = r @ PAULIS[axis] @ r.conj().T
    return sum(site_operator(local, k, L) for k in range(L))


def _reflect(states: np.ndarray, L: int) -> np.ndarray:
    out = np.zeros_like(states)
    for k in range(L):
        out |= ((states >> k) & 1) << (L - 1 - k)
    return out


def parity_operator(L: int) -> np.ndarray:
    """Permutation matrix of the reflection ``site k <-> site L-1-k``."""
    _check_chain(L)
    n = 2 ** L
    states = np.arange(n)
    P = np.zeros((n, n))
    P[_reflect(states, L), states] = 1.0
    return P


def parity_sector(L: int) -> np.ndarray:
    """Isometry onto the reflection-even subspace.

    Columns are ``|s>`` for palindromic bit strings and
    ``(|s> + |P s>)/sqrt(2)`` for the smaller member of each mirror pair,
    ordered by ``s``.  Dimension ``(2^L + 2^ceil(L/2)) / 2``.
    """
    _check_chain(L)
    n = 2 ** L
    states = np.arange(n)
    mirror = _reflect(states, L)
    reps = states[states <= mirror]
    V = np.zeros((n, len(reps)))
    for col, s in enumerate(reps):
        t = mirror[s]
        if s == t:
            V[s, col] = 1.0
        else:
            V[s, col] = V[t, col] = 1 / math.sqrt(2)
    return V


def project_positive_parity(O, isometry) -> np.ndarray:
    """``V^dag O V``."""
    V = np.asarray(isometry)
    return V.conj().T @ as_operator(O) @ V
