"""
Dense quantum primitives.

States are plain complex numpy vectors and operators plain square complex
arrays; the helpers here validate and build them.  Everything is a pure
function of its inputs.

Conventions
-----------
* Kronecker products are row-major: the basis index of ``A (x) B`` is
  ``i_A * dim(B) + i_B``.  Spin chains put site 0 in the most significant
  position.
* Spin matrices use the ``|j, m>`` basis ordered ``m = j, j-1, ..., -j``.
* The operator-space inner product is ``(A|B) = Tr(A^dag B) / D``.
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np
import scipy.linalg as sla

from .errors import DegenerateInput, InvalidArgument, NumericalFailure

HERMITIAN_TOL = 1e-12
UNITARY_TOL = 1e-10
DEGENERACY_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-9

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = {"x": PAULI_X, "y": PAULI_Y, "z": PAULI_Z}


# ---------------------------------------------------------------------------
# validation helpers
# ---------------------------------------------------------------------------

def as_operator(A) -> np.ndarray:
    """Return `A` as a square complex array, raising on bad shape."""
    A = np.asarray(A, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] == 0:
        raise InvalidArgument(f"expected a non-empty square matrix, got shape {A.shape}")
    return A


def hermiticity_error(A) -> float:
    A = np.asarray(A)
    return float(np.max(np.abs(A - A.conj().T)))


def unitarity_error(U) -> float:
    U = np.asarray(U)
    return float(np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))))


def is_hermitian(A, tol: float = HERMITIAN_TOL) -> bool:
    return hermiticity_error(A) < tol


def is_unitary(U, tol: float = UNITARY_TOL) -> bool:
    return unitarity_error(U) < tol


def normalize_state(psi) -> np.ndarray:
    """Return `psi` scaled to unit Euclidean norm."""
    psi = np.asarray(psi, dtype=complex).ravel()
    norm = np.linalg.norm(psi)
    if not np.isfinite(norm) or norm < 1e-300:
        raise DegenerateInput("cannot normalize a zero (or non-finite) state")
    return psi / norm


def basis_state(dim: int, index: int) -> np.ndarray:
    psi = np.zeros(dim, dtype=complex)
    psi[index] = 1.0
    return psi


def _require_same_dim(A, B):
    if A.shape != B.shape:
        raise InvalidArgument(f"dimension mismatch: {A.shape} vs {B.shape}")


# ---------------------------------------------------------------------------
# spins and rotations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpinSystem:
    """Angular momentum matrices of a single spin ``j`` (hbar = 1)."""

    j: Fraction
    jx: np.ndarray
    jy: np.ndarray
    jz: np.ndarray

    @property
    def dim(self) -> int:
        return int(2 * self.j + 1)

    @property
    def m_values(self) -> np.ndarray:
        return float(self.j) - np.arange(self.dim)

    def component(self, axis: str) -> np.ndarray:
        try:
            return {"x": self.jx, "y": self.jy, "z": self.jz}[axis]
        except KeyError:
            raise InvalidArgument(f"unknown axis {axis!r}; expected 'x', 'y' or 'z'") from None


def _as_half_integer(j) -> Fraction:
    if isinstance(j, (int, Fraction, np.integer)):
        two_j = Fraction(j) * 2
    else:
        try:
            x = 2 * float(j)
        except (TypeError, ValueError):
            raise InvalidArgument(f"spin must be a half-integer, got {j!r}") from None
        if not math.isfinite(x) or abs(x - round(x)) > 1e-12:
            raise InvalidArgument(f"spin must be a half-integer, got {j!r}")
        two_j = Fraction(round(x))
    if two_j.denominator != 1 or two_j < 0:
        raise InvalidArgument(f"spin must be a non-negative half-integer, got {j!r}")
    return two_j / 2


def spin_operators(j) -> SpinSystem:
    """Spin-``j`` matrices ``Jx, Jy, Jz`` in the ``m = j..-j`` basis.

    Raises InvalidArgument unless ``2j`` is a non-negative integer.
    """
    j = _as_half_integer(j)
    jf = float(j)
    dim = int(2 * j + 1)
    m = jf - np.arange(dim)
    # <m+1|J+|m> sits just above the diagonal with this ordering
    ladder = np.sqrt(jf * (jf + 1) - m[1:] * (m[1:] + 1))
    jplus = np.diag(ladder, k=1).astype(complex)
    jminus = jplus.conj().T
    jx = (jplus + jminus) / 2
    jy = (jplus - jminus) / 2j
    jz = np.diag(m).astype(complex)
    for arr in (jx, jy, jz):
        arr.setflags(write=False)
    return SpinSystem(j=j, jx=jx, jy=jy, jz=jz)


def expi_hermitian(G, scale: float = 1.0) -> np.ndarray:
    """``exp(i * scale * G)`` for Hermitian `G`, via its spectral decomposition."""
    G = as_operator(G)
    if not is_hermitian(G, 1e-10):
        raise InvalidArgument("generator is not Hermitian")
    G = (G + G.conj().T) / 2
    w, V = np.linalg.eigh(G)
    return (V * np.exp(1j * scale * w)) @ V.conj().T


def rotation_operator(theta: float, phi: float, spin: SpinSystem) -> np.ndarray:
    """``R(theta, phi) = exp[i theta (Jx sin(phi) - Jy cos(phi))]``."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise InvalidArgument("rotation angles must be finite")
    generator = spin.jx * math.sin(phi) - spin.jy * math.cos(phi)
    return expi_hermitian(generator, theta)


def tensor_product(A, B) -> np.ndarray:
    """Row-major Kronecker product (works for vectors and matrices)."""
    return np.kron(A, B)


def site_operator(op, site: int, n_sites: int) -> np.ndarray:
    """Embed a single-qubit operator on `site` of an `n_sites` chain."""
    if not 0 <= site < n_sites:
        raise InvalidArgument(f"site {site} outside chain of length {n_sites}")
    left = np.eye(2 ** site)
    right = np.eye(2 ** (n_sites - site - 1))
    return np.kron(np.kron(left, op), right)


# ---------------------------------------------------------------------------
# eigensystems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Eigensystem:
    """Eigenvalues and orthonormal eigenvectors (columns) of an operator.

    For ``kind == "unitary"`` the values are eigenphases in ``[-pi, pi)``.
    """

    values: np.ndarray
    vectors: np.ndarray
    kind: str

    @property
    def dim(self) -> int:
        return self.vectors.shape[0]

    def spectrum(self) -> np.ndarray:
        """Eigenvalues of the original operator (``exp(i phase)`` for unitaries)."""
        if self.kind == "unitary":
            return np.exp(1j * self.values)
        return self.values.astype(complex)

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.spectrum()) @ self.vectors.conj().T

    def clusters(self, tol: float = DEGENERACY_TOL) -> list[np.ndarray]:
        """Index groups of (numerically) degenerate eigenvalues."""
        return _clusters(self.values, tol, periodic=self.kind == "unitary")


def _clusters(values, tol, periodic=False) -> list[np.ndarray]:
    n = len(values)
    if n == 0:
        return []
    gaps = np.diff(values) >= tol
    starts = np.flatnonzero(np.concatenate([[True], gaps]))
    groups = np.split(np.arange(n), starts[1:])
    if periodic and len(groups) > 1 and values[0] + 2 * np.pi - values[-1] < tol:
        groups[0] = np.concatenate([groups[-1], groups[0]])
        groups.pop()
    return groups


def _wrap_phase(phases):
    """Map angles to ``[-pi, pi)``."""
    out = np.mod(np.asarray(phases) + np.pi, 2 * np.pi) - np.pi
    return np.where(out >= np.pi, -np.pi, out)


def eigensystem(A, kind: str) -> Eigensystem:
    """Eigen-decomposition of a Hermitian or unitary matrix.

    Unitary input is decomposed with a complex Schur factorization (whose
    triangular factor is diagonal for normal matrices), so eigenvectors are
    orthonormal even across near-degenerate phases.  Degenerate clusters are
    re-orthonormalized with a QR step.
    """
    A = as_operator(A)
    if kind == "hermitian":
        if not is_hermitian(A, HERMITIAN_TOL * max(1.0, float(np.max(np.abs(A))))):
            raise InvalidArgument("matrix is not Hermitian within tolerance")
        A = (A + A.conj().T) / 2
        # real symmetric input keeps real eigenvectors (cheaper downstream arithmetic)
        values, vectors = np.linalg.eigh(A.real if not np.any(A.imag) else A)
        clusters = _clusters(values, DEGENERACY_TOL)
    elif kind == "unitary":
        if not is_unitary(A):
            raise InvalidArgument("matrix is not unitary within tolerance")
        try:
            T, Z = sla.schur(A, output="complex")
        except (np.linalg.LinAlgError, ValueError) as exc:
            raise NumericalFailure(f"Schur decomposition failed: {exc}") from exc
        values = _wrap_phase(np.angle(np.diag(T)))
        order = np.argsort(values, kind="stable")
        values, vectors = values[order], Z[:, order]
        clusters = _clusters(values, DEGENERACY_TOL, periodic=True)
    else:
        raise InvalidArgument(f"kind must be 'hermitian' or 'unitary', got {kind!r}")

    vectors = np.array(vectors, dtype=complex)
    for idx in clusters:
        if len(idx) > 1:
            q, _ = np.linalg.qr(vectors[:, idx])
            vectors[:, idx] = q
    eig = Eigensystem(values=np.asarray(values, dtype=float), vectors=vectors, kind=kind)
    residual = np.max(np.abs(eig.reconstruct() - A))
    if residual > RECONSTRUCTION_TOL * max(1.0, float(np.max(np.abs(A)))):
        raise NumericalFailure(f"eigensystem reconstruction residual {residual:.2e}")
    return eig


# ---------------------------------------------------------------------------
# operator space
# ---------------------------------------------------------------------------

def hs_inner(A, B) -> complex:
    """Normalized Hilbert-Schmidt product ``Tr(A^dag B) / D``."""
    A, B = as_operator(A), as_operator(B)
    _require_same_dim(A, B)
    return complex(np.vdot(A, B) / A.shape[0])


def hs_norm(A) -> float:
    return math.sqrt(hs_inner(A, A).real)


def trace_norm(A) -> float:
    return float(np.sum(np.linalg.svd(as_operator(A), compute_uv=False)))


def trace_norm_normalize(O) -> np.ndarray:
    """Divide `O` by the sum of its singular values."""
    O = as_operator(O)
    tn = trace_norm(O)
    if tn < 1e-14:
        raise DegenerateInput("operator has (numerically) zero trace norm")
    return O / tn


def frobenius_normalize(O) -> np.ndarray:
    """Divide `O` by ``sqrt(Tr(O O^dag))``."""
    O = as_operator(O)
    fn = float(np.linalg.norm(O))
    if fn < 1e-14:
        raise DegenerateInput("operator has (numerically) zero Frobenius norm")
    return O / fn


def commutator(A, B) -> np.ndarray:
    A, B = as_operator(A), as_operator(B)
    _require_same_dim(A, B)
    return A @ B - B @ A


def liouvillian_apply(H, O) -> np.ndarray:
    """``[H, O]`` without building the ``D^2 x D^2`` superoperator."""
    return commutator(H, O)


def expectation(op, psi) -> complex:
    return complex(np.vdot(psi, op @ psi))


def single_spin_rdm(psi, spin: SpinSystem) -> np.ndarray:
    """Reduced state of one constituent qubit of a symmetric spin-``j`` state.

    A spin ``j`` in its symmetric subspace is ``2j`` qubits; each qubit's
    Bloch vector is ``<J>/j``.
    """
    psi = np.asarray(psi, dtype=complex).ravel()
    if psi.size != spin.dim:
        raise InvalidArgument(f"state of dim {psi.size} does not live in spin-{spin.j} space")
    if spin.j == 0:
        raise InvalidArgument("spin 0 has no constituent qubit")
    jf = float(spin.j)
    bloch = [expectation(spin.component(a), psi).real / jf for a in "xyz"]
    return 0.5 * (np.eye(2) + sum(b * PAULIS[a] for a, b in zip("xyz", bloch)))


def linear_entropy(rho) -> float:
    """``1 - Tr(rho^2)``."""
    rho = np.asarray(rho)
    return float(1.0 - np.real(np.trace(rho @ rho)))
