"""
Krylov bases and spread complexity.

Two constructions are provided:

* `lanczos` -- Hermitian generators (a Hamiltonian acting on states, or the
  Liouvillian ``[H, .]`` acting on operators).  Optional full
  re-orthogonalization (two classical Gram-Schmidt passes per step).
* `arnoldi` / `floquet_arnoldi` -- general (in particular unitary)
  generators; every new vector is orthogonalized against all previous ones,
  twice, and the projection coefficients are collected in an upper
  Hessenberg matrix.

Vectors are handled as flat arrays.  The inner product is the Euclidean one
times a positive ``weight``; operator spaces use ``weight = 1/D`` so that
``(A|B) = Tr(A^dag B)/D``.

Complexity series are evaluated spectrally: the seed and the Krylov vectors
are expressed in the generator's eigenbasis, where time evolution is a
phase per component, so ``K_C(t) = sum_n n |(K_n|seed(t))|^2`` is exact at
every time (no accumulated stepping error).
"""

from dataclasses import dataclass, field
import math
from typing import Callable, Optional

import numpy as np

from .core import Eigensystem, as_operator, eigensystem, is_unitary, liouvillian_apply
from .errors import DegenerateInput, InvalidArgument

BREAKDOWN_TOL = 1e-10
ORTHOGONALITY_WARN = 1e-6
AMPLITUDE_TOL = 1e-8

TERMINATIONS = ("breakdown", "space_exhausted", "max_iter")


@dataclass(frozen=True)
class KrylovBasis:
    """Ordered orthonormal Krylov vectors, stored as rows of `vectors`.

    `shape` is the shape of one element: ``(d,)`` for states, ``(D, D)`` for
    operators.
    """

    vectors: np.ndarray
    space_kind: str
    generator_kind: str
    weight: float = 1.0
    shape: tuple = ()

    def __len__(self) -> int:
        return self.vectors.shape[0]

    @property
    def dim(self) -> int:
        """Krylov dimension ``d_K``."""
        return self.vectors.shape[0]

    def element(self, n: int) -> np.ndarray:
        return self.vectors[n].reshape(self.shape)

    def amplitudes(self, x) -> np.ndarray:
        """Coordinates ``(K_n|x)`` of `x` on the basis."""
        x = np.asarray(x).ravel()
        return self.weight * (self.vectors.conj() @ x)

    def gram(self) -> np.ndarray:
        return self.weight * (self.vectors.conj() @ self.vectors.T)

    def orthonormality_error(self) -> float:
        """Largest entrywise deviation of the Gram matrix from the identity."""
        return float(np.max(np.abs(self.gram() - np.eye(self.dim))))


@dataclass(frozen=True)
class RecurrenceCoefficients:
    """Recurrence data of a Krylov run.

    ``a`` holds the diagonal (one per basis vector), ``b`` the accepted
    off-diagonal norms ``b_1 .. b_{d_K - 1}``.  ``h`` is the full Hessenberg
    matrix for Arnoldi runs (``None`` for three-term Lanczos).  ``residual``
    is the norm of the last rejected direction (the value that triggered a
    breakdown, or the leftover after the space was exhausted).
    """

    a: np.ndarray
    b: np.ndarray
    termination_reason: str
    residual: float
    h: Optional[np.ndarray] = None
    orthogonality_error: Optional[float] = None

    @property
    def subdiagonal(self) -> np.ndarray:
        """Real non-negative normalizations ``b_n`` (= ``h_{n,n-1}``)."""
        return self.b

    @property
    def orthogonality_warning(self) -> bool:
        return self.orthogonality_error is not None and self.orthogonality_error > ORTHOGONALITY_WARN


@dataclass(frozen=True)
class ComplexitySeries:
    times: np.ndarray
    values: np.ndarray
    amplitudes: Optional[np.ndarray] = field(default=None, repr=False)
    krylov_dim: int = 0

    def __len__(self) -> int:
        return len(self.times)

    def saturation(self, fraction: float = 0.8) -> float:
        """Mean over the trailing `fraction` of the run."""
        return saturation_average(self.values, fraction)


def saturation_average(values, fraction: float = 0.8) -> float:
    """Average of the last `fraction` of a time series."""
    values = np.asarray(values)
    if not 0 < fraction <= 1:
        raise InvalidArgument("fraction must lie in (0, 1]")
    start = len(values) - max(1, int(round(fraction * len(values))))
    return float(np.mean(values[start:]))


# ---------------------------------------------------------------------------
# basis construction
# ---------------------------------------------------------------------------

def _prepare_seed(seed, weight):
    v = np.asarray(seed).ravel()
    if not np.issubdtype(v.dtype, np.inexact):
        v = v.astype(float)
    norm = math.sqrt(weight * np.vdot(v, v).real)
    if not np.isfinite(norm) or norm < 1e-300:
        raise DegenerateInput("Krylov seed is zero")
    return v / norm


def lanczos(
    apply: Callable[[np.ndarray], np.ndarray],
    seed,
    *,
    weight: float = 1.0,
    tol: float = BREAKDOWN_TOL,
    reorthogonalize: bool = True,
    max_dim: Optional[int] = None,
    space_kind: str = "state",
    generator_kind: str = "hamiltonian",
    shape: Optional[tuple] = None,
):
    """Lanczos tridiagonalization of a Hermitian linear map.

    Parameters
    ----------
    apply : callable
        Flat vector -> flat vector; must be Hermitian w.r.t. the weighted
        inner product.
    seed : array_like
        Starting vector (any shape; it is flattened and normalized).
    tol : float
        Breakdown threshold, relative to the norm of the freshly applied
        vector ``||L K_{n-1}||``.
    reorthogonalize : bool
        Re-project each new direction against all previous vectors twice
        instead of using the three-term recurrence.

    Returns
    -------
    (KrylovBasis, RecurrenceCoefficients)
    """
    shape = tuple(np.shape(seed)) if shape is None else tuple(shape)
    q0 = _prepare_seed(seed, weight)
    n_total = q0.size
    max_dim = n_total if max_dim is None else min(int(max_dim), n_total)
    if max_dim < 1:
        raise InvalidArgument("max_dim must be positive")

    w = np.asarray(apply(q0)).ravel()
    dtype = np.result_type(q0.dtype, w.dtype)
    Q = np.empty((max_dim, n_total), dtype=dtype)
    Q[0] = q0
    a: list[float] = []
    b: list[float] = []
    n = 1
    while True:
        if n > 1:
            w = np.asarray(apply(Q[n - 1])).ravel()
        scale = math.sqrt(weight * np.vdot(w, w).real)
        if reorthogonalize:
            basis = Q[:n]
            c = weight * (basis.conj() @ w)
            a.append(float(c[-1].real))
            w = w - c @ basis
            w = w - (weight * (basis.conj() @ w)) @ basis
        else:
            a_n = float((weight * np.vdot(Q[n - 1], w)).real)
            a.append(a_n)
            w = w - a_n * Q[n - 1]
            if n > 1:
                w = w - b[-1] * Q[n - 2]
        beta = math.sqrt(weight * np.vdot(w, w).real)
        if n == max_dim:
            reason = "space_exhausted" if max_dim == n_total else "max_iter"
            break
        if beta <= tol * scale:
            reason = "breakdown"
            break
        b.append(beta)
        Q[n] = w / beta
        n += 1

    Q = Q[:n]
    basis = KrylovBasis(Q, space_kind, generator_kind, weight, shape)
    orth = None if reorthogonalize else basis.orthonormality_error()
    coeffs = RecurrenceCoefficients(
        a=np.array(a), b=np.array(b), termination_reason=reason,
        residual=beta, orthogonality_error=orth,
    )
    return basis, coeffs


def arnoldi(
    apply: Callable[[np.ndarray], np.ndarray],
    seed,
    *,
    weight: float = 1.0,
    tol: float = BREAKDOWN_TOL,
    max_dim: Optional[int] = None,
    space_kind: str = "state",
    generator_kind: str = "floquet",
    shape: Optional[tuple] = None,
):
    """Full-orthogonalization Arnoldi iteration.

    Each ``apply(K_{n-1})`` is projected out of all previous vectors twice;
    the coefficients of both passes accumulate into ``h[:, n-1]``.  The new
    vector is divided by its norm, which puts the subdiagonal
    ``h_{n, n-1}`` on the real non-negative axis.  Stops when that norm drops
    below ``tol * ||apply(K_{n-1})||`` or the space is exhausted.
    """
    shape = tuple(np.shape(seed)) if shape is None else tuple(shape)
    q0 = _prepare_seed(seed, weight)
    n_total = q0.size
    max_dim = n_total if max_dim is None else min(int(max_dim), n_total)

    w = np.asarray(apply(q0)).ravel()
    dtype = np.result_type(q0.dtype, w.dtype, np.complex128)
    Q = np.empty((max_dim, n_total), dtype=dtype)
    Q[0] = q0
    H = np.zeros((max_dim + 1, max_dim), dtype=complex)
    n = 1
    while True:
        if n > 1:
            w = np.asarray(apply(Q[n - 1])).ravel()
        scale = math.sqrt(weight * np.vdot(w, w).real)
        basis = Q[:n]
        for _ in range(2):
            c = weight * (basis.conj() @ w)
            w = w - c @ basis
            H[:n, n - 1] += c
        beta = math.sqrt(weight * np.vdot(w, w).real)
        H[n, n - 1] = beta
        if n == max_dim:
            reason = "space_exhausted" if max_dim == n_total else "max_iter"
            break
        if beta <= tol * scale:
            reason = "breakdown"
            break
        Q[n] = w / beta
        n += 1

    Q = Q[:n]
    h = H[:n, :n]
    coeffs = RecurrenceCoefficients(
        a=np.real(np.diag(h)).copy(),
        b=np.real(np.diag(h, -1)).copy(),
        termination_reason=reason,
        residual=beta,
        h=h,
    )
    return KrylovBasis(Q, space_kind, generator_kind, weight, shape), coeffs


def _operator_weight(D: int) -> float:
    return 1.0 / D


def state_lanczos(H, psi, **kwargs):
    """Lanczos for a Hamiltonian acting on a state vector."""
    H = as_operator(H)
    psi = np.asarray(psi)
    if psi.size != H.shape[0]:
        raise InvalidArgument("state and Hamiltonian dimensions differ")
    return lanczos(lambda v: H @ v, psi, space_kind="state", generator_kind="hamiltonian", **kwargs)


@dataclass(frozen=True)
class SpectralKrylov:
    """Liouvillian Krylov basis of a Hermitian seed in spectral form.

    In the eigenbasis of H, ``K_n(a, b) = p_n(E_a - E_b) O_ab`` with real
    polynomials of parity ``n``.  Only the upper triangle ``a <= b`` is
    stored, as the real numbers ``q_n = p_n(nu) |O_ab|``.
    """

    q: np.ndarray            # (d_K, M) real
    nu: np.ndarray           # (M,) frequencies E_a - E_b
    seed_abs: np.ndarray     # (M,) |O_ab| of the normalized seed
    rho: np.ndarray          # (M,) inner-product weights (1/D diagonal, 2/D pairs)
    rows: np.ndarray
    cols: np.ndarray
    phase: np.ndarray        # (M,) O_ab / |O_ab| (1 where O_ab == 0)
    eig: Eigensystem

    @property
    def dim(self) -> int:
        return self.q.shape[0]

    def to_basis(self) -> KrylovBasis:
        D = self.eig.dim
        n_k = self.dim
        K = np.zeros((n_k, D, D), dtype=complex)
        sign = np.where(np.arange(n_k) % 2 == 0, 1.0, -1.0)[:, None]
        upper = self.q * self.phase
        K[:, self.rows, self.cols] = upper
        off = self.rows != self.cols
        K[:, self.cols[off], self.rows[off]] = sign * np.conj(upper[:, off])
        V = self.eig.vectors
        back = np.einsum("ia,nab,jb->nij", V, K, V.conj(), optimize=True).reshape(n_k, -1)
        return KrylovBasis(back, "operator", "hamiltonian", 1.0 / D, (D, D))

    def series(self, times, *, keep_amplitudes: bool = False, chunk: int = 512) -> ComplexitySeries:
        """``K_C(t)`` of ``e^{iHt} O e^{-iHt}``, evaluated in spectral form."""
        times = np.asarray(times, dtype=float)
        n_k = self.dim
        even = np.arange(0, n_k, 2)
        odd = np.arange(1, n_k, 2)
        diag = self.rows == self.cols
        ws = self.rho * self.seed_abs
        Qe = self.q[even] * ws
        Qo = self.q[odd] * ws
        values = np.empty(len(times))
        probs = np.empty((len(times), n_k)) if keep_amplitudes else None
        for start in range(0, len(times), chunk):
            ts = times[start:start + chunk]
            arg = np.outer(self.nu, ts)
            cos = np.cos(arg)
            sin = np.sin(arg)
            cos[diag] = 1.0
            sin[diag] = 0.0
            p = np.empty((len(ts), n_k))
            p[:, even] = (Qe @ cos).T ** 2
            p[:, odd] = (Qo @ sin).T ** 2
            totals = p.sum(axis=1)
            if np.max(np.abs(totals - 1.0)) > AMPLITUDE_TOL:
                raise InvalidArgument("Krylov amplitudes are not normalized; basis is incomplete")
            values[start:start + len(ts)] = p @ np.arange(n_k)
            if probs is not None:
                probs[start:start + len(ts)] = p
        return ComplexitySeries(times=times, values=values, amplitudes=probs, krylov_dim=n_k)


def liouvillian_spectral_lanczos(eig: Eigensystem, O, *, tol: float = BREAKDOWN_TOL,
                                 max_dim: Optional[int] = None):
    """Lanczos for ``[H, .]`` on a Hermitian seed, in real spectral form.

    Mathematically identical to `operator_lanczos` with full
    re-orthogonalization (two passes); vectors of opposite parity are
    exactly orthogonal, so each new vector is projected against the
    same-parity half of the basis only.
    """
    O = as_operator(O)
    D = eig.dim
    if O.shape != (D, D):
        raise InvalidArgument("operator and eigensystem dimensions differ")
    if np.max(np.abs(O - O.conj().T)) > 1e-10 * max(1.0, float(np.max(np.abs(O)))):
        raise InvalidArgument("spectral Lanczos needs a Hermitian seed")
    V = eig.vectors
    Ot = V.conj().T @ O @ V
    rows, cols = np.triu_indices(D)
    entries = Ot[rows, cols]
    mag = np.abs(entries)
    phase = np.where(mag > 0, entries / np.where(mag > 0, mag, 1.0), 1.0)
    nu = eig.values[rows] - eig.values[cols]
    rho = np.where(rows == cols, 1.0, 2.0) / D

    norm = math.sqrt(float(rho @ mag ** 2))
    if norm < 1e-300:
        raise DegenerateInput("Krylov seed is zero")
    s = mag / norm
    # even vectors live on all non-zero entries, odd ones on off-diagonal pairs only
    nonzero = s > 0
    n_total = min(int(nonzero.sum() + (nonzero & (rows != cols)).sum()), D * D - D + 1)
    max_dim = n_total if max_dim is None else min(int(max_dim), n_total)

    Q = np.empty((max_dim, s.size))
    Q[0] = s
    b: list[float] = []
    n = 1
    while True:
        w = nu * Q[n - 1]
        scale = math.sqrt(float(rho @ w ** 2))
        same = Q[n % 2:n:2]
        for _ in range(2):
            c = same @ (rho * w)
            w = w - c @ same
        beta = math.sqrt(float(rho @ w ** 2))
        if n == max_dim:
            reason = "space_exhausted" if max_dim == n_total else "max_iter"
            break
        if beta <= tol * scale:
            reason = "breakdown"
            break
        b.append(beta)
        Q[n] = w / beta
        n += 1
    sk = SpectralKrylov(Q[:n], nu, s, rho, rows, cols, phase, eig)
    coeffs = RecurrenceCoefficients(a=np.zeros(n), b=np.array(b), termination_reason=reason,
                                    residual=beta)
    return sk, coeffs


def operator_complexity_hamiltonian(H, O, times, *, eig: Optional[Eigensystem] = None,
                                    keep_amplitudes: bool = False, tol: float = BREAKDOWN_TOL):
    """Krylov complexity of a Hermitian operator under ``H`` in one call.

    Returns ``(ComplexitySeries, RecurrenceCoefficients)``; uses the spectral
    form throughout, so no ``D^2``-sized complex basis is materialized.
    """
    eig = eigensystem(H, "hermitian") if eig is None else eig
    sk, coeffs = liouvillian_spectral_lanczos(eig, O, tol=tol)
    return sk.series(times, keep_amplitudes=keep_amplitudes), coeffs


def operator_lanczos(H, O, *, eig: Optional[Eigensystem] = None, method: str = "spectral", **kwargs):
    """Lanczos for the Liouvillian ``[H, .]`` acting on the operator `O`.

    Methods (all return the basis in the computational basis):

    ``"direct"``
        commutators applied matrix-free in the computational basis;
    ``"eigenbasis"``
        the same recursion in the eigenbasis of `H`, where the Liouvillian
        is the diagonal ``E_a - E_b``;
    ``"spectral"`` (default, Hermitian `O` only)
        `liouvillian_spectral_lanczos`; falls back to ``"eigenbasis"`` for
        non-Hermitian seeds or when ``reorthogonalize=False`` is requested.
    """
    H, O = as_operator(H), as_operator(O)
    if H.shape != O.shape:
        raise InvalidArgument("operator and Hamiltonian dimensions differ")
    D = H.shape[0]
    w = _operator_weight(D)
    if method == "spectral":
        hermitian = np.max(np.abs(O - O.conj().T)) <= 1e-10 * max(1.0, float(np.max(np.abs(O))))
        if hermitian and kwargs.get("reorthogonalize", True):
            eig = eigensystem(H, "hermitian") if eig is None else eig
            sk, coeffs = liouvillian_spectral_lanczos(
                eig, O, tol=kwargs.get("tol", BREAKDOWN_TOL), max_dim=kwargs.get("max_dim"))
            return sk.to_basis(), coeffs
        method = "eigenbasis"
    if method == "direct":
        def apply(v):
            return liouvillian_apply(H, v.reshape(D, D)).ravel()
        return lanczos(apply, O, weight=w, space_kind="operator",
                       generator_kind="hamiltonian", shape=(D, D), **kwargs)
    if method != "eigenbasis":
        raise InvalidArgument(f"unknown method {method!r}")

    eig = eigensystem(H, "hermitian") if eig is None else eig
    V = eig.vectors
    E = eig.values
    freqs = (E[:, None] - E[None, :]).ravel()
    seed = V.conj().T @ O @ V
    if np.allclose(seed.imag, 0, atol=0, rtol=0):
        seed = seed.real
    basis, coeffs = lanczos(lambda v: freqs * v, seed, weight=w, space_kind="operator",
                            generator_kind="hamiltonian", shape=(D, D), **kwargs)
    K = basis.vectors.reshape(-1, D, D)
    back = np.einsum("ia,nab,jb->nij", V, K, V.conj(), optimize=True).reshape(len(K), -1)
    return KrylovBasis(back, "operator", "hamiltonian", w, (D, D)), coeffs


def floquet_arnoldi(U, seed, space_kind: str = "state", tol: float = BREAKDOWN_TOL,
                    max_dim: Optional[int] = None):
    """Arnoldi basis for the stroboscopic orbit of a Floquet unitary.

    States evolve as ``U |psi>``; operators as the superoperator
    ``|O) -> |U^dag O U)``.
    """
    U = as_operator(U)
    if not is_unitary(U):
        raise InvalidArgument("Floquet operator is not unitary")
    D = U.shape[0]
    if space_kind == "state":
        seed = np.asarray(seed)
        if seed.size != D:
            raise InvalidArgument("seed dimension does not match U")
        return arnoldi(lambda v: U @ v, seed, tol=tol, max_dim=max_dim,
                       space_kind="state", generator_kind="floquet")
    if space_kind == "operator":
        seed = as_operator(seed)
        if seed.shape != U.shape:
            raise InvalidArgument("seed operator dimension does not match U")
        Ud = U.conj().T

        def apply(v):
            return (Ud @ v.reshape(D, D) @ U).ravel()
        return arnoldi(apply, seed, weight=_operator_weight(D), tol=tol, max_dim=max_dim,
                       space_kind="operator", generator_kind="floquet", shape=(D, D))
    raise InvalidArgument(f"space_kind must be 'state' or 'operator', got {space_kind!r}")


# ---------------------------------------------------------------------------
# complexity time series
# ---------------------------------------------------------------------------

def _check_seed_matches(basis: KrylovBasis, seed_flat: np.ndarray):
    if seed_flat.size != basis.vectors.shape[1]:
        raise InvalidArgument("seed and Krylov basis live in different spaces")
    overlap = abs(basis.weight * np.vdot(basis.vectors[0], seed_flat))
    if abs(overlap - 1.0) > 1e-8:
        raise InvalidArgument("Krylov basis was not built from this seed")


def _eigen_coordinates(basis: KrylovBasis, seed, V):
    """Express seed and basis in the eigenbasis `V` (columns)."""
    if basis.space_kind == "state":
        seed_c = V.conj().T @ np.asarray(seed).ravel()
        basis_c = basis.vectors @ V.conj()
    else:
        D = V.shape[0]
        seed_c = (V.conj().T @ np.asarray(seed).reshape(D, D) @ V).ravel()
        K = basis.vectors.reshape(-1, D, D)
        basis_c = np.einsum("ai,nab,bj->nij", V.conj(), K, V, optimize=True).reshape(len(K), -1)
    return seed_c, basis_c


def spread_series(basis_coords, seed_coords, freqs, times, *, weight: float = 1.0,
                  keep_amplitudes: bool = False, chunk: int = 256) -> ComplexitySeries:
    """Complexity of ``seed(t)_k = exp(i freqs_k t) seed_k`` on a fixed basis.

    All vectors are given in the coordinates where the evolution is
    diagonal.  The seed must be normalized w.r.t. ``weight``.
    """
    times = np.asarray(times, dtype=float)
    seed_coords = np.asarray(seed_coords).ravel()
    freqs = np.asarray(freqs, dtype=float).ravel()
    n_k = basis_coords.shape[0]
    index = np.arange(n_k, dtype=float)
    B = basis_coords.conj().T
    values = np.empty(len(times))
    probs = np.empty((len(times), n_k)) if keep_amplitudes else None
    for start in range(0, len(times), chunk):
        ts = times[start:start + chunk]
        evolved = np.exp(1j * np.outer(ts, freqs)) * seed_coords
        p = np.abs(weight * (evolved @ B)) ** 2
        totals = p.sum(axis=1)
        if np.max(np.abs(totals - 1.0)) > AMPLITUDE_TOL:
            raise InvalidArgument(
                f"Krylov amplitudes sum to {totals.min():.10f}..{totals.max():.10f}; "
                "basis does not span the evolved seed"
            )
        values[start:start + len(ts)] = p @ index
        if probs is not None:
            probs[start:start + len(ts)] = p
    return ComplexitySeries(times=times, values=values, amplitudes=probs, krylov_dim=n_k)


def complexity_series_floquet(U, seed, basis: KrylovBasis, n_steps: int, *,
                              eig: Optional[Eigensystem] = None,
                              keep_amplitudes: bool = False) -> ComplexitySeries:
    """``K_C`` at stroboscopic steps ``0..n_steps`` for a Floquet unitary."""
    U = as_operator(U)
    eig = eigensystem(U, "unitary") if eig is None else eig
    seed_n = _prepare_seed(seed, basis.weight)
    _check_seed_matches(basis, seed_n)
    seed_c, basis_c = _eigen_coordinates(basis, seed_n, eig.vectors)
    phases = eig.values
    if basis.space_kind == "state":
        freqs = phases
    else:
        # U^dag^t O U^t picks up exp(-i t (phi_a - phi_b))
        freqs = -(phases[:, None] - phases[None, :]).ravel()
    times = np.arange(n_steps + 1, dtype=float)
    return spread_series(basis_c, seed_c, freqs, times, weight=basis.weight,
                         keep_amplitudes=keep_amplitudes)


def complexity_series_hamiltonian(H, seed, basis: KrylovBasis, times, *,
                                  eig: Optional[Eigensystem] = None,
                                  keep_amplitudes: bool = False) -> ComplexitySeries:
    """``K_C(t)`` under ``e^{-iHt}`` (states) or ``e^{iHt} O e^{-iHt}`` (operators)."""
    H = as_operator(H)
    eig = eigensystem(H, "hermitian") if eig is None else eig
    seed_n = _prepare_seed(seed, basis.weight)
    _check_seed_matches(basis, seed_n)
    seed_c, basis_c = _eigen_coordinates(basis, seed_n, eig.vectors)
    E = eig.values
    if basis.space_kind == "state":
        freqs = -E
    else:
        freqs = (E[:, None] - E[None, :]).ravel()
    return spread_series(basis_c, seed_c, freqs, times, weight=basis.weight,
                         keep_amplitudes=keep_amplitudes)


# ---------------------------------------------------------------------------
# late-time structure and coefficient statistics
# ---------------------------------------------------------------------------

def late_time_weights(eig: Eigensystem, seed, basis: KrylovBasis):
    """Return ``(C, p)`` with ``C_j = sum_i i |<K_i|v_j>|^2`` and ``p_j = |<v_j|seed>|^2``."""
    if basis.space_kind != "state":
        raise InvalidArgument("late-time decomposition is implemented for state seeds only")
    psi = _prepare_seed(seed, 1.0)
    if psi.size != eig.dim:
        raise InvalidArgument("seed and eigensystem dimensions differ")
    overlaps = np.abs(basis.vectors.conj() @ eig.vectors) ** 2
    C = np.arange(basis.dim) @ overlaps
    p = np.abs(eig.vectors.conj().T @ psi) ** 2
    return C, p


def late_time_complexity(eig: Eigensystem, seed, basis: KrylovBasis) -> float:
    """Dephased long-time complexity ``sum_j C_j p_j``."""
    C, p = late_time_weights(eig, seed, basis)
    return float(C @ p)


def arnoldi_subdiag_variance(coeffs: RecurrenceCoefficients) -> float:
    """Population variance of the subdiagonal coefficients."""
    sub = np.asarray(coeffs.subdiagonal, dtype=float)
    if sub.size < 2:
        raise DegenerateInput("need at least two subdiagonal coefficients")
    return float(np.var(sub))


def variance_identity_check(H, psi0) -> tuple[float, float]:
    """Return ``(Delta H^2, b_1^2)`` for a Hermitian `H` and state `psi0`.

    The variance is evaluated from the moments ``<H^2> - <H>^2``; ``b_1``
    from the first Lanczos step.
    """
    H = as_operator(H)
    psi = _prepare_seed(psi0, 1.0)
    Hpsi = H @ psi
    mean = np.vdot(psi, Hpsi).real
    second = np.vdot(psi, H @ Hpsi).real
    variance = float(second - mean ** 2)
    _, coeffs = state_lanczos(H, psi, max_dim=2)
    b1 = coeffs.b[0] if coeffs.b.size else coeffs.residual
    return variance, float(b1 ** 2)
