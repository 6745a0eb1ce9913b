"""
Localization and chaos diagnostics: inverse participation ratios, gap-ratio
statistics, single-spin linear entropy and infinite-temperature OTOCs.
"""

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.linalg as sla

from .core import (
    Eigensystem,
    SpinSystem,
    as_operator,
    frobenius_normalize,
    is_hermitian,
    linear_entropy,
    single_spin_rdm,
    trace_norm,
)
from .errors import DegenerateInput, InvalidArgument


def ipr_state(psi, eig: Eigensystem) -> float:
    """``sum_i |<v_i|psi>|^4`` for a normalized state."""
    psi = np.asarray(psi).ravel()
    if psi.size != eig.dim:
        raise InvalidArgument(f"state dim {psi.size} != eigenbasis dim {eig.dim}")
    p = np.abs(eig.vectors.conj().T @ psi) ** 2
    return float(np.sum(p ** 2))


def _eigen_diagonal(O: np.ndarray, eig: Eigensystem) -> np.ndarray:
    """``<v_i|O|v_i>``, made basis-independent inside degenerate clusters.

    Within a cluster the block of O is brought to triangular (Schur) form,
    whose diagonal holds the block's eigenvalues.
    """
    V = eig.vectors
    Ot = V.conj().T @ O @ V
    diag = np.diag(Ot).copy()
    for idx in eig.clusters():
        if len(idx) > 1:
            T, _ = sla.schur(Ot[np.ix_(idx, idx)], output="complex")
            diag[idx] = np.diag(T)
    return diag


def ipr_operator(O, eig: Eigensystem, *, norm: Union[str, float] = "frobenius") -> float:
    """``sum_i |<v_i|O|v_i>|^2`` after normalizing `O`.

    Parameters
    ----------
    norm : {"frobenius", "trace"} or float
        ``"frobenius"`` divides by ``sqrt(Tr O O^dag)`` and ``"trace"`` by the
        sum of singular values.  A number divides by that value instead; use
        it when `O` is the restriction of a larger operator that was
        normalized before the restriction (symmetry sectors).
    """
    O = as_operator(O)
    if O.shape[0] != eig.dim:
        raise InvalidArgument(f"operator dim {O.shape[0]} != eigenbasis dim {eig.dim}")
    if norm == "frobenius":
        O = frobenius_normalize(O)
    elif norm == "trace":
        scale = trace_norm(O)
        if scale < 1e-14:
            raise DegenerateInput("operator has (numerically) zero trace norm")
        O = O / scale
    else:
        scale = float(norm)
        if not scale > 0:
            raise InvalidArgument("explicit normalization must be positive")
        if np.max(np.abs(O)) == 0:
            raise DegenerateInput("zero operator")
        O = O / scale
    return float(np.sum(np.abs(_eigen_diagonal(O, eig)) ** 2))


def ipr_sector_operator(O_full, isometry, eig_sector: Eigensystem) -> float:
    """Operator IPR inside a symmetry sector.

    `O_full` is normalized (Frobenius) in the full space and then restricted
    with ``V^dag O V``; the IPR sums over the sector eigenvectors only.
    """
    O_full = as_operator(O_full)
    V = np.asarray(isometry)
    O_sec = V.conj().T @ O_full @ V
    return ipr_operator(O_sec, eig_sector, norm=float(np.linalg.norm(O_full)))


# ---------------------------------------------------------------------------
# spectral statistics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GapRatioStats:
    ratios: np.ndarray
    mean: float
    skipped: int = 0


def gap_ratios(values, kind: str = "energies") -> GapRatioStats:
    """Consecutive-spacing ratios ``min(s_n, s_{n+1}) / max(s_n, s_{n+1})``.

    For ``kind="eigenphases"`` the values are taken modulo 2 pi and the
    wrap-around spacing is included, so ``d`` phases give ``d`` ratios.
    Pairs of zero spacings are skipped and counted.
    """
    x = np.sort(np.asarray(values, dtype=float).ravel())
    if x.size < 3:
        raise DegenerateInput("need at least three levels")
    if kind == "energies":
        s = np.diff(x)
        s_next = s[1:]
        s = s[:-1]
    elif kind == "eigenphases":
        x = np.sort(np.mod(x, 2 * np.pi))
        s = np.append(np.diff(x), 2 * np.pi - (x[-1] - x[0]))
        s_next = np.roll(s, -1)
    else:
        raise InvalidArgument(f"kind must be 'energies' or 'eigenphases', got {kind!r}")
    hi = np.maximum(s, s_next)
    ok = hi > 0
    r = np.minimum(s, s_next)[ok] / hi[ok]
    if r.size == 0:
        raise DegenerateInput("all spacings vanish")
    return GapRatioStats(ratios=r, mean=float(r.mean()), skipped=int((~ok).sum()))


mean_gap_ratio = gap_ratios


# ---------------------------------------------------------------------------
# dynamics diagnostics
# ---------------------------------------------------------------------------

def linear_entropy_series(U, psi0, spin: SpinSystem, n_steps: int) -> np.ndarray:
    """Single-constituent linear entropy ``S_2`` at steps ``0..n_steps``."""
    U = as_operator(U)
    psi = np.asarray(psi0, dtype=complex).ravel()
    if psi.size != spin.dim or U.shape[0] != spin.dim:
        raise InvalidArgument("state, unitary and spin dimensions must agree")
    out = np.empty(n_steps + 1)
    for t in range(n_steps + 1):
        out[t] = linear_entropy(single_spin_rdm(psi, spin))
        psi = U @ psi
    return out


def otoc_series(U, A, n_steps: int) -> np.ndarray:
    """``-Tr([A, A(t)]^2) / (2 D)`` with ``A(t) = U^dag^t A U^t``, t = 0..n_steps."""
    U, A = as_operator(U), as_operator(A)
    if not is_hermitian(A, 1e-10 * max(1.0, float(np.max(np.abs(A))))):
        raise InvalidArgument("OTOC operator must be Hermitian")
    D = A.shape[0]
    Ud = U.conj().T
    At = A.copy()
    out = np.empty(n_steps + 1)
    for t in range(n_steps + 1):
        C = A @ At - At @ A
        out[t] = -np.real(np.trace(C @ C)) / (2 * D)
        At = Ud @ At @ U
    return out
