"""
Lanczos and Arnoldi on small Hermitian problems.

Shows the recurrence coefficients, the agreement between the two algorithms,
the energy-variance identity, and an operator case with a closed form.
"""

import numpy as np

from krylov_ipr.core import PAULIS
from krylov_ipr.krylov import (
    arnoldi,
    operator_complexity_hamiltonian,
    state_lanczos,
    variance_identity_check,
)

rng = np.random.default_rng(1)
n = 8
A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
H = (A + A.conj().T) / 2
psi = rng.standard_normal(n) + 1j * rng.standard_normal(n)
psi /= np.linalg.norm(psi)

basis, coeffs = state_lanczos(H, psi)
print("a_n:", np.round(coeffs.a, 4))
print("b_n:", np.round(coeffs.b, 4))
print("termination:", coeffs.termination_reason)
print(f"orthonormality error {basis.orthonormality_error():.1e}")

_, acoeffs = arnoldi(lambda v: H @ v, psi)
print(f"Lanczos vs Arnoldi: max |a| gap {np.max(np.abs(coeffs.a - acoeffs.a)):.1e}")

var, b1sq = variance_identity_check(H, psi)
print(f"energy variance {var:.6f} vs b_1^2 {b1sq:.6f}")

# sigma_x under H = sigma_z only moves between sigma_x and sigma_y
times = np.linspace(0, 3, 7)
series, op_coeffs = operator_complexity_hamiltonian(PAULIS["z"], PAULIS["x"], times)
print("operator b_n:", op_coeffs.b)
for t, k in zip(times, series.values):
    print(f"t={t:4.1f}  K_C={k:.6f}  sin^2(2t)={np.sin(2 * t) ** 2:.6f}")
