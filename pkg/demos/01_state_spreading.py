"""
Spread complexity of a state and how it tracks the IPR.

A Floquet unitary from the random transition ensemble is diagonalized once;
seed states are eigenvectors tilted by a collective rotation.  The further the
tilt, the more eigenvectors the seed overlaps and the higher K_C saturates.
"""

import numpy as np

from krylov_ipr import eigensystem, ipr_state
from krylov_ipr.krylov import complexity_series_floquet, floquet_arnoldi, late_time_complexity
from krylov_ipr.models import RmteSpec, rmte_unitary, rotated_eigenvector_seed, uniform_superposition

U = rmte_unitary(RmteSpec(d=5, epsilon=1.0, seed=7))
eig = eigensystem(U, "unitary")
print(f"Floquet dimension {eig.dim}")

print(f"{'theta':>6} {'IPR':>8} {'K_C sat':>8} {'late':>8}")
for theta in (0.0, 0.05, 0.15, 0.4, 1.0):
    psi = rotated_eigenvector_seed(U, 0, theta, 0.3, eig=eig)
    basis, coeffs = floquet_arnoldi(U, psi, "state")
    series = complexity_series_floquet(U, psi, basis, 1000, eig=eig)
    late = late_time_complexity(eig, psi, basis)
    print(f"{theta:6.2f} {ipr_state(psi, eig):8.4f} {series.saturation():8.3f} {late:8.3f}")

# the equal-weight superposition of eigenvectors has the smallest possible IPR
psi = uniform_superposition(eig)
basis, _ = floquet_arnoldi(U, psi, "state")
print(f"uniform seed: IPR {ipr_state(psi, eig):.4f}, late-time K_C {late_time_complexity(eig, psi, basis):.3f}")
print(f"(half the largest Krylov index: {(basis.dim - 1) / 2:.1f})")
