"""
Transverse-field Ising chain in the reflection-even sector.

Operator IPRs of the collective magnetizations swap order as the longitudinal
field grows, and so does the saturation of their Krylov complexity.
"""

import numpy as np

from krylov_ipr import eigensystem
from krylov_ipr.diagnostics import ipr_sector_operator
from krylov_ipr.krylov import operator_complexity_hamiltonian
from krylov_ipr.models import (
    TfimSpec,
    collective_operator,
    parity_sector,
    project_positive_parity,
    tfim_hamiltonian,
)

L = 6
V = parity_sector(L)
print(f"L={L}: full dimension {2 ** L}, even sector {V.shape[1]}")
times = np.linspace(0, 200, 401)

for hz in (0.2, 1.35, 2.5):
    H = project_positive_parity(tfim_hamiltonian(TfimSpec(L, 1.0, 1.0, hz)), V)
    eig = eigensystem(H, "hermitian")
    row = [f"hz={hz:4.2f}"]
    for axis in ("x", "z"):
        S = collective_operator(L, axis)
        series, _ = operator_complexity_hamiltonian(H, project_positive_parity(S, V), times, eig=eig)
        row.append(f"S_{axis}: IPR {ipr_sector_operator(S, V, eig):.4f} K_C sat {series.saturation():7.1f}")
    print("  ".join(row))
