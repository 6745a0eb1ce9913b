"""Krylov spread complexity of quantum states and operators.

Submodules
----------
core         dense linear-algebra and spin primitives
krylov       Lanczos / Arnoldi bases and complexity series
models       RMTE, kicked top and Ising-chain builders, seed constructors
diagnostics  IPR, gap ratios, linear entropy, OTOC
experiments  presets, ensemble runner and command-line interface
"""

from .core import (
    Eigensystem,
    SpinSystem,
    commutator,
    eigensystem,
    frobenius_normalize,
    hs_inner,
    liouvillian_apply,
    rotation_operator,
    single_spin_rdm,
    spin_operators,
    tensor_product,
    trace_norm_normalize,
)
from .diagnostics import (
    GapRatioStats,
    gap_ratios,
    ipr_operator,
    ipr_sector_operator,
    ipr_state,
    linear_entropy_series,
    mean_gap_ratio,
    otoc_series,
)
from .errors import DegenerateInput, InvalidArgument, KrylovIPRError, NumericalFailure, ResourceLimit
from .krylov import (
    ComplexitySeries,
    KrylovBasis,
    RecurrenceCoefficients,
    arnoldi,
    arnoldi_subdiag_variance,
    complexity_series_floquet,
    complexity_series_hamiltonian,
    floquet_arnoldi,
    lanczos,
    late_time_complexity,
    operator_lanczos,
    state_lanczos,
    variance_identity_check,
)
from .models import (
    KickedTopSpec,
    RmteSpec,
    TfimSpec,
    collective_operator,
    kicked_top_unitary,
    parity_operator,
    parity_sector,
    project_positive_parity,
    rmte_unitary,
    rotated_eigenvector_seed,
    rotated_operator_seed,
    sample_cue,
    spin_coherent_state,
    tfim_hamiltonian,
)

__version__ = "0.1.0"
