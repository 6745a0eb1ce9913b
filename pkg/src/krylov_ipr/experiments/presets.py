"""
Named experiment presets.

Each preset is a function ``fn(p, ctx) -> PresetResult`` where `p` holds the
resolved parameters (preset defaults overlaid with the user's config) and
`ctx` supplies the deterministic parallel map and sub-seed bookkeeping.
"""

from dataclasses import dataclass, field
import math
from types import SimpleNamespace
from typing import Callable, Optional

import numpy as np
from scipy import stats

from ..core import (
    eigensystem,
    spin_operators,
)
from ..diagnostics import gap_ratios, ipr_operator, ipr_sector_operator, ipr_state, linear_entropy_series, otoc_series
from ..errors import InvalidArgument
from ..krylov import (
    arnoldi,
    arnoldi_subdiag_variance,
    complexity_series_floquet,
    floquet_arnoldi,
    late_time_complexity,
    operator_complexity_hamiltonian,
    saturation_average,
    state_lanczos,
    variance_identity_check,
)
from ..models import (
    KickedTopSpec,
    RmteSpec,
    TfimSpec,
    collective_operator,
    kicked_top_unitary,
    parity_sector,
    project_positive_parity,
    rmte_unitary,
    rotated_collective_operator,
    rotated_eigenvector_seed,
    rotated_operator_seed,
    sample_cue,
    spin_coherent_state,
    tfim_hamiltonian,
    uniform_superposition,
)
from ..rng import substream
from .io import Curve, PlotSpec, Table

SATURATION_FRACTION = 0.8


@dataclass
class PresetResult:
    curves: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    plot: Optional[PlotSpec] = None


@dataclass(frozen=True)
class Preset:
    name: str
    description: str
    defaults: dict
    fn: Callable


@dataclass(frozen=True)
class EnsembleAverage:
    """Pointwise statistics over realizations of a complexity series."""

    times: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    n: int

    @property
    def stderr(self) -> np.ndarray:
        return self.std / math.sqrt(self.n)

    def saturation(self, fraction: float = SATURATION_FRACTION) -> float:
        return saturation_average(self.mean, fraction)


def average_series(times, rows) -> EnsembleAverage:
    rows = np.asarray(rows, dtype=float)
    if rows.ndim != 2 or rows.shape[0] < 2:
        raise InvalidArgument("ensemble averaging needs at least two realizations")
    return EnsembleAverage(np.asarray(times, float), rows.mean(axis=0), rows.std(axis=0), rows.shape[0])


def _grid(p):
    return np.linspace(0.0, p.t_max, p.n_steps + 1)


def _coherent_angles(p, ctx, index: int, tag: str = "coherent.angles"):
    g = substream(p.seed, index, tag)
    ctx.note_subseed(tag, index)
    u, v = g.uniform(0.0, 1.0, size=2)
    theta = math.acos(1.0 - 2.0 * u) if p.sphere_uniform else math.pi * u
    return theta, 2.0 * math.pi * v


def _spin_op(j, name):
    return spin_operators(j).component(name)


# ---------------------------------------------------------------------------
# RMTE (tilted seeds, uniform seed, operator seeds, gap-ratio scan)
# ---------------------------------------------------------------------------

def _rmte_state_run(U, eig, psi, n_steps):
    basis, _ = floquet_arnoldi(U, psi, "state")
    series = complexity_series_floquet(U, psi, basis, n_steps, eig=eig)
    return series, basis


def fig1a(p, ctx):
    U = rmte_unitary(RmteSpec(p.d, p.epsilon, p.seed))
    ctx.note_subseed("rmte", 0)
    eig = eigensystem(U, "unitary")
    res = PresetResult(plot=PlotSpec(f"RMTE state complexity, d={p.d}, eps={p.epsilon:g}",
                                     "step", "K_C"))
    for k, (theta, phi) in enumerate(p.angles):
        psi = rotated_eigenvector_seed(U, 0, theta, phi, eig=eig)
        series, _ = _rmte_state_run(U, eig, psi, p.n_steps)
        ipr = ipr_state(psi, eig)
        res.curves.append(Curve(f"seed{k}", series.times, series.values, label=f"IPR={ipr:.3f}"))
        res.summary.setdefault("curves", []).append(
            {"name": f"seed{k}", "theta": theta, "phi": phi, "ipr": ipr,
             "saturation": series.saturation(SATURATION_FRACTION), "krylov_dim": series.krylov_dim})

    thetas = np.geomspace(0.01, 0.4, p.ensemble_size)

    def sweep(i):
        psi = rotated_eigenvector_seed(U, 0, float(thetas[i]), 0.3, eig=eig)
        series, _ = _rmte_state_run(U, eig, psi, p.n_steps)
        return ipr_state(psi, eig), series.saturation(SATURATION_FRACTION)

    pts = np.array(ctx.map(sweep, len(thetas)))
    rho = stats.spearmanr(pts[:, 0], pts[:, 1]).statistic
    res.summary["sweep"] = {"theta": thetas, "phi": 0.3, "ipr": pts[:, 0],
                            "saturation": pts[:, 1], "spearman": float(rho)}
    return res


def fig1b(p, ctx):
    res = PresetResult(plot=PlotSpec(f"Uniform-superposition seed, d={p.d}", "step", "K_C", log_x=True))
    sats, rows = [], []
    ctx.note_subseed("rmte", 0)
    for eps in p.epsilons:
        U = rmte_unitary(RmteSpec(p.d, eps, p.seed))
        eig = eigensystem(U, "unitary")
        psi = uniform_superposition(eig)
        series, basis = _rmte_state_run(U, eig, psi, p.n_steps)
        sat = series.saturation(SATURATION_FRACTION)
        sats.append(sat)
        res.curves.append(Curve(f"eps{eps:g}", series.times, series.values, label=f"eps={eps:g}"))
        rows.append({"epsilon": eps, "ipr": ipr_state(psi, eig), "saturation": sat,
                     "late_time": late_time_complexity(eig, psi, basis)})
    sats = np.array(sats)
    res.summary = {"runs": rows, "relative_spread": float((sats.max() - sats.min()) / sats.mean())}
    return res


def fig2a(p, ctx):
    U = rmte_unitary(RmteSpec(p.d, p.epsilon, p.seed))
    ctx.note_subseed("rmte", 0)
    eig = eigensystem(U, "unitary")
    res = PresetResult(plot=PlotSpec(f"RMTE operator complexity, d={p.d}, eps={p.epsilon:g}",
                                     "step", "K_C"))

    def one(k):
        theta, phi = p.angles[k]
        O = rotated_operator_seed(U, theta, phi)
        basis, _ = floquet_arnoldi(U, O, "operator")
        series = complexity_series_floquet(U, O, basis, p.n_steps, eig=eig)
        return ipr_operator(O, eig), series

    for k, (ipr, series) in enumerate(ctx.map(one, len(p.angles))):
        theta, phi = p.angles[k]
        res.curves.append(Curve(f"op{k}", series.times, series.values, label=f"IPR={ipr:.3f}"))
        res.summary.setdefault("curves", []).append(
            {"name": f"op{k}", "theta": theta, "phi": phi, "ipr": ipr,
             "saturation": series.saturation(SATURATION_FRACTION), "krylov_dim": series.krylov_dim})
    return res


def supp_level_spacing(p, ctx):
    n = p.ensemble_size
    eps_list = list(p.epsilons)

    def one(i):
        ctx.note_subseed("rmte", i)
        out = [gap_ratios(eigensystem(rmte_unitary(RmteSpec(p.d, eps, p.seed, i)), "unitary").values,
                          "eigenphases").mean for eps in eps_list]
        ctx.note_subseed("cue.reference", i)
        cue = sample_cue(p.d * p.d, substream(p.seed, i, "cue.reference"))
        out.append(gap_ratios(np.angle(np.linalg.eigvals(cue)), "eigenphases").mean)
        return out

    r = np.array(ctx.map(one, n))
    mean, se = r.mean(axis=0), r.std(axis=0, ddof=1) / math.sqrt(n)
    rows = np.column_stack([eps_list, mean[:-1], se[:-1]])
    res = PresetResult(tables=[Table("gap_ratio", ("epsilon", "mean_r", "stderr"), rows)],
                       plot=PlotSpec(f"Mean gap ratio, d={p.d}", "epsilon", "<r>"))
    res.summary = {"epsilon": eps_list, "mean_r": mean[:-1], "stderr": se[:-1],
                   "cue_reference": {"dim": p.d * p.d, "mean_r": float(mean[-1]),
                                     "stderr": float(se[-1])},
                   "realizations": n}
    return res


# ---------------------------------------------------------------------------
# kicked top (coherent states, operators, OTOC, ensembles)
# ---------------------------------------------------------------------------

def _kicked(p, kappa=None):
    return kicked_top_unitary(KickedTopSpec(p.j, p.kappa if kappa is None else kappa, p.alpha))


def fig1c(p, ctx):
    U = _kicked(p)
    eig = eigensystem(U, "unitary")
    res = PresetResult(plot=PlotSpec(f"Kicked top coherent states, j={p.j:g}, kappa={p.kappa:g}",
                                     "step", "K_C"))
    for k, (theta, phi) in enumerate(p.angles):
        psi = spin_coherent_state(p.j, theta, phi)
        basis, _ = floquet_arnoldi(U, psi, "state")
        series = complexity_series_floquet(U, psi, basis, p.n_steps, eig=eig)
        ipr = ipr_state(psi, eig)
        res.curves.append(Curve(f"state{k}", series.times, series.values, label=f"IPR={ipr:.3f}"))
        res.summary.setdefault("curves", []).append(
            {"name": f"state{k}", "theta": theta, "phi": phi, "ipr": ipr,
             "saturation": series.saturation(SATURATION_FRACTION)})
    return res


def fig1d(p, ctx):
    U = _kicked(p)
    spin = spin_operators(p.j)
    res = PresetResult(plot=PlotSpec(f"Linear entropy, j={p.j:g}, kappa={p.kappa:g}", "step", "S_2"))
    steps = np.arange(p.n_steps + 1, dtype=float)
    for k, (theta, phi) in enumerate(p.angles):
        s2 = linear_entropy_series(U, spin_coherent_state(p.j, theta, phi), spin, p.n_steps)
        res.curves.append(Curve(f"state{k}", steps, s2, label=f"theta={theta:.2f}, phi={phi:.2f}"))
        res.summary.setdefault("curves", []).append(
            {"name": f"state{k}", "theta": theta, "phi": phi,
             "saturation": saturation_average(s2, SATURATION_FRACTION)})
    return res


def _stable_prefix(b1, b2, floor=1e-4) -> int:
    """Length of the common prefix before either sequence approaches breakdown."""
    n = min(len(b1), len(b2))
    small = np.nonzero((np.asarray(b1[:n]) < floor) | (np.asarray(b2[:n]) < floor))[0]
    return int(small[0]) if small.size else n


def fig2b(p, ctx):
    U = _kicked(p)
    eig = eigensystem(U, "unitary")
    res = PresetResult(plot=PlotSpec(f"Kicked top operator complexity, j={p.j:g}, kappa={p.kappa:g}",
                                     "step", "K_C"))

    def one(k):
        A = _spin_op(p.j, p.operators[k])
        basis, coeffs = floquet_arnoldi(U, A, "operator")
        return A, coeffs, complexity_series_floquet(U, A, basis, p.n_steps, eig=eig)

    runs = dict(zip(p.operators, ctx.map(one, len(p.operators))))
    for name, (A, coeffs, series) in runs.items():
        res.curves.append(Curve(f"j{name}", series.times, series.values, label=f"j_{name}"))
        res.summary[f"j{name}"] = {
            "ipr_frobenius": ipr_operator(A, eig), "ipr_trace": ipr_operator(A, eig, norm="trace"),
            "saturation": series.saturation(SATURATION_FRACTION), "krylov_dim": series.krylov_dim,
            "termination": coeffs.termination_reason}
    if "x" in runs and "z" in runs:
        bx, bz = runs["x"][1].subdiagonal, runs["z"][1].subdiagonal
        n = _stable_prefix(bx, bz)
        res.summary["x_z_comparison"] = {
            "max_curve_difference": float(np.max(np.abs(runs["x"][2].values - runs["z"][2].values))),
            "stable_prefix": n,
            "max_subdiagonal_difference_on_prefix": float(np.max(np.abs(bx[:n] - bz[:n]))) if n else 0.0}
    return res


def fig2c(p, ctx):
    U = _kicked(p)
    res = PresetResult(plot=PlotSpec(f"OTOC, j={p.j:g}, kappa={p.kappa:g}", "step", "C(t)"))
    steps = np.arange(p.n_steps + 1, dtype=float)
    vals = ctx.map(lambda k: otoc_series(U, _spin_op(p.j, p.operators[k]), p.n_steps), len(p.operators))
    sats = {}
    for name, c in zip(p.operators, vals):
        res.curves.append(Curve(f"j{name}", steps, c, label=f"j_{name}"))
        sats[name] = saturation_average(c, SATURATION_FRACTION)
    pairs = {}
    names = list(sats)
    for a in range(len(names)):
        for b in range(a + 1, len(names)):
            x, y = sats[names[a]], sats[names[b]]
            pairs[f"{names[a]}{names[b]}"] = abs(x - y) / max(abs(x), abs(y))
    res.summary = {"saturation": sats, "pairwise_relative_difference": pairs}
    return res


def coherent_ensemble(p, ctx, kappa) -> EnsembleAverage:
    U = _kicked(p, kappa)
    eig = eigensystem(U, "unitary")

    def one(i):
        psi = spin_coherent_state(p.j, *_coherent_angles(p, ctx, i))
        basis, _ = floquet_arnoldi(U, psi, "state")
        return complexity_series_floquet(U, psi, basis, p.n_steps, eig=eig).values

    return average_series(np.arange(p.n_steps + 1, dtype=float), ctx.map(one, p.ensemble_size))


def fig3b(p, ctx):
    res = PresetResult(plot=PlotSpec(f"Kicked top averaged complexity, j={p.j:g}", "step", "mean K_C"))
    for kappa in p.kappas:
        avg = coherent_ensemble(p, ctx, kappa)
        res.curves.append(Curve(f"kappa{kappa:g}", avg.times, avg.mean, avg.stderr, f"kappa={kappa:g}"))
        res.summary[f"kappa{kappa:g}"] = {"saturation": avg.saturation(), "realizations": avg.n}
    return res


def fig3c(p, ctx):
    rows = []
    for kappa in p.kappas:
        U = _kicked(p, kappa)

        def one(i):
            psi = spin_coherent_state(p.j, *_coherent_angles(p, ctx, i))
            _, coeffs = floquet_arnoldi(U, psi, "state")
            return arnoldi_subdiag_variance(coeffs)

        v = np.array(ctx.map(one, p.ensemble_size))
        rows.append((kappa, v.mean(), v.std(ddof=1) / math.sqrt(len(v))))
    rows = np.array(rows)
    res = PresetResult(tables=[Table("variance", ("kappa", "mean_variance", "stderr"), rows)],
                       plot=PlotSpec(f"Arnoldi coefficient variance, j={p.j:g}", "kappa", "variance"))
    res.summary = {"kappa": rows[:, 0], "mean_variance": rows[:, 1], "stderr": rows[:, 2],
                   "realizations": p.ensemble_size}
    return res


# ---------------------------------------------------------------------------
# Ising chain (ensemble, saturation flip, IPR table)
# ---------------------------------------------------------------------------

def _tfim_sector(p, hz):
    V = parity_sector(p.L)
    H = project_positive_parity(tfim_hamiltonian(TfimSpec(p.L, p.J, p.hx, hz)), V)
    return V, H, eigensystem(H, "hermitian")


def tfim_ensemble(p, ctx, hz) -> EnsembleAverage:
    V, H, eig = _tfim_sector(p, hz)
    times = _grid(p)

    def one(i):
        g = substream(p.seed, i, "tfim.angles")
        ctx.note_subseed("tfim.angles", i)
        theta, phi = g.uniform(0.0, math.pi), g.uniform(0.0, 2.0 * math.pi)
        O = project_positive_parity(rotated_collective_operator(p.L, theta, phi), V)
        series, _ = operator_complexity_hamiltonian(H, O, times, eig=eig)
        return series.values

    return average_series(times, ctx.map(one, p.ensemble_size))


def fig3a(p, ctx):
    res = PresetResult(plot=PlotSpec(f"TFIM averaged operator complexity, L={p.L}", "time", "mean K_C"))
    for hz in p.hzs:
        avg = tfim_ensemble(p, ctx, hz)
        res.curves.append(Curve(f"hz{hz:g}", avg.times, avg.mean, avg.stderr, f"hz={hz:g}"))
        res.summary[f"hz{hz:g}"] = {"saturation": avg.saturation(), "realizations": avg.n,
                                    "mean_band_width": float(avg.std.mean())}
    return res


def supp_tfim_flip(p, ctx):
    res = PresetResult(plot=PlotSpec(f"TFIM collective-operator complexity, L={p.L}", "time", "K_C"))
    times = _grid(p)
    sats = {}
    for hz in p.hzs:
        V, H, eig = _tfim_sector(p, hz)
        for axis in p.operators:
            O = project_positive_parity(collective_operator(p.L, axis), V)
            series, _ = operator_complexity_hamiltonian(H, O, times, eig=eig)
            res.curves.append(Curve(f"S{axis}_hz{hz:g}", times, series.values, label=f"S_{axis}, hz={hz:g}"))
            sats.setdefault(f"S{axis}", {})[f"{hz:g}"] = series.saturation(SATURATION_FRACTION)
    res.summary = {"saturation": sats}
    return res


def ipr_table(p, ctx):
    V = parity_sector(p.L)
    table = {}
    for hz in p.hzs:
        _, _, eig = _tfim_sector(p, hz)
        table[f"{hz:g}"] = {f"S{a}": ipr_sector_operator(collective_operator(p.L, a), V, eig)
                           for a in p.operators}
    rows = np.array([[hz] + [table[f"{hz:g}"][f"S{a}"] for a in p.operators] for hz in p.hzs])
    cols = ("hz",) + tuple(f"ipr_S{a}" for a in p.operators)
    return PresetResult(tables=[Table("ipr", cols, rows)], summary={"L": p.L, "ipr": table})


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def _random_hermitian(g, n):
    A = g.standard_normal((n, n)) + 1j * g.standard_normal((n, n))
    return (A + A.conj().T) / 2


def _random_state(g, n):
    v = g.standard_normal(n) + 1j * g.standard_normal(n)
    return v / np.linalg.norm(v)


def identity_checks(p, ctx):
    def one(i):
        g = substream(p.seed, i, "identity.pairs")
        ctx.note_subseed("identity.pairs", i)
        n = int(g.integers(2, 65))
        H, psi = _random_hermitian(g, n), _random_state(g, n)
        var, b1sq = variance_identity_check(H, psi)
        lb, lc = state_lanczos(H, psi)
        ab, ac = arnoldi(lambda v: H @ v, psi)
        ma, mb = min(len(lc.a), len(ac.a)), min(len(lc.b), len(ac.b))
        return (abs(var - b1sq), float(np.max(np.abs(lc.a[:ma] - ac.a[:ma]))),
                float(np.max(np.abs(lc.b[:mb] - ac.b[:mb]), initial=0.0)),
                max(lb.orthonormality_error(), ab.orthonormality_error()))

    r = np.array(ctx.map(one, p.ensemble_size))

    # dephasing formula on an RMTE Floquet run
    U = rmte_unitary(RmteSpec(p.d, p.epsilon, p.seed))
    ctx.note_subseed("rmte", 0)
    eig = eigensystem(U, "unitary")
    psi = rotated_eigenvector_seed(U, 0, 0.3, 0.3, eig=eig)
    basis, _ = floquet_arnoldi(U, psi, "state")
    series = complexity_series_floquet(U, psi, basis, p.n_steps, eig=eig)
    late = late_time_complexity(eig, psi, basis)
    window = series.values[min(200, p.n_steps):]
    summary = {
        "pairs": p.ensemble_size,
        "max_variance_identity_error": r[:, 0].max(),
        "max_lanczos_arnoldi_a_difference": r[:, 1].max(),
        "max_lanczos_arnoldi_b_difference": r[:, 2].max(),
        "max_orthonormality_error": r[:, 3].max(),
        "late_time": {"formula": late, "time_average": float(window.mean()),
                      "relative_difference": abs(late - window.mean()) / late},
    }
    curve = Curve("rmte_state", series.times, series.values, label="K_C")
    return PresetResult(curves=[curve], summary=summary,
                        plot=PlotSpec("Late-time check (RMTE)", "step", "K_C"))


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_FIG1C_ANGLES = ((math.pi / 2, math.pi / 2), (2.2, 4.0), (0.5, 0.5))
_RMTE_ANGLES = ((0.0, 0.3), (0.05, 0.3), (0.15, 0.3), (0.4, 0.3))
_KT = {"j": 15.0, "kappa": 6.0, "alpha": math.pi / 2}
_TFIM = {"L": 6, "J": 1.0, "hx": 1.0}


def _preset(name, description, fn, **defaults):
    return Preset(name, description, defaults, fn)


PRESETS = {p.name: p for p in (
    _preset("fig1a", "RMTE state complexity for rotated-eigenvector seeds of decreasing IPR", fig1a,
            d=5, epsilon=1.0, n_steps=1000, angles=_RMTE_ANGLES, ensemble_size=24),
    _preset("fig1b", "uniform-superposition seed (fixed IPR) across coupling strengths", fig1b,
            d=5, epsilons=(0.1, 0.3, 0.5, 1.0), n_steps=1000),
    _preset("fig1c", "kicked-top coherent-state complexity", fig1c,
            angles=_FIG1C_ANGLES, n_steps=500, **_KT),
    _preset("fig1d", "kicked-top single-spin linear entropy", fig1d,
            angles=_FIG1C_ANGLES, n_steps=500, **_KT),
    _preset("fig2a", "RMTE operator complexity for rotated-unitary seeds", fig2a,
            d=5, epsilon=1.0, n_steps=1000, angles=_RMTE_ANGLES),
    _preset("fig2b", "kicked-top collective spin operator complexity", fig2b,
            operators=("x", "y", "z"), n_steps=1000, **_KT),
    _preset("fig2c", "kicked-top OTOCs of collective spin operators", fig2c,
            operators=("x", "y", "z"), n_steps=500, **_KT),
    _preset("fig3a", "TFIM operator complexity averaged over rotated collective operators", fig3a,
            hzs=(0.2, 2.5), ensemble_size=100, n_steps=1000, t_max=500.0, **_TFIM),
    _preset("fig3b", "kicked-top complexity averaged over random coherent states", fig3b,
            j=10.0, kappas=(0.5, 1.0, 3.0, 6.0), alpha=math.pi / 2, ensemble_size=100,
            n_steps=500, sphere_uniform=False),
    _preset("fig3c", "variance of Arnoldi coefficients versus kick strength", fig3c,
            j=10.0, kappas=(0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0), alpha=math.pi / 2,
            ensemble_size=100, sphere_uniform=False),
    _preset("supp_level_spacing", "mean gap ratio of the RMTE versus coupling", supp_level_spacing,
            d=5, epsilons=tuple(round(0.1 * k, 1) for k in range(11)), ensemble_size=200),
    _preset("supp_tfim_flip", "TFIM S_z / S_x saturation ordering versus hz", supp_tfim_flip,
            hzs=(0.2, 1.35, 2.5), operators=("z", "x"), n_steps=1000, t_max=500.0, **_TFIM),
    _preset("ipr_table", "operator IPRs of S_x and S_z in the TFIM positive-parity sector", ipr_table,
            hzs=(0.2, 1.35, 2.5), operators=("x", "z"), **_TFIM),
    _preset("identity_checks", "variance identity, Lanczos/Arnoldi agreement, late-time formula",
            identity_checks, ensemble_size=100, d=5, epsilon=1.0, n_steps=1000),
)}


def resolve(config) -> SimpleNamespace:
    """Overlay the config on the preset defaults and validate the result."""
    from .config import ConfigError, UnknownPreset
    from .validation import validate_params

    if config.preset not in PRESETS:
        raise UnknownPreset(config.preset, PRESETS)
    preset = PRESETS[config.preset]
    params = dict(preset.defaults)
    params.setdefault("sphere_uniform", False)
    model_keys = set(preset.defaults) | {"sphere_uniform"}
    for key, value in config.to_dict().items():
        if key in ("preset", "seed", "output_dir", "threads", "plots"):
            continue
        if key == "sphere_uniform":
            if value and "sphere_uniform" not in preset.defaults:
                raise ConfigError(key, f"not used by preset {preset.name!r}")
            params[key] = value
            continue
        if value is None:
            continue
        if key not in model_keys:
            raise ConfigError(key, f"not used by preset {preset.name!r}")
        params[key] = tuple(tuple(x) if isinstance(x, list) else x for x in value) \
            if isinstance(value, list) else value
    params["seed"] = config.seed
    validate_params(params)
    return SimpleNamespace(**params)
