"""Execute a preset and persist its results.

Realizations run on a thread pool but each one draws from its own indexed
random stream and lands in an indexed slot, so the output does not depend
on the number of workers.  All files are written by the calling thread
after the computation finishes.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
import os
from pathlib import Path
import threading
import time

from .. import __version__
from ..rng import derived_seed
from .config import ENV_OUTPUT_DIR, ConfigError, ExperimentConfig
from .io import curve_csv, sha256_file, svg_plot, table_csv, to_json
from .presets import PRESETS, EnsembleAverage, coherent_ensemble, resolve, tfim_ensemble


class RunContext:
    """Deterministic map over realization indices plus sub-seed bookkeeping."""

    def __init__(self, seed: int, threads: int = 1):
        self.seed = seed
        self.threads = max(1, int(threads))
        self._subseeds: dict[str, set] = {}
        self._lock = threading.Lock()

    def map(self, fn, n: int) -> list:
        if self.threads == 1 or n < 2:
            return [fn(i) for i in range(n)]
        with ThreadPoolExecutor(max_workers=self.threads) as pool:
            return list(pool.map(fn, range(n)))

    def note_subseed(self, tag: str, index: int) -> None:
        with self._lock:
            self._subseeds.setdefault(tag, set()).add(int(index))

    def subseeds(self) -> dict:
        return {tag: [{"index": i, "seed": derived_seed(self.seed, i, tag)} for i in sorted(idx)]
                for tag, idx in sorted(self._subseeds.items())}


@dataclass
class RunManifest:
    config: dict
    version: str
    subseeds: dict
    wall_time: float
    files: list = field(default_factory=list)
    output_dir: str = ""

    def to_dict(self) -> dict:
        return {"config": self.config, "version": self.version, "subseeds": self.subseeds,
                "wall_time_seconds": self.wall_time, "files": self.files}


def output_directory(config: ExperimentConfig, override=None) -> Path:
    """``override`` (CLI flag) > environment variable > config value."""
    base = override or os.environ.get(ENV_OUTPUT_DIR) or config.output_dir
    return Path(base) / config.preset


def execute(config: ExperimentConfig):
    """Run the preset in memory; returns ``(PresetResult, RunContext, seconds)``."""
    params = resolve(config)
    if config.threads < 1:
        raise ConfigError("threads", "must be >= 1")
    ctx = RunContext(config.seed, config.threads)
    t0 = time.perf_counter()
    result = PRESETS[config.preset].fn(params, ctx)
    return result, ctx, time.perf_counter() - t0


def run(config: ExperimentConfig, out_dir=None) -> RunManifest:
    """Execute `config` and write CSV/JSON/SVG results plus ``manifest.json``."""
    result, ctx, elapsed = execute(config)
    target = output_directory(config, out_dir)
    target.mkdir(parents=True, exist_ok=True)

    payloads = {}
    for curve in result.curves:
        payloads[f"{curve.name}.csv"] = curve_csv(curve)
    for table in result.tables:
        payloads[f"{table.name}.csv"] = table_csv(table)
    payloads["summary.json"] = to_json({"preset": config.preset, "seed": config.seed,
                                        "results": result.summary})
    if config.plots and result.plot is not None:
        if result.curves:
            series = [(c.label or c.name, c.times, c.values) for c in result.curves]
        else:
            t = result.tables[0]
            series = [(col, t.rows[:, 0], t.rows[:, k])
                      for k, col in enumerate(t.columns) if k > 0 and col != "stderr"]
        payloads[f"{config.preset}.svg"] = svg_plot(series, result.plot)

    files = []
    for name, text in payloads.items():
        path = target / name
        path.write_text(text)
        files.append({"path": name, "sha256": sha256_file(path)})
    manifest = RunManifest(config.to_dict(), __version__, ctx.subseeds(), elapsed, files, str(target))
    (target / "manifest.json").write_text(to_json(manifest.to_dict()))
    return manifest


def ensemble_average(config: ExperimentConfig) -> dict:
    """Averaged complexity curves for the ensemble presets (``fig3a``, ``fig3b``).

    Returns ``{label: EnsembleAverage}`` keyed by field value.
    """
    params = resolve(config)
    ctx = RunContext(config.seed, config.threads)
    if config.preset == "fig3a":
        return {f"hz={hz:g}": tfim_ensemble(params, ctx, hz) for hz in params.hzs}
    if config.preset == "fig3b":
        return {f"kappa={k:g}": coherent_ensemble(params, ctx, k) for k in params.kappas}
    raise ConfigError("preset", f"ensemble averaging is defined for fig3a and fig3b, not {config.preset!r}")


__all__ = ["EnsembleAverage", "RunContext", "RunManifest", "ensemble_average", "execute", "run"]
