"""Config-driven experiment runner and named presets."""

from .config import ENV_OUTPUT_DIR, ConfigError, ExperimentConfig, UnknownPreset, load_config, parse_config_text
from .io import read_curve_csv, verify_manifest
from .presets import PRESETS, EnsembleAverage, average_series, resolve
from .runner import RunContext, RunManifest, ensemble_average, execute, run

__all__ = [
    "ENV_OUTPUT_DIR",
    "PRESETS",
    "ConfigError",
    "EnsembleAverage",
    "ExperimentConfig",
    "RunContext",
    "RunManifest",
    "UnknownPreset",
    "average_series",
    "ensemble_average",
    "execute",
    "load_config",
    "parse_config_text",
    "read_curve_csv",
    "resolve",
    "run",
    "verify_manifest",
]
