"""Experiment configuration: flat ``key = value`` files with ``#`` comments."""

from dataclasses import dataclass, field, fields, replace
import math
from pathlib import Path
from typing import Optional

from ..errors import KrylovIPRError

ENV_OUTPUT_DIR = "KRYLOV_IPR_OUTPUT_DIR"


class ConfigError(KrylovIPRError, ValueError):
    """Invalid configuration; `field` names the offending key."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


class UnknownPreset(KrylovIPRError, LookupError):
    def __init__(self, name: str, known):
        super().__init__(f"unknown preset {name!r}; available: {', '.join(sorted(known))}")
        self.name = name


Angles = tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class ExperimentConfig:
    """Declarative description of one experiment.

    Fields left at ``None`` take the preset's default (see
    `krylov_ipr.experiments.presets.PRESETS`).
    """

    preset: str
    seed: int
    ensemble_size: Optional[int] = None
    n_steps: Optional[int] = None
    t_max: Optional[float] = None
    d: Optional[int] = None
    epsilon: Optional[float] = None
    epsilons: Optional[tuple[float, ...]] = None
    j: Optional[float] = None
    kappa: Optional[float] = None
    kappas: Optional[tuple[float, ...]] = None
    alpha: Optional[float] = None
    L: Optional[int] = None
    J: Optional[float] = None
    hx: Optional[float] = None
    hz: Optional[float] = None
    hzs: Optional[tuple[float, ...]] = None
    thetas: Optional[tuple[float, ...]] = None
    angles: Optional[Angles] = None
    operators: Optional[tuple[str, ...]] = None
    sphere_uniform: bool = False
    output_dir: str = "results"
    threads: int = 1
    plots: bool = True

    def with_overrides(self, **kwargs) -> "ExperimentConfig":
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = [list(x) if isinstance(x, tuple) else x for x in v]
            out[f.name] = v
        return out


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

def _parse_int(name, text):
    try:
        return int(text, 0)
    except ValueError:
        raise ConfigError(name, f"expected an integer, got {text!r}") from None


def _parse_float(name, text):
    try:
        value = float(eval_constant(text))
    except ValueError:
        raise ConfigError(name, f"expected a number, got {text!r}") from None
    if not math.isfinite(value):
        raise ConfigError(name, "must be finite")
    return value


def eval_constant(text: str) -> float:
    """Parse a number, allowing ``pi`` multiples such as ``pi/2`` or ``0.5*pi``."""
    t = text.strip().lower().replace(" ", "")
    if "pi" not in t:
        return float(t)
    num, _, den = t.partition("/")
    if num in ("pi", "+pi"):
        factor = 1.0
    elif num == "-pi":
        factor = -1.0
    elif num.endswith("*pi"):
        factor = float(num[:-3])
    else:
        raise ValueError(text)
    value = factor * math.pi
    return value / float(den) if den else value


def _parse_bool(name, text):
    t = text.strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise ConfigError(name, f"expected a boolean, got {text!r}")


def _split(text):
    return [p.strip() for p in text.split(",") if p.strip()]


def _parse_angles(name, text):
    pairs = []
    for item in _split(text):
        theta, sep, phi = item.partition(":")
        if not sep:
            raise ConfigError(name, f"angle pairs are written theta:phi, got {item!r}")
        pairs.append((_parse_float(name, theta), _parse_float(name, phi)))
    return tuple(pairs)


_PARSERS = {
    "preset": lambda n, t: t.strip(),
    "seed": _parse_int,
    "ensemble_size": _parse_int,
    "n_steps": _parse_int,
    "t_max": _parse_float,
    "d": _parse_int,
    "epsilon": _parse_float,
    "epsilons": lambda n, t: tuple(_parse_float(n, x) for x in _split(t)),
    "j": _parse_float,
    "kappa": _parse_float,
    "kappas": lambda n, t: tuple(_parse_float(n, x) for x in _split(t)),
    "alpha": _parse_float,
    "L": _parse_int,
    "J": _parse_float,
    "hx": _parse_float,
    "hz": _parse_float,
    "hzs": lambda n, t: tuple(_parse_float(n, x) for x in _split(t)),
    "thetas": lambda n, t: tuple(_parse_float(n, x) for x in _split(t)),
    "angles": _parse_angles,
    "operators": lambda n, t: tuple(_split(t)),
    "sphere_uniform": _parse_bool,
    "output_dir": lambda n, t: t.strip(),
    "threads": _parse_int,
    "plots": _parse_bool,
}


def parse_config_text(text: str) -> dict:
    """Parse ``key = value`` lines into typed values (unknown keys rejected)."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        if not sep:
            raise ConfigError(f"line {lineno}", f"expected key = value, got {raw.strip()!r}")
        if key not in _PARSERS:
            raise ConfigError(key, "unknown configuration key")
        if key in values:
            raise ConfigError(key, "specified twice")
        values[key] = _PARSERS[key](key, value)
    return values


def load_config(path, **overrides) -> ExperimentConfig:
    """Read a config file; keyword overrides (``None`` = absent) win over the file."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError("config", f"cannot read {path}: {exc.strerror or exc}") from exc
    values = parse_config_text(text)
    values.update({k: v for k, v in overrides.items() if v is not None})
    for required in ("preset", "seed"):
        if required not in values:
            raise ConfigError(required, "missing (mandatory)")
    return ExperimentConfig(**values)
