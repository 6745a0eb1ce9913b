"""Per-field checks on resolved preset parameters."""

import math

from ..models import MAX_CHAIN
from .config import ConfigError

_AXES = ("x", "y", "z")


def _half_integer(name, j):
    if abs(2 * j - round(2 * j)) > 1e-12 or j < 0.5:
        raise ConfigError(name, f"must be a positive half-integer, got {j}")


def _unit_interval(name, x):
    if not 0.0 <= x <= 1.0:
        raise ConfigError(name, f"must lie in [0, 1], got {x}")


def validate_params(p: dict) -> None:
    """Raise `ConfigError` naming the first invalid field."""
    seed = p["seed"]
    if not 0 <= seed < 2 ** 64:
        raise ConfigError("seed", "must be an unsigned 64-bit integer")
    if "d" in p and p["d"] < 2:
        raise ConfigError("d", "subsystem dimension must be >= 2")
    if "epsilon" in p:
        _unit_interval("epsilon", p["epsilon"])
    for eps in p.get("epsilons", ()):
        _unit_interval("epsilons", eps)
    if "epsilons" in p and not p["epsilons"]:
        raise ConfigError("epsilons", "must not be empty")
    if "j" in p:
        _half_integer("j", p["j"])
    if "L" in p and not 2 <= p["L"] <= MAX_CHAIN:
        raise ConfigError("L", f"chain length must lie in 2..{MAX_CHAIN}")
    if "ensemble_size" in p and p["ensemble_size"] < 2:
        raise ConfigError("ensemble_size", "must be >= 2")
    if "n_steps" in p and p["n_steps"] < 1:
        raise ConfigError("n_steps", "must be >= 1")
    if "t_max" in p and not p["t_max"] > 0:
        raise ConfigError("t_max", "must be positive")
    for key in ("kappas", "hzs", "angles"):
        if key in p and not p[key]:
            raise ConfigError(key, "must not be empty")
    for theta, phi in p.get("angles", ()):
        if not (math.isfinite(theta) and math.isfinite(phi)):
            raise ConfigError("angles", "angles must be finite")
    ops = p.get("operators", ())
    for name in ops:
        if name not in _AXES:
            raise ConfigError("operators", f"operator names are x, y, z; got {name!r}")
    if len(set(ops)) != len(ops):
        raise ConfigError("operators", "duplicate operator names")
