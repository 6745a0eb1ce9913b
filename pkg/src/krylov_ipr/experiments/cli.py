"""Command-line interface: ``krylov-ipr run | list-presets | validate``."""

import argparse
import sys

from ..errors import InvalidArgument, NumericalFailure, ResourceLimit
from .config import ConfigError, UnknownPreset, load_config
from .presets import PRESETS, resolve
from .runner import run

EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, EXIT_IO, EXIT_NUMERICAL = 0, 2, 3, 4, 5


def _u64(text):
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="krylov-ipr", description="Krylov complexity experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute an experiment config")
    p_run.add_argument("--config", required=True, help="key=value config file")
    p_run.add_argument("--preset", help="override the config's preset")
    p_run.add_argument("--seed", type=_u64, help="override the master seed")
    p_run.add_argument("--out", help="output directory (beats KRYLOV_IPR_OUTPUT_DIR)")
    p_run.add_argument("--threads", type=_positive, help="worker threads for ensembles")
    p_run.add_argument("--no-plots", action="store_true", help="skip SVG output")

    sub.add_parser("list-presets", help="show available presets")

    p_val = sub.add_parser("validate", help="check a config without running it")
    p_val.add_argument("--config", required=True)
    return parser


def _load(args):
    overrides = {"preset": getattr(args, "preset", None), "seed": getattr(args, "seed", None),
                 "threads": getattr(args, "threads", None)}
    if getattr(args, "no_plots", False):
        overrides["plots"] = False
    config = load_config(args.config, **overrides)
    resolve(config)
    return config


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK

    if args.command == "list-presets":
        width = max(map(len, PRESETS))
        for name, preset in PRESETS.items():
            print(f"{name:<{width}}  {preset.description}")
        return EXIT_OK

    try:
        config = _load(args)
        if args.command == "validate":
            print(f"ok: preset {config.preset}, seed {config.seed}")
            return EXIT_OK
        manifest = run(config, out_dir=args.out)
    except UnknownPreset as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as exc:
        if exc.field == "config":
            print(f"io error: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (InvalidArgument, ResourceLimit) as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except NumericalFailure as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return EXIT_IO

    print(f"wrote {len(manifest.files)} files to {manifest.output_dir} "
          f"({manifest.wall_time:.1f} s)")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
