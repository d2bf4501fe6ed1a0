"""Command-line entry point: run experiments from a config file or a preset."""

import argparse
import sys

from .errors import ConfigError, MmwsimError
from .harness import (
    PRESET_NAMES,
    ScenarioConfig,
    emit_outputs,
    override_config,
    preset,
    run_experiment,
)

EXIT_OK = 0
EXIT_CONFIG = 1
EXIT_RUNTIME = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits with code 2 on usage errors; surface them as config errors instead
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="mmwsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one config or a preset grid")
    run.add_argument("--config", help="JSON config file mirroring ScenarioConfig fields")
    run.add_argument("--preset", choices=PRESET_NAMES, help="stock experiment grid")
    run.add_argument("--seed", type=int, help="override the run seed")
    run.add_argument("--snapshots", type=int, help="override the snapshot count")
    run.add_argument("--cluster-rate", type=float, dest="cluster_rate",
                     help="override the cluster-count Poisson rate")
    run.add_argument("--out", default="mmwsim-out", help="output directory (default: %(default)s)")
    run.add_argument("--emit-svg", action="store_true", help="also write figure.svg")
    return parser


def _gather_configs(args) -> list[ScenarioConfig]:
    if bool(args.config) == bool(args.preset):
        raise ConfigError("exactly one of --config or --preset is required")
    if args.config:
        configs = [ScenarioConfig.from_file(args.config)]
    else:
        configs = preset(args.preset)
    return [
        override_config(c, seed=args.seed, snapshots=args.snapshots,
                        cluster_rate=args.cluster_rate)
        for c in configs
    ]


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        configs = _gather_configs(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    try:
        results = []
        for config in configs:
            result = run_experiment(config)
            results.append(result)
            med = f"{result.summary.median:.4f}" if result.summary else "n/a"
            print(
                f"{config.label}: {len(result.samples)} samples "
                f"({result.degenerate_count} degenerate), median ratio {med}, "
                f"{result.wall_time_s:.1f}s"
            )
        emit_outputs(results, args.out, emit_svg=args.emit_svg)
    except MmwsimError as exc:
        print(f"run error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(f"outputs written to {args.out}")
    return EXIT_OK


def entry():
    sys.exit(main())


if __name__ == "__main__":
    entry()
