import argparse
import asyncio
import sys
from collections.abc import Sequence
from pathlib import Path

from edge_ghost.config import load_config
from edge_ghost.errors import EdgeGhostError
from edge_ghost.experiment import ExperimentRunner
from edge_ghost.models import CorrelationMode, ExperimentKind, RunStatus
from edge_ghost.utils import print_event

EXIT_OK = 0
EXIT_IO = 1
EXIT_INVALID = 2


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edge-ghost",
        description="Edge-enhanced ghost imaging of phase objects with pseudothermal light.",
    )
    subcommands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    for kind in ExperimentKind:
        sub = subcommands.add_parser(kind.subcommand, help=f"run a {kind.subcommand} experiment")
        sub.add_argument("--config", type=Path, required=True, help="experiment config (TOML or resolved JSON)")
        sub.add_argument("--seed", type=int, help="override the config seed")
        sub.add_argument("--mode", choices=[m.value for m in CorrelationMode], help="override the correlation mode")
        sub.add_argument("--out", type=Path, help="override the output directory")
        sub.add_argument("--workers", type=_positive_int, help="worker threads; never changes the outputs")
        sub.add_argument("--quiet", action="store_true", help="do not print run events")
        if kind == ExperimentKind.BELL:
            sub.add_argument(
                "--subtract-background",
                action="store_true",
                default=None,
                help="use C - 1 in the E ratios (shows what a background-free reading would give)",
            )

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    """Entry point for `edge-ghost` and `python -m edge_ghost`."""

    args = build_parser().parse_args(argv)
    kind = next(k for k in ExperimentKind if k.subcommand == args.command)

    overrides = {
        "seed": args.seed,
        "mode": args.mode,
        "output_dir": str(args.out) if args.out is not None else None,
        "bell.subtract_background": getattr(args, "subtract_background", None),
    }

    try:
        config = load_config(args.config, kind=kind, overrides=overrides)
        runner = ExperimentRunner(workers=args.workers)
        if not args.quiet:
            runner.on_any_event(print_event)
        outcome = asyncio.run(runner.run(config))
    except EdgeGhostError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO

    if outcome.status == RunStatus.ERROR:
        print(f"error: {outcome.error}", file=sys.stderr)
        return EXIT_INVALID
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
