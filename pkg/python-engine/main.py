import argparse
import logging
import sys
from pathlib import Path

# cpdetect를 패키지로 인식하도록 경로 추가
sys.path.append(str(Path(__file__).parent.resolve()))

from cpdetect.cli import cmd_boundary, cmd_detect, cmd_generate, cmd_simulate, cmd_sweep
from cpdetect.config import Config
from cpdetect.errors import InputError, NumericFailure

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3


def _add_common(parser: argparse.ArgumentParser):
    parser.add_argument("--side", choices=["one", "two"], default="one", help="Alternative direction.")
    parser.add_argument("--gamma", type=float, default=Config.DEFAULT_GAMMA,
                        help="Penalty exponent (> 0) in the test thresholds.")
    parser.add_argument("--delta", default="auto", help="Upper grid ratio: 'auto' or a positive number.")
    parser.add_argument("--out", default=None, help="Output path (stdout when omitted).")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging and progress bars.")


def _add_run(parser: argparse.ArgumentParser, default_format: str):
    parser.add_argument("config", help="Run config YAML, or a preset name from presets/.")
    parser.add_argument("--seed", type=int, default=None, help="Override the config seed (u64).")
    parser.add_argument("--trials", type=int, default=None, help="Override the config trial count.")
    parser.add_argument("--workers", type=int, default=None,
                        help="Parallel workers (default: CPDETECT_WORKERS or 1).")
    parser.add_argument("--format", choices=["csv", "json"], default=default_format)
    parser.add_argument("--out", default=None, help="Output path (stdout when omitted).")
    parser.add_argument("--verbose", "-v", action="store_true", help="Debug logging and progress bars.")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description="High-dimensional changepoint detection engine")
    sub = parser.add_subparsers(dest="command", required=True)

    detect = sub.add_parser("detect", help="Run the combined PBJ/max test on a CSV matrix.")
    detect.add_argument("matrix_csv", help="p lines of n comma-separated floats, no header.")
    _add_common(detect)

    boundary = sub.add_parser("boundary", help="Evaluate detection-boundary formulas.")
    boundary.add_argument("--a", type=float, required=True, help="Calibration exponent a > 0.")
    boundary.add_argument("--beta", type=float, required=True, help="Sparsity exponent beta.")
    boundary.add_argument("--p", type=float, required=True, help="Dimension p (> 1).")
    boundary.add_argument("--side", choices=["one", "two"], default="one")
    boundary.add_argument("--regime2", action="store_true", help="Use the double-log calibration.")
    boundary.add_argument("--n", type=float, default=None, help="Sequence length, for reference rates.")
    boundary.add_argument("--s", type=float, default=None, help="Sparsity, for reference rates.")
    boundary.add_argument("--out", default=None)
    boundary.add_argument("--verbose", "-v", action="store_true")

    simulate = sub.add_parser("simulate", help="Monte Carlo Type I/II estimate.")
    _add_run(simulate, "json")

    sweep = sub.add_parser("sweep", help="Phase-plane sweep over boundary multiples.")
    _add_run(sweep, "csv")

    generate = sub.add_parser("generate", help="Write a seeded matrix fixture.")
    generate.add_argument("--p", type=int, required=True)
    generate.add_argument("--n", type=int, required=True)
    generate.add_argument("--seed", type=int, default=Config.DEFAULT_SEED)
    generate.add_argument("--t-star", type=int, default=None)
    generate.add_argument("--s", type=int, default=0, help="Rows carrying the change.")
    generate.add_argument("--rho", type=float, default=0.0, help="Normalized jump of each changed row.")
    generate.add_argument("--side", choices=["one", "two"], default="one")
    generate.add_argument("--out", required=True)
    generate.add_argument("--verbose", "-v", action="store_true")
    return parser


def _configure_logging(verbose: bool):
    level = logging.DEBUG if verbose else getattr(logging, Config.LOG_LEVEL.upper(), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


def run(args: argparse.Namespace):
    if args.command == "detect":
        cmd_detect(args.matrix_csv, side=args.side, gamma=args.gamma, delta=args.delta, out=args.out)
    elif args.command == "boundary":
        cmd_boundary(args.a, args.beta, args.p, side=args.side, regime2=args.regime2,
                     n=args.n, s=args.s, out=args.out)
    elif args.command == "simulate":
        cmd_simulate(args.config, out=args.out, fmt=args.format, seed=args.seed, trials=args.trials,
                     workers=args.workers, verbose=args.verbose)
    elif args.command == "sweep":
        cmd_sweep(args.config, out=args.out, fmt=args.format, seed=args.seed, trials=args.trials,
                  workers=args.workers, verbose=args.verbose)
    elif args.command == "generate":
        cmd_generate(args.p, args.n, args.out, seed=args.seed, t_star=args.t_star, s=args.s,
                     rho=args.rho, side=args.side)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)

    try:
        run(args)
    except InputError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except NumericFailure as e:
        print(f"❌ Numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except (FloatingPointError, OverflowError) as e:
        print(f"❌ Numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC

    if args.command in ("simulate", "sweep"):
        print("\n🎉 Run finished successfully!", file=sys.stderr)
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
