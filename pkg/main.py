"""Entry point for the eigentrilat command line.

Subcommands:
    solve      solve a problem JSON file
    locate     solve from RSS/RTT measurements and an anchor registry
    bench      run the noise, degenerate-geometry or timing experiment
    calibrate  fit log-distance path loss parameters

Exit codes: 0 success, 2 no unique position (continuum of minimizers),
1 usage or input error.
"""

import argparse
import sys

from config import LOG_DIR
from core.bench import ML_INITS, SOLVERS
from core.errors import TrilaterationError
from handlers.commands import EXIT_ERROR, cmd_bench, cmd_calibrate, cmd_locate, cmd_solve
from services.logging_config import setup_logging
from utils.formatters import FORMATS
from utils.parsing import parse_float_list, parse_int_list, parse_known_coord, parse_scales


class CliParser(argparse.ArgumentParser):
    """Argument parser whose usage errors exit with 1 instead of argparse's 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got '{text}'") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _solver_list(text: str) -> list[str]:
    names = [name.strip() for name in text.split(",") if name.strip()]
    unknown = [name for name in names if name not in SOLVERS]
    if not names or unknown:
        raise argparse.ArgumentTypeError(f"unknown solvers {unknown}; choose from {', '.join(SOLVERS)}")
    return names


def _add_solve_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--simple", action="store_true", help="single-point solver instead of the classifying one")
    parser.add_argument("--refine-ml", action="store_true", help="refine every point by local ML optimization")
    parser.add_argument("--known-coord", action="append", type=parse_known_coord, metavar="IDX=VAL",
                        help="fix receiver coordinate IDX to VAL (repeatable)")
    parser.add_argument("--rank-tol", type=float, default=None, help="relative rank tolerance of λI−D")
    parser.add_argument("--report-sphere", action="store_true", help="report continua with kind 'sphere'")
    parser.add_argument("--always-return", action="store_true", help="include one point of a continuum")


def _add_output_flags(parser: argparse.ArgumentParser, default_format: str):
    parser.add_argument("--output", default=None, help="write to this file instead of stdout")
    parser.add_argument("--format", choices=FORMATS, default=default_format)


def build_parser() -> CliParser:
    parser = CliParser(prog="eigentrilat", description="Eigenvalue-based trilateration.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    subparsers = parser.add_subparsers(dest="command", required=True)

    solve = subparsers.add_parser("solve", help="solve a problem JSON file")
    solve.add_argument("--input", default="-", help="problem JSON file, '-' for stdin")
    _add_solve_flags(solve)
    _add_output_flags(solve, "json")
    solve.set_defaults(handler=cmd_solve)

    locate = subparsers.add_parser("locate", help="locate a receiver from RSS/RTT measurements")
    locate.add_argument("--input", required=True, help="measurement CSV (anchor_id,kind,value)")
    locate.add_argument("--anchors", required=True, help="anchor registry JSON")
    locate.add_argument("--unweighted", action="store_true", help="use W = I instead of noise-model weights")
    locate.add_argument("--sigma-rss", type=float, default=None, help="RSS noise std in dBm")
    locate.add_argument("--sigma-rtt", type=float, default=None, help="RTT distance noise std in meters")
    _add_solve_flags(locate)
    _add_output_flags(locate, "json")
    locate.set_defaults(handler=cmd_locate)

    bench = subparsers.add_parser("bench", help="run a benchmark experiment")
    bench.add_argument("kind", choices=("noise", "degen", "timing"))
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--trials", type=_positive_int, default=None)
    bench.add_argument("--sigmas", type=parse_float_list, default=None, help="e.g. 0.001,0.01,0.1")
    bench.add_argument("--scales", type=parse_scales, default=None, help="e.g. 1e0..1e-8 or 1,0.1,0.01")
    bench.add_argument("--m", type=parse_int_list, default=None, help="sender count(s); a list for timing")
    bench.add_argument("--reps", type=_positive_int, default=None, help="timing repetitions (at least 100)")
    bench.add_argument("--solvers", type=_solver_list, default=None, help=f"subset of {','.join(SOLVERS)}")
    bench.add_argument("--ml-init", choices=ML_INITS, default="truth", help="starting point of ML refinement")
    bench.add_argument("--threads", type=_positive_int, default=None, help="worker processes")
    bench.add_argument("--out-dir", default=None, help="report directory")
    bench.add_argument("--write-trials", action="store_true", help="also write per-trial errors")
    bench.add_argument("--no-progress", action="store_true")
    _add_output_flags(bench, "human")
    bench.set_defaults(handler=cmd_bench)

    calibrate = subparsers.add_parser("calibrate", help="fit path loss parameters")
    calibrate.add_argument("--input", required=True, help="calibration CSV (distance,rss_dbm)")
    _add_output_flags(calibrate, "human")
    calibrate.set_defaults(handler=cmd_calibrate)

    return parser


def main(argv=None) -> int:
    """Run the CLI and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if isinstance(e.code, int) else EXIT_ERROR

    level = {0: None, 1: "INFO"}.get(args.verbose, "DEBUG")
    setup_logging(level, log_dir=LOG_DIR if args.command == "bench" and args.verbose else None)

    try:
        return args.handler(args)
    except TrilaterationError as e:
        print(f"eigentrilat: {type(e).__name__}: {e}", file=sys.stderr)
    except OSError as e:
        print(f"eigentrilat: I/O error: {e}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == '__main__':
    sys.exit(main())
