"""
Command-Line Interface Component

Argument parsing and the three commands of the `mopkit` program:

    mopkit generate <model> --n N --wmax W [--format json|csv] [--out PATH]
    mopkit verify   <model> --n N --wmax W [--checks LIST|all] [--nodes M] [--tol T] ...
    mopkit moments  <model> --n N --order K [--nodes M] [--format json|csv] [--out PATH]

Commands return the payload text and an exit code; writing it out and
mapping errors to exit codes is left to the application class.
"""

import argparse
from typing import List, Optional, Sequence, Tuple

from src.components.formatters import format_moments, format_polynomials, format_report
from src.config.settings import app_config
from src.services.verification_service import verification_service


def _check_list(value: str) -> List[str]:
    names = [name.strip() for name in value.split(',') if name.strip()]
    if not names:
        raise argparse.ArgumentTypeError("expected a comma-separated list of checks or 'all'")
    for name in names:
        if name != 'all' and name not in app_config.AVAILABLE_CHECKS:
            raise argparse.ArgumentTypeError(
                f"unknown check '{name}' (choose from {', '.join(app_config.AVAILABLE_CHECKS)} or all)"
            )
    return names


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('model', help=f"Model name ({', '.join(app_config.AVAILABLE_MODELS)})")
    parser.add_argument('--n', type=int, default=0, help="Model parameter n (default: 0)")
    parser.add_argument(
        '--format', choices=app_config.OUTPUT_FORMATS, default=app_config.DEFAULT_FORMAT,
        help=f"Output format (default: {app_config.DEFAULT_FORMAT})",
    )
    parser.add_argument('--out', default=None, help="Write the payload to this file instead of stdout")
    parser.add_argument('--nodes', type=int, default=None, help="Gauss-Legendre node count (default: model rule)")
    parser.add_argument('--log-level', default=None, help="Logging level for stderr diagnostics")


def build_parser() -> argparse.ArgumentParser:
    """The `mopkit` argument parser with its three subcommands."""
    parser = argparse.ArgumentParser(
        prog=app_config.PROGRAM_NAME,
        description="Build and verify matrix orthogonal polynomials from pre-sequences.",
    )
    commands = parser.add_subparsers(dest='command', required=True)

    generate = commands.add_parser('generate', help="Emit the coefficients of Q_0 ... Q_wmax")
    _add_common(generate)
    generate.add_argument('--wmax', type=int, default=0, help="Largest degree index (default: 0)")

    verify = commands.add_parser('verify', help="Run verification checks and emit a report")
    _add_common(verify)
    verify.add_argument('--wmax', type=int, default=0, help="Largest degree index (default: 0)")
    verify.add_argument('--checks', type=_check_list, default=['all'], help="Comma-separated checks or 'all'")
    verify.add_argument('--tol', type=float, default=None, help=f"Residual tolerance (default: {app_config.RESIDUAL_TOLERANCE})")
    verify.add_argument('--gram-tol', type=float, default=None, help=f"Gram tolerance (default: {app_config.GRAM_TOLERANCE})")
    verify.add_argument('--samples', type=int, default=None, help=f"Sample points (default: {app_config.SAMPLE_COUNT})")
    verify.add_argument('--seed', type=int, default=None, help="Seed for the sample points (default: MOPKIT_SEED)")

    moments = commands.add_parser('moments', help="Emit the moments of W and W'")
    _add_common(moments)
    moments.add_argument('--order', type=int, default=0, help="Largest moment order (default: 0)")
    return parser


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """Parse arguments; argparse exits with status 2 on usage errors."""
    return build_parser().parse_args(argv)


def _params(args: argparse.Namespace, *names: str) -> dict:
    return {name: getattr(args, name) for name in names}


def cmd_generate(args: argparse.Namespace) -> Tuple[str, int]:
    qs = verification_service.generate(args.model, args.n, args.wmax)
    return format_polynomials(args.model, _params(args, 'n', 'wmax'), qs, args.format), 0


def cmd_verify(args: argparse.Namespace) -> Tuple[str, int]:
    report = verification_service.verify(
        args.model,
        args.n,
        args.wmax,
        checks=args.checks,
        nodes=args.nodes,
        tol=args.tol,
        gram_tol=args.gram_tol,
        samples=args.samples,
        seed=args.seed,
    )
    return format_report(report, args.format), 0 if report.all_passed else 1


def cmd_moments(args: argparse.Namespace) -> Tuple[str, int]:
    moments = verification_service.moments(args.model, args.n, args.order, args.nodes)
    return format_moments(args.model, _params(args, 'n', 'order', 'nodes'), moments, args.format), 0


COMMANDS = {
    'generate': cmd_generate,
    'verify': cmd_verify,
    'moments': cmd_moments,
}
