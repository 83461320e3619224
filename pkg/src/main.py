"""
Main Application Entry Point

This module brings the parts of mopkit together (command-line parsing,
the verification service and the output formatters) and turns the outcome
of a command into the process exit code:

    0  command succeeded and every selected check passed
    1  a check failed, or a numerical error stopped the command
    2  usage error: bad arguments, unknown model or check
"""

import logging
import sys
from typing import Optional, Sequence

from src.components.cli import COMMANDS, parse_arguments
from src.numerics.exceptions import (
    DegenerateWeightError,
    MopkitError,
    NotPolynomialError,
    SingularMatrixError,
    UnknownModelError,
)
from src.utils.helpers import configure_logging, format_error_message

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class MopkitApp:
    """
    Main application class for mopkit.

    One instance runs one command: it parses the arguments, dispatches to
    the command handler, writes the payload and reports errors on stderr.
    """

    def __init__(self, stdout=None, stderr=None):
        """
        Args:
            stdout: Stream for payloads (defaults to sys.stdout)
            stderr: Stream for diagnostics (defaults to sys.stderr)
        """
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def run(self, argv: Optional[Sequence[str]] = None) -> int:
        """
        Run one command and return its exit code.

        Args:
            argv: Arguments without the program name (defaults to sys.argv[1:])
        """
        try:
            args = parse_arguments(argv)
        except SystemExit as exit_request:
            return EXIT_USAGE if exit_request.code else EXIT_OK

        configure_logging(args.log_level)
        logger.debug("running %s with %s", args.command, vars(args))

        try:
            payload, code = COMMANDS[args.command](args)
        except UnknownModelError as error:
            return self._report_error('unknown_model', str(error), EXIT_USAGE)
        except MopkitError as error:
            return self._report_error(self._error_type(error), str(error), EXIT_FAILED)
        except ValueError as error:
            return self._report_error('bad_parameters', str(error), EXIT_USAGE)

        try:
            self._write(payload, args.out)
        except OSError as error:
            return self._report_error('output_error', str(error), EXIT_FAILED)
        return code

    def _write(self, payload: str, path: Optional[str]) -> None:
        if path is None:
            self.stdout.write(payload)
            return
        with open(path, 'w', encoding='utf-8', newline='\n') as handle:
            handle.write(payload)

    @staticmethod
    def _error_type(error: MopkitError) -> str:
        if isinstance(error, SingularMatrixError):
            return 'singular_matrix'
        if isinstance(error, DegenerateWeightError):
            return 'degenerate_weight'
        if isinstance(error, NotPolynomialError):
            return 'not_polynomial'
        return 'unknown'

    def _report_error(self, error_type: str, details: str, code: int) -> int:
        self.stderr.write(format_error_message(error_type, details) + '\n')
        return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point of the `mopkit` program."""
    try:
        return MopkitApp().run(argv)
    except KeyboardInterrupt:
        sys.stderr.write("interrupted\n")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
