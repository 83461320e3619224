"""
Components Package

The command-line surface of mopkit: argument parsing, command handlers and
the JSON/CSV formatters for their payloads.
"""

from .cli import COMMANDS, build_parser, parse_arguments
from .formatters import format_moments, format_polynomials, format_report, read_matrix_table

__all__ = [
    "COMMANDS",
    "build_parser",
    "parse_arguments",
    "format_moments",
    "format_polynomials",
    "format_report",
    "read_matrix_table"
]
