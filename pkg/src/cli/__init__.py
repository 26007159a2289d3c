"""Command-line surface: generate, estimate, validate, reproduce."""

from src.cli.base import ExitCode, UsageError, exit_code_for
from src.cli.router import build_parser

__all__ = ["ExitCode", "UsageError", "build_parser", "exit_code_for"]
