"""Command-line parser aggregation."""

import argparse

from src.cli.base import CliParser
from src.cli.estimate import register as register_estimate
from src.cli.generate import register as register_generate
from src.cli.reproduce import register as register_reproduce
from src.cli.validate import register as register_validate
from src.config import settings


def build_parser() -> argparse.ArgumentParser:
    """Root ``cgsp`` parser with every subcommand registered."""
    parser = CliParser(
        prog="cgsp",
        description="Coupled Gaussian sequences and fields by Fourier filtering",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {settings.app_version}"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    register_generate(subparsers)
    register_estimate(subparsers)
    register_validate(subparsers)
    # Experiment runner, desk scale by default
    register_reproduce(subparsers)
    return parser
