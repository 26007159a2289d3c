"""``validate``: feasibility report for a target triple."""

import argparse

import structlog
from pydantic import Field

from src.cli.base import (
    ExitCode,
    TargetOptions,
    UsageError,
    add_grid_arguments,
    add_target_arguments,
    build_options,
)
from src.output.renderer import ReportRenderer
from src.output.schemas import FeasibilityView
from src.spectral.feasibility import fit_cross_amplitude
from src.spectral.schemas import FrequencyGrid, SpectralPath
from src.spectral.transform import build_triple

logger = structlog.get_logger()


class ValidateOptions(TargetOptions):
    """Options of the validate subcommand."""

    length: int | None = Field(default=None, description="Side length L")
    dim: int = Field(default=1, ge=1, le=3)
    path: SpectralPath = "fft"


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "validate",
        help="check the joint feasibility of a target triple",
        argument_default=argparse.SUPPRESS,
    )
    add_target_arguments(parser)
    add_grid_arguments(parser)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    opts = build_options(ValidateOptions, args)
    if opts.length is None:
        raise UsageError("--length is required")

    grid = FrequencyGrid(length=opts.length, dim=opts.dim)
    models = opts.target_models()
    # The target is checked as given unless a normalization is asked for.
    if opts.max_coherence is not None:
        models = fit_cross_amplitude(models, grid, opts.max_coherence, opts.path)

    triple = build_triple(models, grid, opts.path, isotropic=opts.dim >= 2)
    report = triple.feasibility
    view = FeasibilityView(
        length=opts.length,
        dim=opts.dim,
        path=opts.path,
        cross_amplitude=models.xy.amplitude,
        report=report,
    )
    print(ReportRenderer().render("feasibility", view), end="")
    logger.info(
        "feasibility checked",
        feasible=report.feasible,
        max_coherence=report.max_coherence,
        n_violations=report.n_violations,
    )
    return ExitCode.OK if report.feasible else ExitCode.INFEASIBLE
