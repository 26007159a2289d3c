"""``reproduce``: rerun a published experiment and check its tolerances."""

import argparse
from pathlib import Path

import structlog
from pydantic import BaseModel, Field

from src.cli.base import ExitCode, UsageError, build_options, default_out
from src.config import settings
from src.output.renderer import ReportRenderer
from src.reproduction import FigureId, Scale, run_figure

logger = structlog.get_logger()

SUMMARY_NAME = "summary.txt"


class ReproduceOptions(BaseModel):
    """Options of the reproduce subcommand."""

    figure: FigureId
    scale: Scale = "desk"
    allow_full_scale: bool = Field(
        default=False, description="Permit the multi-hour full-scale profiles"
    )
    share_noise: bool = Field(default=False, description="fig1: one noise for all")
    seed: int = Field(default=0, ge=0)
    workers: int = Field(default_factory=lambda: settings.workers, ge=1)
    out: Path = Field(default_factory=default_out)


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "reproduce",
        help="rerun fig1, fig2 or fig3 and compare against tolerances",
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("figure", choices=("fig1", "fig2", "fig3"))
    parser.add_argument("--scale", choices=("desk", "full"), help="experiment size")
    parser.add_argument(
        "--allow-full-scale",
        action="store_true",
        help="required with --scale full",
    )
    parser.add_argument(
        "--share-noise", action="store_true", help="fig1: same noise for all panels"
    )
    parser.add_argument("--seed", type=int, help="64-bit master seed")
    parser.add_argument("--workers", type=int, help="synthesis threads")
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--config", type=Path, help="key=value config file")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace) -> int:
    opts = build_options(ReproduceOptions, args)
    if opts.scale == "full" and not opts.allow_full_scale:
        raise UsageError("--scale full needs --allow-full-scale")

    out_dir = opts.out / opts.figure
    summary = run_figure(
        opts.figure,
        out_dir,
        scale=opts.scale,
        master_seed=opts.seed,
        workers=opts.workers,
        share_noise=opts.share_noise,
    )
    text = ReportRenderer().render("reproduce", summary)
    (out_dir / SUMMARY_NAME).write_text(text)
    print(text, end="")
    logger.info("reproduction finished", figure=opts.figure, passed=summary.passed)
    return ExitCode.OK if summary.passed else ExitCode.FAILURE
