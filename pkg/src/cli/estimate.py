"""``estimate``: correlation tables and exponent fits from generated data."""

import argparse
from collections.abc import Iterable
from pathlib import Path

import structlog
from pydantic import BaseModel, Field

from src.cli.base import ExitCode, UsageError, build_options, default_out
from src.estimation.correlations import EstimationError, estimate_correlations
from src.estimation.fitting import default_fit_range, fit_power_law_exponent
from src.output.formats import (
    read_cgsp,
    read_header,
    read_pairs_csv,
    write_table_csv,
)
from src.output.manifest import MANIFEST_NAME, RunManifest
from src.output.renderer import ReportRenderer
from src.output.schemas import CurveSummary, EstimateReport
from src.synthesis.schemas import RealizationPair

logger = structlog.get_logger()

CURVES = ("xx", "yy", "xy")
REPORT_NAME = "estimate.txt"
FITS_NAME = "fits.json"


class EstimateOptions(BaseModel):
    """Options of the estimate subcommand."""

    input: Path = Field(description="CGSP or CSV pair file")
    dim: int | None = Field(
        default=None, ge=1, le=3, description="Grid dimension of CSV data"
    )
    fit_min: int | None = Field(default=None, description="First lag of the fit")
    fit_max: int | None = Field(default=None, description="Last lag of the fit")
    keep_lags: int | None = Field(
        default=None, ge=0, description="Per-realization lags kept for the scatter"
    )
    out: Path = Field(default_factory=default_out, description="Output directory")


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser(
        "estimate",
        help="estimate correlations and fit power-law exponents",
        argument_default=argparse.SUPPRESS,
    )
    parser.add_argument("input", type=Path, help="pairs.cgsp or pairs.csv")
    parser.add_argument(
        "--dim", type=int, help="grid dimension of CSV input (default: manifest)"
    )
    parser.add_argument("--fit-min", type=int, help="first lag of the fit range")
    parser.add_argument("--fit-max", type=int, help="last lag of the fit range")
    parser.add_argument(
        "--keep-lags", type=int, help="lags kept per realization (default fit max)"
    )
    parser.add_argument("--out", type=Path, help="output directory")
    parser.add_argument("--config", type=Path, help="key=value config file")
    parser.set_defaults(handler=run)


def _run_manifest(source: Path) -> RunManifest | None:
    path = source.parent / MANIFEST_NAME
    return RunManifest.load(path) if path.is_file() else None


def _read_pairs(opts: EstimateOptions) -> tuple[Iterable[RealizationPair], int]:
    """Pair stream of the input file and its grid side length."""
    if not opts.input.is_file():
        raise FileNotFoundError(f"input not found: {opts.input}")
    manifest = _run_manifest(opts.input)
    seed = manifest.config.master_seed if manifest else None
    if opts.input.suffix == ".csv":
        dim = opts.dim or (manifest.config.dim if manifest else 1)
        pairs = read_pairs_csv(opts.input, dim=dim, master_seed=seed)
        return pairs, pairs[0].x.shape[0]
    return read_cgsp(opts.input, seed), read_header(opts.input).shape[0]


def _fit_range(opts: EstimateOptions, side_length: int) -> tuple[int, int]:
    if opts.fit_min is not None and opts.fit_max is not None:
        return opts.fit_min, opts.fit_max
    n_min, n_max = default_fit_range(side_length)
    return (
        opts.fit_min if opts.fit_min is not None else n_min,
        opts.fit_max if opts.fit_max is not None else n_max,
    )


def run(args: argparse.Namespace) -> int:
    opts = build_options(EstimateOptions, args)
    if opts.fit_min is not None and opts.fit_max is not None:
        if opts.fit_max <= opts.fit_min:
            raise UsageError("--fit-max must exceed --fit-min")

    pairs, side_length = _read_pairs(opts)
    try:
        fit_range: tuple[int, int] | None = _fit_range(opts, side_length)
        range_error = ""
    except EstimationError as exc:
        fit_range, range_error = None, str(exc)
        logger.warning("exponent fits skipped", reason=range_error)
    default_keep = fit_range[1] if fit_range else 0
    keep_lags = opts.keep_lags if opts.keep_lags is not None else default_keep
    est = estimate_correlations(pairs, keep_lags=max(keep_lags, 0))

    report = EstimateReport(
        source=str(opts.input),
        n_realizations=est.n_realizations,
        side_length=est.side_length,
        dim=est.dim,
    )
    if est.n_realizations == 1:
        report.warnings.append(
            "single realization: standard errors are zero and no scatter is given"
        )

    for which in CURVES:
        table = f"estimate_{which}.csv"
        write_table_csv(opts.out / table, est.lags, est.curve(which), est.stderr(which))
        report.curves.append(
            CurveSummary(
                which=which,
                zero_lag=float(est.curve(which)[0]),
                zero_lag_stderr=float(est.stderr(which)[0]),
                table=table,
            )
        )

    for which in CURVES:
        if fit_range is None:
            report.fit_errors[which] = range_error
            continue
        try:
            report.fits.append(fit_power_law_exponent(est, which, fit_range))
        except EstimationError as exc:
            logger.warning("exponent fit refused", which=which, reason=str(exc))
            report.fit_errors[which] = str(exc)

    (opts.out / FITS_NAME).write_text(report.model_dump_json(indent=2) + "\n")
    text = ReportRenderer().render("estimate", report)
    (opts.out / REPORT_NAME).write_text(text)
    print(text, end="")
    return ExitCode.OK
