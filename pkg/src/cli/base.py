"""Shared command-line plumbing: exit codes, parser, config files, targets."""

import argparse
from enum import IntEnum
from pathlib import Path
from typing import Any, Literal, TypeVar

from dotenv import dotenv_values
from pydantic import BaseModel, Field, ValidationError, field_validator

from src.config import settings
from src.estimation.correlations import EstimationError
from src.output.formats import FormatError
from src.spectral.errors import TargetError
from src.spectral.schemas import (
    DEFAULT_PARAMS,
    CorrelationFamily,
    CorrelationModel,
    TargetModels,
)

DEFAULT_MAX_COHERENCE = 0.9

# Namespace entries that are parser plumbing, not options
RESERVED_KEYS = {"command", "config", "handler"}

OptionsT = TypeVar("OptionsT", bound=BaseModel)


class ExitCode(IntEnum):
    """Stable process exit codes."""

    OK = 0
    FAILURE = 1
    INFEASIBLE = 2
    IO_ERROR = 3
    USAGE = 4


class UsageError(Exception):
    """Raised for invalid or missing command-line options."""


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting with code 2."""

    def error(self, message: str):  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def exit_code_for(exc: BaseException) -> ExitCode:
    """Map an exception escaping a command to its exit code."""
    match exc:
        case UsageError() | ValidationError():
            return ExitCode.USAGE
        case TargetError():
            return ExitCode.INFEASIBLE
        case FormatError() | EstimationError() | OSError():
            return ExitCode.IO_ERROR
        case _:
            return ExitCode.FAILURE


def load_config_file(path: str | Path) -> dict[str, str]:
    """Read a flat ``key=value`` config file; keys use flag names.

    Raises:
        FileNotFoundError: If the file does not exist.
    """
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(f"config file not found: {path}")
    values = dotenv_values(path)
    return {
        key.strip().lstrip("-").replace("-", "_").lower(): value
        for key, value in values.items()
        if value is not None
    }


def build_options(model: type[OptionsT], args: argparse.Namespace) -> OptionsT:
    """Merge config-file values with explicit flags into an options model.

    Flags override file values; anything left unset takes the model default.
    """
    values: dict[str, Any] = {}
    config = getattr(args, "config", None)
    if config is not None:
        values.update(load_config_file(config))
    values.update({k: v for k, v in vars(args).items() if k not in RESERVED_KEYS})
    known = model.model_fields.keys()
    unknown = sorted(set(values) - known)
    if unknown:
        raise UsageError(f"unknown options: {', '.join(unknown)}")
    return model(**values)


def load_table(path: Path) -> list[float]:
    """Read whitespace- or comma-separated lag values from a text file.

    Raises:
        FormatError: If a value is not a number.
    """
    text = path.read_text().replace(",", " ")
    try:
        return [float(token) for token in text.split()]
    except ValueError as exc:
        raise FormatError(f"{path}: table holds a non-numeric value") from exc


class TargetOptions(BaseModel):
    """Target correlation flags shared by generate and validate."""

    family: str = Field(default="white", description="Autocorrelation family")
    coupling: str | None = Field(
        default=None, description="Cross-correlation family (default: --family)"
    )
    gxx: float | None = Field(default=None, description="Power-law exponent of C_xx")
    gyy: float | None = Field(default=None, description="Power-law exponent of C_yy")
    gxy: float | None = Field(default=None, description="Power-law exponent of C_xy")
    sigma: float | None = Field(default=None, description="Gaussian width")
    decay: float | None = Field(default=None, description="Exponential decay rate")
    omega: float | None = Field(default=None, description="Angular frequency")
    cross_amplitude: float | None = Field(
        default=None, description="Literal cross amplitude C_xy scale"
    )
    max_coherence: float | None = Field(
        default=None, gt=0.0, le=1.0, description="Normalize peak coherence to this"
    )
    table_xx: Path | None = None
    table_yy: Path | None = None
    table_xy: Path | None = None

    @field_validator("family", "coupling")
    @classmethod
    def _known_family(cls, value: str | None) -> str | None:
        if value is None:
            return None
        name = value.strip().lower().replace("-", "_")
        if name == "power_law":
            name = CorrelationFamily.POWER_LAW_MAKSE.value
        if name not in {f.value for f in CorrelationFamily}:
            raise ValueError(f"unknown correlation family {value!r}")
        return name

    def resolved_max_coherence(self) -> float | None:
        """Peak coherence to normalize to, or None for a literal amplitude.

        Without --cross-amplitude the cross model is normalized to
        --max-coherence (default 0.9); an explicit amplitude is used as given
        unless --max-coherence is also set. Used by generate; validate
        only normalizes when --max-coherence is given.
        """
        if self.cross_amplitude is None:
            return self.max_coherence or DEFAULT_MAX_COHERENCE
        return self.max_coherence

    def _model(self, family: str, role: Literal["xx", "yy", "xy"]) -> CorrelationModel:
        defaults = DEFAULT_PARAMS.get(CorrelationFamily(family), {})

        def need(name: str) -> Any:
            value = getattr(self, name)
            if value is None:
                value = defaults.get(name)
            if value is None:
                raise UsageError(f"--{name.replace('_', '-')} is required for {family}")
            return value

        match CorrelationFamily(family):
            case CorrelationFamily.WHITE:
                return CorrelationModel.white()
            case CorrelationFamily.GAUSSIAN:
                return CorrelationModel.gaussian(need("sigma"))
            case CorrelationFamily.EXPONENTIAL:
                return CorrelationModel.exponential(need("decay"))
            case CorrelationFamily.DAMPED_HARMONIC:
                return CorrelationModel.damped_harmonic(need("decay"), need("omega"))
            case CorrelationFamily.POWER_LAW_MAKSE:
                return CorrelationModel.power_law(need(f"g{role}"))
            case CorrelationFamily.TABULATED:
                table_path = need(f"table_{role}")
                return CorrelationModel.tabulated(load_table(Path(table_path)))

    def target_models(self) -> TargetModels:
        """Build the target triple from the flags.

        Raises:
            UsageError: If a family parameter is missing.
        """
        xy = self._model(self.coupling or self.family, "xy")
        if self.cross_amplitude is not None:
            xy = xy.with_amplitude(self.cross_amplitude)
        return TargetModels(
            xx=self._model(self.family, "xx"),
            yy=self._model(self.family, "yy"),
            xy=xy,
        )


def add_target_arguments(parser: argparse.ArgumentParser) -> None:
    """Register the target correlation flags on a subcommand parser."""
    group = parser.add_argument_group("target correlations")
    families = ", ".join(f.value.replace("_", "-") for f in CorrelationFamily)
    group.add_argument("--family", help=f"autocorrelation family ({families})")
    group.add_argument("--coupling", help="cross-correlation family")
    for name in ("gxx", "gyy", "gxy"):
        group.add_argument(f"--{name}", type=float, help="power-law exponent")
    group.add_argument("--sigma", type=float, help="gaussian width (default 3)")
    group.add_argument(
        "--decay",
        type=float,
        help="decay rate (default 0.3 exponential, 0.1 damped-harmonic)",
    )
    group.add_argument("--omega", type=float, help="angular frequency (default 0.6)")
    group.add_argument("--cross-amplitude", type=float, help="literal cross amplitude")
    group.add_argument(
        "--max-coherence",
        type=float,
        help=f"normalize the peak coherence (default {DEFAULT_MAX_COHERENCE})",
    )
    for role in ("xx", "yy", "xy"):
        group.add_argument(
            f"--table-{role}", type=Path, help=f"lag table of C_{role} (tabulated)"
        )


def add_grid_arguments(parser: argparse.ArgumentParser) -> None:
    """Register --length, --dim, --path and --config."""
    parser.add_argument("--length", type=int, help="side length L (power of two)")
    parser.add_argument("--dim", type=int, help="grid dimension d")
    parser.add_argument("--path", choices=("fft", "analytic"), help="spectral path")
    parser.add_argument("--config", type=Path, help="key=value config file")


def default_out() -> Path:
    return settings.output_dir
