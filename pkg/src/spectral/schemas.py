"""Spectral-core schemas.

Defines the target correlation models, the discrete frequency grid and
the spectral triple shared by the sequence and field pipelines.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import TYPE_CHECKING, Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

if TYPE_CHECKING:
    from src.spectral.feasibility import FeasibilityReport

SpectralPath = Literal["fft", "analytic"]


class CorrelationFamily(str, Enum):
    """Parametric shape of a target correlation function."""

    WHITE = "white"
    GAUSSIAN = "gaussian"
    EXPONENTIAL = "exponential"
    DAMPED_HARMONIC = "damped_harmonic"
    POWER_LAW_MAKSE = "power_law_makse"
    TABULATED = "tabulated"


# Parameter names each family requires
REQUIRED_PARAMS: dict[CorrelationFamily, tuple[str, ...]] = {
    CorrelationFamily.WHITE: (),
    CorrelationFamily.GAUSSIAN: ("sigma",),
    CorrelationFamily.EXPONENTIAL: ("decay",),
    CorrelationFamily.DAMPED_HARMONIC: ("decay", "omega"),
    CorrelationFamily.POWER_LAW_MAKSE: ("gamma",),
    CorrelationFamily.TABULATED: (),
}

# Shape parameters assumed when a family is named without them
DEFAULT_PARAMS: dict[CorrelationFamily, dict[str, float]] = {
    CorrelationFamily.GAUSSIAN: {"sigma": 3.0},
    CorrelationFamily.EXPONENTIAL: {"decay": 0.3},
    CorrelationFamily.DAMPED_HARMONIC: {"decay": 0.1, "omega": 0.6},
}


class CorrelationModel(BaseModel):
    """Target correlation function of lag distance.

    Autocorrelation models are even in lag. Cross-correlation models built
    from the parametric families are even too; an uneven cross target can
    be given as a full-period table.
    """

    model_config = ConfigDict(frozen=True)

    family: CorrelationFamily = Field(description="Functional form")
    params: dict[str, float] = Field(
        default_factory=dict,
        description="Named real parameters (sigma, decay, omega, gamma)",
    )
    table: list[float] | None = Field(
        default=None,
        description="Lag values for the tabulated family",
    )
    amplitude: float = Field(default=1.0, description="Scale factor C(0)")

    @field_validator("amplitude")
    @classmethod
    def _finite_amplitude(cls, value: float) -> float:
        if not math.isfinite(value):
            raise ValueError("amplitude must be finite")
        return value

    @model_validator(mode="after")
    def _check_params(self) -> "CorrelationModel":
        required = REQUIRED_PARAMS[self.family]
        missing = [name for name in required if name not in self.params]
        if missing:
            raise ValueError(f"{self.family.value} requires parameters {missing}")
        for name, value in self.params.items():
            if not math.isfinite(value):
                raise ValueError(f"parameter {name} must be finite, got {value}")

        p = self.params
        if self.family is CorrelationFamily.GAUSSIAN and p["sigma"] <= 0:
            raise ValueError("gaussian width sigma must be > 0")
        if self.family in (
            CorrelationFamily.EXPONENTIAL,
            CorrelationFamily.DAMPED_HARMONIC,
        ) and p["decay"] <= 0:
            raise ValueError("decay rate must be > 0")
        if self.family is CorrelationFamily.DAMPED_HARMONIC and p["omega"] < 0:
            raise ValueError("angular frequency omega must be >= 0")
        if self.family is CorrelationFamily.POWER_LAW_MAKSE and not (
            0 < p["gamma"] < 2
        ):
            raise ValueError("power-law exponent gamma must lie in (0, 2)")

        if self.family is CorrelationFamily.TABULATED:
            if not self.table:
                raise ValueError("tabulated family requires a non-empty table")
            if not all(math.isfinite(v) for v in self.table):
                raise ValueError("table values must be finite")
        elif self.table is not None:
            raise ValueError("table is only accepted by the tabulated family")
        return self

    @property
    def gamma(self) -> float:
        """Power-law exponent (power_law_makse only)."""
        if self.family is not CorrelationFamily.POWER_LAW_MAKSE:
            raise AttributeError(f"{self.family.value} model has no exponent")
        return self.params["gamma"]

    def evaluate(self, lag: NDArray[np.float64] | float) -> NDArray[np.float64]:
        """Evaluate the parametric correlation at (non-negative) distances.

        Args:
            lag: Lag distance(s); the sign is ignored.

        Returns:
            Correlation values with the shape of ``lag``.
        """
        if self.family is CorrelationFamily.TABULATED:
            raise ValueError("tabulated models are sampled, not evaluated")

        dist = np.abs(np.asarray(lag, dtype=np.float64))
        p = self.params
        match self.family:
            case CorrelationFamily.WHITE:
                values = (dist == 0).astype(np.float64)
            case CorrelationFamily.GAUSSIAN:
                values = np.exp(-(dist**2) / (2.0 * p["sigma"] ** 2))
            case CorrelationFamily.EXPONENTIAL:
                values = np.exp(-p["decay"] * dist)
            case CorrelationFamily.DAMPED_HARMONIC:
                values = np.exp(-p["decay"] * dist) * np.cos(p["omega"] * dist)
            case CorrelationFamily.POWER_LAW_MAKSE:
                values = (1.0 + dist**2) ** (-p["gamma"] / 2.0)
        return self.amplitude * values

    def with_amplitude(self, amplitude: float) -> "CorrelationModel":
        """Return a copy with a different amplitude."""
        return self.model_validate({**self.model_dump(), "amplitude": amplitude})

    @classmethod
    def white(cls, amplitude: float = 1.0) -> "CorrelationModel":
        return cls(family=CorrelationFamily.WHITE, amplitude=amplitude)

    @classmethod
    def gaussian(cls, sigma: float, amplitude: float = 1.0) -> "CorrelationModel":
        return cls(
            family=CorrelationFamily.GAUSSIAN,
            params={"sigma": sigma},
            amplitude=amplitude,
        )

    @classmethod
    def exponential(cls, decay: float, amplitude: float = 1.0) -> "CorrelationModel":
        return cls(
            family=CorrelationFamily.EXPONENTIAL,
            params={"decay": decay},
            amplitude=amplitude,
        )

    @classmethod
    def damped_harmonic(
        cls, decay: float, omega: float, amplitude: float = 1.0
    ) -> "CorrelationModel":
        return cls(
            family=CorrelationFamily.DAMPED_HARMONIC,
            params={"decay": decay, "omega": omega},
            amplitude=amplitude,
        )

    @classmethod
    def power_law(cls, gamma: float, amplitude: float = 1.0) -> "CorrelationModel":
        return cls(
            family=CorrelationFamily.POWER_LAW_MAKSE,
            params={"gamma": gamma},
            amplitude=amplitude,
        )

    @classmethod
    def tabulated(
        cls, table: list[float] | NDArray[np.float64], amplitude: float = 1.0
    ) -> "CorrelationModel":
        return cls(
            family=CorrelationFamily.TABULATED,
            table=[float(v) for v in np.ravel(table)],
            amplitude=amplitude,
        )


class TargetModels(BaseModel):
    """The three target correlations C_xx, C_yy and C_xy."""

    model_config = ConfigDict(frozen=True)

    xx: CorrelationModel = Field(description="Autocorrelation of x")
    yy: CorrelationModel = Field(description="Autocorrelation of y")
    xy: CorrelationModel = Field(description="Cross-correlation <x_i y_i+n>")

    def with_cross_amplitude(self, amplitude: float) -> "TargetModels":
        """Return a copy whose cross model carries a new amplitude."""
        return TargetModels(
            xx=self.xx, yy=self.yy, xy=self.xy.with_amplitude(amplitude)
        )


class FrequencyGrid(BaseModel):
    """Periodic lattice of side L in d dimensions and its wavenumbers.

    Wavenumbers are q_i = 2*pi*m_i/L with m_i in numpy FFT order, so the
    q = 0 bin sits at index 0 of every axis.
    """

    model_config = ConfigDict(frozen=True)

    length: int = Field(ge=2, description="Side length L (power of two)")
    dim: int = Field(default=1, ge=1, le=3, description="Dimension d")

    @field_validator("length")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError(f"length must be a power of two, got {value}")
        return value

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.length,) * self.dim

    @property
    def size(self) -> int:
        return self.length**self.dim

    def _axes(self, values: NDArray) -> list[NDArray]:
        return np.meshgrid(*([values] * self.dim), indexing="ij")

    def folded_index(self) -> NDArray[np.int64]:
        """Per-axis minimum image min(n, L - n) of the lattice index."""
        n = np.arange(self.length)
        return np.minimum(n, self.length - n)

    def shell_index(self) -> NDArray[np.int64]:
        """Integer squared radius sum_i min(m_i, L - m_i)^2 of every bin."""
        folded = self.folded_index().astype(np.int64)
        return sum(axis**2 for axis in self._axes(folded))

    def lag_distance(self) -> NDArray[np.float64]:
        """Periodic Euclidean lag distance of every lattice site."""
        return np.sqrt(self.shell_index().astype(np.float64))

    def radial_wavenumber(self) -> NDArray[np.float64]:
        """|q| of every bin, exact for bins on the same integer shell."""
        return (2.0 * np.pi / self.length) * self.lag_distance()

    def axis_wavenumbers(self) -> NDArray[np.float64]:
        """Signed q values along one axis in FFT order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.length)

    def reflect(self, values: NDArray) -> NDArray:
        """Return values at -q (or -n): ``out[k] = values[-k mod L]`` per axis."""
        axes = tuple(range(values.ndim))
        return np.roll(np.flip(values, axis=axes), shift=(1,) * len(axes), axis=axes)


class ClipReport(BaseModel):
    """Negative autospectrum values that were clipped to zero."""

    count: int = Field(default=0, ge=0, description="Number of clipped bins")
    max_magnitude: float = Field(
        default=0.0, ge=0.0, description="Largest clipped |S| value"
    )

    def merge(self, other: "ClipReport") -> "ClipReport":
        return ClipReport(
            count=self.count + other.count,
            max_magnitude=max(self.max_magnitude, other.max_magnitude),
        )


@dataclass
class SpectralTriple:
    """Auto- and cross-spectral densities on a common grid.

    ``sxx`` and ``syy`` are real, even and non-negative; ``sxy`` is complex
    with ``sxy(-q) == conj(sxy(q))`` bit for bit.
    """

    grid: FrequencyGrid
    sxx: NDArray[np.float64]
    syy: NDArray[np.float64]
    sxy: NDArray[np.complex128]
    clip_report: ClipReport = field(default_factory=ClipReport)

    def __post_init__(self) -> None:
        self.sxx = np.asarray(self.sxx, dtype=np.float64)
        self.syy = np.asarray(self.syy, dtype=np.float64)
        self.sxy = np.asarray(self.sxy, dtype=np.complex128)
        for name in ("sxx", "syy", "sxy"):
            if getattr(self, name).shape != self.grid.shape:
                raise ValueError(
                    f"{name} has shape {getattr(self, name).shape}, "
                    f"grid expects {self.grid.shape}"
                )

    @cached_property
    def feasibility(self) -> "FeasibilityReport":
        """Pointwise Cauchy-Schwarz check, computed once."""
        from src.spectral.feasibility import validate_feasibility

        return validate_feasibility(self)

    @property
    def feasible(self) -> bool:
        return self.feasibility.feasible

    @property
    def scale(self) -> float:
        """Spectral scale used to make tolerances relative."""
        peak = max(
            float(np.max(self.sxx, initial=0.0)),
            float(np.max(self.syy, initial=0.0)),
        )
        return max(1.0, peak)
