"""Synthesis schemas: generator configuration and realization containers."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, field_validator

from src.config import settings
from src.spectral.schemas import FrequencyGrid, SpectralPath, TargetModels

SEED_LIMIT = 2**64


class GeneratorConfig(BaseModel):
    """Everything that determines an ensemble, bit for bit."""

    model_config = ConfigDict(frozen=True)

    length: int = Field(ge=8, description="Side length L (power of two)")
    dim: int = Field(default=1, ge=1, le=3, description="Grid dimension d")
    master_seed: int = Field(
        default=0, ge=0, lt=SEED_LIMIT, description="64-bit master seed"
    )
    n_realizations: int = Field(default=1, ge=1, description="Ensemble size")
    models: TargetModels = Field(description="Target C_xx, C_yy, C_xy")
    path: SpectralPath = Field(default="fft", description="Spectral path")
    max_coherence: float | None = Field(
        default=None,
        gt=0.0,
        le=1.0,
        description="Rescale the cross amplitude to this peak coherence",
    )
    workers: int = Field(
        default_factory=lambda: settings.workers,
        ge=1,
        description="Threads used to synthesize realizations",
    )

    @field_validator("length")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value & (value - 1):
            raise ValueError(f"length must be a power of two, got {value}")
        return value

    @property
    def grid(self) -> FrequencyGrid:
        return FrequencyGrid(length=self.length, dim=self.dim)


@dataclass
class RealizationPair:
    """One coupled realization (x, y) on the generator grid.

    ``seed_used`` is None for pairs read back from a file without a manifest.
    """

    x: NDArray[np.float64]
    y: NDArray[np.float64]
    seed_used: int | None
    realness_residual: float
    realization: int = 0

    @property
    def shape(self) -> tuple[int, ...]:
        return self.x.shape

    @property
    def dim(self) -> int:
        return self.x.ndim


@dataclass
class SequencePair(RealizationPair):
    """Coupled sequences {x_i}, {y_i} of length L."""


@dataclass
class FieldPair(RealizationPair):
    """Coupled fields x, y on an L^d grid."""


@dataclass
class TrajectoryPair:
    """Running sums X(t) = x_1 + ... + x_t of a sequence pair."""

    X: NDArray[np.float64]
    Y: NDArray[np.float64]
    seed_used: int | None


@dataclass
class SurfacePair:
    """Self-affine surfaces h_x, h_y built from a 2-D field pair."""

    h_x: NDArray[np.float64]
    h_y: NDArray[np.float64]
    seed_used: int | None
