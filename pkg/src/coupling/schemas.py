"""Coupling schemas: Fourier-space mixing coefficients and their residuals."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from src.spectral.schemas import FrequencyGrid


@dataclass
class CoefficientSet:
    """Mixing coefficients of x_q = a u_q + b v_q, y_q = c u_q + d v_q.

    Every array satisfies coef(-q) == conj(coef(q)).
    """

    grid: FrequencyGrid
    a: NDArray[np.complex128]
    b: NDArray[np.complex128]
    c: NDArray[np.complex128]
    d: NDArray[np.complex128]

    def __post_init__(self) -> None:
        for name in ("a", "b", "c", "d"):
            values = np.asarray(getattr(self, name), dtype=np.complex128)
            if values.shape != self.grid.shape:
                raise ValueError(
                    f"coefficient {name} has shape {values.shape}, "
                    f"grid expects {self.grid.shape}"
                )
            setattr(self, name, values)

    @classmethod
    def zeros(cls, grid: FrequencyGrid) -> "CoefficientSet":
        """Coefficient set that maps any noise to zero."""
        return cls(grid, *(np.zeros(grid.shape, dtype=np.complex128) for _ in "abcd"))


class CoefficientResidual(BaseModel):
    """Largest violation of the three spectral identities over all bins."""

    xx: float = Field(ge=0.0, description="max | |a|^2+|b|^2 - S_xx |")
    yy: float = Field(ge=0.0, description="max | |c|^2+|d|^2 - S_yy |")
    xy: float = Field(ge=0.0, description="max | conj(a)c+conj(b)d - S_xy |")
    scale: float = Field(gt=0.0, description="Spectral scale residuals are relative to")
    worst_bin: tuple[int, ...] = Field(description="Bin of the largest residual")
    tolerance: float = Field(description="Pass threshold per unit spectral scale")

    @property
    def max_residual(self) -> float:
        return max(self.xx, self.yy, self.xy)

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance * self.scale
