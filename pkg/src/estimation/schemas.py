"""Estimation schemas: measured correlations and fitted exponents."""

from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, Field

CurveName = Literal["xx", "yy", "xy"]


@dataclass
class CorrelationEstimate:
    """Ensemble-averaged circular correlations of coupled realizations.

    For sequences ``lags`` runs over 0..L-1 and the curves are the full
    circular estimates; for fields ``lags`` runs over the radial shells
    0..L/2. ``stderr_*`` is the standard error of the ensemble mean.
    """

    lags: NDArray[np.int64]
    cxx: NDArray[np.float64]
    cyy: NDArray[np.float64]
    cxy: NDArray[np.float64]
    cyx: NDArray[np.float64]
    stderr_xx: NDArray[np.float64]
    stderr_yy: NDArray[np.float64]
    stderr_xy: NDArray[np.float64]
    n_realizations: int
    side_length: int
    dim: int = 1
    # Ensemble-mean periodograms |X|^2/N, |Y|^2/N, conj(X)Y/N
    pxx: NDArray[np.float64] | None = None
    pyy: NDArray[np.float64] | None = None
    pxy: NDArray[np.complex128] | None = None
    # Per-realization curves up to the kept lag, shape (n_realizations, k + 1)
    samples: dict[str, NDArray[np.float64]] | None = None

    def curve(self, which: CurveName) -> NDArray[np.float64]:
        return {"xx": self.cxx, "yy": self.cyy, "xy": self.cxy}[which]

    def stderr(self, which: CurveName) -> NDArray[np.float64]:
        return {"xx": self.stderr_xx, "yy": self.stderr_yy, "xy": self.stderr_xy}[
            which
        ]


class ExponentFit(BaseModel):
    """Power-law exponent from a log-log least-squares fit of one curve."""

    which: CurveName = Field(description="Curve that was fitted")
    exponent: float = Field(description="gamma_hat = -slope")
    uncertainty: float = Field(ge=0.0, description="OLS standard error of the slope")
    fit_range: tuple[int, int] = Field(description="Inclusive lag range [n_min, n_max]")
    goodness: float = Field(ge=0.0, description="RMS residual of the log-log fit")
    intercept: float = Field(description="Intercept of log C against log n")
    n_points: int = Field(ge=2, description="Lags used in the fit")
    scatter: float | None = Field(
        default=None,
        description="Standard deviation of per-realization exponents",
    )
    n_scatter: int = Field(
        default=0, ge=0, description="Realizations entering the scatter"
    )

    def within(self, target: float, tolerance: float) -> bool:
        return abs(self.exponent - target) <= tolerance
