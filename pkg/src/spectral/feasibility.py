"""Joint feasibility of a spectral triple.

The mixing coefficients exist with real magnitudes only where the
cross-spectrum obeys the pointwise Cauchy-Schwarz bound
|S_xy(q)|^2 <= S_xx(q) S_yy(q).
"""

import numpy as np
import structlog
from numpy.typing import NDArray
from pydantic import BaseModel, Field

from src.spectral.errors import InfeasibleTargetError, TargetError
from src.spectral.schemas import (
    ClipReport,
    FrequencyGrid,
    SpectralPath,
    SpectralTriple,
    TargetModels,
)
from src.spectral.transform import build_triple

logger = structlog.get_logger()

# Relative slack on the bound, admits coherence 1 under roundoff
FEASIBILITY_TOLERANCE = 1e-10

# Absolute floor on |S_xy| (relative to the spectral scale) at vanishing bins
ABSOLUTE_FLOOR = 1e-12

# Violating bins listed in a report
MAX_LISTED_BINS = 50


class FeasibilityReport(BaseModel):
    """Outcome of the pointwise Cauchy-Schwarz check."""

    feasible: bool = Field(description="Every bin satisfies the bound")
    max_coherence: float = Field(
        description="max |g(q)|; infinite if a cross bin faces a zero autospectrum"
    )
    n_violations: int = Field(default=0, ge=0, description="Violating bin count")
    violating_bins: list[tuple[int, ...]] = Field(
        default_factory=list,
        description=f"Up to {MAX_LISTED_BINS} violating bin indices",
    )
    clip_report: ClipReport = Field(default_factory=ClipReport)


def coherence(t: SpectralTriple) -> NDArray[np.complex128]:
    """Complex coherence g(q) = S_xy / sqrt(S_xx S_yy), zero where undefined."""
    denom = np.sqrt(t.sxx * t.syy)
    g = np.zeros(t.grid.shape, dtype=np.complex128)
    positive = denom > 0
    g[positive] = t.sxy[positive] / denom[positive]
    return g


def validate_feasibility(t: SpectralTriple) -> FeasibilityReport:
    """Check |S_xy|^2 <= S_xx S_yy (1 + eps) at every bin.

    Args:
        t: Spectral triple on a common grid

    Returns:
        FeasibilityReport with the maximum coherence and violating bins.
    """
    product = t.sxx * t.syy
    cross_sq = np.abs(t.sxy) ** 2
    floor = (ABSOLUTE_FLOOR * t.scale) ** 2
    violations = cross_sq > product * (1.0 + FEASIBILITY_TOLERANCE) + floor

    positive = product > 0
    max_coherence = float(np.max(np.abs(coherence(t))[positive], initial=0.0))
    if np.any(~positive & (cross_sq > floor)):
        max_coherence = float("inf")

    n_violations = int(np.count_nonzero(violations))
    bins = [
        tuple(int(i) for i in idx)
        for idx in np.argwhere(violations)[:MAX_LISTED_BINS]
    ]
    if n_violations:
        logger.info(
            "spectral triple infeasible",
            n_violations=n_violations,
            max_coherence=max_coherence,
        )
    return FeasibilityReport(
        feasible=n_violations == 0,
        max_coherence=max_coherence,
        n_violations=n_violations,
        violating_bins=bins,
        clip_report=t.clip_report,
    )


def fit_cross_amplitude(
    models: TargetModels,
    grid: FrequencyGrid,
    target_coherence: float,
    path: SpectralPath = "fft",
) -> TargetModels:
    """Rescale the cross model so the peak coherence equals a target value.

    Spectra are linear in the cross amplitude, so one evaluation of the
    triple fixes the factor. Exponents and shapes are untouched.

    Args:
        models: Target models; only ``models.xy`` is rescaled
        grid: Frequency grid the coherence is measured on
        target_coherence: Desired max |g(q)|, in (0, 1]
        path: Spectral path used to evaluate the triple

    Returns:
        TargetModels with the rescaled cross amplitude.

    Raises:
        TargetError: If the cross model has no coupling to rescale.
        InfeasibleTargetError: If cross power sits on a zero autospectrum bin.
    """
    if not 0 < target_coherence <= 1:
        raise TargetError(
            f"target coherence must be in (0, 1], got {target_coherence}"
        )

    report = build_triple(models, grid, path).feasibility
    if report.max_coherence == float("inf"):
        raise InfeasibleTargetError(
            "cross-spectrum is nonzero where an autospectrum vanishes"
        )
    if report.max_coherence == 0:
        raise TargetError("cross model carries no coupling to rescale")

    factor = target_coherence / report.max_coherence
    rescaled = models.with_cross_amplitude(models.xy.amplitude * factor)
    logger.debug(
        "cross amplitude rescaled",
        factor=factor,
        amplitude=rescaled.xy.amplitude,
        target_coherence=target_coherence,
    )
    return rescaled
