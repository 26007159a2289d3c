"""Power-law exponent fits on log-log correlation curves."""

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy import stats

from src.estimation.correlations import EstimationError
from src.estimation.schemas import CorrelationEstimate, CurveName, ExponentFit

logger = structlog.get_logger()

DEFAULT_FIT_START = 4


def default_fit_range(side_length: int) -> tuple[int, int]:
    """Lags [4, L/100] (at least 4 lags wide), capped at L/8.

    On short grids the start moves down so the window keeps two lags.

    Raises:
        EstimationError: If L/8 leaves fewer than two lags to fit.
    """
    n_max = min(max(side_length // 100, DEFAULT_FIT_START + 4), side_length // 8)
    n_min = min(DEFAULT_FIT_START, n_max - 1)
    if n_min < 1:
        raise EstimationError(
            f"grid side {side_length} is too short for an exponent fit "
            "(L >= 16 needed)"
        )
    return n_min, n_max


def _check_range(fit_range: tuple[int, int], side_length: int) -> tuple[int, int]:
    n_min, n_max = (int(v) for v in fit_range)
    if n_min < 1:
        raise EstimationError(f"fit range must start at lag >= 1, got {n_min}")
    if n_max > side_length // 8:
        raise EstimationError(
            f"fit range ends at lag {n_max}, beyond L/8 = {side_length // 8}"
        )
    if n_max <= n_min:
        raise EstimationError(f"empty fit range [{n_min}, {n_max}]")
    return n_min, n_max


def _log_points(
    curve: NDArray[np.float64], n_min: int, n_max: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    lags = np.arange(n_min, n_max + 1)
    values = curve[n_min : n_max + 1]
    bad = np.flatnonzero(~(values > 0))
    if bad.size:
        lag = int(lags[bad[0]])
        raise EstimationError(
            f"correlation is non-positive ({values[bad[0]]:.3e}) at lag {lag} "
            f"inside fit range [{n_min}, {n_max}]; use more realizations or a "
            "shorter range"
        )
    return np.log(lags), np.log(values)


def fit_power_law_exponent(
    est: CorrelationEstimate,
    which: CurveName,
    fit_range: tuple[int, int] | None = None,
) -> ExponentFit:
    """Fit C(n) ~ n^(-gamma) by unweighted least squares in log-log space.

    When the estimate kept per-realization curves covering the range, the
    standard deviation of per-realization exponents is reported as well.

    Args:
        est: Ensemble correlation estimate
        which: Curve to fit ("xx", "yy" or "xy")
        fit_range: Inclusive lag range, default ``default_fit_range(L)``

    Returns:
        ExponentFit with gamma_hat = -slope and its OLS standard error.

    Raises:
        EstimationError: Invalid range or a non-positive value inside it.
    """
    n_min, n_max = _check_range(
        fit_range or default_fit_range(est.side_length), est.side_length
    )
    log_n, log_c = _log_points(est.curve(which), n_min, n_max)
    result = stats.linregress(log_n, log_c)
    residuals = log_c - (result.intercept + result.slope * log_n)

    scatter, n_scatter = _exponent_scatter(est, which, n_min, n_max)
    fit = ExponentFit(
        which=which,
        exponent=-float(result.slope),
        uncertainty=float(result.stderr),
        fit_range=(n_min, n_max),
        goodness=float(np.sqrt(np.mean(residuals**2))),
        intercept=float(result.intercept),
        n_points=int(log_n.size),
        scatter=scatter,
        n_scatter=n_scatter,
    )
    logger.debug(
        "exponent fitted",
        which=which,
        exponent=fit.exponent,
        uncertainty=fit.uncertainty,
        fit_range=fit.fit_range,
    )
    return fit


def _exponent_scatter(
    est: CorrelationEstimate, which: CurveName, n_min: int, n_max: int
) -> tuple[float | None, int]:
    if est.samples is None or est.samples[which].shape[1] <= n_max:
        return None, 0

    exponents = []
    for curve in est.samples[which]:
        values = curve[n_min : n_max + 1]
        if not np.all(values > 0):
            continue
        slope = stats.linregress(np.log(np.arange(n_min, n_max + 1)), np.log(values))
        exponents.append(-float(slope.slope))

    skipped = est.samples[which].shape[0] - len(exponents)
    if skipped:
        logger.info(
            "realizations skipped in exponent scatter", which=which, skipped=skipped
        )
    if len(exponents) < 2:
        return None, len(exponents)
    return float(np.std(exponents, ddof=1)), len(exponents)
