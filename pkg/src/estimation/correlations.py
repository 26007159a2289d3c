"""Circular ensemble estimator of auto- and cross-correlations.

Per realization, with X = fft(x) and N = L^d,

    C_xx(n) = (1/N) sum_i x_i x_{i+n mod L} = ifft(|X|^2 / N)(n)
    C_xy(n) = (1/N) sum_i x_i y_{i+n mod L} = ifft(conj(X) Y / N)(n)

Curves are averaged over realizations in stream order.
"""

from collections.abc import Iterable

import numpy as np
import structlog
from numpy.typing import NDArray

from src.estimation.schemas import CorrelationEstimate
from src.synthesis.schemas import RealizationPair

logger = structlog.get_logger()

CURVES = ("xx", "yy", "xy", "yx")


class EstimationError(ValueError):
    """Raised when an estimate or fit cannot be computed from the data."""


class _RunningMean:
    """Welford accumulator of an array-valued mean and its standard error."""

    def __init__(self) -> None:
        self.count = 0
        self.mean: NDArray | None = None
        self._m2: NDArray | None = None

    def push(self, values: NDArray) -> None:
        self.count += 1
        if self.mean is None:
            self.mean = values.copy()
            self._m2 = np.zeros(values.shape, dtype=np.float64)
            return
        delta = values - self.mean
        self.mean = self.mean + delta / self.count
        self._m2 = self._m2 + np.real(delta * np.conj(values - self.mean))

    def stderr(self) -> NDArray[np.float64]:
        if self.count < 2:
            return np.zeros(self.mean.shape, dtype=np.float64)
        return np.sqrt(self._m2 / (self.count - 1) / self.count)


def _reflect(values: NDArray) -> NDArray:
    axes = tuple(range(values.ndim))
    return np.roll(np.flip(values, axis=axes), shift=(1,) * len(axes), axis=axes)


def _radial_shells(shape: tuple[int, ...]) -> tuple[NDArray[np.int64], NDArray]:
    """Shell index round(|n|) per site, clipped to L/2 + 1 for discarded sites."""
    length = shape[0]
    n = np.arange(length)
    folded = np.minimum(n, length - n)
    axes = np.meshgrid(*([folded] * len(shape)), indexing="ij")
    radius = np.rint(np.sqrt(sum(a.astype(np.float64) ** 2 for a in axes)))
    shells = np.minimum(radius.astype(np.int64), length // 2 + 1).ravel()
    counts = np.bincount(shells, minlength=length // 2 + 2)[: length // 2 + 1]
    return shells, counts


def _circular_curves(
    pair: RealizationPair,
) -> tuple[dict[str, NDArray[np.float64]], tuple[NDArray, NDArray, NDArray]]:
    size = pair.x.size
    fx = np.fft.fftn(pair.x)
    fy = np.fft.fftn(pair.y)
    pxx = np.abs(fx) ** 2 / size
    pyy = np.abs(fy) ** 2 / size
    pxy = np.conj(fx) * fy / size

    cxx = np.fft.ifftn(pxx).real
    cyy = np.fft.ifftn(pyy).real
    cxy = np.fft.ifftn(pxy).real
    curves = {
        "xx": 0.5 * (cxx + _reflect(cxx)),
        "yy": 0.5 * (cyy + _reflect(cyy)),
        "xy": cxy,
        "yx": _reflect(cxy),
    }
    return curves, (pxx, pyy, pxy)


def estimate_correlations(
    pairs: Iterable[RealizationPair], *, keep_lags: int = 0
) -> CorrelationEstimate:
    """Ensemble-average the circular correlations of a stream of pairs.

    Sequences yield curves over all lags 0..L-1. Fields are reduced to
    radial curves over shells round(|n|) = 0..L/2 of the periodic
    minimum-image distance.

    Args:
        pairs: SequencePair or FieldPair stream with a common shape
        keep_lags: Also keep per-realization curves for lags 0..keep_lags

    Returns:
        CorrelationEstimate with standard errors from the across-realization
        scatter and the ensemble-mean periodograms.

    Raises:
        EstimationError: If the stream is empty or shapes differ.
    """
    if keep_lags < 0:
        raise EstimationError(f"keep_lags must be >= 0, got {keep_lags}")

    shape: tuple[int, ...] | None = None
    shells: NDArray[np.int64] | None = None
    counts: NDArray | None = None
    means = {name: _RunningMean() for name in CURVES}
    spectra = [_RunningMean() for _ in range(3)]
    kept: dict[str, list[NDArray[np.float64]]] = {name: [] for name in CURVES[:3]}

    for pair in pairs:
        if pair.x.shape != pair.y.shape:
            raise EstimationError(
                f"x and y shapes differ in realization {pair.realization}: "
                f"{pair.x.shape} vs {pair.y.shape}"
            )
        if shape is None:
            shape = pair.x.shape
            if len(set(shape)) != 1:
                raise EstimationError(f"grid must have equal sides, got {shape}")
            if len(shape) > 1:
                shells, counts = _radial_shells(shape)
        elif pair.x.shape != shape:
            raise EstimationError(
                f"realization {pair.realization} has shape {pair.x.shape}, "
                f"expected {shape}"
            )

        curves, periodograms = _circular_curves(pair)
        if shells is not None:
            curves = {
                name: np.bincount(
                    shells, weights=values.ravel(), minlength=len(counts) + 1
                )[: len(counts)]
                / counts
                for name, values in curves.items()
            }

        for name in CURVES:
            means[name].push(curves[name])
        for acc, values in zip(spectra, periodograms, strict=True):
            acc.push(values)
        if keep_lags:
            for name in kept:
                kept[name].append(curves[name][: keep_lags + 1].copy())

    n = means["xx"].count
    if n == 0 or shape is None:
        raise EstimationError("no realizations to estimate from")
    if n == 1:
        logger.warning(
            "single realization; standard errors are reported as zero",
            side_length=shape[0],
        )

    lag_count = len(means["xx"].mean)
    logger.info(
        "correlations estimated",
        n_realizations=n,
        side_length=shape[0],
        dim=len(shape),
    )
    return CorrelationEstimate(
        lags=np.arange(lag_count, dtype=np.int64),
        cxx=means["xx"].mean,
        cyy=means["yy"].mean,
        cxy=means["xy"].mean,
        cyx=means["yx"].mean,
        stderr_xx=means["xx"].stderr(),
        stderr_yy=means["yy"].stderr(),
        stderr_xy=means["xy"].stderr(),
        n_realizations=n,
        side_length=shape[0],
        dim=len(shape),
        pxx=spectra[0].mean,
        pyy=spectra[1].mean,
        pxy=spectra[2].mean,
        samples={name: np.array(rows) for name, rows in kept.items()}
        if keep_lags
        else None,
    )
