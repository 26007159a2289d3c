"""Spectral densities from target correlations.

Transform convention: S(q) = sum_n C(n) exp(-2*pi*i q.n / L), the
unnormalized forward DFT; the inverse carries 1/L^d. All spectra leave
this module with exact Hermitian symmetry.
"""

import math
from collections.abc import Callable

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy import special

from src.spectral.correlation import sample_correlation
from src.spectral.errors import IndefiniteSpectrumError, TargetError
from src.spectral.schemas import (
    ClipReport,
    CorrelationFamily,
    CorrelationModel,
    FrequencyGrid,
    SpectralPath,
    SpectralTriple,
    TargetModels,
)

logger = structlog.get_logger()

# Negative autospectrum values down to -CLIP_TOLERANCE * max(S) are roundoff
CLIP_TOLERANCE = 1e-8

# Largest imaginary residue accepted for an even input, relative to max |S|
EVEN_IMAG_TOLERANCE = 1e-10

BesselK = Callable[[float, NDArray[np.float64]], NDArray[np.float64]]


def hermitian_part(values: NDArray, grid: FrequencyGrid) -> NDArray[np.complex128]:
    """Project an array onto exact Hermitian symmetry h(-q) = conj(h(q))."""
    values = np.asarray(values, dtype=np.complex128)
    return 0.5 * (values + np.conj(grid.reflect(values)))


def spectrum_from_correlation(
    c: NDArray[np.float64],
    grid: FrequencyGrid,
    *,
    auto: bool = True,
) -> tuple[NDArray, ClipReport]:
    """Forward-transform a lag array into a spectral density.

    Autospectra (``auto=True``) are declared even: the imaginary residue is
    checked and dropped, and negative values within the clip tolerance are
    set to zero. Cross-spectra stay complex; if the lag array happens to be
    even the imaginary residue is checked and dropped as well.

    Args:
        c: Lag array of shape ``grid.shape`` (or flat with ``grid.size`` values)
        grid: Lattice the lags live on
        auto: Whether the input is an autocorrelation

    Returns:
        Tuple of (spectrum, clip report). The spectrum is real for
        autospectra and complex for cross-spectra.

    Raises:
        TargetError: Wrong array size, or an imaginary residue above
            tolerance for an even input.
        IndefiniteSpectrumError: Negative autospectrum beyond tolerance.
    """
    c = np.asarray(c, dtype=np.float64)
    if c.size != grid.size:
        raise TargetError(f"lag array has {c.size} values, grid needs {grid.size}")
    c = c.reshape(grid.shape)

    spectrum = hermitian_part(np.fft.fftn(c), grid)
    declared_even = auto or np.array_equal(c, grid.reflect(c))
    if not declared_even:
        return spectrum, ClipReport()

    peak = float(np.max(np.abs(spectrum.real), initial=0.0))
    residue = float(np.max(np.abs(spectrum.imag), initial=0.0))
    if residue > EVEN_IMAG_TOLERANCE * max(peak, 1.0):
        raise TargetError(
            f"even lag array produced imaginary spectrum residue {residue:.3e}"
        )
    real = spectrum.real.copy()
    if not auto:
        return real.astype(np.complex128), ClipReport()

    return clip_negative(real)


def clip_negative(values: NDArray[np.float64]) -> tuple[NDArray, ClipReport]:
    """Zero roundoff-level negative autospectrum values.

    Raises:
        IndefiniteSpectrumError: If any value is below -CLIP_TOLERANCE * max.
    """
    negative = values < 0
    if not np.any(negative):
        return values, ClipReport()

    peak = float(np.max(values, initial=0.0))
    worst = float(-np.min(values))
    if worst > CLIP_TOLERANCE * peak:
        bins = [tuple(int(i) for i in idx) for idx in np.argwhere(negative)[:20]]
        raise IndefiniteSpectrumError(
            f"autospectrum reaches {-worst:.3e} (max {peak:.3e}); "
            "the target correlation is not positive semidefinite",
            bins=bins,
            worst=worst,
        )

    report = ClipReport(count=int(np.count_nonzero(negative)), max_magnitude=worst)
    logger.debug("clipped negative spectrum", count=report.count, worst=worst)
    clipped = values.copy()
    clipped[negative] = 0.0
    return clipped, report


def power_law_spectrum_analytic(
    gamma: float,
    grid: FrequencyGrid,
    *,
    amplitude: float = 1.0,
    bessel_k: BesselK = special.kv,
) -> NDArray[np.float64]:
    """Closed-form spectrum of C(l) = (1 + l^2)^(-gamma/2) in d dimensions.

    S(q) = 2 pi^(d/2) / Gamma(gamma/2) * (q/2)^beta * K_beta(q), with
    beta = (gamma - d)/2. Gamma(gamma/2) equals Gamma(beta + 1) for d = 2.
    The q = 0 bin, where the expression diverges for beta < 0, takes the
    lag sum of the sampled correlation instead.

    Args:
        gamma: Correlation exponent
        grid: Lattice supplying |q| per bin
        amplitude: Scale factor of the correlation
        bessel_k: Modified Bessel function K_nu(x), vectorized in x

    Returns:
        Real spectrum of shape ``grid.shape``.

    Raises:
        TargetError: If the gamma-function prefactor has a pole.
    """
    d = grid.dim
    beta = (gamma - d) / 2.0
    norm_arg = gamma / 2.0
    if norm_arg <= 0 and float(norm_arg).is_integer():
        raise TargetError(
            f"Gamma({norm_arg}) has a pole for gamma={gamma}; use the fft path"
        )

    q = grid.radial_wavenumber()
    spectrum = np.empty(grid.shape, dtype=np.float64)
    positive = q > 0
    prefactor = 2.0 * math.pi ** (d / 2.0) / math.gamma(norm_arg)
    qp = q[positive]
    spectrum[positive] = prefactor * (qp / 2.0) ** beta * bessel_k(beta, qp)

    lag_sum = float(np.sum(sample_correlation(CorrelationModel.power_law(gamma), grid)))
    spectrum[~positive] = lag_sum
    return amplitude * spectrum


def shell_average(values: NDArray, grid: FrequencyGrid) -> NDArray:
    """Average a spectrum over bins with the same integer |m|^2.

    Makes field spectra exactly isotropic; shells are closed under
    q -> -q so Hermitian symmetry survives.
    """
    keys = grid.shell_index().ravel()
    counts = np.bincount(keys)
    occupied = counts > 0

    def _mean(part: NDArray[np.float64]) -> NDArray[np.float64]:
        sums = np.bincount(keys, weights=part.ravel())
        means = np.zeros_like(sums)
        means[occupied] = sums[occupied] / counts[occupied]
        return means[keys].reshape(grid.shape)

    if np.iscomplexobj(values):
        return _mean(values.real) + 1j * _mean(values.imag)
    return _mean(values)


def build_triple(
    models: TargetModels,
    grid: FrequencyGrid,
    path: SpectralPath = "fft",
    *,
    isotropic: bool = True,
) -> SpectralTriple:
    """Turn the three target correlations into a SpectralTriple.

    Args:
        models: Target C_xx, C_yy, C_xy
        grid: Frequency grid
        path: "fft" samples and transforms each correlation; "analytic"
            evaluates the closed power-law form (power_law_makse only)
        isotropic: Shell-average field spectra (d >= 2, fft path)

    Returns:
        SpectralTriple with feasibility computed lazily.
    """
    if grid.dim >= 3:
        logger.warning("grid dimension above 2 is untested", dim=grid.dim)

    if path == "analytic":
        return SpectralTriple(
            grid=grid,
            sxx=_analytic(models.xx, grid),
            syy=_analytic(models.yy, grid),
            sxy=_analytic(models.xy, grid).astype(np.complex128),
        )

    sxx, clip_xx = spectrum_from_correlation(sample_correlation(models.xx, grid), grid)
    syy, clip_yy = spectrum_from_correlation(sample_correlation(models.yy, grid), grid)
    sxy, _ = spectrum_from_correlation(
        sample_correlation(models.xy, grid), grid, auto=False
    )

    clip_report = clip_xx.merge(clip_yy)
    if clip_report.count:
        logger.warning(
            "clipped negative autospectrum values",
            count=clip_report.count,
            max_magnitude=clip_report.max_magnitude,
        )

    if isotropic and grid.dim >= 2:
        sxx, syy, sxy = (shell_average(s, grid) for s in (sxx, syy, sxy))

    return SpectralTriple(
        grid=grid,
        sxx=sxx,
        syy=syy,
        sxy=sxy,
        clip_report=clip_report,
    )


def _analytic(model: CorrelationModel, grid: FrequencyGrid) -> NDArray[np.float64]:
    if model.family is not CorrelationFamily.POWER_LAW_MAKSE:
        raise TargetError(
            f"analytic path supports power_law_makse only, got {model.family.value}"
        )
    return power_law_spectrum_analytic(model.gamma, grid, amplitude=model.amplitude)
