"""Tests for spectral densities and the analytic power-law path."""

import numpy as np
import pytest

from src.oracle.bessel import bessel_k_numeric
from src.spectral.correlation import sample_correlation
from src.spectral.errors import IndefiniteSpectrumError, TargetError
from src.spectral.schemas import CorrelationModel, FrequencyGrid, TargetModels
from src.spectral.transform import (
    build_triple,
    clip_negative,
    power_law_spectrum_analytic,
    spectrum_from_correlation,
)


def numeric_bessel(nu: float, x: np.ndarray) -> np.ndarray:
    """Quadrature K_nu evaluated once per distinct argument."""
    unique, inverse = np.unique(x, return_inverse=True)
    values = np.array([bessel_k_numeric(nu, v) for v in unique])
    return values[inverse].reshape(x.shape)


def mid_band(grid: FrequencyGrid, low: float = np.pi / 16) -> np.ndarray:
    """Bins with low <= |q| <= pi/4."""
    q = grid.radial_wavenumber()
    return (q >= low) & (q <= np.pi / 4)


class TestSpectrumFromCorrelation:
    """Tests for the forward transform of lag arrays."""

    def test_white_spectrum_is_flat(self, grid_1d: FrequencyGrid):
        """A delta correlation has a unit spectrum."""
        c = sample_correlation(CorrelationModel.white(), grid_1d)
        spectrum, report = spectrum_from_correlation(c, grid_1d)
        np.testing.assert_allclose(spectrum, np.ones(64), atol=1e-15)
        assert report.count == 0

    def test_round_trip(self, grid_1d: FrequencyGrid):
        """The inverse transform returns the sampled correlation."""
        c = sample_correlation(CorrelationModel.exponential(0.3), grid_1d)
        spectrum, _ = spectrum_from_correlation(c, grid_1d)
        np.testing.assert_allclose(np.fft.ifft(spectrum).real, c, atol=1e-12)

    def test_autospectrum_is_real(self, grid_1d: FrequencyGrid):
        """Autospectra come back as real arrays."""
        c = sample_correlation(CorrelationModel.gaussian(3.0), grid_1d)
        spectrum, _ = spectrum_from_correlation(c, grid_1d)
        assert spectrum.dtype == np.float64

    def test_uneven_cross_spectrum_is_hermitian(self):
        """A shifted cross-correlation gives exact h(-q) = conj(h(q))."""
        grid = FrequencyGrid(length=16)
        c = np.zeros(16)
        c[1] = 0.5
        c[2] = 0.2
        spectrum, _ = spectrum_from_correlation(c, grid, auto=False)
        assert np.iscomplexobj(spectrum)
        assert np.array_equal(spectrum, np.conj(grid.reflect(spectrum)))
        np.testing.assert_allclose(np.fft.ifft(spectrum).real, c, atol=1e-15)

    def test_field_spectrum_is_hermitian(self):
        """2-D spectra keep exact conjugation symmetry."""
        grid = FrequencyGrid(length=8, dim=2)
        rng = np.random.default_rng(3)
        spectrum, _ = spectrum_from_correlation(
            rng.normal(size=grid.shape), grid, auto=False
        )
        assert np.array_equal(spectrum, np.conj(grid.reflect(spectrum)))

    def test_indefinite_table_rejected(self):
        """An autocorrelation with a negative spectrum raises."""
        grid = FrequencyGrid(length=8)
        # C(+-1) = 1 with C(0) = 0 gives S(q) = 2 cos(q)
        c = sample_correlation(
            CorrelationModel.tabulated([0.0, 1.0, 0.0, 0.0, 0.0]), grid
        )
        with pytest.raises(IndefiniteSpectrumError) as excinfo:
            spectrum_from_correlation(c, grid)
        assert excinfo.value.worst == pytest.approx(2.0)
        assert excinfo.value.bins

    def test_wrong_size_rejected(self, grid_1d: FrequencyGrid):
        """Lag arrays must match the grid."""
        with pytest.raises(TargetError, match="grid needs 64"):
            spectrum_from_correlation(np.ones(32), grid_1d)


class TestClipNegative:
    """Tests for roundoff clipping of autospectra."""

    def test_roundoff_is_clipped(self):
        """Tiny negative values are set to zero and reported."""
        clipped, report = clip_negative(np.array([1.0, -1e-12, 0.5]))
        np.testing.assert_array_equal(clipped, [1.0, 0.0, 0.5])
        assert report.count == 1
        assert report.max_magnitude == pytest.approx(1e-12)

    def test_clean_spectrum_untouched(self):
        """Non-negative input passes unchanged."""
        values = np.array([1.0, 0.0, 0.5])
        clipped, report = clip_negative(values)
        assert clipped is values
        assert report.count == 0


class TestAnalyticPowerLaw:
    """Tests for the closed-form power-law spectrum."""

    @pytest.mark.parametrize("gamma", [0.3, 0.5, 0.7])
    def test_matches_fft_path_1d(self, gamma: float):
        """Quadrature-Bessel analytic spectrum agrees with the fft path to 1%."""
        grid = FrequencyGrid(length=2**10)
        c = sample_correlation(CorrelationModel.power_law(gamma), grid)
        fft_spectrum, _ = spectrum_from_correlation(c, grid)
        analytic = power_law_spectrum_analytic(gamma, grid, bessel_k=numeric_bessel)

        band = mid_band(grid)
        rel = np.abs(analytic[band] / fft_spectrum[band] - 1.0)
        assert band.sum() > 100
        assert rel.max() < 0.01

    @pytest.mark.parametrize("gamma", [1.3, 1.5])
    def test_matches_fft_path_2d(self, gamma: float):
        """Analytic field spectrum agrees with the shell-averaged fft path to 2%."""
        grid = FrequencyGrid(length=512, dim=2)
        models = TargetModels(
            xx=CorrelationModel.power_law(gamma),
            yy=CorrelationModel.power_law(gamma),
            xy=CorrelationModel.power_law(gamma),
        )
        fft_triple = build_triple(models, grid, "fft")
        analytic = power_law_spectrum_analytic(gamma, grid)

        band = mid_band(grid, low=np.pi / 8)
        rel = np.abs(analytic[band] / fft_triple.sxx[band] - 1.0)
        assert rel.max() < 0.02

    def test_scipy_and_quadrature_bessel_agree(self):
        """Default scipy K_nu and the quadrature oracle give the same spectrum."""
        grid = FrequencyGrid(length=64)
        fast = power_law_spectrum_analytic(0.5, grid)
        slow = power_law_spectrum_analytic(0.5, grid, bessel_k=numeric_bessel)
        np.testing.assert_allclose(fast, slow, rtol=1e-8)

    def test_zero_bin_uses_lag_sum(self, grid_1d: FrequencyGrid):
        """S(0) is the sum of the sampled correlation."""
        spectrum = power_law_spectrum_analytic(0.7, grid_1d, amplitude=2.0)
        lag_sum = sample_correlation(CorrelationModel.power_law(0.7), grid_1d).sum()
        assert spectrum[0] == pytest.approx(2.0 * lag_sum)

    def test_analytic_path_rejects_other_families(
        self, gaussian_models: TargetModels, grid_1d: FrequencyGrid
    ):
        """Only power-law models have a closed form."""
        with pytest.raises(TargetError, match="power_law_makse only"):
            build_triple(gaussian_models, grid_1d, "analytic")


class TestBuildTriple:
    """Tests for assembling spectral triples."""

    def test_triple_shapes_and_types(
        self, gaussian_models: TargetModels, grid_1d: FrequencyGrid
    ):
        """Autospectra are real, the cross-spectrum complex."""
        triple = build_triple(gaussian_models, grid_1d)
        assert triple.sxx.shape == (64,)
        assert triple.sxx.dtype == np.float64
        assert triple.sxy.dtype == np.complex128

    def test_field_triple_is_isotropic(self):
        """Bins on the same integer shell share one spectral value."""
        grid = FrequencyGrid(length=64, dim=2)
        models = TargetModels(
            xx=CorrelationModel.exponential(1.0),
            yy=CorrelationModel.exponential(1.0),
            xy=CorrelationModel.exponential(1.0, amplitude=0.5),
        )
        triple = build_triple(models, grid)
        # (3, 4), (5, 0) and (0, -5) all lie on |m|^2 = 25
        assert triple.sxx[3, 4] == triple.sxx[5, 0]
        assert triple.sxx[3, 4] == triple.sxx[0, 59]
        assert triple.sxy[4, 3] == triple.sxy[5, 0]
