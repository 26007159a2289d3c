"""Tests for mixing coefficients and their spectral identities."""

import numpy as np
import pytest

from src.coupling.coefficients import (
    CoefficientError,
    coefficients_from_spectra,
    rotate_gauge,
    verify_coefficients,
)
from src.coupling.schemas import CoefficientSet
from src.spectral.errors import InfeasibleTargetError
from src.spectral.schemas import FrequencyGrid, SpectralTriple, TargetModels
from src.spectral.transform import build_triple


def even(values: np.ndarray, grid: FrequencyGrid) -> np.ndarray:
    """Exactly even part of a real array."""
    return 0.5 * (values + grid.reflect(values))


def random_triple(rng: np.random.Generator, grid: FrequencyGrid) -> SpectralTriple:
    """Feasible triple with random autospectra and a complex coherence."""
    sxx = even(rng.uniform(0.1, 3.0, grid.shape), grid)
    syy = even(rng.uniform(0.1, 3.0, grid.shape), grid)
    modulus = even(rng.uniform(0.0, 0.999, grid.shape), grid)
    raw = rng.uniform(-np.pi, np.pi, grid.shape)
    phase = 0.5 * (raw - grid.reflect(raw))
    sxy = modulus * np.exp(1j * phase) * np.sqrt(sxx * syy)
    return SpectralTriple(grid=grid, sxx=sxx, syy=syy, sxy=sxy)


def random_phase_field(rng: np.random.Generator, grid: FrequencyGrid) -> np.ndarray:
    """Real mixing angle that is even in q."""
    return even(rng.uniform(-np.pi, np.pi, grid.shape), grid)


def is_hermitian(values: np.ndarray, grid: FrequencyGrid) -> bool:
    return np.allclose(values, np.conj(grid.reflect(values)), atol=1e-14)


@pytest.fixture
def gaussian_triple(gaussian_models: TargetModels) -> SpectralTriple:
    """Feasible Gaussian-coupling triple on 128 bins."""
    grid = FrequencyGrid(length=128)
    return build_triple(gaussian_models.with_cross_amplitude(0.1), grid)


class TestCoefficientsFromSpectra:
    """Tests for the lower-triangular coefficient construction."""

    def test_gauge_zero_layout(self, gaussian_triple: SpectralTriple):
        """a = sqrt(S_xx) and b = 0."""
        cs = coefficients_from_spectra(gaussian_triple)
        np.testing.assert_allclose(cs.a, np.sqrt(gaussian_triple.sxx))
        assert not np.any(cs.b)

    def test_identities_hold(self, gaussian_triple: SpectralTriple):
        """All three spectral identities hold to 1e-12."""
        cs = coefficients_from_spectra(gaussian_triple)
        residual = verify_coefficients(cs, gaussian_triple)
        assert residual.passed
        assert residual.max_residual <= 1e-12 * gaussian_triple.scale

    @pytest.mark.parametrize("trial", range(20))
    def test_random_triples(self, trial: int):
        """Randomized feasible triples satisfy the identities."""
        rng = np.random.default_rng(1000 + trial)
        dim = 1 if trial % 2 == 0 else 2
        grid = FrequencyGrid(length=32 if dim == 1 else 16, dim=dim)
        triple = random_triple(rng, grid)
        cs = coefficients_from_spectra(triple)
        assert verify_coefficients(cs, triple).max_residual <= 1e-12 * triple.scale
        for coef in (cs.a, cs.b, cs.c, cs.d):
            assert is_hermitian(coef, grid)

    def test_full_coherence_gives_identical_filters(self, grid_1d: FrequencyGrid):
        """With S_xx = S_yy = S_xy the y filter equals the x filter."""
        s = np.linspace(0.5, 1.5, 64)
        s = even(s, grid_1d)
        triple = SpectralTriple(grid=grid_1d, sxx=s, syy=s, sxy=s)
        cs = coefficients_from_spectra(triple)
        np.testing.assert_allclose(cs.c, cs.a, atol=1e-12)
        np.testing.assert_allclose(cs.d, 0.0, atol=1e-6)

    def test_zero_autospectrum_gives_zero_coefficients(self, grid_1d: FrequencyGrid):
        """A process with no power gets zero coefficients on those bins."""
        syy = np.ones(64)
        syy[3] = syy[-3] = 0.0
        triple = SpectralTriple(
            grid=grid_1d, sxx=np.ones(64), syy=syy, sxy=np.zeros(64)
        )
        cs = coefficients_from_spectra(triple)
        assert cs.c[3] == 0 and cs.d[3] == 0
        assert verify_coefficients(cs, triple).passed

    def test_orphan_cross_power_rejected(self, grid_1d: FrequencyGrid):
        """Cross power on a zero autospectrum bin is a coefficient error."""
        sxx = np.ones(64)
        sxx[3] = sxx[-3] = 0.0
        triple = SpectralTriple(
            grid=grid_1d, sxx=sxx, syy=np.ones(64), sxy=0.5 * np.ones(64)
        )
        with pytest.raises(CoefficientError, match="bin \\(3,\\)"):
            coefficients_from_spectra(triple)

    def test_infeasible_triple_rejected(self, grid_1d: FrequencyGrid):
        """Coherence 1.2 cannot be realized."""
        ones = np.ones(64)
        triple = SpectralTriple(grid=grid_1d, sxx=ones, syy=ones, sxy=1.2 * ones)
        with pytest.raises(InfeasibleTargetError, match="1.2"):
            coefficients_from_spectra(triple)


class TestVerifyCoefficients:
    """Tests for residual reporting."""

    def test_perturbed_coefficient_fails(self, gaussian_triple: SpectralTriple):
        """Perturbing b by 1e-3 on one bin breaks the identities there."""
        cs = coefficients_from_spectra(gaussian_triple)
        b = cs.b.copy()
        b[7] += 1e-3
        perturbed = CoefficientSet(gaussian_triple.grid, cs.a, b, cs.c, cs.d)
        residual = verify_coefficients(perturbed, gaussian_triple)
        assert not residual.passed
        assert residual.worst_bin == (7,)
        assert residual.xx == pytest.approx(1e-6)

    def test_grid_mismatch(self, gaussian_triple: SpectralTriple):
        """Coefficients on another grid are rejected."""
        cs = CoefficientSet.zeros(FrequencyGrid(length=64))
        with pytest.raises(CoefficientError, match="does not match"):
            verify_coefficients(cs, gaussian_triple)

    def test_zero_set_has_full_residual(self, gaussian_triple: SpectralTriple):
        """The zero set misses the whole autospectrum."""
        cs = CoefficientSet.zeros(gaussian_triple.grid)
        residual = verify_coefficients(cs, gaussian_triple)
        assert residual.xx == pytest.approx(float(gaussian_triple.sxx.max()))


class TestRotateGauge:
    """Tests for the one-parameter gauge freedom."""

    @pytest.mark.parametrize("trial", range(5))
    def test_rotation_preserves_identities(self, trial: int):
        """Any even phase field keeps the identities within 1e-12."""
        rng = np.random.default_rng(50 + trial)
        grid = FrequencyGrid(length=64)
        triple = random_triple(rng, grid)
        theta = random_phase_field(rng, grid)
        cs = rotate_gauge(coefficients_from_spectra(triple), theta)
        assert verify_coefficients(cs, triple).max_residual <= 1e-12 * triple.scale
        assert np.any(cs.b)
        for coef in (cs.a, cs.b, cs.c, cs.d):
            assert is_hermitian(coef, grid)

    def test_uneven_phase_rejected(self, gaussian_triple: SpectralTriple):
        """An odd phase field would break realness."""
        cs = coefficients_from_spectra(gaussian_triple)
        theta = np.zeros(128)
        theta[1] = 0.3
        with pytest.raises(CoefficientError, match="even"):
            rotate_gauge(cs, theta)

    def test_wrong_shape_rejected(self, gaussian_triple: SpectralTriple):
        """The phase field must cover the grid."""
        cs = coefficients_from_spectra(gaussian_triple)
        with pytest.raises(CoefficientError, match="shape"):
            rotate_gauge(cs, np.zeros(64))

    def test_non_finite_rejected(self, gaussian_triple: SpectralTriple):
        """NaN angles are rejected."""
        cs = coefficients_from_spectra(gaussian_triple)
        with pytest.raises(CoefficientError, match="finite"):
            rotate_gauge(cs, np.full(128, np.nan))
