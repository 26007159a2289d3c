"""Pytest configuration and fixtures."""

import numpy as np
import pytest

from src.spectral.schemas import CorrelationModel, FrequencyGrid, TargetModels
from src.synthesis.schemas import GeneratorConfig


@pytest.fixture
def rng() -> np.random.Generator:
    """Seeded generator for randomized test inputs."""
    return np.random.default_rng(20240611)


@pytest.fixture
def grid_1d() -> FrequencyGrid:
    """Small 1-D grid."""
    return FrequencyGrid(length=64)


@pytest.fixture
def gaussian_models() -> TargetModels:
    """White autocorrelations with a Gaussian cross-correlation."""
    return TargetModels(
        xx=CorrelationModel.white(),
        yy=CorrelationModel.white(),
        xy=CorrelationModel.gaussian(sigma=3.0),
    )


@pytest.fixture
def power_law_models() -> TargetModels:
    """Fractional Gaussian noise exponents (0.7, 0.8, 0.6)."""
    return TargetModels(
        xx=CorrelationModel.power_law(0.7),
        yy=CorrelationModel.power_law(0.8),
        xy=CorrelationModel.power_law(0.6),
    )


@pytest.fixture
def small_config(gaussian_models: TargetModels) -> GeneratorConfig:
    """Short 1-D ensemble normalized to peak coherence 0.9."""
    return GeneratorConfig(
        length=64,
        master_seed=7,
        n_realizations=4,
        models=gaussian_models,
        max_coherence=0.9,
    )
