"""Coupled homogeneous isotropic random fields and self-affine surfaces."""

import numpy as np
import structlog

from src.coupling.schemas import CoefficientSet
from src.spectral.schemas import (
    FrequencyGrid,
    SpectralPath,
    SpectralTriple,
    TargetModels,
)
from src.spectral.transform import build_triple
from src.synthesis.mixing import check_grid, mix_noise
from src.synthesis.schemas import FieldPair, GeneratorConfig, SurfacePair

logger = structlog.get_logger()


def radial_spectra(
    models: TargetModels, grid: FrequencyGrid, path: SpectralPath = "fft"
) -> SpectralTriple:
    """Spectral triple of isotropic field targets.

    The fft path samples each correlation at periodic radial distances,
    transforms in d dimensions and averages over shells of equal |q|. The
    analytic path evaluates the closed power-law form at each bin's |q|.
    """
    triple = build_triple(models, grid, path, isotropic=True)
    logger.debug(
        "radial spectra built",
        dim=grid.dim,
        length=grid.length,
        path=path,
        clipped=triple.clip_report.count,
    )
    return triple


def synthesize_field_pair(
    cfg: GeneratorConfig, cs: CoefficientSet, seed: int, *, realization: int = 0
) -> FieldPair:
    """Generate one pair of coupled d-dimensional fields.

    Same pipeline as synthesize_pair with d-dimensional transforms.

    Raises:
        CoefficientError: If cs does not live on the generator grid.
        RealnessError: If the imaginary residue exceeds tolerance.
    """
    check_grid(cs, cfg.length, cfg.dim)
    x, y, residual = mix_noise(cs, seed)
    return FieldPair(
        x=x, y=y, seed_used=seed, realness_residual=residual, realization=realization
    )


def self_affine_surface(fp: FieldPair) -> SurfacePair:
    """Two-dimensional fractional Brownian surfaces of a field pair.

    h(s, t) = sum_{i<=s} x[i, t] + sum_{j<=t} x[s, j]; the point (s, t)
    itself enters both partial sums.

    Raises:
        ValueError: If the fields are not two-dimensional.
    """
    if fp.dim != 2:
        raise ValueError(f"self-affine surfaces need 2-D fields, got d={fp.dim}")

    def _surface(values: np.ndarray) -> np.ndarray:
        return np.cumsum(values, axis=0) + np.cumsum(values, axis=1)

    return SurfacePair(h_x=_surface(fp.x), h_y=_surface(fp.y), seed_used=fp.seed_used)
