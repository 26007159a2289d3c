"""Coupled sequences and their Brownian trajectories."""

import numpy as np

from src.coupling.schemas import CoefficientSet
from src.synthesis.mixing import check_grid, mix_noise
from src.synthesis.schemas import (
    GeneratorConfig,
    RealizationPair,
    SequencePair,
    TrajectoryPair,
)


def synthesize_pair(
    cfg: GeneratorConfig, cs: CoefficientSet, seed: int, *, realization: int = 0
) -> SequencePair:
    """Generate one pair of coupled sequences.

    White noise u, v is drawn in real space, transformed, mixed as
    x_q = a u_q + b v_q, y_q = c u_q + d v_q and transformed back.

    Args:
        cfg: Generator configuration (d must be 1)
        cs: Verified coefficient set on the length-L grid
        seed: Seed of the driving noise
        realization: Ensemble index recorded on the pair

    Returns:
        SequencePair with the realness residual that was discarded.

    Raises:
        CoefficientError: If cs does not live on the generator grid.
        RealnessError: If the imaginary residue exceeds tolerance.
    """
    if cfg.dim != 1:
        raise ValueError(f"synthesize_pair needs a 1-D config, got d={cfg.dim}")
    check_grid(cs, cfg.length, 1)
    x, y, residual = mix_noise(cs, seed)
    return SequencePair(
        x=x, y=y, seed_used=seed, realness_residual=residual, realization=realization
    )


def cumulate(sp: RealizationPair) -> TrajectoryPair:
    """Running sums X(t) = sum_{i<=t} x_i of both sequences.

    Power-law steps give coupled fractional Brownian motions.
    """
    if sp.dim != 1:
        raise ValueError(f"cumulate needs sequences, got a {sp.dim}-D pair")
    return TrajectoryPair(
        X=np.cumsum(sp.x), Y=np.cumsum(sp.y), seed_used=sp.seed_used
    )
