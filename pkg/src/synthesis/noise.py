"""Seeded white noise and the ensemble seed-splitting rule.

Realization k of an ensemble with master seed m draws its noise from
PCG64(child_seed(m, k)), where child_seed is the SplitMix64 finaliser
applied to m + (k + 1) * 0x9E3779B97F4A7C15 mod 2^64. Both the rule and
the draw order (u then v, C order) are stable across versions.
"""

import numpy as np
from numpy.typing import NDArray

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def child_seed(master_seed: int, index: int) -> int:
    """64-bit seed of realization ``index`` under ``master_seed``."""
    if index < 0:
        raise ValueError(f"realization index must be >= 0, got {index}")
    return _mix64((master_seed + (index + 1) * GOLDEN_GAMMA) & MASK64)


def white_pair(
    length: int, seed: int, dim: int = 1
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Two independent unit-variance Gaussian white-noise arrays.

    Args:
        length: Side length L (power of two, >= 8)
        seed: 64-bit seed fully determining the draw
        dim: Number of axes of each array

    Returns:
        Tuple (u, v) of arrays of shape (L,) * dim.

    Raises:
        ValueError: If the length is not a power of two of at least 8.
    """
    if length < 8 or length & (length - 1):
        raise ValueError(f"length must be a power of two >= 8, got {length}")
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = rng.standard_normal((2, *((length,) * dim)))
    return noise[0], noise[1]
