"""Fourier-space mixing of two white-noise arrays into a coupled pair."""

import numpy as np
from numpy.typing import NDArray

from src.coupling.coefficients import CoefficientError
from src.coupling.schemas import CoefficientSet
from src.synthesis.noise import white_pair

# Imaginary residue allowed per unit of (1 + max |x|, |y|)
REALNESS_TOLERANCE = 1e-9


class RealnessError(ArithmeticError):
    """Raised when the inverse transform leaves a non-negligible imaginary part.

    Signals broken conjugation symmetry of the coefficients upstream.
    """


def mix_noise(
    cs: CoefficientSet, seed: int
) -> tuple[NDArray[np.float64], NDArray[np.float64], float]:
    """Filter one seeded white-noise pair through a coefficient set.

    Returns:
        Tuple (x, y, realness_residual) with real arrays of the grid shape.

    Raises:
        RealnessError: If the discarded imaginary part exceeds tolerance.
    """
    grid = cs.grid
    u, v = white_pair(grid.length, seed, grid.dim)
    u_q = np.fft.fftn(u)
    v_q = np.fft.fftn(v)

    x = np.fft.ifftn(cs.a * u_q + cs.b * v_q)
    y = np.fft.ifftn(cs.c * u_q + cs.d * v_q)

    residual = float(max(np.max(np.abs(x.imag)), np.max(np.abs(y.imag))))
    magnitude = float(max(np.max(np.abs(x.real)), np.max(np.abs(y.real))))
    if residual > REALNESS_TOLERANCE * (1.0 + magnitude):
        raise RealnessError(
            f"imaginary residue {residual:.3e} exceeds tolerance for data of "
            f"magnitude {magnitude:.3e} (seed {seed})"
        )
    return np.ascontiguousarray(x.real), np.ascontiguousarray(y.real), residual


def check_grid(cs: CoefficientSet, length: int, dim: int) -> None:
    """Raise CoefficientError unless cs lives on an L^d grid."""
    if cs.grid.length != length or cs.grid.dim != dim:
        raise CoefficientError(
            f"coefficients on grid {cs.grid.shape} cannot drive a "
            f"{dim}-D generator of side {length}"
        )
