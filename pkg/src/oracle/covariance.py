"""Dense joint covariance of two coupled sequences, for small L only.

Ground truth for the synthesis pipeline: the block-circulant covariance
of the targets, its exact-law samples, and the covariance a coefficient
set implies without any sampling.
"""

from dataclasses import dataclass

import numpy as np
import structlog
from numpy.typing import NDArray
from scipy import linalg

from src.config import settings
from src.coupling.schemas import CoefficientSet
from src.spectral.correlation import sample_correlation
from src.spectral.errors import InfeasibleTargetError
from src.spectral.schemas import FrequencyGrid, TargetModels

logger = structlog.get_logger()

# Eigenvalues down to -EIGEN_JITTER * scale count as zero
EIGEN_JITTER = 1e-10


@dataclass
class JointCovariance:
    """2L x 2L covariance [[S_xx, S_xy], [S_xy^T, S_yy]] of (x, y)."""

    matrix: NDArray[np.float64]
    length: int

    def __post_init__(self) -> None:
        self.matrix = np.asarray(self.matrix, dtype=np.float64)
        expected = (2 * self.length, 2 * self.length)
        if self.matrix.shape != expected:
            raise ValueError(
                f"covariance has shape {self.matrix.shape}, expected {expected}"
            )

    @property
    def xx(self) -> NDArray[np.float64]:
        return self.matrix[: self.length, : self.length]

    @property
    def yy(self) -> NDArray[np.float64]:
        return self.matrix[self.length :, self.length :]

    @property
    def xy(self) -> NDArray[np.float64]:
        return self.matrix[: self.length, self.length :]

    @property
    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(np.diag(self.matrix)), initial=0.0)))


def _check_length(length: int) -> None:
    if length > settings.oracle_max_length:
        raise ValueError(
            f"oracle supports L <= {settings.oracle_max_length}, got {length}"
        )


def _circulant(c: NDArray[np.float64]) -> NDArray[np.float64]:
    """M[i, j] = c[(j - i) mod L]."""
    n = np.arange(c.size)
    return c[(n[None, :] - n[:, None]) % c.size]


def build_joint_covariance(models: TargetModels, length: int) -> JointCovariance:
    """Block-circulant covariance of the target correlations on length L.

    Raises:
        ValueError: If L exceeds the oracle limit.
    """
    _check_length(length)
    grid = FrequencyGrid(length=length)
    Sxx = _circulant(sample_correlation(models.xx, grid))
    Syy = _circulant(sample_correlation(models.yy, grid))
    Sxy = _circulant(sample_correlation(models.xy, grid))
    return JointCovariance(matrix=np.block([[Sxx, Sxy], [Sxy.T, Syy]]), length=length)


def oracle_sample(
    cov: JointCovariance, n: int, seed: int
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    """Draw n exact-law samples of (x, y) from a joint covariance.

    The covariance is factorised as V diag(sqrt(w)) from its symmetric
    eigen-decomposition, so rank-deficient matrices sample exactly.

    Returns:
        Tuple (xs, ys), each of shape (n, L).

    Raises:
        InfeasibleTargetError: If an eigenvalue is below -1e-10 x scale.
    """
    w, V = linalg.eigh(cov.matrix)
    floor = -EIGEN_JITTER * cov.scale
    if w.size and w.min() < floor:
        raise InfeasibleTargetError(
            f"joint covariance is indefinite: smallest eigenvalue {w.min():.3e}"
        )
    factor = V * np.sqrt(np.clip(w, 0.0, None))

    rng = np.random.Generator(np.random.PCG64(seed))
    z = rng.standard_normal((n, 2 * cov.length))
    samples = z @ factor.T
    logger.debug("oracle samples drawn", n=n, length=cov.length)
    return samples[:, : cov.length], samples[:, cov.length :]


def exact_generator_covariance(cs: CoefficientSet) -> JointCovariance:
    """Covariance of (x, y) implied by a 1-D coefficient set, without sampling.

    With x = A u + B v and y = C u + D v for the real circulant operators
    A = F^-1 diag(a) F etc., unit white noise gives
    Cov(x) = A A^T + B B^T, Cov(x, y) = A C^T + B D^T, Cov(y) = C C^T + D D^T.

    Raises:
        ValueError: If the grid is not 1-D or exceeds the oracle limit.
    """
    if cs.grid.dim != 1:
        raise ValueError(f"oracle covariance needs a 1-D grid, got d={cs.grid.dim}")
    _check_length(cs.grid.length)

    basis = np.fft.fft(np.eye(cs.grid.length), axis=0)

    def _operator(coef: NDArray[np.complex128]) -> NDArray[np.float64]:
        return np.fft.ifft(coef[:, None] * basis, axis=0).real

    A, B, C, D = (_operator(coef) for coef in (cs.a, cs.b, cs.c, cs.d))
    Sxx = A @ A.T + B @ B.T
    Syy = C @ C.T + D @ D.T
    Sxy = A @ C.T + B @ D.T
    return JointCovariance(
        matrix=np.block([[Sxx, Sxy], [Sxy.T, Syy]]), length=cs.grid.length
    )
