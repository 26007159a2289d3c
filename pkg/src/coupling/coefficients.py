"""Fourier-space mixing coefficients for two coupled processes.

x_q = a u_q + b v_q and y_q = c u_q + d v_q, with u, v independent white
noise. Under the fixed direction convention (1/L^d) <x_q* y_q> = S_xy(q)
the coefficients must satisfy

    |a|^2 + |b|^2       = S_xx
    |c|^2 + |d|^2       = S_yy
    conj(a) c + conj(b) d = S_xy
"""

import numpy as np
import structlog
from numpy.typing import NDArray

from src.coupling.schemas import CoefficientResidual, CoefficientSet
from src.spectral.errors import InfeasibleTargetError, TargetError
from src.spectral.feasibility import ABSOLUTE_FLOOR, coherence
from src.spectral.schemas import SpectralTriple

logger = structlog.get_logger()

# Identity residual allowed per unit spectral scale
RESIDUAL_TOLERANCE = 1e-12


class CoefficientError(TargetError):
    """Raised when coefficients cannot be built or do not match their triple."""


def coefficients_from_spectra(t: SpectralTriple) -> CoefficientSet:
    """Build the lower-triangular (alpha_q = 0) coefficient set of a triple.

    a = sqrt(S_xx), b = 0, c = sqrt(S_yy) g, d = sqrt(S_yy) sqrt(1 - |g|^2)
    with g the complex coherence. Bins where an autospectrum vanishes get
    zero coefficients for that process.

    Args:
        t: Feasible spectral triple

    Returns:
        CoefficientSet on the triple's grid.

    Raises:
        CoefficientError: If the cross-spectrum is nonzero on a bin where
            either autospectrum is zero.
        InfeasibleTargetError: If the triple violates the coherence bound.
    """
    floor = ABSOLUTE_FLOOR * t.scale
    orphan = ((t.sxx <= 0) | (t.syy <= 0)) & (np.abs(t.sxy) > floor)
    if np.any(orphan):
        first = tuple(int(i) for i in np.argwhere(orphan)[0])
        raise CoefficientError(
            f"cross-spectrum is nonzero at bin {first} where an autospectrum "
            f"vanishes ({int(np.count_nonzero(orphan))} bins)"
        )

    report = t.feasibility
    if not report.feasible:
        raise InfeasibleTargetError(
            f"max coherence {report.max_coherence:.6g} exceeds 1 on "
            f"{report.n_violations} bins, first {report.violating_bins[:5]}"
        )

    g = coherence(t)
    modulus = np.abs(g)
    over = modulus > 1.0
    if np.any(over):
        g[over] /= modulus[over]
        modulus = np.minimum(modulus, 1.0)

    root_xx = np.sqrt(t.sxx)
    root_yy = np.sqrt(t.syy)
    cs = CoefficientSet(
        grid=t.grid,
        a=root_xx,
        b=np.zeros(t.grid.shape),
        c=root_yy * g,
        d=root_yy * np.sqrt(1.0 - modulus**2),
    )
    logger.debug(
        "coefficients built",
        grid_shape=t.grid.shape,
        max_coherence=report.max_coherence,
    )
    return cs


def verify_coefficients(cs: CoefficientSet, t: SpectralTriple) -> CoefficientResidual:
    """Recompute the three spectral identities and report the worst residual.

    Raises:
        CoefficientError: If the coefficient and triple grids differ.
    """
    if cs.grid != t.grid:
        raise CoefficientError(
            f"coefficient grid {cs.grid.shape} does not match triple grid "
            f"{t.grid.shape}"
        )

    res_xx = np.abs(np.abs(cs.a) ** 2 + np.abs(cs.b) ** 2 - t.sxx)
    res_yy = np.abs(np.abs(cs.c) ** 2 + np.abs(cs.d) ** 2 - t.syy)
    res_xy = np.abs(np.conj(cs.a) * cs.c + np.conj(cs.b) * cs.d - t.sxy)

    worst = np.maximum(np.maximum(res_xx, res_yy), res_xy)
    worst_bin = tuple(int(i) for i in np.unravel_index(np.argmax(worst), worst.shape))
    return CoefficientResidual(
        xx=float(res_xx.max()),
        yy=float(res_yy.max()),
        xy=float(res_xy.max()),
        scale=t.scale,
        worst_bin=worst_bin,
        tolerance=RESIDUAL_TOLERANCE,
    )


def rotate_gauge(cs: CoefficientSet, theta: NDArray[np.float64]) -> CoefficientSet:
    """Rotate (a, b) and (c, d) by the same real mixing angle per bin.

    The rotation is an orthogonal change of the driving noise basis, so all
    three identities are preserved. theta must be even in q for the
    conjugation symmetry of the coefficients to survive.

    Raises:
        CoefficientError: If theta has the wrong shape, is not finite or is
            not even under q -> -q.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if theta.shape != cs.grid.shape:
        raise CoefficientError(
            f"phase field has shape {theta.shape}, grid expects {cs.grid.shape}"
        )
    if not np.all(np.isfinite(theta)):
        raise CoefficientError("phase field must be finite")
    if not np.array_equal(theta, cs.grid.reflect(theta)):
        raise CoefficientError("phase field must be even: theta(-q) == theta(q)")

    cos, sin = np.cos(theta), np.sin(theta)
    return CoefficientSet(
        grid=cs.grid,
        a=cos * cs.a + sin * cs.b,
        b=-sin * cs.a + cos * cs.b,
        c=cos * cs.c + sin * cs.d,
        d=-sin * cs.c + cos * cs.d,
    )
