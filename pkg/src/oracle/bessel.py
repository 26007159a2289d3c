"""Modified Bessel function K_nu(x) by direct quadrature.

K_nu(x) = integral_0^inf exp(-x cosh t) cosh(nu t) dt, integrated with
scipy.integrate.quad up to an upper limit where the integrand has fallen
by exp(-40) below its peak.
"""

import math
import warnings

import numpy as np
from scipy import integrate

MAX_ORDER = 5.0
RELATIVE_ACCURACY = 1e-10
# Natural-log drop of the integrand that ends the integration range
TAIL_DROP = 40.0
MAX_DOUBLINGS = 64


class BesselQuadratureError(ArithmeticError):
    """Raised when the quadrature for K_nu(x) does not converge."""


def _log_integrand(t: float | np.ndarray, nu: float, x: float) -> np.ndarray:
    # log cosh(nu t) without overflow
    return -x * np.cosh(t) + np.logaddexp(nu * t, -nu * t) - math.log(2.0)


def bessel_k_numeric(nu: float, x: float) -> float:
    """Evaluate K_nu(x) for x > 0 and |nu| < 5.

    Raises:
        ValueError: If x <= 0 or |nu| >= 5.
        BesselQuadratureError: If the range search or the quadrature fails.
    """
    nu, x = float(nu), float(x)
    if not x > 0:
        raise ValueError(f"K_nu(x) needs x > 0, got {x}")
    if not abs(nu) < MAX_ORDER:
        raise ValueError(f"order |nu| must be < {MAX_ORDER}, got {nu}")

    upper = 1.0
    for _ in range(MAX_DOUBLINGS):
        peak = float(np.max(_log_integrand(np.linspace(0.0, upper, 513), nu, x)))
        if float(_log_integrand(upper, nu, x)) < peak - TAIL_DROP:
            break
        upper *= 2.0
    else:
        raise BesselQuadratureError(f"no integration limit found for nu={nu}, x={x}")

    def _scaled(t: float) -> float:
        return math.exp(float(_log_integrand(t, nu, x)) - peak)

    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, abserr = integrate.quad(
                _scaled, 0.0, upper, epsabs=0.0, epsrel=RELATIVE_ACCURACY, limit=400
            )
        except integrate.IntegrationWarning as exc:
            raise BesselQuadratureError(
                f"quadrature did not converge for nu={nu}, x={x}: {exc}"
            ) from exc

    if not value > 0 or abserr > 1e-8 * value:
        raise BesselQuadratureError(
            f"quadrature error {abserr:.3e} too large for K_{nu}({x}) ~ {value:.3e}"
        )
    return value * math.exp(peak)
