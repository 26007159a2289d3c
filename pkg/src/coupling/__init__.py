"""Fourier-space mixing coefficients and their verification."""

from src.coupling.coefficients import (
    CoefficientError,
    coefficients_from_spectra,
    rotate_gauge,
    verify_coefficients,
)
from src.coupling.schemas import CoefficientResidual, CoefficientSet

__all__ = [
    "CoefficientError",
    "CoefficientResidual",
    "CoefficientSet",
    "coefficients_from_spectra",
    "rotate_gauge",
    "verify_coefficients",
]
