"""Ensemble correlation estimates, exponent fits and coherence diagnostics."""

from src.estimation.coherence import coherence_profile
from src.estimation.correlations import EstimationError, estimate_correlations
from src.estimation.fitting import default_fit_range, fit_power_law_exponent
from src.estimation.schemas import CorrelationEstimate, CurveName, ExponentFit

__all__ = [
    "CorrelationEstimate",
    "CurveName",
    "EstimationError",
    "ExponentFit",
    "coherence_profile",
    "default_fit_range",
    "estimate_correlations",
    "fit_power_law_exponent",
]
