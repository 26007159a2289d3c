"""Target correlation models, spectral densities and feasibility checks."""

from src.spectral.correlation import sample_correlation
from src.spectral.errors import (
    IndefiniteSpectrumError,
    InfeasibleTargetError,
    TargetError,
)
from src.spectral.feasibility import (
    FeasibilityReport,
    coherence,
    fit_cross_amplitude,
    validate_feasibility,
)
from src.spectral.schemas import (
    ClipReport,
    CorrelationFamily,
    CorrelationModel,
    FrequencyGrid,
    SpectralPath,
    SpectralTriple,
    TargetModels,
)
from src.spectral.transform import (
    build_triple,
    power_law_spectrum_analytic,
    spectrum_from_correlation,
)

__all__ = [
    "ClipReport",
    "CorrelationFamily",
    "CorrelationModel",
    "FeasibilityReport",
    "FrequencyGrid",
    "IndefiniteSpectrumError",
    "InfeasibleTargetError",
    "SpectralPath",
    "SpectralTriple",
    "TargetError",
    "TargetModels",
    "build_triple",
    "coherence",
    "fit_cross_amplitude",
    "power_law_spectrum_analytic",
    "sample_correlation",
    "spectrum_from_correlation",
    "validate_feasibility",
]
