"""Coupled sequence and field synthesis by modified Fourier filtering."""

from src.synthesis.ensemble import (
    generate_ensemble,
    prepare_coefficients,
    prepare_triple,
    resolve_models,
    synthesize_realization,
)
from src.synthesis.fields import (
    radial_spectra,
    self_affine_surface,
    synthesize_field_pair,
)
from src.synthesis.mixing import RealnessError
from src.synthesis.noise import child_seed, white_pair
from src.synthesis.schemas import (
    FieldPair,
    GeneratorConfig,
    RealizationPair,
    SequencePair,
    SurfacePair,
    TrajectoryPair,
)
from src.synthesis.sequences import cumulate, synthesize_pair

__all__ = [
    "FieldPair",
    "GeneratorConfig",
    "RealizationPair",
    "RealnessError",
    "SequencePair",
    "SurfacePair",
    "TrajectoryPair",
    "child_seed",
    "cumulate",
    "generate_ensemble",
    "prepare_coefficients",
    "prepare_triple",
    "radial_spectra",
    "resolve_models",
    "self_affine_surface",
    "synthesize_field_pair",
    "synthesize_pair",
    "synthesize_realization",
    "white_pair",
]
