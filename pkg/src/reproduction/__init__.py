"""Reproduction experiments for coupled sequences and fields."""

from src.reproduction.figures import power_law_models, run_figure
from src.reproduction.schemas import (
    PROFILES,
    FigureCheck,
    FigureId,
    ReproduceSummary,
    Scale,
    ScaleProfile,
)

__all__ = [
    "PROFILES",
    "FigureCheck",
    "FigureId",
    "ReproduceSummary",
    "Scale",
    "ScaleProfile",
    "power_law_models",
    "run_figure",
]
