"""Reproduction experiment profiles and results."""

from typing import Literal

from pydantic import BaseModel, Field, computed_field

FigureId = Literal["fig1", "fig2", "fig3"]
Scale = Literal["desk", "full"]


class ScaleProfile(BaseModel):
    """Grid side and ensemble size of one experiment scale."""

    length: int = Field(ge=8)
    n_realizations: int = Field(ge=1)


PROFILES: dict[str, dict[str, ScaleProfile]] = {
    "fig1": {
        "desk": ScaleProfile(length=2**10, n_realizations=1000),
        "full": ScaleProfile(length=2**10, n_realizations=1000),
    },
    "fig2": {
        "desk": ScaleProfile(length=2**18, n_realizations=30),
        "full": ScaleProfile(length=2**21, n_realizations=100),
    },
    "fig3": {
        "desk": ScaleProfile(length=2**9, n_realizations=20),
        "full": ScaleProfile(length=2**12, n_realizations=100),
    },
}


class FigureCheck(BaseModel):
    """One measured quantity against its acceptance tolerance."""

    name: str
    measured: float
    target: float
    tolerance: float
    passed: bool
    detail: str = ""


class ReproduceSummary(BaseModel):
    """Pass/fail summary of one reproduction run."""

    figure: FigureId
    scale: Scale
    checks: list[FigureCheck] = Field(default_factory=list)
    outputs: list[str] = Field(default_factory=list)

    @computed_field
    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)
