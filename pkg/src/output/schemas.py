"""Report contexts for template rendering."""

from pydantic import BaseModel, ConfigDict, Field

from src.estimation.schemas import ExponentFit
from src.spectral.feasibility import FeasibilityReport


class CurveSummary(BaseModel):
    """Zero-lag value and table location of one measured curve."""

    which: str = Field(description="Curve name: xx, yy or xy")
    zero_lag: float = Field(description="Estimated C(0)")
    zero_lag_stderr: float = Field(ge=0.0, description="Standard error of C(0)")
    table: str = Field(description="CSV file holding lag,value,stderr")


class EstimateReport(BaseModel):
    """Context of the estimate report."""

    model_config = ConfigDict(str_strip_whitespace=True)

    source: str = Field(description="Data file the estimate was computed from")
    n_realizations: int = Field(ge=1)
    side_length: int = Field(ge=1)
    dim: int = Field(ge=1)
    curves: list[CurveSummary] = Field(default_factory=list)
    fits: list[ExponentFit] = Field(default_factory=list)
    fit_errors: dict[str, str] = Field(
        default_factory=dict, description="Refused fits with their reason"
    )
    warnings: list[str] = Field(default_factory=list)


class FeasibilityView(BaseModel):
    """Context of the validate report."""

    length: int
    dim: int
    path: str
    cross_amplitude: float
    report: FeasibilityReport
