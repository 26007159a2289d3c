"""Tests for the report renderer and its contexts."""

import pytest
from jinja2 import TemplateNotFound

from src.estimation.schemas import ExponentFit
from src.output.renderer import ReportRenderer
from src.output.schemas import CurveSummary, EstimateReport, FeasibilityView
from src.reproduction.schemas import FigureCheck, ReproduceSummary
from src.spectral.feasibility import FeasibilityReport


@pytest.fixture
def renderer() -> ReportRenderer:
    """Renderer over the packaged templates."""
    return ReportRenderer()


@pytest.fixture
def estimate_report() -> EstimateReport:
    """Estimate report with one fit and one refusal."""
    return EstimateReport(
        source="runs/a/pairs.cgsp",
        n_realizations=1,
        side_length=1024,
        dim=1,
        curves=[
            CurveSummary(
                which="xx", zero_lag=1.0012, zero_lag_stderr=0.0, table="xx.csv"
            )
        ],
        fits=[
            ExponentFit(
                which="xx",
                exponent=0.6931,
                uncertainty=0.0123,
                fit_range=(4, 10),
                goodness=0.004,
                intercept=0.1,
                n_points=7,
                scatter=0.05,
                n_scatter=20,
            )
        ],
        fit_errors={"xy": "correlation is non-positive (-1.0e-03) at lag 7"},
        warnings=["single realization; standard errors are zero"],
    )


class TestEstimateTemplate:
    """Tests for the estimate report."""

    def test_contents(self, renderer: ReportRenderer, estimate_report: EstimateReport):
        """Curves, fits, refusals and warnings all appear."""
        text = renderer.render("estimate", estimate_report)
        assert "Correlation estimate: runs/a/pairs.cgsp" in text
        assert "C_xx(0) = 1.001200 +/- 0.000000" in text
        assert "gamma_xx = 0.6931 +/- 0.0123 (fit), scatter 0.0500 over 20" in text
        assert "lags 4..10, 7 points" in text
        assert "gamma_xy: not fitted: correlation is non-positive" in text
        assert "warning: single realization" in text

    def test_field_grid_label(
        self, renderer: ReportRenderer, estimate_report: EstimateReport
    ):
        """Fields are labelled as radial shells."""
        report = estimate_report.model_copy(update={"dim": 2})
        assert "1024 ^ 2 (radial shells)" in renderer.render("estimate", report)

    def test_fit_without_scatter(
        self, renderer: ReportRenderer, estimate_report: EstimateReport
    ):
        """The scatter clause is dropped when absent."""
        fit = estimate_report.fits[0].model_copy(update={"scatter": None})
        report = estimate_report.model_copy(update={"fits": [fit]})
        assert "scatter" not in renderer.render("estimate", report)


class TestFeasibilityTemplate:
    """Tests for the validate report."""

    def test_feasible(self, renderer: ReportRenderer):
        """A feasible report states the result."""
        view = FeasibilityView(
            length=1024,
            dim=1,
            path="fft",
            cross_amplitude=0.25,
            report=FeasibilityReport(feasible=True, max_coherence=0.9),
        )
        text = renderer.render("feasibility", view)
        assert "Feasibility on 1024 grid (fft path)" in text
        assert "max coherence: 0.900000" in text
        assert "result: feasible" in text

    def test_infeasible_lists_bins(self, renderer: ReportRenderer):
        """Violations are counted and listed."""
        view = FeasibilityView(
            length=64,
            dim=2,
            path="fft",
            cross_amplitude=1.0,
            report=FeasibilityReport(
                feasible=False,
                max_coherence=1.4,
                n_violations=2,
                violating_bins=[(0, 0), (0, 1)],
            ),
        )
        text = renderer.render("feasibility", view)
        assert "64 ^ 2 grid" in text
        assert "INFEASIBLE, 2 bins violate" in text
        assert "(0, 0), (0, 1)" in text


class TestReproduceTemplate:
    """Tests for the reproduction summary."""

    def test_pass_and_fail_lines(self, renderer: ReportRenderer):
        """Each check gets a status line and the overall verdict leads."""
        summary = ReproduceSummary(
            figure="fig1",
            scale="desk",
            checks=[
                FigureCheck(
                    name="rms C_xy",
                    measured=0.01,
                    target=0.0,
                    tolerance=0.02,
                    passed=True,
                ),
                FigureCheck(
                    name="gamma_xx",
                    measured=0.9,
                    target=0.7,
                    tolerance=0.05,
                    passed=False,
                    detail="L=1024",
                ),
            ],
            outputs=["fig1/xy.csv"],
        )
        text = renderer.render("reproduce", summary)
        assert text.startswith("Reproduction fig1 at desk scale: FAIL")
        assert "[ok] rms C_xy: measured 0.0100" in text
        assert "[FAIL] gamma_xx" in text and "(L=1024)" in text
        assert "fig1/xy.csv" in text

    def test_missing_template(self, renderer: ReportRenderer):
        """Unknown templates raise TemplateNotFound."""
        with pytest.raises(TemplateNotFound):
            renderer.render("missing", ReproduceSummary(figure="fig2", scale="desk"))
