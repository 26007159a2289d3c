"""Data formats, run manifests and text reports."""

from src.output.formats import (
    CgspHeader,
    CgspWriter,
    CsvPairWriter,
    FormatError,
    open_pair_writer,
    read_cgsp,
    read_header,
    read_pairs_csv,
    read_table_csv,
    write_cgsp,
    write_pairs_csv,
    write_table_csv,
    write_trajectory_csv,
)
from src.output.manifest import MANIFEST_NAME, RunManifest
from src.output.renderer import ReportRenderer
from src.output.schemas import CurveSummary, EstimateReport, FeasibilityView

__all__ = [
    "MANIFEST_NAME",
    "CgspHeader",
    "CgspWriter",
    "CsvPairWriter",
    "CurveSummary",
    "EstimateReport",
    "FeasibilityView",
    "FormatError",
    "ReportRenderer",
    "RunManifest",
    "open_pair_writer",
    "read_cgsp",
    "read_header",
    "read_pairs_csv",
    "read_table_csv",
    "write_cgsp",
    "write_pairs_csv",
    "write_table_csv",
    "write_trajectory_csv",
]
