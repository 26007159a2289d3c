"""Run manifest written alongside every generated data set."""

from datetime import datetime, timezone
from pathlib import Path
from typing import Literal

import structlog
from pydantic import BaseModel, Field, ValidationError

from src.config import settings
from src.output.formats import FormatError
from src.synthesis.schemas import GeneratorConfig

UTC = timezone.utc  # datetime.UTC is 3.11+

logger = structlog.get_logger()

MANIFEST_NAME = "manifest.json"

DataFormat = Literal["cgsp", "csv"]


class RunManifest(BaseModel):
    """Everything needed to rerun a generation bit for bit."""

    tool_version: str = Field(default_factory=lambda: settings.app_version)
    created_at: datetime = Field(default_factory=lambda: datetime.now(UTC))
    command: str = Field(default="generate", description="Subcommand that ran")
    config: GeneratorConfig = Field(description="Generator configuration echo")
    data_format: DataFormat = Field(default="cgsp", description="Data file format")
    cumulate: bool = Field(default=False, description="Trajectories were written")
    surface: bool = Field(default=False, description="Surfaces were written")
    cross_amplitude: float = Field(description="Cross amplitude actually used")
    max_coherence: float = Field(ge=0.0, description="Peak coherence of the targets")
    outputs: list[str] = Field(
        default_factory=list, description="Files written, relative to the manifest"
    )

    def write(self, directory: str | Path) -> Path:
        path = Path(directory) / MANIFEST_NAME
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=2) + "\n")
        logger.info("manifest written", path=str(path), outputs=len(self.outputs))
        return path

    @classmethod
    def load(cls, path: str | Path) -> "RunManifest":
        """Read a manifest file.

        Raises:
            FormatError: If the file is not a valid manifest.
            OSError: If the file cannot be read.
        """
        text = Path(path).read_text()
        try:
            return cls.model_validate_json(text)
        except ValidationError as exc:
            raise FormatError(f"{path}: invalid run manifest: {exc}") from exc
