"""Jinja2-based renderer for plain-text run reports."""

from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel

TEMPLATE_DIR = Path(__file__).parent / "templates"


class ReportRenderer:
    """Render estimate, feasibility and reproduction reports from templates."""

    def __init__(self, template_dir: str | Path = TEMPLATE_DIR):
        """Initialize renderer with template directory.

        Args:
            template_dir: Directory containing ``<name>.txt.j2`` templates.
        """
        self.template_dir = Path(template_dir)
        self.env = Environment(
            loader=FileSystemLoader(str(self.template_dir)),
            autoescape=False,
            trim_blocks=True,
            lstrip_blocks=True,
            undefined=StrictUndefined,
            keep_trailing_newline=True,
        )

    def render(self, template_name: str, context: BaseModel) -> str:
        """Render a report.

        Args:
            template_name: Base name of the template (without .txt.j2)
            context: Report context model

        Returns:
            Rendered text.

        Raises:
            TemplateNotFound: If the template file doesn't exist
        """
        template = self.env.get_template(f"{template_name}.txt.j2")
        return template.render(context.model_dump())
