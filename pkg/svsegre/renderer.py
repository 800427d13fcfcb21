import json
import os
from typing import Any, Dict

from jinja2 import Environment, FileSystemLoader, StrictUndefined, TemplateNotFound

from svsegre.models import ValidationError
from svsegre.utils import to_plain


def get_templates_dir() -> str:
    """Get the templates directory path."""
    return os.path.join(os.path.dirname(__file__), 'templates')


class ReportRenderer:
    """Renders command payloads as JSON or as Jinja2 tables."""

    def __init__(self, templates_dir: str = None):
        """Initialize the renderer with a templates directory.

        Args:
            templates_dir: Directory containing Jinja2 templates. Defaults to templates/ in package dir.
        """
        if templates_dir is None:
            templates_dir = get_templates_dir()
        self.env = Environment(loader=FileSystemLoader(templates_dir),
                               undefined=StrictUndefined, trim_blocks=True,
                               lstrip_blocks=True, keep_trailing_newline=True)

    def render(self, template_name: str, payload: Dict[str, Any]) -> str:
        """Render a table template with a payload.

        Args:
            template_name: Name of the template file (with or without .txt.j2 extension).
            payload: The command payload.

        Returns:
            Rendered table.

        Raises:
            ValidationError: If the template does not exist.
        """
        if not template_name.endswith('.j2'):
            template_name = template_name + '.txt.j2'
        try:
            template = self.env.get_template(template_name)
        except TemplateNotFound:
            raise ValidationError(f"Template not found: {template_name}")
        return template.render(**to_plain(payload))

    @staticmethod
    def render_json(payload: Dict[str, Any]) -> str:
        """Key order follows the payload, so equal payloads give equal bytes."""
        return json.dumps(to_plain(payload), indent=2)
