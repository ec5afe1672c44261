import json
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from config import Settings
from errors import InputError
from utils import ColorOutput, PathResolver


@dataclass
class RunContext:
    """What a command handler sees: resolved settings and the working directory."""

    settings: Settings
    cwd: str

    def load(self, value: str, field_name: str = 'path') -> Any:
        """Inline JSON (starting with { or [) or a path to a JSON file."""
        if not isinstance(value, str) or not value.strip():
            raise InputError("expected a JSON value or a file path", field_name)
        text = value.strip()
        if text[0] in '{[':
            try:
                return json.loads(text)
            except json.JSONDecodeError as e:
                raise InputError(f"invalid inline JSON: {e}", field_name)
        return PathResolver.load_json(text, self.cwd)


@dataclass
class CommandOutcome:
    """Report payload, its CSV projection, and status lines for the console."""

    payload: Any
    table: List[Dict[str, Any]] = field(default_factory=list)
    summary: List[str] = field(default_factory=list)
    refuted: bool = False

    @classmethod
    def from_report(cls, report: Any, title: str, refuted: Optional[bool] = None) -> 'CommandOutcome':
        table = report.table() if hasattr(report, 'table') else []
        verdict = getattr(report, 'verdict', None)
        if refuted is None:
            refuted = bool(getattr(report, 'refuted', False))
        line = f"{title}: {ColorOutput.verdict(verdict)}" if verdict else title
        summary = [ColorOutput.warning(w) for w in getattr(report, 'warnings', [])]
        summary.append(ColorOutput.error(line) if refuted else ColorOutput.success(line))
        return cls(report, table, summary, refuted)
