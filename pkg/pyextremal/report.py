"""Uniform result envelope for searches and checks."""

import json
import logging
import time
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from jinja2 import Template
from pydantic import BaseModel, Field, model_validator

from . import __version__

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1

TEMPLATE_DIR = Path(__file__).parent / "templates"

Status = Literal["complete", "interval", "refused", "violated"]

EXIT_CODES: Dict[str, int] = {
    "complete": 0,
    "violated": 1,
    "interval": 3,
    "refused": 3,
}

VOLATILE_FIELDS = {"timestamp", "elapsed"}


class SearchReport(BaseModel):
    """Outcome of an exact search or a verification run."""
    schema_version: int = Field(default=SCHEMA_VERSION, description="Version of this JSON schema")
    command: str = Field(description="Command echo, e.g. 'ramsey exact k3'")
    status: Status = Field(default="complete", description="complete, interval, refused or violated")
    value: Optional[Any] = Field(default=None, description="Exact value when the search resolved")
    lower: Optional[int] = Field(default=None, description="Lower end of the interval")
    upper: Optional[int] = Field(default=None, description="Upper end of the interval (None = unbounded)")
    exact: bool = Field(default=True, description="Whether value is exact")
    witness: Optional[Any] = Field(default=None, description="JSON form of the witness")
    nodes: int = Field(default=0, description="Search nodes explored")
    elapsed: float = Field(default=0.0, description="Wall time in seconds")
    seed: Optional[int] = Field(default=None, description="Seed of randomised runs")
    version: str = Field(default=__version__, description="Toolkit version")
    timestamp: str = Field(default_factory=lambda: datetime.now().isoformat())
    details: Dict[str, Any] = Field(default_factory=dict, description="Command-specific fields")

    class Config:
        json_schema_extra = {
            "example": {
                "command": "ramsey exact k3",
                "status": "complete",
                "value": 6,
                "lower": 6,
                "upper": 6,
                "nodes": 412,
            }
        }

    @model_validator(mode="after")
    def _check_interval(self) -> "SearchReport":
        if self.lower is not None and self.upper is not None and self.lower > self.upper:
            raise ValueError(f"interval [{self.lower}, {self.upper}] is empty")
        return self

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    @property
    def resolved(self) -> bool:
        return self.status == "complete"

    def to_dict(self, comparable: bool = False) -> Dict[str, Any]:
        """Report as a dictionary; ``comparable`` drops timestamp and wall time."""
        return self.model_dump(mode="json", exclude=VOLATILE_FIELDS if comparable else None)

    def to_json(self, comparable: bool = False, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(comparable=comparable), indent=indent, sort_keys=True)

    def save(self, output_path: str, comparable: bool = False) -> None:
        """Save the report as JSON.

        Args:
            output_path: Path to save the report
            comparable: Leave out the volatile fields
        """
        Path(output_path).write_text(self.to_json(comparable=comparable) + "\n")
        logger.info(f"Saved report to {output_path}")

    def render_table(self) -> str:
        template = Template((TEMPLATE_DIR / "report.txt.tpl").read_text())
        return template.render(report=self, witness_lines=_witness_lines(self.witness))


def _witness_lines(witness: Any) -> List[str]:
    if witness is None:
        return []
    if isinstance(witness, dict):
        return [f"{key}: {value}" for key, value in witness.items()]
    if isinstance(witness, list) and len(witness) > 8:
        return [json.dumps(witness[:8])[:-1] + ", ...]"]
    return [json.dumps(witness)]


class Stopwatch:
    """Context manager measuring wall time in seconds."""

    def __enter__(self) -> "Stopwatch":
        self.start = time.perf_counter()
        self.elapsed = 0.0
        return self

    def __exit__(self, *exc) -> None:
        self.elapsed = time.perf_counter() - self.start
