from pathlib import Path
from typing import Any

from pydantic import Field

from edge_ghost.models.base import BaseModel
from edge_ghost.models.enums import ExperimentKind, RunStatus


class RunOutcome(BaseModel):
    """What a finished run produced."""

    kind: ExperimentKind
    status: RunStatus
    artifacts: list[Path] = Field(default_factory=list)
    headline: dict[str, Any] = Field(default_factory=dict)
    error: str | None = None
