from typing import Any

from pydantic import Field

from edge_ghost.models.base import BaseModel
from edge_ghost.models.enums import EventType, ExperimentKind


class Event(BaseModel):
    """Event emitted while an experiment runs."""

    type: EventType
    kind: ExperimentKind
    data: dict[str, Any] = Field(default_factory=dict)
