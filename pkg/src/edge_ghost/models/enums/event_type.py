from enum import Enum


class EventType(str, Enum):
    """Lifecycle events emitted while an experiment runs."""

    RUN_STARTED = "RUN_STARTED"
    STEP_FINISHED = "STEP_FINISHED"
    ARTIFACT_WRITTEN = "ARTIFACT_WRITTEN"
    RUN_FINISHED = "RUN_FINISHED"
    RUN_ERROR = "RUN_ERROR"
