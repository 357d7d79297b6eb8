from enum import Enum


class RunStatus(str, Enum):
    """Run status for experiment executions."""

    RUNNING = "running"
    COMPLETED = "completed"
    ERROR = "error"
