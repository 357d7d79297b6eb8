from edge_ghost.models.enums.correlation_mode import CorrelationMode
from edge_ghost.models.enums.event_type import EventType
from edge_ghost.models.enums.experiment_kind import ExperimentKind
from edge_ghost.models.enums.run_status import RunStatus
from edge_ghost.models.enums.window_shape import WindowShape

__all__ = [
    "CorrelationMode",
    "EventType",
    "ExperimentKind",
    "RunStatus",
    "WindowShape",
]
