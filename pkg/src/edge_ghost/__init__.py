"""Thermal-light edge-enhancement ghost imaging of phase objects.

Example:
    >>> from edge_ghost import ExperimentRunner, parse_config
    >>> config = parse_config('kind = "scan"\\n[filter]\\ntype = "spiral"\\nl = 1\\n')
    >>> outcome = await ExperimentRunner(workers=4).run(config)
"""

from edge_ghost.config import load_config, parse_config
from edge_ghost.errors import (
    BellError,
    ConfigError,
    CorrelationError,
    EdgeGhostError,
    MaskError,
    ScanError,
    SpeckleError,
    WindowError,
)
from edge_ghost.executor import WorkerPool
from edge_ghost.experiment import ExperimentRunner
from edge_ghost.models import CorrelationMode, EventType, ExperimentConfig, ExperimentKind, RunOutcome, RunStatus

__version__ = "0.1.0"

__all__ = [
    "BellError",
    "ConfigError",
    "CorrelationError",
    "CorrelationMode",
    "EdgeGhostError",
    "EventType",
    "ExperimentConfig",
    "ExperimentKind",
    "ExperimentRunner",
    "MaskError",
    "RunOutcome",
    "RunStatus",
    "ScanError",
    "SpeckleError",
    "WindowError",
    "WorkerPool",
    "load_config",
    "parse_config",
]
