from edge_ghost.models.base import BaseModel
from edge_ghost.models.bell import BellCurve, BellResult, BellSample, BellSettings, Binning, ETerm
from edge_ghost.models.config import ExperimentConfig
from edge_ghost.models.correlation import CorrelationEstimate, Overlap
from edge_ghost.models.enums import CorrelationMode, EventType, ExperimentKind, RunStatus, WindowShape
from edge_ghost.models.event import Event
from edge_ghost.models.field import MomentCheck, SpeckleField, SpeckleMoments
from edge_ghost.models.handler import EventHandler
from edge_ghost.models.mask import DiskGeometry, PhaseMask
from edge_ghost.models.outcome import RunOutcome
from edge_ghost.models.scan import OffsetGrid, ScanConfig, ScanImage
from edge_ghost.models.spectrum import AzimuthalSpectrum
from edge_ghost.models.window import Window

__all__ = [
    "AzimuthalSpectrum",
    "BaseModel",
    "BellCurve",
    "BellResult",
    "BellSample",
    "BellSettings",
    "Binning",
    "CorrelationEstimate",
    "CorrelationMode",
    "DiskGeometry",
    "ETerm",
    "Event",
    "EventHandler",
    "EventType",
    "ExperimentConfig",
    "ExperimentKind",
    "MomentCheck",
    "OffsetGrid",
    "Overlap",
    "PhaseMask",
    "RunOutcome",
    "RunStatus",
    "ScanConfig",
    "ScanImage",
    "SpeckleField",
    "SpeckleMoments",
    "Window",
    "WindowShape",
]
