from pathlib import Path
from typing import Annotated, Literal

from pydantic import ConfigDict, Field, StrictInt

from edge_ghost.models.base import BaseModel
from edge_ghost.models.enums import CorrelationMode, ExperimentKind, WindowShape


class Section(BaseModel):
    """Config section; unknown keys and non-finite numbers are rejected."""

    model_config = ConfigDict(extra="forbid", allow_inf_nan=False)


class UniformObject(Section):
    type: Literal["uniform"]
    grid: int = Field(ge=1)
    phase: float = 0.0


class SpiralObject(Section):
    type: Literal["spiral"]
    grid: int = Field(ge=1)
    l: StrictInt  # noqa: E741
    center_x: float
    center_y: float


class StepObject(Section):
    type: Literal["step"]
    grid: int = Field(ge=1)
    orientation: float = 0.0
    center_x: float
    center_y: float


class DiskObject(Section):
    type: Literal["disk"]
    grid: int = Field(ge=1)
    radius: float = Field(gt=0)
    center_x: float
    center_y: float


class BitmapObject(Section):
    type: Literal["bitmap"]
    path: Path


ObjectSpec = Annotated[
    UniformObject | SpiralObject | StepObject | DiskObject | BitmapObject,
    Field(discriminator="type"),
]


class UniformFilter(Section):
    type: Literal["uniform"]
    size: int = Field(ge=1)
    phase: float = 0.0


class SpiralFilter(Section):
    type: Literal["spiral"]
    size: int = Field(ge=1)
    l: StrictInt  # noqa: E741
    center_x: float
    center_y: float


class StepFilter(Section):
    type: Literal["step"]
    size: int = Field(ge=1)
    orientation: float = 0.0
    center_x: float
    center_y: float


FilterSpec = Annotated[UniformFilter | SpiralFilter | StepFilter, Field(discriminator="type")]


class WindowSpec(Section):
    shape: WindowShape
    extent: float = Field(gt=0)
    center_x: float
    center_y: float


class ScanSection(Section):
    x_start: int
    x_stop: int
    y_start: int
    y_stop: int
    stride: int = Field(ge=1)
    emit_intensity: bool = False
    intensity_realizations: int = Field(default=256, ge=1)


class BellSection(Section):
    radial_px: int = Field(ge=1)
    azimuthal_deg: float = Field(gt=0, le=180)
    azimuthal_samples: int = Field(ge=1)
    theta_a: list[float] = Field(min_length=1)
    settings_theta_a: float
    settings_theta_b: float
    settings_theta_a_prime: float
    settings_theta_b_prime: float
    subtract_background: bool = False


class SpectrumSection(Section):
    l_max: int = Field(ge=1)


class SpeckleCheckSection(Section):
    grid: int = Field(ge=1)
    samples: int = Field(ge=2)


class ExperimentConfig(Section):
    """Fully resolved experiment description; every default is explicit.

    Example:
        >>> config = parse_config('kind = "scan"\\n[object]\\ntype = "disk"\\n[filter]\\ntype = "spiral"\\nl = 1\\n')
        >>> config.object.grid, config.window.extent
        (128, 5.0)
    """

    kind: ExperimentKind
    mode: CorrelationMode
    mc_realizations: int = Field(ge=2)
    seed: int = Field(ge=0, lt=2**64)
    coherence_px: float = Field(ge=0)
    detector_pitch_um: float = Field(gt=0)
    output_dir: Path
    object: ObjectSpec | None = None
    filter: FilterSpec | None = None
    window: WindowSpec | None = None
    scan: ScanSection | None = None
    bell: BellSection | None = None
    spectrum: SpectrumSection | None = None
    speckle_check: SpeckleCheckSection | None = None
