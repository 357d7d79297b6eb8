import numpy as np
from pydantic import Field, field_validator, model_validator

from edge_ghost.models.base import BaseModel, readonly
from edge_ghost.models.enums import CorrelationMode
from edge_ghost.models.mask import PhaseMask
from edge_ghost.models.window import Window


class OffsetGrid(BaseModel):
    """Rectangular grid of object displacements; both ranges are inclusive."""

    x_start: int
    x_stop: int
    y_start: int
    y_stop: int
    stride: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _check_ranges(self) -> "OffsetGrid":
        if self.x_stop < self.x_start or self.y_stop < self.y_start:
            raise ValueError("offset ranges must be nonempty")
        return self

    @property
    def x_values(self) -> np.ndarray:
        return np.arange(self.x_start, self.x_stop + 1, self.stride)

    @property
    def y_values(self) -> np.ndarray:
        return np.arange(self.y_start, self.y_stop + 1, self.stride)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.y_values.size, self.x_values.size)

    def offsets(self) -> list[tuple[int, int]]:
        """Row-major (x, y) offsets; the list index is the offset index."""

        return [(int(x), int(y)) for y in self.y_values for x in self.x_values]


class ScanConfig(BaseModel):
    """Everything needed to step an object across the filter window."""

    object: PhaseMask
    filter: PhaseMask
    window: Window
    offsets: OffsetGrid
    mode: CorrelationMode = CorrelationMode.ANALYTIC
    mc_realizations: int = 10_000
    seed: int = Field(default=0, ge=0)
    coherence_px: float = Field(default=0.0, ge=0)

    @model_validator(mode="after")
    def _check_mc(self) -> "ScanConfig":
        if self.mode == CorrelationMode.MONTECARLO and self.mc_realizations < 2:
            raise ValueError("montecarlo mode needs mc_realizations >= 2")
        return self


class ScanImage(BaseModel):
    """Edge-enhanced ghost image: delta_g2 per offset, rows along y and columns along x."""

    values: np.ndarray
    stderr: np.ndarray
    config: ScanConfig
    normalized: bool = False

    @field_validator("values", "stderr", mode="before")
    @classmethod
    def _freeze(cls, value: object) -> np.ndarray:
        return readonly(value, dtype=np.float64)

    @model_validator(mode="after")
    def _check(self) -> "ScanImage":
        if self.values.shape != self.config.offsets.shape or self.stderr.shape != self.values.shape:
            raise ValueError(f"image shape {self.values.shape} differs from offset grid {self.config.offsets.shape}")
        if self.config.mode == CorrelationMode.ANALYTIC and np.any(self.values < 0):
            raise ValueError("analytic images are non-negative")
        return self

    def below_noise_floor(self, sigmas: float) -> int:
        """Number of pixels with delta_g2 < -sigmas·stderr; a Monte Carlo image should have none."""

        return int(np.count_nonzero(self.values < -sigmas * self.stderr))

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def value_at(self, offset: tuple[int, int]) -> float:
        """Image value at an (x, y) offset that lies on the grid."""

        grid = self.config.offsets
        ix = np.flatnonzero(grid.x_values == offset[0])
        iy = np.flatnonzero(grid.y_values == offset[1])
        if ix.size == 0 or iy.size == 0:
            raise KeyError(f"offset {offset} is not on the scan grid")
        return float(self.values[iy[0], ix[0]])
