import math
from functools import cached_property
from typing import Literal

import numpy as np
from pydantic import field_validator, model_validator

from edge_ghost.models.base import BaseModel, readonly

TWO_PI = 2 * math.pi


def wrap_phase(phase: np.ndarray | float) -> np.ndarray:
    """Reduce phases into [0, 2π).

    `np.mod` can round tiny negative inputs up to exactly 2π; those are folded to 0.
    """
    wrapped = np.mod(np.asarray(phase, dtype=np.float64), TWO_PI)
    return np.where(wrapped >= TWO_PI, 0.0, wrapped)


class DiskGeometry(BaseModel):
    """Centre and radius of a disk phase object, in pixel coordinates (x, y)."""

    center: tuple[float, float]
    radius: float

    def rim_point(self, theta: float, radial_offset: float = 0.0) -> tuple[float, float]:
        """Point at azimuth `theta` on the circle of radius `radius + radial_offset`."""

        r = self.radius + radial_offset
        return (self.center[0] + r * math.cos(theta), self.center[1] + r * math.sin(theta))

    @staticmethod
    def tangent(theta: float) -> float:
        """Orientation of the rim edge at azimuth `theta`, in [0, π)."""

        return (theta + math.pi / 2) % math.pi


class PhaseMask(BaseModel):
    """Phase-only hologram on a pixel grid.

    `phase[y, x]` holds radians in [0, 2π); `support[y, x]` is 1 where the mask transmits.

    Example:
        >>> mask = PhaseMask(phase=np.zeros((4, 4)), support=np.ones((4, 4)), label="flat")
        >>> mask.transmission().sum()
        (16+0j)
    """

    phase: np.ndarray
    support: np.ndarray
    label: str = ""
    disk: DiskGeometry | None = None

    @field_validator("phase", mode="before")
    @classmethod
    def _freeze_phase(cls, value: object) -> np.ndarray:
        phase = readonly(value, dtype=np.float64)
        if phase.ndim != 2 or phase.size == 0:
            raise ValueError(f"phase must be a nonempty 2D grid, got shape {phase.shape}")
        if not np.all(np.isfinite(phase)) or phase.min() < 0.0 or phase.max() >= TWO_PI:
            raise ValueError("phase values must lie in [0, 2π)")
        return phase

    @field_validator("support", mode="before")
    @classmethod
    def _freeze_support(cls, value: object) -> np.ndarray:
        support = readonly(value, dtype=np.uint8)
        if np.any(support > 1):
            raise ValueError("support must be binary")
        return support

    @model_validator(mode="after")
    def _check_dims(self) -> "PhaseMask":
        if self.phase.shape != self.support.shape:
            raise ValueError(f"support shape {self.support.shape} differs from phase shape {self.phase.shape}")
        return self

    @property
    def height(self) -> int:
        return self.phase.shape[0]

    @property
    def width(self) -> int:
        return self.phase.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.phase.shape

    @cached_property
    def transmission_grid(self) -> np.ndarray:
        return readonly(self.support * np.exp(1j * self.phase))

    def transmission(self) -> np.ndarray:
        """Complex transmission support · exp(iφ), computed once per mask."""

        return self.transmission_grid

    def with_phase_offset(self, delta: float) -> "PhaseMask":
        """Same mask with a constant added to every phase."""

        return PhaseMask(
            phase=wrap_phase(self.phase + delta),
            support=self.support,
            label=self.label,
            disk=self.disk,
        )

    def mirrored(self, axis: Literal["x", "y"]) -> "PhaseMask":
        """Mask flipped left-right (`x`) or top-bottom (`y`)."""

        flip = np.fliplr if axis == "x" else np.flipud
        disk = None
        if self.disk is not None:
            cx, cy = self.disk.center
            center = (self.width - 1 - cx, cy) if axis == "x" else (cx, self.height - 1 - cy)
            disk = DiskGeometry(center=center, radius=self.disk.radius)

        return PhaseMask(
            phase=flip(self.phase),
            support=flip(self.support),
            label=f"{self.label} mirrored-{axis}".strip(),
            disk=disk,
        )
