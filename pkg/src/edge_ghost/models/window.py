import math

import numpy as np
from pydantic import ConfigDict, Field

from edge_ghost.errors import WindowError
from edge_ghost.models.base import BaseModel
from edge_ghost.models.enums import WindowShape


class Window(BaseModel):
    """Pixel set around a centre, in (x, y) pixel coordinates.

    A square window holds the pixels with |x - cx| < extent and |y - cy| < extent, so a half-width of 5
    about (4.5, 4.5) is exactly the 10×10 block 0..9. A disk window holds the pixels with
    (x - cx)² + (y - cy)² ≤ extent².

    Example:
        >>> window = Window.square((4.5, 4.5), 5)
        >>> window.count(10, 10)
        100
    """

    model_config = ConfigDict(allow_inf_nan=False)

    center: tuple[float, float]
    shape: WindowShape
    extent: float = Field(gt=0)

    @classmethod
    def square(cls, center: tuple[float, float], halfwidth: float) -> "Window":
        return cls(center=center, shape=WindowShape.SQUARE, extent=halfwidth)

    @classmethod
    def disk(cls, center: tuple[float, float], radius: float) -> "Window":
        return cls(center=center, shape=WindowShape.DISK, extent=radius)

    @classmethod
    def covering(cls, height: int, width: int) -> "Window":
        """Square window over a whole grid (the grid must be square)."""

        if height != width:
            raise WindowError(f"covering window needs a square grid, got {height}x{width}")
        half = (width - 1) / 2
        return cls.square((half, half), width / 2)

    def pixels(self, height: int, width: int) -> tuple[np.ndarray, np.ndarray]:
        """Row-major (ys, xs) of the window pixels that fall inside a `height`×`width` grid."""

        cx, cy = self.center
        x0, x1 = max(math.ceil(cx - self.extent), 0), min(math.floor(cx + self.extent), width - 1)
        y0, y1 = max(math.ceil(cy - self.extent), 0), min(math.floor(cy + self.extent), height - 1)
        if x0 > x1 or y0 > y1:
            raise WindowError(f"window at {self.center} selects no pixels of a {height}x{width} grid")

        ys, xs = np.mgrid[y0 : y1 + 1, x0 : x1 + 1]
        dx, dy = xs - cx, ys - cy
        if self.shape == WindowShape.SQUARE:
            inside = (np.abs(dx) < self.extent) & (np.abs(dy) < self.extent)
        else:
            inside = dx * dx + dy * dy <= self.extent * self.extent

        ys, xs = ys[inside], xs[inside]
        if ys.size == 0:
            raise WindowError(f"window at {self.center} selects no pixels of a {height}x{width} grid")
        return ys, xs

    def count(self, height: int, width: int) -> int:
        """Effective pixel count M after clipping."""

        return int(self.pixels(height, width)[0].size)

    def azimuths(self, ys: np.ndarray, xs: np.ndarray) -> np.ndarray:
        """Azimuth of each pixel about the window centre."""

        return np.arctan2(ys - self.center[1], xs - self.center[0])
