import numpy as np
from pydantic import field_validator

from edge_ghost.models.base import BaseModel, readonly
from edge_ghost.models.window import Window


class AzimuthalSpectrum(BaseModel):
    """Azimuthal (OAM) coefficients c_l of a mask inside a window, for l in [-l_max, l_max]."""

    l_max: int
    coefficients: np.ndarray
    window: Window
    pixel_count: int

    @field_validator("coefficients", mode="before")
    @classmethod
    def _freeze(cls, value: object) -> np.ndarray:
        return readonly(value, dtype=np.complex128)

    @property
    def ls(self) -> np.ndarray:
        return np.arange(-self.l_max, self.l_max + 1)

    @property
    def center(self) -> tuple[float, float]:
        return self.window.center

    @property
    def power(self) -> np.ndarray:
        return np.abs(self.coefficients) ** 2

    def coefficient(self, l: int) -> complex:  # noqa: E741
        if abs(l) > self.l_max:
            raise KeyError(f"l={l} outside [-{self.l_max}, {self.l_max}]")
        return complex(self.coefficients[l + self.l_max])

    def power_at(self, l: int) -> float:  # noqa: E741
        return abs(self.coefficient(l)) ** 2

    @property
    def parseval_excess(self) -> float:
        """Σ|c_l|² - 1; at most the discretization tolerance for large windows."""

        return float(self.power.sum() - 1.0)
