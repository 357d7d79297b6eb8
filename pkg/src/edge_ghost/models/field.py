import numpy as np
from pydantic import Field, field_validator

from edge_ghost.models.base import BaseModel, readonly


class SpeckleField(BaseModel):
    """One pseudothermal speckle realization on the SLM plane.

    `values[y, x]` is a circular complex Gaussian amplitude with unit mean square modulus.
    """

    values: np.ndarray
    seed: int = Field(ge=0)
    realization_index: int = Field(ge=0)
    coherence_px: float = Field(default=0.0, ge=0)
    stream: tuple[int, ...] = ()

    @field_validator("values", mode="before")
    @classmethod
    def _freeze(cls, value: object) -> np.ndarray:
        return readonly(value, dtype=np.complex128)

    @property
    def height(self) -> int:
        return self.values.shape[0]

    @property
    def width(self) -> int:
        return self.values.shape[1]


class MomentCheck(BaseModel):
    """A sample moment of the speckle ensemble against its circular-Gaussian expectation."""

    name: str
    estimate: float
    expected: float
    stderr: float

    @property
    def z_score(self) -> float:
        if self.stderr == 0:
            return 0.0 if self.estimate == self.expected else float("inf")
        return (self.estimate - self.expected) / self.stderr

    def within(self, sigmas: float) -> bool:
        return abs(self.z_score) <= sigmas


class SpeckleMoments(BaseModel):
    """Result of the speckle statistics check."""

    samples: int
    realizations: int
    checks: list[MomentCheck]

    def check(self, name: str) -> MomentCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)
