from pydantic import Field, model_validator

from edge_ghost.models.base import BaseModel
from edge_ghost.models.enums import CorrelationMode


class Overlap(BaseModel):
    """Overlap Γ of the two arms inside the window, with each arm's transmitting pixel count."""

    gamma: complex
    m_test: int = Field(ge=0)
    m_ref: int = Field(ge=0)


class CorrelationEstimate(BaseModel):
    """Normalized second-order correlation g2 = ⟨I_t I_r⟩ / (⟨I_t⟩⟨I_r⟩) and its fluctuation part."""

    g2: float
    delta_g2: float
    stderr: float = Field(default=0.0, ge=0)
    n_realizations: int = Field(default=0, ge=0)
    mode: CorrelationMode

    @model_validator(mode="after")
    def _check(self) -> "CorrelationEstimate":
        if self.delta_g2 != self.g2 - 1.0:
            raise ValueError("delta_g2 must equal g2 - 1")
        if self.mode == CorrelationMode.ANALYTIC:
            if not 1.0 <= self.g2 <= 2.0:
                raise ValueError(f"analytic g2={self.g2} outside [1, 2]")
            if self.stderr != 0.0 or self.n_realizations != 0:
                raise ValueError("analytic estimates carry no stderr or realizations")
        return self

    @classmethod
    def from_g2(
        cls,
        g2: float,
        mode: CorrelationMode,
        stderr: float = 0.0,
        n_realizations: int = 0,
    ) -> "CorrelationEstimate":
        return cls(g2=g2, delta_g2=g2 - 1.0, stderr=stderr, n_realizations=n_realizations, mode=mode)
