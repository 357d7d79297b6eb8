import math

import numpy as np
from pydantic import Field, model_validator

from edge_ghost.models.base import BaseModel
from edge_ghost.models.enums import CorrelationMode


class Binning(BaseModel):
    """Area unit averaged into one curve point: radial pixels by azimuthal degrees."""

    radial_px: int = Field(default=8, ge=1)
    azimuthal_deg: float = Field(default=3.0, gt=0)
    azimuthal_samples: int = Field(default=3, ge=1)

    @property
    def n_bins(self) -> int:
        return round(180.0 / self.azimuthal_deg)

    @property
    def bin_width(self) -> float:
        return math.radians(self.azimuthal_deg)

    def bin_centers(self) -> np.ndarray:
        return (np.arange(self.n_bins) + 0.5) * self.bin_width

    def radial_offsets(self) -> np.ndarray:
        """Radial displacements of the window centres, symmetric about the rim."""

        return np.arange(self.radial_px) - (self.radial_px - 1) / 2

    def azimuthal_offsets(self) -> np.ndarray:
        """Azimuthal displacements inside one bin, evenly spread across its width."""

        n = self.azimuthal_samples
        return ((np.arange(n) + 0.5) / n - 0.5) * self.bin_width


class BellSample(BaseModel):
    theta_b: float
    c: float
    stderr: float = 0.0


class BellCurve(BaseModel):
    """Binned correlation C(θ_A, θ_B) along the rim for one filter orientation θ_A."""

    theta_a: float
    samples: list[BellSample]
    binning: Binning = Binning()
    mode: CorrelationMode = CorrelationMode.ANALYTIC

    @model_validator(mode="after")
    def _check(self) -> "BellCurve":
        if not self.samples:
            raise ValueError("a curve needs at least one sample")
        thetas = np.array([s.theta_b for s in self.samples])
        if thetas[0] < 0 or thetas[-1] >= math.pi or np.any(np.diff(thetas) <= 0):
            raise ValueError("theta_B values must increase strictly within [0, π)")
        if self.mode == CorrelationMode.ANALYTIC and any(not 1.0 <= s.c <= 2.0 for s in self.samples):
            raise ValueError("analytic C values lie in [1, 2]")
        return self

    @property
    def theta_b(self) -> np.ndarray:
        return np.array([s.theta_b for s in self.samples])

    @property
    def c(self) -> np.ndarray:
        return np.array([s.c for s in self.samples])

    @property
    def stderr(self) -> np.ndarray:
        return np.array([s.stderr for s in self.samples])


class BellSettings(BaseModel):
    """The four angles of the CHSH combination."""

    theta_a: float = 0.0
    theta_b: float = math.pi / 8
    theta_a_prime: float = math.pi / 4
    theta_b_prime: float = 3 * math.pi / 8


class ETerm(BaseModel):
    theta_a: float
    theta_b: float
    e: float


class BellResult(BaseModel):
    """CHSH quantity S assembled from four E values."""

    curves: list[BellCurve]
    e_terms: list[ETerm]
    s: float
    settings: BellSettings
    subtract_background: bool = False

    @model_validator(mode="after")
    def _check(self) -> "BellResult":
        if len(self.e_terms) != 4:
            raise ValueError("S combines exactly four E terms")
        if not self.subtract_background and any(abs(t.e) > 1.0 for t in self.e_terms):
            raise ValueError("every E lies in [-1, 1]")
        e = [t.e for t in self.e_terms]
        if self.s != e[0] - e[1] + e[2] + e[3]:
            raise ValueError("S must equal E(a,b) - E(a,b') + E(a',b) + E(a',b')")
        return self

    def e(self, theta_a: float, theta_b: float) -> float:
        for term in self.e_terms:
            if math.isclose(term.theta_a, theta_a, abs_tol=1e-12) and math.isclose(term.theta_b, theta_b, abs_tol=1e-12):
                return term.e
        raise KeyError((theta_a, theta_b))

    @property
    def max_abs_e(self) -> float:
        return max(abs(t.e) for t in self.e_terms)

    @property
    def classical(self) -> bool:
        return abs(self.s) <= 2.0
