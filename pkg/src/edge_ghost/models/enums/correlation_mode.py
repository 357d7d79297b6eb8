from enum import Enum


class CorrelationMode(str, Enum):
    """How a second-order correlation is evaluated."""

    ANALYTIC = "analytic"
    MONTECARLO = "montecarlo"
