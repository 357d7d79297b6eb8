"""Continuous-limit references computed by quadrature.

These functions integrate over the azimuth of an infinitely fine, infinitely large window, so they carry no
rasterization error. Tests compare the pixel-grid results against them.
"""

import math
from collections.abc import Callable, Iterable

import numpy as np
from scipy import integrate

from edge_ghost.models import DiskGeometry

TWO_PI = 2 * math.pi


def _breakpoints(angles: Iterable[float]) -> list[float]:
    """Discontinuities of a piecewise-constant integrand, folded into (0, 2π)."""

    points = {a % TWO_PI for a in angles}
    return sorted(p for p in points if 0.0 < p < TWO_PI)


def _azimuthal_mean(integrand: Callable[[float], complex], breaks: Iterable[float] = ()) -> complex:
    """(1/2π) ∫₀²π integrand(ϑ) dϑ, real and imaginary parts integrated separately."""

    points = _breakpoints(breaks) or None
    real, _ = integrate.quad(lambda t: integrand(t).real, 0.0, TWO_PI, points=points, limit=200)
    imag, _ = integrate.quad(lambda t: integrand(t).imag, 0.0, TWO_PI, points=points, limit=200)
    return complex(real, imag) / TWO_PI


def _step_sign(theta: float, orientation: float) -> float:
    """exp(iφ) of a π-step through the origin: -1 on the side where sin(ϑ - orientation) > 0."""

    return -1.0 if math.sin(theta - orientation) > 0 else 1.0


def ring_coefficient(phase_fn: Callable[[float], float], l: int, breaks: Iterable[float] = ()) -> complex:  # noqa: E741
    """Azimuthal harmonic c_l = (1/2π) ∫ exp(i·phase(ϑ) - i·l·ϑ) dϑ of a purely angular phase pattern.

    Example:
        >>> abs(ring_coefficient(lambda t: 2 * t, 2)) > 0.999
        True
    """
    return _azimuthal_mean(lambda t: np.exp(1j * (phase_fn(t) - l * t)), breaks)


def step_coefficient(l: int, orientation: float) -> complex:  # noqa: E741
    """c_l of a π-step whose edge passes through the window centre along `orientation`.

    Equals 2i/(πl)·(1 - (-1)^l)/2·exp(-ilα) in closed form; odd harmonics only.
    """
    return ring_coefficient(
        lambda t: math.pi if math.sin(t - orientation) > 0 else 0.0,
        l,
        breaks=(orientation, orientation + math.pi),
    )


def step_pair_overlap(edge_orientation: float, filter_orientation: float) -> float:
    """Normalized overlap Γ/M of two π-steps through the same point.

    The product of the two sign patterns is -1 on two opposite wedges, so |Γ|/M = |1 - 2d/π| with
    d = (edge - filter) mod π. The sign flips when the two steps face opposite ways.
    """
    value = _azimuthal_mean(
        lambda t: complex(_step_sign(t, edge_orientation) * _step_sign(t, filter_orientation)),
        breaks=(edge_orientation, edge_orientation + math.pi, filter_orientation, filter_orientation + math.pi),
    )
    return value.real


def ideal_rim_correlation(theta_a: float, theta_b: float) -> float:
    """Raw g2 of a π-step filter at orientation θ_A centred on a straight rim at azimuth θ_B.

    Depends on θ_A - tangent(θ_B) only.
    """
    overlap = step_pair_overlap(DiskGeometry.tangent(theta_b), theta_a)
    return 1.0 + min(overlap * overlap, 1.0)
