"""Bell-type analysis of a disk phase object.

A π-step filter at orientation θ_A is centred on the rim of the disk at azimuth θ_B; the raw correlation
C(θ_A, θ_B) = g2 (thermal background included) is binned along the rim into one curve per θ_A. From four such
curves the E ratios and the CHSH combination S are assembled, with θ* = θ + π/2:

    E = [C(θ_A, θ_B) + C(θ_A*, θ_B*) - C(θ_A*, θ_B) - C(θ_A, θ_B*)] / (sum of the same four)
    S = E(a, b) - E(a, b') + E(a', b) + E(a', b')

With 1 ≤ C ≤ 2 every |E| ≤ 1/3, so |S| ≤ 4/3 and thermal light never violates |S| ≤ 2.

θ_B is the rim azimuth, not the edge orientation. The edge there runs along the tangent θ_B + π/2, so a curve
peaks where θ_A = θ_B + π/2 and E(θ_A, θ_B) follows -cos 2(θ_A - θ_B). At the default settings a simulated disk
therefore gives S < 0; |S| is the figure to compare against edge-indexed results. `edge_deg` in the curve
tables carries the tangent for readers who want the edge-indexed view.
"""

import math
from collections.abc import Sequence

import numpy as np

from edge_ghost.core.correlator import analytic_g2, mc_correlate, overlap
from edge_ghost.core.masks import make_step
from edge_ghost.defaults import BELL_THETA_A, FILTER_SIZE, MC_REALIZATIONS
from edge_ghost.errors import BellError
from edge_ghost.executor import WorkerPool
from edge_ghost.lib.logger import logger
from edge_ghost.models import (
    BellCurve,
    BellResult,
    BellSample,
    BellSettings,
    Binning,
    CorrelationEstimate,
    CorrelationMode,
    ETerm,
    PhaseMask,
    Window,
)

ANGLE_TOLERANCE = 1e-9


def _rim_offset(
    object: PhaseMask,
    window: Window,
    filter_size: int,
    theta_b: float,
    radial_offset: float,
) -> tuple[int, int]:
    """Integer object offset that puts the window centre on the rim point, rounded to the nearest pixel."""

    if object.disk is None:
        raise BellError(f"rim correlation needs a disk object, got {object.label or 'an unlabeled mask'}")

    px, py = object.disk.rim_point(theta_b, radial_offset)
    offset = (math.floor(px - window.center[0] + 0.5), math.floor(py - window.center[1] + 0.5))

    ys, xs = window.pixels(filter_size, filter_size)
    if (
        xs.min() + offset[0] < 0
        or ys.min() + offset[1] < 0
        or xs.max() + offset[0] >= object.width
        or ys.max() + offset[1] >= object.height
    ):
        raise BellError(
            f"window at rim azimuth {math.degrees(theta_b):.2f}° (radial offset {radial_offset:g}) "
            f"is clipped by the {object.height}x{object.width} grid"
        )
    return offset


def _estimate(
    object: PhaseMask,
    filter: PhaseMask,
    window: Window,
    offset: tuple[int, int],
    mode: CorrelationMode,
    mc_realizations: int,
    seed: int,
    coherence_px: float,
    stream: tuple[int, ...],
) -> CorrelationEstimate:
    if mode == CorrelationMode.ANALYTIC:
        result = overlap(object, filter, offset, window)
        return analytic_g2(result.gamma, result.m_test, result.m_ref)

    return mc_correlate(
        object,
        filter,
        offset,
        window,
        mc_realizations,
        seed,
        coherence_px=coherence_px,
        stream=stream,
    )


def rim_correlation(
    object: PhaseMask,
    theta_a: float,
    theta_b: float,
    window: Window | None = None,
    mode: CorrelationMode = CorrelationMode.ANALYTIC,
    mc_realizations: int = MC_REALIZATIONS,
    seed: int = 0,
    coherence_px: float = 0.0,
    stream: tuple[int, ...] = (),
    radial_offset: float = 0.0,
    filter_size: int = FILTER_SIZE,
) -> CorrelationEstimate:
    """Raw correlation C = g2 of a π-step filter at θ_A centred on the rim point at azimuth θ_B.

    Example:
        >>> disk = make_disk(160, 60)
        >>> est = rim_correlation(disk, theta_a=0.0, theta_b=math.pi / 2)
        >>> 1.0 <= est.g2 <= 2.0
        True
    """
    window = window or Window.covering(filter_size, filter_size)
    offset = _rim_offset(object, window, filter_size, theta_b, radial_offset)
    return _estimate(
        object,
        make_step(filter_size, theta_a),
        window,
        offset,
        mode,
        mc_realizations,
        seed,
        coherence_px,
        stream,
    )


def _check_binning(object: PhaseMask, binning: Binning) -> None:
    if object.disk is None:
        raise BellError("binned rim curves need a disk object")
    if abs(binning.n_bins * binning.azimuthal_deg - 180.0) > 1e-9:
        raise BellError(f"azimuthal bin width {binning.azimuthal_deg:g}° does not divide 180°")
    if object.disk.radius * binning.bin_width < 1.0:
        raise BellError(
            f"adjacent {binning.azimuthal_deg:g}° bins are less than one pixel apart on a rim of radius "
            f"{object.disk.radius:g}"
        )


async def sweep_curves(
    object: PhaseMask,
    window: Window | None = None,
    theta_a_list: Sequence[float] = BELL_THETA_A,
    binning: Binning | None = None,
    mode: CorrelationMode = CorrelationMode.ANALYTIC,
    mc_realizations: int = MC_REALIZATIONS,
    seed: int = 0,
    coherence_px: float = 0.0,
    filter_size: int = FILTER_SIZE,
    pool: WorkerPool | None = None,
) -> list[BellCurve]:
    """Binned rim curves C(θ_B), one per filter orientation.

    This function:
    1. places each bin at azimuth (i + 0.5)·width over [0, π)
    2. averages C over window centres spread `radial_px` pixels across the rim and `azimuthal_samples`
       azimuths inside the bin
    3. in Monte Carlo mode gives every window centre its own realization stream (curve, bin, sample)

    Every rim window must fit on the grid; a clipped one raises BellError before any work starts.
    """
    binning = binning or Binning()
    window = window or Window.covering(filter_size, filter_size)
    pool = pool or WorkerPool()
    _check_binning(object, binning)

    centers = binning.bin_centers()
    placements = [
        (float(r), float(center + d))
        for center in centers
        for r in binning.radial_offsets()
        for d in binning.azimuthal_offsets()
    ]
    per_bin = binning.radial_px * binning.azimuthal_samples
    offsets = [_rim_offset(object, window, filter_size, theta, r) for r, theta in placements]
    filters = [make_step(filter_size, theta_a) for theta_a in theta_a_list]

    def measure_bin(item: tuple[int, int]) -> BellSample:
        a, i = item
        estimates = [
            _estimate(
                object,
                filters[a],
                window,
                offsets[i * per_bin + j],
                mode,
                mc_realizations,
                seed,
                coherence_px,
                (a, i, j),
            )
            for j in range(per_bin)
        ]
        c = float(np.mean([e.g2 for e in estimates]))
        stderr = math.sqrt(sum(e.stderr**2 for e in estimates)) / per_bin
        return BellSample(theta_b=float(centers[i]), c=c, stderr=stderr)

    items = [(a, i) for a in range(len(theta_a_list)) for i in range(centers.size)]
    with logger.span("bell.sweep", curves=len(theta_a_list), bins=int(centers.size), mode=mode.value, seed=seed):
        samples = await pool.map(measure_bin, items)

    return [
        BellCurve(
            theta_a=float(theta_a),
            samples=samples[a * centers.size : (a + 1) * centers.size],
            binning=binning,
            mode=mode,
        )
        for a, theta_a in enumerate(theta_a_list)
    ]


def _same_angle_mod_pi(a: float, b: float) -> bool:
    d = (a - b) % math.pi
    return min(d, math.pi - d) <= ANGLE_TOLERANCE


def _curve_for(curves: Sequence[BellCurve], theta_a: float) -> BellCurve:
    for curve in curves:
        if _same_angle_mod_pi(curve.theta_a, theta_a):
            return curve
    have = ", ".join(f"{math.degrees(c.theta_a):g}°" for c in curves)
    raise BellError(f"no curve for θ_A = {math.degrees(theta_a):g}° (mod 180°); have {have}")


def lookup(curves: Sequence[BellCurve], theta_a: float, theta_b: float) -> float:
    """C(θ_A, θ_B), interpolated linearly between bins and periodic in θ_B with period π."""

    curve = _curve_for(curves, theta_a)
    return float(np.interp(theta_b % math.pi, curve.theta_b, curve.c, period=math.pi))


def chsh_terms(
    curves: Sequence[BellCurve],
    theta_a: float,
    theta_b: float,
    subtract_background: bool = False,
) -> tuple[float, float]:
    """Numerator and denominator of the E ratio.

    Pairs are summed before they are combined, so swapping θ_A for θ_A* negates the numerator exactly.
    """
    a_star, b_star = theta_a + math.pi / 2, theta_b + math.pi / 2
    background = 1.0 if subtract_background else 0.0

    c_ab = lookup(curves, theta_a, theta_b) - background
    c_ab_star = lookup(curves, a_star, b_star) - background
    c_a_star_b = lookup(curves, a_star, theta_b) - background
    c_a_b_star = lookup(curves, theta_a, b_star) - background

    aligned = c_ab + c_ab_star
    crossed = c_a_star_b + c_a_b_star
    return aligned - crossed, aligned + crossed


def chsh_E(
    curves: Sequence[BellCurve],
    theta_a: float,
    theta_b: float,
    subtract_background: bool = False,
) -> float:
    """E(θ_A, θ_B) from the four curve lookups.

    Example:
        >>> curves = ideal_curves()  # C = 1 + cos²(θ_A - θ_B)
        >>> round(chsh_E(curves, 0.0, 0.0), 12)
        0.333333333333
    """
    numerator, denominator = chsh_terms(curves, theta_a, theta_b, subtract_background)
    if denominator == 0.0:
        raise BellError(f"E({theta_a:g}, {theta_b:g}) is undefined: the four correlations sum to zero")
    return numerator / denominator


def chsh_S(
    curves: Sequence[BellCurve],
    settings: BellSettings | None = None,
    subtract_background: bool = False,
) -> BellResult:
    """CHSH combination S = E(a, b) - E(a, b') + E(a', b) + E(a', b')."""

    settings = settings or BellSettings()
    pairs = [
        (settings.theta_a, settings.theta_b),
        (settings.theta_a, settings.theta_b_prime),
        (settings.theta_a_prime, settings.theta_b),
        (settings.theta_a_prime, settings.theta_b_prime),
    ]
    terms = [ETerm(theta_a=a, theta_b=b, e=chsh_E(curves, a, b, subtract_background)) for a, b in pairs]
    e = [t.e for t in terms]
    s = e[0] - e[1] + e[2] + e[3]

    if not subtract_background and abs(s) > 4.0 / 3.0 + 1e-12:
        logger.warning("Raw-correlation S exceeds the thermal bound", s=s)

    return BellResult(
        curves=list(curves),
        e_terms=terms,
        s=s,
        settings=settings,
        subtract_background=subtract_background,
    )
