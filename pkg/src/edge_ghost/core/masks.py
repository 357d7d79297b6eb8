"""Phase-mask generators and their azimuthal (OAM) decomposition.

All generators sample at pixel centres: pixel (x, y) has coordinates (x, y), and the default centre of an
n×n mask is ((n - 1) / 2, (n - 1) / 2). Step masks are not anti-aliased, so a diagonal step is a staircase.
"""

import math
from collections.abc import Sequence
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from edge_ghost.errors import MaskError
from edge_ghost.models import AzimuthalSpectrum, DiskGeometry, PhaseMask, Window
from edge_ghost.models.mask import wrap_phase

Center = tuple[float, float]


def _grid(n: int, center: Center | None) -> tuple[np.ndarray, np.ndarray]:
    """Pixel offsets (dx, dy) from the centre of an n×n grid."""

    if n < 1:
        raise MaskError(f"mask size must be at least 1, got {n}")

    cx, cy = center if center is not None else ((n - 1) / 2, (n - 1) / 2)
    ys, xs = np.mgrid[0:n, 0:n]
    return xs - cx, ys - cy


def make_uniform(n: int, phase: float = 0.0) -> PhaseMask:
    """Constant-phase mask with full support."""

    if n < 1:
        raise MaskError(f"mask size must be at least 1, got {n}")

    return PhaseMask(
        phase=wrap_phase(np.full((n, n), phase, dtype=np.float64)),
        support=np.ones((n, n), dtype=np.uint8),
        label=f"uniform({phase:g})",
    )


def make_spiral(n: int, l: int, center: Center | None = None) -> PhaseMask:  # noqa: E741
    """Spiral phase plate exp(i·l·ϑ) about `center`.

    Example:
        >>> mask = make_spiral(64, 1)
        >>> azimuthal_spectrum(mask, Window.disk((31.5, 31.5), 31), 3).power_at(1) > 0.99
        True
    """
    dx, dy = _grid(n, center)
    return PhaseMask(
        phase=wrap_phase(l * np.arctan2(dy, dx)),
        support=np.ones((n, n), dtype=np.uint8),
        label=f"spiral(l={l})",
    )


def make_step(n: int, orientation: float, center: Center | None = None) -> PhaseMask:
    """Binary π-step whose edge runs through `center` along direction `orientation`.

    Pixels strictly on the left of the edge direction (positive signed distance) get phase π; the rest,
    including pixels exactly on the edge, get 0.
    """
    dx, dy = _grid(n, center)
    signed = -dx * math.sin(orientation) + dy * math.cos(orientation)
    return PhaseMask(
        phase=np.where(signed > 0, math.pi, 0.0),
        support=np.ones((n, n), dtype=np.uint8),
        label=f"step({orientation:g})",
    )


def make_disk(n: int, radius: float, center: Center | None = None) -> PhaseMask:
    """Circular phase object: π inside the disk (rim included), 0 outside."""

    if not 0 < radius <= n / 2:
        raise MaskError(f"disk radius must lie in (0, {n / 2:g}], got {radius:g}")

    dx, dy = _grid(n, center)
    cx, cy = center if center is not None else ((n - 1) / 2, (n - 1) / 2)
    return PhaseMask(
        phase=np.where(dx * dx + dy * dy <= radius * radius, math.pi, 0.0),
        support=np.ones((n, n), dtype=np.uint8),
        label=f"disk(r={radius:g})",
        disk=DiskGeometry(center=(float(cx), float(cy)), radius=float(radius)),
    )


def from_bitmap(rows: Sequence[Sequence[int]] | np.ndarray, label: str = "bitmap") -> PhaseMask:
    """Binary raster to phase object: nonzero cells become π, zero cells 0."""

    if not isinstance(rows, np.ndarray):
        widths = {len(row) for row in rows}
        if len(widths) > 1:
            raise MaskError(f"raster rows have different lengths: {sorted(widths)}")

    raster = np.asarray(rows)
    if raster.ndim != 2 or raster.size == 0:
        raise MaskError(f"raster must be a nonempty rectangle, got shape {raster.shape}")

    return PhaseMask(
        phase=np.where(raster != 0, math.pi, 0.0),
        support=np.ones(raster.shape, dtype=np.uint8),
        label=label,
    )


def load_bitmap(path: Path) -> PhaseMask:
    """Read a plain (P1) or raw (P4) portable bitmap; black cells (bit 1) become π."""

    try:
        with Image.open(path) as img:
            if img.format != "PPM" or img.mode != "1":
                raise MaskError(f"{path}: not a portable bitmap (format={img.format}, mode={img.mode})")
            white = np.asarray(img, dtype=bool)
    except (OSError, UnidentifiedImageError) as e:
        raise MaskError(f"{path}: cannot read bitmap: {e}") from e

    return from_bitmap((~white).astype(np.uint8), label=Path(path).name)


def azimuthal_spectrum(mask: PhaseMask, window: Window, l_max: int) -> AzimuthalSpectrum:
    """Decompose the mask inside `window` into azimuthal harmonics about the window centre.

    c_l = (1/M) Σ_x t(x)·exp(-i·l·ϑ(x)), with t the mask transmission and M the clipped window size.
    Every window pixel has the same weight; there is no 1/r factor.
    """
    if l_max < 1:
        raise MaskError(f"l_max must be at least 1, got {l_max}")

    ys, xs = window.pixels(mask.height, mask.width)
    theta = window.azimuths(ys, xs)
    t = mask.transmission()[ys, xs]
    ls = np.arange(-l_max, l_max + 1)

    coefficients = (t[None, :] * np.exp(-1j * ls[:, None] * theta[None, :])).sum(axis=1) / ys.size
    return AzimuthalSpectrum(l_max=l_max, coefficients=coefficients, window=window, pixel_count=int(ys.size))
