"""Edge-enhanced ghost image: step the object across the filter window and record delta_g2 per offset."""

import numpy as np

from edge_ghost.core.correlator import analytic_g2, mc_correlate, overlap_batch
from edge_ghost.defaults import SIGMA_TOLERANCE
from edge_ghost.errors import ScanError
from edge_ghost.executor import WorkerPool
from edge_ghost.lib.logger import logger
from edge_ghost.models import CorrelationMode, OffsetGrid, PhaseMask, ScanConfig, ScanImage, Window


def offset_grid_for(object: PhaseMask, filter: PhaseMask, window: Window, stride: int = 1) -> OffsetGrid:
    """Every offset at which the whole window lands on the object grid.

    Example:
        >>> grid = offset_grid_for(make_disk(128, 40), make_uniform(10), Window.square((4.5, 4.5), 5))
        >>> grid.shape
        (119, 119)
    """
    ys, xs = window.pixels(filter.height, filter.width)
    x_stop = object.width - 1 - int(xs.max())
    y_stop = object.height - 1 - int(ys.max())
    x_start, y_start = -int(xs.min()), -int(ys.min())
    if x_stop < x_start or y_stop < y_start:
        raise ScanError(
            f"a {filter.height}x{filter.width} window does not fit on a {object.height}x{object.width} object"
        )

    return OffsetGrid(x_start=x_start, x_stop=x_stop, y_start=y_start, y_stop=y_stop, stride=stride)


def _analytic_row(cfg: ScanConfig, y: int) -> tuple[np.ndarray, np.ndarray]:
    xs = cfg.offsets.x_values
    offsets = np.column_stack([xs, np.full(xs.size, y)])
    gamma, m_test, m_ref = overlap_batch(cfg.object, cfg.filter, offsets, cfg.window)
    values = np.array([analytic_g2(complex(g), int(m), m_ref).delta_g2 for g, m in zip(gamma, m_test, strict=True)])
    return values, np.zeros(xs.size)


def _montecarlo_offset(cfg: ScanConfig, index: int, offset: tuple[int, int]) -> tuple[float, float]:
    estimate = mc_correlate(
        cfg.object,
        cfg.filter,
        offset,
        cfg.window,
        cfg.mc_realizations,
        cfg.seed,
        coherence_px=cfg.coherence_px,
        stream=(index,),
    )
    return estimate.delta_g2, estimate.stderr


async def run_scan(cfg: ScanConfig, pool: WorkerPool | None = None) -> ScanImage:
    """Correlate object and filter at every offset of the grid.

    This function:
    1. in analytic mode, evaluates one row of offsets per work item with the closed-form g2
    2. in Monte Carlo mode, evaluates one offset per work item on its own realization stream, keyed by the
       row-major offset index
    3. assembles the delta_g2 values (and their standard errors) into an image indexed [y, x]

    The image never depends on the pool size.
    """
    pool = pool or WorkerPool()
    ny, nx = cfg.offsets.shape

    with logger.span("scan.run", mode=cfg.mode.value, offsets=ny * nx, seed=cfg.seed):
        if cfg.mode == CorrelationMode.ANALYTIC:
            rows = await pool.map(lambda y: _analytic_row(cfg, int(y)), list(cfg.offsets.y_values))
            values = np.vstack([r[0] for r in rows])
            stderr = np.vstack([r[1] for r in rows])
        else:
            offsets = cfg.offsets.offsets()
            cells = await pool.map(lambda item: _montecarlo_offset(cfg, *item), list(enumerate(offsets)))
            values = np.array([c[0] for c in cells]).reshape(ny, nx)
            stderr = np.array([c[1] for c in cells]).reshape(ny, nx)

    logger.info("Scan finished", mode=cfg.mode.value, min=float(values.min()), max=float(values.max()))
    image = ScanImage(values=values, stderr=stderr, config=cfg)

    if cfg.mode == CorrelationMode.MONTECARLO and (below := image.below_noise_floor(SIGMA_TOLERANCE)):
        logger.warning("Monte Carlo pixels below the noise floor", pixels=below, sigmas=SIGMA_TOLERANCE)
    return image


def normalize_image(img: ScanImage) -> ScanImage:
    """Map values affinely onto [0, 1]; a constant image becomes all zeros.

    Standard errors are scaled by the same factor.
    """
    low, high = float(img.values.min()), float(img.values.max())
    span = high - low
    if span == 0.0:
        return ScanImage(values=np.zeros(img.shape), stderr=img.stderr, config=img.config, normalized=True)

    return ScanImage(
        values=(img.values - low) / span,
        stderr=img.stderr / span,
        config=img.config,
        normalized=True,
    )
