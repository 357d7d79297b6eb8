import numpy as np
import pytest
from pydantic import ValidationError

import edge_ghost.core.scan as scan_module
from edge_ghost.core import make_disk, make_spiral, make_step, make_uniform, normalize_image, offset_grid_for, run_scan
from edge_ghost.errors import ScanError
from edge_ghost.executor import WorkerPool
from edge_ghost.models import CorrelationEstimate, CorrelationMode, OffsetGrid, PhaseMask, ScanConfig, ScanImage, Window
from tests.helpers import assert_fraction_within_sigmas


def scan_config(
    obj: PhaseMask,
    fil: PhaseMask,
    window: Window,
    offsets: OffsetGrid | None = None,
    **kwargs,
) -> ScanConfig:
    return ScanConfig(
        object=obj,
        filter=fil,
        window=window,
        offsets=offsets or offset_grid_for(obj, fil, window),
        **kwargs,
    )


def tiny_image(
    values: list[list[float]],
    stderr: list[list[float]] | None = None,
    mode: CorrelationMode = CorrelationMode.ANALYTIC,
) -> ScanImage:
    rows, cols = len(values), len(values[0])
    cfg = scan_config(
        make_uniform(12),
        make_uniform(10),
        Window.covering(10, 10),
        OffsetGrid(x_start=0, x_stop=cols - 1, y_start=0, y_stop=rows - 1),
        mode=mode,
    )
    return ScanImage(values=values, stderr=stderr or np.zeros((rows, cols)), config=cfg)


@pytest.mark.smoke
def test_default_offset_grid_keeps_window_on_object(window: Window, scan_disk: PhaseMask) -> None:
    """Default offsets run from 0 to W - n on each axis."""

    grid = offset_grid_for(scan_disk, make_uniform(10), window, stride=2)

    assert (grid.x_start, grid.x_stop, grid.y_start, grid.y_stop) == (0, 118, 0, 118)
    assert grid.shape == (60, 60)
    assert grid.offsets()[:2] == [(0, 0), (2, 0)]


@pytest.mark.smoke
def test_window_larger_than_object_is_rejected(window: Window) -> None:
    """A window that never fits on the object raises ScanError."""

    with pytest.raises(ScanError, match="does not fit"):
        offset_grid_for(make_uniform(8), make_uniform(10), window)


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_flat_object_with_flat_filter(window: Window, flat_filter: PhaseMask) -> None:
    """A flat object and filter overlap perfectly at every offset."""

    image = await run_scan(scan_config(make_uniform(30), flat_filter, window))

    assert image.shape == (21, 21)
    assert np.allclose(image.values, 1.0)
    assert np.all(image.stderr == 0.0)


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_flat_object_with_spiral_filter(window: Window) -> None:
    """A charge-1 spiral filter sees nothing in a flat object."""

    image = await run_scan(scan_config(make_uniform(30), make_spiral(10, 1), window))

    assert image.values.max() <= 0.01


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_disk_with_flat_filter_darkens_the_rim(window: Window, flat_filter: PhaseMask, scan_disk: PhaseMask) -> None:
    """With a flat filter the disk reads 1 inside and outside and drops at the rim."""

    image = await run_scan(scan_config(scan_disk, flat_filter, window))

    assert image.value_at((59, 59)) == pytest.approx(1.0, abs=0.01)
    assert image.value_at((0, 0)) == pytest.approx(1.0, abs=0.01)
    assert image.value_at((99, 59)) <= 0.1
    assert image.values.min() <= 0.1
    assert image.value_at((99, 59)) < image.value_at((59, 59))


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_disk_with_spiral_filter_brightens_the_rim(window: Window, scan_disk: PhaseMask) -> None:
    """With a charge-1 spiral filter only the rim lights up."""

    image = await run_scan(scan_config(scan_disk, make_spiral(10, 1), window))
    peak = float(image.values.max())

    assert peak >= 0.3
    assert image.value_at((59, 59)) <= 0.01 * peak
    assert image.value_at((0, 0)) <= 0.01 * peak
    assert image.value_at((99, 59)) >= 0.3


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_step_filter_prefers_parallel_rim(window: Window, scan_disk: PhaseMask) -> None:
    """A horizontal step filter responds where the rim runs horizontally, not where it runs vertically."""

    image = await run_scan(scan_config(scan_disk, make_step(10, 0.0), window))

    horizontal = min(image.value_at((59, 99)), image.value_at((59, 19)))
    vertical = max(image.value_at((99, 59)), image.value_at((19, 59)))

    assert horizontal == pytest.approx(1.0)
    assert horizontal >= 2 * vertical


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_shifting_object_shifts_image(window: Window) -> None:
    """Moving the object by d moves the image by d."""

    fil = make_step(10, 0.7)
    base = make_disk(128, 30, (60.0, 62.0))
    moved = make_disk(128, 30, (63.0, 64.0))

    grid = OffsetGrid(x_start=10, x_stop=100, y_start=10, y_stop=100, stride=3)
    shifted = OffsetGrid(x_start=13, x_stop=103, y_start=12, y_stop=102, stride=3)

    before = await run_scan(scan_config(base, fil, window, grid))
    after = await run_scan(scan_config(moved, fil, window, shifted))

    assert np.allclose(before.values, after.values, atol=1e-12)


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_flipping_object_phase_leaves_image(window: Window, scan_disk: PhaseMask) -> None:
    """Adding π to every object phase leaves the image unchanged."""

    fil = make_spiral(10, 1)
    grid = OffsetGrid(x_start=0, x_stop=118, y_start=50, y_stop=68)

    plain = await run_scan(scan_config(scan_disk, fil, window, grid))
    flipped = await run_scan(scan_config(scan_disk.with_phase_offset(np.pi), fil, window, grid))

    assert np.allclose(plain.values, flipped.values, atol=1e-12)


@pytest.mark.smoke
@pytest.mark.asyncio
@pytest.mark.parametrize("axis", ["x", "y"])
async def test_mirroring_both_masks_mirrors_image(axis: str, window: Window) -> None:
    """Mirroring object and filter about the same axis mirrors the image."""

    obj, fil = make_disk(64, 20, (26.0, 35.0)), make_step(10, 0.3)

    image = await run_scan(scan_config(obj, fil, window))
    mirrored = await run_scan(scan_config(obj.mirrored(axis), fil.mirrored(axis), window))

    flip = np.fliplr if axis == "x" else np.flipud
    assert np.allclose(mirrored.values, flip(image.values), atol=1e-12)


@pytest.mark.feature
@pytest.mark.asyncio
@pytest.mark.timeout(180)
async def test_monte_carlo_image_matches_analytic(window: Window, scan_disk: PhaseMask) -> None:
    """Monte Carlo pixels agree with the analytic image within five standard errors on a coarse 8×8 grid."""

    fil = make_step(10, 0.0)
    grid = OffsetGrid(x_start=55, x_stop=97, y_start=55, y_stop=97, stride=6)

    analytic = await run_scan(scan_config(scan_disk, fil, window, grid))
    sampled = await run_scan(
        scan_config(scan_disk, fil, window, grid, mode=CorrelationMode.MONTECARLO, mc_realizations=4_000, seed=3)
    )

    assert sampled.shape == (8, 8)
    assert np.all(sampled.stderr > 0)
    z_scores = ((sampled.values - analytic.values) / sampled.stderr).reshape(-1).tolist()
    assert_fraction_within_sigmas(z_scores, 61 / 64)


@pytest.mark.scenario
@pytest.mark.asyncio
@pytest.mark.timeout(600)
async def test_full_monte_carlo_scan_matches_analytic(window: Window, scan_disk: PhaseMask) -> None:
    """On a 32×32 offset patch across the rim at 10⁴ realizations per offset, 95% of pixels agree within 5σ."""

    fil = make_step(10, 0.0)
    grid = OffsetGrid(x_start=44, x_stop=75, y_start=84, y_stop=115)

    analytic = await run_scan(scan_config(scan_disk, fil, window, grid))
    sampled = await run_scan(
        scan_config(scan_disk, fil, window, grid, mode=CorrelationMode.MONTECARLO, mc_realizations=10_000, seed=17),
        WorkerPool(8),
    )

    assert sampled.shape == (32, 32)
    assert analytic.values.max() > 0.5
    z_scores = ((sampled.values - analytic.values) / sampled.stderr).reshape(-1).tolist()
    assert_fraction_within_sigmas(z_scores, 0.95)


@pytest.mark.smoke
@pytest.mark.asyncio
@pytest.mark.parametrize("mode", [CorrelationMode.ANALYTIC, CorrelationMode.MONTECARLO])
async def test_worker_count_does_not_change_image(mode: CorrelationMode, window: Window) -> None:
    """One worker and four workers produce identical images."""

    obj = make_disk(40, 12)
    cfg = scan_config(obj, make_spiral(10, 1), window, mode=mode, mc_realizations=300, seed=5)
    if mode == CorrelationMode.MONTECARLO:
        cfg = scan_config(
            obj,
            make_spiral(10, 1),
            window,
            OffsetGrid(x_start=5, x_stop=25, y_start=5, y_stop=25, stride=5),
            mode=mode,
            mc_realizations=300,
            seed=5,
        )

    serial = await run_scan(cfg, WorkerPool(workers=1))
    parallel = await run_scan(cfg, WorkerPool(workers=4))

    assert np.array_equal(serial.values, parallel.values)
    assert np.array_equal(serial.stderr, parallel.stderr)


@pytest.mark.smoke
def test_normalize_two_valued_image() -> None:
    """Values {1, 3} map to {0, 1}; standard errors scale by the same factor."""

    image = normalize_image(tiny_image([[1.0, 3.0], [3.0, 1.0]], [[0.2, 0.4], [0.0, 0.0]]))

    assert np.array_equal(image.values, [[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(image.stderr, [[0.1, 0.2], [0.0, 0.0]])
    assert image.normalized


@pytest.mark.smoke
def test_normalize_constant_image() -> None:
    """A constant image normalizes to zeros."""

    image = normalize_image(tiny_image([[0.7, 0.7, 0.7]]))

    assert np.array_equal(image.values, [[0.0, 0.0, 0.0]])


@pytest.mark.smoke
def test_normalize_keeps_argmax() -> None:
    """Normalization is monotone, so the brightest offset stays put."""

    values = [[0.3, 0.9, 0.1], [0.5, 0.2, 0.8]]
    image = tiny_image(values)

    assert np.argmax(normalize_image(image).values) == np.argmax(image.values)


@pytest.mark.smoke
def test_scan_config_validation(window: Window, flat_filter: PhaseMask) -> None:
    """Empty ranges, zero stride and single-realization Monte Carlo are rejected."""

    with pytest.raises(ValidationError, match="nonempty"):
        OffsetGrid(x_start=5, x_stop=4, y_start=0, y_stop=0)
    with pytest.raises(ValidationError):
        OffsetGrid(x_start=0, x_stop=4, y_start=0, y_stop=4, stride=0)
    with pytest.raises(ValidationError, match="mc_realizations"):
        scan_config(make_uniform(20), flat_filter, window, mode=CorrelationMode.MONTECARLO, mc_realizations=1)


@pytest.mark.smoke
def test_noise_floor_counts_pixels_far_below_zero() -> None:
    """Only Monte Carlo pixels more than the given number of standard errors below zero count."""

    image = tiny_image(
        [[-0.6, -0.4, 0.3]],
        [[0.1, 0.1, 0.1]],
        mode=CorrelationMode.MONTECARLO,
    )

    assert image.below_noise_floor(5.0) == 1
    assert image.below_noise_floor(3.0) == 2


@pytest.mark.smoke
@pytest.mark.asyncio
async def test_monte_carlo_scan_warns_below_noise_floor(
    window: Window, flat_filter: PhaseMask, monkeypatch: pytest.MonkeyPatch
) -> None:
    """A Monte Carlo image with pixels under -5σ is returned with a warning."""

    def anticorrelated(*args, **kwargs) -> CorrelationEstimate:
        return CorrelationEstimate.from_g2(0.5, CorrelationMode.MONTECARLO, stderr=0.01, n_realizations=10)

    warnings: list[tuple[str, dict]] = []
    monkeypatch.setattr(scan_module, "mc_correlate", anticorrelated)
    monkeypatch.setattr(scan_module.logger, "warning", lambda message, **kw: warnings.append((message, kw)))

    grid = OffsetGrid(x_start=0, x_stop=1, y_start=0, y_stop=0)
    image = await run_scan(
        scan_config(make_uniform(12), flat_filter, window, grid, mode=CorrelationMode.MONTECARLO, mc_realizations=10)
    )

    assert image.below_noise_floor(5.0) == 2
    assert [message for message, _ in warnings] == ["Monte Carlo pixels below the noise floor"]
    assert warnings[0][1]["pixels"] == 2
