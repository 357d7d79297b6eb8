import math

import numpy as np
import pytest

from edge_ghost.core import sample_block, sample_field, speckle_moments
from edge_ghost.defaults import SIGMA_TOLERANCE, SPECKLE_CHECK_GRID, SPECKLE_CHECK_SAMPLES
from edge_ghost.errors import SpeckleError
from tests.helpers import assert_within_sigmas


def neighbour_correlation(fields: np.ndarray) -> float:
    """Pooled correlation of intensities one pixel apart along x."""

    intensity = np.abs(fields) ** 2
    return float(np.corrcoef(intensity[:, :, :-1].reshape(-1), intensity[:, :, 1:].reshape(-1))[0, 1])


@pytest.mark.smoke
def test_realization_is_reproducible() -> None:
    """The same (seed, k) always gives the same field."""

    first = sample_field((12, 9), seed=42, k=5)
    second = sample_field((12, 9), seed=42, k=5)

    assert np.array_equal(first.values, second.values)
    assert first.realization_index == 5
    assert (first.height, first.width) == (12, 9)


@pytest.mark.smoke
def test_seeds_and_indices_give_different_fields() -> None:
    """Different seeds or realization indices give different fields."""

    base = sample_field((8, 8), seed=1, k=0).values

    assert not np.array_equal(base, sample_field((8, 8), seed=2, k=0).values)
    assert not np.array_equal(base, sample_field((8, 8), seed=1, k=1).values)


@pytest.mark.smoke
def test_streams_are_independent() -> None:
    """Each stream path keys its own ensemble."""

    base = sample_block((6, 6), seed=3, start=0, count=4)
    first = sample_block((6, 6), seed=3, start=0, count=4, stream=(0,))
    second = sample_block((6, 6), seed=3, start=0, count=4, stream=(1,))
    nested = sample_block((6, 6), seed=3, start=0, count=4, stream=(0, 0))

    assert not np.array_equal(base, first)
    assert not np.array_equal(first, second)
    assert not np.array_equal(first, nested)


@pytest.mark.smoke
@pytest.mark.parametrize("dims", [(8, 8), (5, 7), (1, 3)])
def test_partitioning_does_not_change_realizations(dims: tuple[int, int]) -> None:
    """Realizations drawn in one block equal those drawn in pieces, bit for bit."""

    whole = sample_block(dims, seed=11, start=0, count=10, stream=(4,))
    pieces = np.concatenate(
        [
            sample_block(dims, seed=11, start=0, count=3, stream=(4,)),
            sample_block(dims, seed=11, start=3, count=1, stream=(4,)),
            sample_block(dims, seed=11, start=4, count=6, stream=(4,)),
        ]
    )

    assert np.array_equal(whole, pieces)
    assert np.array_equal(whole[7], sample_field(dims, seed=11, k=7, stream=(4,)).values)


@pytest.mark.smoke
def test_partitioning_with_finite_coherence() -> None:
    """Smoothing is applied per realization, so partitioning still does not matter."""

    whole = sample_block((16, 16), seed=5, start=0, count=6, coherence_px=1.5)
    pieces = np.concatenate(
        [
            sample_block((16, 16), seed=5, start=0, count=2, coherence_px=1.5),
            sample_block((16, 16), seed=5, start=2, count=4, coherence_px=1.5),
        ]
    )

    assert np.allclose(whole, pieces, rtol=0.0, atol=1e-14)


@pytest.mark.smoke
@pytest.mark.timeout(30)
def test_circular_gaussian_moments() -> None:
    """⟨|E|²⟩ = 1, ⟨E²⟩ = 0 and ⟨|E|⁴⟩ = 2 within five standard errors over 10⁵ samples."""

    moments = speckle_moments((SPECKLE_CHECK_GRID, SPECKLE_CHECK_GRID), seed=0, samples=SPECKLE_CHECK_SAMPLES)

    assert moments.samples == SPECKLE_CHECK_SAMPLES
    assert moments.realizations == math.ceil(SPECKLE_CHECK_SAMPLES / SPECKLE_CHECK_GRID**2)
    for name in ("mean_intensity", "pseudo_variance_re", "pseudo_variance_im", "fourth_moment", "contrast"):
        check = moments.check(name)
        assert_within_sigmas(check.estimate, check.expected, check.stderr, SIGMA_TOLERANCE, label=name)
    assert moments.check("realization_correlation").within(SIGMA_TOLERANCE)


@pytest.mark.smoke
def test_intensity_is_exponential() -> None:
    """P(|E|² > 1) = 1/e for unit-mean exponential intensity."""

    intensity = np.abs(sample_block((64, 64), seed=9, start=0, count=20)) ** 2
    fraction = float((intensity > 1.0).mean())
    stderr = math.sqrt(math.exp(-1) * (1 - math.exp(-1)) / intensity.size)

    assert_within_sigmas(fraction, math.exp(-1), stderr, label="exceedance")


@pytest.mark.smoke
def test_finite_coherence_correlates_neighbours() -> None:
    """A coherence length of a few pixels correlates neighbouring intensities and keeps unit mean."""

    coherent = sample_block((32, 32), seed=4, start=0, count=200, coherence_px=2.0)
    independent = sample_block((32, 32), seed=4, start=0, count=200)

    assert neighbour_correlation(coherent) > 0.7
    assert abs(neighbour_correlation(independent)) < 0.05
    assert float((np.abs(coherent) ** 2).mean()) == pytest.approx(1.0, abs=0.1)


@pytest.mark.smoke
@pytest.mark.parametrize(
    "kwargs, match",
    [
        ({"dims": (0, 4), "start": 0, "count": 1}, "dimensions"),
        ({"dims": (4, 4), "start": -1, "count": 1}, "realization range"),
        ({"dims": (4, 4), "start": 0, "count": 0}, "realization range"),
        ({"dims": (4, 4), "start": 0, "count": 1, "coherence_px": -1.0}, "coherence_px"),
    ],
    ids=["empty-dims", "negative-start", "empty-count", "negative-coherence"],
)
def test_invalid_requests_raise(kwargs: dict, match: str) -> None:
    """Invalid dimensions, ranges and coherence lengths raise SpeckleError."""

    with pytest.raises(SpeckleError, match=match):
        sample_block(seed=0, **kwargs)


@pytest.mark.smoke
def test_moment_check_needs_two_samples() -> None:
    """The moment check rejects fewer than two samples."""

    with pytest.raises(SpeckleError, match="at least 2"):
        speckle_moments((8, 8), seed=0, samples=1)
