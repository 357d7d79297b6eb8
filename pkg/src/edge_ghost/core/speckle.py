"""Reproducible pseudothermal speckle.

Randomness contract (fixed across versions):

1. A realization stream is keyed by `SeedSequence(entropy=seed, spawn_key=stream).generate_state(2, uint64)`,
   a 128-bit Philox4x64-10 key. `stream` is an integer path such as `(offset_index,)`; the empty path is the
   base stream of a seed.
2. Realization k of an H×W field consumes ceil(2·H·W / 4) Philox counter blocks starting at counter
   k·ceil(2·H·W / 4). Pixel p (row-major) takes the doubles 2p and 2p + 1 of that range as (u1, u2).
3. Box–Muller: E = sqrt(-ln(1 - u1)) · exp(2πi·u2), so |E|² is unit-mean exponential and arg E is uniform.

Nothing depends on how realizations are batched or which thread produced them.
"""

import math

import numpy as np
from scipy.ndimage import gaussian_filter

from edge_ghost.defaults import MC_BATCH
from edge_ghost.errors import SpeckleError
from edge_ghost.models import MomentCheck, SpeckleField, SpeckleMoments

PHILOX_WORDS = 4

Dims = tuple[int, int]


def _stream_key(seed: int, stream: tuple[int, ...]) -> np.ndarray:
    return np.random.SeedSequence(entropy=seed, spawn_key=stream).generate_state(2, dtype=np.uint64)


def _blocks_per_realization(pixels: int) -> int:
    return -(-2 * pixels // PHILOX_WORDS)


def _check_dims(dims: Dims) -> None:
    if len(dims) != 2 or dims[0] < 1 or dims[1] < 1:
        raise SpeckleError(f"field dimensions must be positive, got {dims}")


def _smooth(fields: np.ndarray, coherence_px: float) -> np.ndarray:
    """Convolve each realization with a normalized Gaussian and restore unit mean intensity.

    The filter wraps around the grid, so every pixel sees the full kernel and the rescaling is exact.
    """
    height, width = fields.shape[1:]
    delta = np.zeros((height, width))
    delta[0, 0] = 1.0
    kernel = gaussian_filter(delta, coherence_px, mode="wrap")
    gain = 1.0 / math.sqrt(float((kernel**2).sum()))

    sigma = (0.0, coherence_px, coherence_px)
    real = gaussian_filter(fields.real, sigma, mode="wrap")
    imag = gaussian_filter(fields.imag, sigma, mode="wrap")
    return (real + 1j * imag) * gain


def sample_block(
    dims: Dims,
    seed: int,
    start: int,
    count: int,
    coherence_px: float = 0.0,
    stream: tuple[int, ...] = (),
) -> np.ndarray:
    """Realizations start .. start + count - 1 as a (count, H, W) complex array.

    Example:
        >>> block = sample_block((8, 8), seed=7, start=0, count=3)
        >>> np.array_equal(block[2], sample_block((8, 8), seed=7, start=2, count=1)[0])
        True
    """
    _check_dims(dims)
    if start < 0 or count < 1:
        raise SpeckleError(f"realization range must start at >= 0 and be nonempty, got start={start} count={count}")
    if coherence_px < 0:
        raise SpeckleError(f"coherence_px must be non-negative, got {coherence_px}")

    height, width = dims
    pixels = height * width
    blocks = _blocks_per_realization(pixels)

    bit_generator = np.random.Philox(key=_stream_key(seed, stream), counter=int(start) * blocks)
    draws = np.random.Generator(bit_generator).random(count * blocks * PHILOX_WORDS)
    draws = draws.reshape(count, blocks * PHILOX_WORDS)[:, : 2 * pixels]

    u1 = 1.0 - draws[:, 0::2]
    u2 = draws[:, 1::2]
    fields = (np.sqrt(-np.log(u1)) * np.exp(2j * np.pi * u2)).reshape(count, height, width)

    if coherence_px > 0:
        fields = _smooth(fields, coherence_px)
    return fields


def sample_field(
    dims: Dims,
    seed: int,
    k: int,
    coherence_px: float = 0.0,
    stream: tuple[int, ...] = (),
) -> SpeckleField:
    """Realization `k` of the speckle ensemble identified by (seed, stream)."""

    values = sample_block(dims, seed, k, 1, coherence_px=coherence_px, stream=stream)[0]
    return SpeckleField(values=values, seed=seed, realization_index=k, coherence_px=coherence_px, stream=stream)


def _contrast_check(intensity: np.ndarray) -> MomentCheck:
    """Intensity contrast std/mean with a delta-method standard error."""

    n = intensity.size
    m1 = float(intensity.mean())
    m2 = float((intensity**2).mean())
    contrast = math.sqrt(max(m2 / (m1 * m1) - 1.0, 0.0))

    if contrast == 0.0:
        return MomentCheck(name="contrast", estimate=0.0, expected=1.0, stderr=0.0)

    gradient = np.array([-m2 / (contrast * m1**3), 1.0 / (2.0 * contrast * m1 * m1)])
    covariance = np.cov(np.vstack([intensity, intensity**2]))
    stderr = math.sqrt(float(gradient @ covariance @ gradient) / n)
    return MomentCheck(name="contrast", estimate=contrast, expected=1.0, stderr=stderr)


def speckle_moments(
    dims: Dims,
    seed: int,
    samples: int,
    coherence_px: float = 0.0,
) -> SpeckleMoments:
    """Check the circular-Gaussian moments of the first `samples` pixel values of the ensemble.

    This function:
    1. draws whole realizations (at least two) until `samples` pixel values are available
    2. compares ⟨|E|²⟩, ⟨E²⟩, ⟨|E|⁴⟩ and the contrast with 1, 0, 2 and 1
    3. correlates the intensities of realizations 0 and 1 across pixels (expected 0)

    Standard errors assume independent pixels, i.e. coherence_px = 0.
    """
    _check_dims(dims)
    if samples < 2:
        raise SpeckleError(f"need at least 2 samples, got {samples}")

    pixels = dims[0] * dims[1]
    realizations = max(2, -(-samples // pixels))
    per_block = max(1, MC_BATCH * 64 // pixels)

    blocks = [
        sample_block(dims, seed, start, min(per_block, realizations - start), coherence_px=coherence_px)
        for start in range(0, realizations, per_block)
    ]
    fields = np.concatenate(blocks)
    values = fields.reshape(-1)[:samples]
    intensity = np.abs(values) ** 2
    pseudo = values * values
    root_n = math.sqrt(values.size)

    first, second = np.abs(fields[0].reshape(-1)) ** 2, np.abs(fields[1].reshape(-1)) ** 2
    correlation = float(np.corrcoef(first, second)[0, 1]) if pixels > 1 else 0.0

    checks = [
        MomentCheck(
            name="mean_intensity",
            estimate=float(intensity.mean()),
            expected=1.0,
            stderr=float(intensity.std(ddof=1)) / root_n,
        ),
        MomentCheck(
            name="pseudo_variance_re",
            estimate=float(pseudo.real.mean()),
            expected=0.0,
            stderr=float(pseudo.real.std(ddof=1)) / root_n,
        ),
        MomentCheck(
            name="pseudo_variance_im",
            estimate=float(pseudo.imag.mean()),
            expected=0.0,
            stderr=float(pseudo.imag.std(ddof=1)) / root_n,
        ),
        MomentCheck(
            name="fourth_moment",
            estimate=float((intensity**2).mean()),
            expected=2.0,
            stderr=float((intensity**2).std(ddof=1)) / root_n,
        ),
        _contrast_check(intensity),
        MomentCheck(
            name="realization_correlation",
            estimate=correlation,
            expected=0.0,
            stderr=1.0 / math.sqrt(pixels),
        ),
    ]
    return SpeckleMoments(samples=int(values.size), realizations=realizations, checks=checks)
