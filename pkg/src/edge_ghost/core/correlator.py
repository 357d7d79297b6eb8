"""Second-order intensity correlation between the test arm (object) and the reference arm (filter).

Both arms see the same speckle field E on the window pixels x of the filter frame. Each arm projects its masked
field onto the uniform mode of the window (a lens and an on-axis point detector):

    A_t = Σ_x E(x)·t_obj(x + offset),    A_r = Σ_x E(x)·t_fil(x),    I = |A|²

For circular Gaussian E this gives g2 = 1 + |Γ|² / (M_t·M_r) with Γ = Σ_x t_obj(x + offset)·conj(t_fil(x)),
the phase-conjugate overlap of the two holograms.
"""

import math

import numpy as np

from edge_ghost.core.speckle import sample_block
from edge_ghost.defaults import MC_BATCH
from edge_ghost.errors import CorrelationError
from edge_ghost.lib.logger import logger
from edge_ghost.models import CorrelationEstimate, CorrelationMode, Overlap, PhaseMask, SpeckleField, Window

Offset = tuple[int, int]


def _sample(mask: PhaseMask, offsets: np.ndarray, ys: np.ndarray, xs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Transmission and support of `mask` at window pixels shifted by each (x, y) offset.

    Returns two (B, M) arrays; pixels outside the mask grid are opaque.
    """
    yy = ys[None, :] + offsets[:, 1:2]
    xx = xs[None, :] + offsets[:, 0:1]
    inside = (yy >= 0) & (yy < mask.height) & (xx >= 0) & (xx < mask.width)

    yy = np.clip(yy, 0, mask.height - 1)
    xx = np.clip(xx, 0, mask.width - 1)
    transmission = np.where(inside, mask.transmission()[yy, xx], 0.0)
    support = np.where(inside, mask.support[yy, xx], 0)
    return transmission, support


def overlap_batch(
    object: PhaseMask,
    filter: PhaseMask,
    offsets: np.ndarray,
    window: Window,
) -> tuple[np.ndarray, np.ndarray, int]:
    """Γ and M_t for a batch of (x, y) offsets, plus the offset-independent M_r.

    Each row is reduced on its own, so a value never depends on which batch it was computed in.
    """
    ys, xs = window.pixels(filter.height, filter.width)
    offsets = np.asarray(offsets, dtype=np.int64).reshape(-1, 2)

    t_obj, s_obj = _sample(object, offsets, ys, xs)
    t_fil = filter.transmission()[ys, xs]
    s_fil = filter.support[ys, xs]

    gamma = (t_obj * np.conj(t_fil)[None, :]).sum(axis=1)
    m_test = s_obj.sum(axis=1)
    return gamma, m_test, int(s_fil.sum())


def overlap(object: PhaseMask, filter: PhaseMask, offset: Offset, window: Window) -> Overlap:
    """Phase-conjugate overlap Γ of object (shifted by `offset`) and filter inside `window`.

    Example:
        >>> flat = make_uniform(10)
        >>> overlap(flat, flat, (0, 0), Window.square((4.5, 4.5), 5)).gamma
        (100+0j)
    """
    gamma, m_test, m_ref = overlap_batch(object, filter, np.array([offset]), window)
    return Overlap(gamma=complex(gamma[0]), m_test=int(m_test[0]), m_ref=m_ref)


def analytic_g2(gamma: complex, m_test: int, m_ref: int) -> CorrelationEstimate:
    """Thermal g2 = 1 + |Γ|² / (M_t·M_r)."""

    if m_test <= 0 or m_ref <= 0:
        raise CorrelationError(f"both arms need transmitting pixels in the window (M_t={m_test}, M_r={m_ref})")

    # |Γ| <= min(M_t, M_r); rounding can push the ratio a hair above 1
    ratio = min(abs(gamma) ** 2 / (m_test * m_ref), 1.0)
    return CorrelationEstimate.from_g2(1.0 + ratio, CorrelationMode.ANALYTIC)


def mc_detect(field: SpeckleField, mask: PhaseMask, offset: Offset, window: Window) -> float:
    """Single-mode detector intensity |Σ_x E(x)·t(x + offset)|² for one realization."""

    ys, xs = window.pixels(field.height, field.width)
    transmission, _ = _sample(mask, np.array([offset], dtype=np.int64), ys, xs)
    amplitude = (field.values[ys, xs][None, :] * transmission).sum(axis=1)[0]
    return float(abs(amplitude) ** 2)


def ratio_estimate(i_test: np.ndarray, i_ref: np.ndarray) -> tuple[float, float]:
    """Ratio-of-means g2 and its delete-one jackknife standard error."""

    n = i_test.size
    product = i_test * i_ref
    s_p, s_t, s_r = float(product.sum()), float(i_test.sum()), float(i_ref.sum())
    if s_t <= 0 or s_r <= 0:
        raise CorrelationError("mean intensity of an arm is zero; g2 is undefined")

    g2 = (s_p / n) / ((s_t / n) * (s_r / n))

    with np.errstate(divide="ignore", invalid="ignore"):
        leave_one_out = ((s_p - product) / (n - 1)) / (((s_t - i_test) / (n - 1)) * ((s_r - i_ref) / (n - 1)))
    if not np.all(np.isfinite(leave_one_out)):
        raise CorrelationError("a single realization carries all the intensity; jackknife is undefined")

    stderr = math.sqrt((n - 1) / n * float(((leave_one_out - leave_one_out.mean()) ** 2).sum()))
    return g2, stderr


def detect_ensemble(
    object: PhaseMask,
    filter: PhaseMask,
    offset: Offset,
    window: Window,
    n_realizations: int,
    seed: int,
    coherence_px: float = 0.0,
    stream: tuple[int, ...] = (),
    batch_size: int = MC_BATCH,
) -> tuple[np.ndarray, np.ndarray]:
    """Per-realization intensities (I_t, I_r) of realizations 0 .. N - 1, in index order."""

    dims = filter.shape
    ys, xs = window.pixels(*dims)
    w_test, _ = _sample(object, np.array([offset], dtype=np.int64), ys, xs)
    w_ref, _ = _sample(filter, np.zeros((1, 2), dtype=np.int64), ys, xs)

    i_test = np.empty(n_realizations)
    i_ref = np.empty(n_realizations)
    for start in range(0, n_realizations, batch_size):
        count = min(batch_size, n_realizations - start)
        fields = sample_block(dims, seed, start, count, coherence_px=coherence_px, stream=stream)[:, ys, xs]
        i_test[start : start + count] = np.abs((fields * w_test).sum(axis=1)) ** 2
        i_ref[start : start + count] = np.abs((fields * w_ref).sum(axis=1)) ** 2
    return i_test, i_ref


def mc_correlate(
    object: PhaseMask,
    filter: PhaseMask,
    offset: Offset,
    window: Window,
    n_realizations: int,
    seed: int,
    coherence_px: float = 0.0,
    stream: tuple[int, ...] = (),
    batch_size: int = MC_BATCH,
) -> CorrelationEstimate:
    """Monte Carlo g2 over `n_realizations` shared-field realizations of the (seed, stream) ensemble.

    Example:
        >>> flat = make_uniform(10)
        >>> est = mc_correlate(flat, flat, (0, 0), Window.square((4.5, 4.5), 5), 100_000, seed=1)
        >>> abs(est.g2 - 2.0) < 5 * est.stderr
        True
    """
    if n_realizations < 2:
        raise CorrelationError(f"Monte Carlo needs at least 2 realizations, got {n_realizations}")

    with logger.span("correlator.mc_correlate", offset=offset, n_realizations=n_realizations, seed=seed):
        i_test, i_ref = detect_ensemble(
            object,
            filter,
            offset,
            window,
            n_realizations,
            seed,
            coherence_px=coherence_px,
            stream=stream,
            batch_size=batch_size,
        )
        g2, stderr = ratio_estimate(i_test, i_ref)

    return CorrelationEstimate.from_g2(g2, CorrelationMode.MONTECARLO, stderr=stderr, n_realizations=n_realizations)


def mean_intensity_image(
    object: PhaseMask,
    realizations: int,
    seed: int,
    coherence_px: float = 0.0,
) -> np.ndarray:
    """Realization-averaged pixelwise intensity |E·t|² behind the object, as a plain camera would see it.

    A phase object has |t| = 1 everywhere, so the result carries no trace of it.
    """
    if realizations < 1:
        raise CorrelationError(f"need at least one realization, got {realizations}")

    total = np.zeros(object.shape)
    per_block = max(1, MC_BATCH * 64 // (object.height * object.width))
    for start in range(0, realizations, per_block):
        count = min(per_block, realizations - start)
        fields = sample_block(object.shape, seed, start, count, coherence_px=coherence_px)
        total += (np.abs(fields * object.transmission()[None]) ** 2).sum(axis=0)
    return total / realizations
