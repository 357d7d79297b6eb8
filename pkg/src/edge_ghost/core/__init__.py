from edge_ghost.core.bell import chsh_E, chsh_S, chsh_terms, rim_correlation, sweep_curves
from edge_ghost.core.correlator import analytic_g2, mc_correlate, mc_detect, mean_intensity_image, overlap
from edge_ghost.core.masks import (
    azimuthal_spectrum,
    from_bitmap,
    load_bitmap,
    make_disk,
    make_spiral,
    make_step,
    make_uniform,
)
from edge_ghost.core.scan import normalize_image, offset_grid_for, run_scan
from edge_ghost.core.speckle import sample_block, sample_field, speckle_moments

__all__ = [
    "analytic_g2",
    "azimuthal_spectrum",
    "chsh_E",
    "chsh_S",
    "chsh_terms",
    "from_bitmap",
    "load_bitmap",
    "make_disk",
    "make_spiral",
    "make_step",
    "make_uniform",
    "mc_correlate",
    "mc_detect",
    "mean_intensity_image",
    "normalize_image",
    "offset_grid_for",
    "overlap",
    "rim_correlation",
    "run_scan",
    "sample_block",
    "sample_field",
    "speckle_moments",
    "sweep_curves",
]
