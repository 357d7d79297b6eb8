"""Byte encoders for run outputs.

Every encoder is a pure function of its input, so equal results give equal bytes.
"""

import io
import json
import math

import numpy as np
import pandas as pd
from PIL import Image

from edge_ghost.models import AzimuthalSpectrum, BellCurve, BellResult, ExperimentConfig, ScanImage, SpeckleMoments

PGM_MAX = 65535


def csv_bytes(frame: pd.DataFrame) -> bytes:
    """Header row plus one line per record, `\\n` terminated; floats in shortest round-trip form."""

    return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")


def pgm_bytes(values: np.ndarray) -> bytes:
    """Binary 16-bit graymap (P5, maxval 65535, big-endian samples) of values in [0, 1]."""

    levels = np.rint(np.clip(values, 0.0, 1.0) * PGM_MAX).astype(np.int32)
    buffer = io.BytesIO()
    Image.fromarray(levels).save(buffer, format="PPM")
    return buffer.getvalue()


def unit_range(values: np.ndarray) -> np.ndarray:
    """Affine map onto [0, 1]; constant input maps to zeros."""

    low, high = float(values.min()), float(values.max())
    if high == low:
        return np.zeros_like(values, dtype=np.float64)
    return (values - low) / (high - low)


def degrees_label(theta: float) -> str:
    """Angle in degrees for file names: 0, 90, 45, 135, 22.5."""

    return f"{round(math.degrees(theta), 6):g}"


def resolved_config_bytes(config: ExperimentConfig) -> bytes:
    """Canonical JSON of the resolved config; the output directory never affects content and is left out."""

    payload = config.model_dump(mode="json", exclude={"output_dir"}, exclude_none=True)
    return (json.dumps(payload, indent=2, sort_keys=True) + "\n").encode("utf-8")


def scan_table(image: ScanImage) -> pd.DataFrame:
    offsets = image.config.offsets
    xs, ys = np.meshgrid(offsets.x_values, offsets.y_values)
    return pd.DataFrame(
        {
            "offset_x": xs.reshape(-1),
            "offset_y": ys.reshape(-1),
            "delta_g2": image.values.reshape(-1),
            "stderr": image.stderr.reshape(-1),
        }
    )


def curve_table(curve: BellCurve) -> pd.DataFrame:
    """One row per rim bin; `edge_deg` is the rim tangent at that azimuth."""

    theta_b = curve.theta_b
    return pd.DataFrame(
        {
            "theta_A": np.full(theta_b.size, curve.theta_a),
            "theta_B_deg": np.degrees(theta_b),
            "edge_deg": np.degrees((theta_b + math.pi / 2) % math.pi),
            "C": curve.c,
            "stderr": curve.stderr,
        }
    )


def e_table(result: BellResult) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "theta_A": [t.theta_a for t in result.e_terms],
            "theta_B": [t.theta_b for t in result.e_terms],
            "theta_A_deg": [math.degrees(t.theta_a) for t in result.e_terms],
            "theta_B_deg": [math.degrees(t.theta_b) for t in result.e_terms],
            "E": [t.e for t in result.e_terms],
        }
    )


def summary_table(result: BellResult) -> pd.DataFrame:
    settings = result.settings
    return pd.DataFrame(
        [
            {
                "S": result.s,
                "theta_A": settings.theta_a,
                "theta_B": settings.theta_b,
                "theta_A_prime": settings.theta_a_prime,
                "theta_B_prime": settings.theta_b_prime,
                "subtract_background": result.subtract_background,
                "max_abs_E": result.max_abs_e,
                "classical": result.classical,
            }
        ]
    )


def spectrum_table(spectrum: AzimuthalSpectrum) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "l": spectrum.ls,
            "re": spectrum.coefficients.real,
            "im": spectrum.coefficients.imag,
            "power": spectrum.power,
        }
    )


def moments_table(moments: SpeckleMoments, sigmas: float) -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "name": check.name,
                "estimate": check.estimate,
                "expected": check.expected,
                "stderr": check.stderr,
                "z_score": check.z_score,
                "within_tolerance": check.within(sigmas),
            }
            for check in moments.checks
        ]
    )
