"""Experiment config parsing.

A config is TOML text (or JSON, as written to `config.resolved`). `parse_config` expands every kind-dependent
default into the raw mapping first and validates the result once, so the validated `ExperimentConfig` is
exactly what gets echoed back for replay.
"""

import json
import math
import sys
from pathlib import Path
from typing import Any

from PIL import Image, UnidentifiedImageError
from pydantic import ValidationError

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from edge_ghost import defaults
from edge_ghost.errors import ConfigError, WindowError
from edge_ghost.models import ExperimentConfig, ExperimentKind, Window, WindowShape

Raw = dict[str, Any]

SECTIONS: dict[ExperimentKind, tuple[str, ...]] = {
    ExperimentKind.SCAN: ("object", "filter", "window", "scan"),
    ExperimentKind.BELL: ("object", "window", "bell"),
    ExperimentKind.SPECTRUM: ("object", "window", "spectrum"),
    ExperimentKind.SPECKLE_CHECK: ("speckle_check",),
}
ALL_SECTIONS = ("object", "filter", "window", "scan", "bell", "spectrum", "speckle_check")

OBJECT_TYPES = ("uniform", "spiral", "step", "disk", "bitmap")
FILTER_TYPES = ("uniform", "spiral", "step")
UNION_SECTIONS = ("object", "filter")


def _load(text: str) -> Raw:
    try:
        data = json.loads(text) if text.lstrip().startswith("{") else tomllib.loads(text)
    except json.JSONDecodeError as e:
        raise ConfigError(f"config: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigError(f"config: invalid TOML: {e}") from e

    if not isinstance(data, dict):
        raise ConfigError("config: top level must be a table of keys")
    return data


def _number(section: Raw, key: str, path: str, integer: bool = False) -> Any:
    value = section[key]
    allowed = (int,) if integer else (int, float)
    if isinstance(value, bool) or not isinstance(value, allowed):
        raise ConfigError(f"{path}.{key}: must be {'an integer' if integer else 'a number'}")
    if not math.isfinite(value):
        raise ConfigError(f"{path}.{key}: must be a finite number")
    return value


def _section(data: Raw, name: str) -> Raw:
    section = data.setdefault(name, {})
    if not isinstance(section, dict):
        raise ConfigError(f"{name}: must be a table")
    return section


def _set_dotted(data: Raw, dotted: str, value: Any) -> None:
    *parents, key = dotted.split(".")
    target = data
    for part in parents:
        target = _section(target, part)
    target[key] = value


def _resolve_kind(data: Raw, kind: ExperimentKind | None) -> ExperimentKind:
    declared = data.get("kind")
    if declared is None and kind is None:
        raise ConfigError("kind: missing; set it in the config or pick a subcommand")

    if declared is not None:
        try:
            declared = ExperimentKind(declared)
        except ValueError as e:
            choices = ", ".join(k.value for k in ExperimentKind)
            raise ConfigError(f"kind: unknown experiment kind {declared!r} (expected one of {choices})") from e
        if kind is not None and declared != kind:
            raise ConfigError(f"kind: config is for {declared.subcommand!r} but the subcommand is {kind.subcommand!r}")
        return declared

    return kind


def _object_dims(obj: Raw) -> tuple[int, int]:
    """(height, width) of the object grid the section describes."""

    if obj["type"] != "bitmap":
        grid = _number(obj, "grid", "object", integer=True)
        return grid, grid

    if not isinstance(obj.get("path"), str):
        raise ConfigError("object.path: a bitmap object needs a path")
    try:
        with Image.open(obj["path"]) as img:
            width, height = img.size
    except (OSError, UnidentifiedImageError) as e:
        raise ConfigError(f"object.path: cannot read {obj['path']}: {e}") from e
    return height, width


def _resolve_object(data: Raw, kind: ExperimentKind) -> tuple[int, int]:
    obj = _section(data, "object")
    obj.setdefault("type", "disk")
    if obj["type"] not in OBJECT_TYPES:
        raise ConfigError(f"object.type: unknown type {obj['type']!r} (expected one of {', '.join(OBJECT_TYPES)})")

    if obj["type"] != "bitmap":
        obj.setdefault("grid", defaults.BELL_GRID if kind == ExperimentKind.BELL else defaults.SCAN_GRID)
    height, width = _object_dims(obj)

    match obj["type"]:
        case "uniform":
            obj.setdefault("phase", 0.0)
        case "step":
            obj.setdefault("orientation", 0.0)
        case "disk":
            radius = defaults.BELL_DISK_RADIUS if kind == ExperimentKind.BELL else defaults.SCAN_DISK_RADIUS
            obj.setdefault("radius", float(radius))
    if obj["type"] in ("spiral", "step", "disk"):
        obj.setdefault("center_x", (width - 1) / 2)
        obj.setdefault("center_y", (height - 1) / 2)
    return height, width


def _resolve_filter(data: Raw) -> int:
    fil = _section(data, "filter")
    if "type" not in fil:
        raise ConfigError(f"filter.type: missing (expected one of {', '.join(FILTER_TYPES)})")
    if fil["type"] not in FILTER_TYPES:
        raise ConfigError(f"filter.type: unknown type {fil['type']!r} (expected one of {', '.join(FILTER_TYPES)})")

    fil.setdefault("size", defaults.FILTER_SIZE)
    size = _number(fil, "size", "filter", integer=True)

    match fil["type"]:
        case "uniform":
            fil.setdefault("phase", 0.0)
        case "step":
            fil.setdefault("orientation", 0.0)
    if fil["type"] in ("spiral", "step"):
        fil.setdefault("center_x", (size - 1) / 2)
        fil.setdefault("center_y", (size - 1) / 2)
    return size


def _resolve_window(data: Raw, kind: ExperimentKind, frame: tuple[int, int]) -> Window:
    """Fill in the window; `frame` is the (height, width) grid the window is drawn on."""

    win = _section(data, "window")
    height, width = frame

    if kind == ExperimentKind.SPECTRUM:
        win.setdefault("shape", WindowShape.DISK.value)
        default_extent = float(math.floor(min(height, width) / 2) - 1)
        if win["shape"] == WindowShape.SQUARE.value:
            default_extent = min(height, width) / 2
    else:
        win.setdefault("shape", WindowShape.SQUARE.value)
        default_extent = min(height, width) / 2

    win.setdefault("extent", default_extent)
    win.setdefault("center_x", (width - 1) / 2)
    win.setdefault("center_y", (height - 1) / 2)

    try:
        window = Window(
            center=(_number(win, "center_x", "window"), _number(win, "center_y", "window")),
            shape=win["shape"],
            extent=_number(win, "extent", "window"),
        )
        window.pixels(height, width)
    except ValidationError as e:
        raise _config_error(e, prefix=("window",)) from e
    except WindowError as e:
        raise ConfigError(f"window: {e}") from e
    return window


def _resolve_scan(data: Raw, object_dims: tuple[int, int], filter_size: int, window: Window) -> None:
    scan = _section(data, "scan")
    ys, xs = window.pixels(filter_size, filter_size)
    height, width = object_dims

    scan.setdefault("x_start", -int(xs.min()))
    scan.setdefault("x_stop", width - 1 - int(xs.max()))
    scan.setdefault("y_start", -int(ys.min()))
    scan.setdefault("y_stop", height - 1 - int(ys.max()))
    scan.setdefault("stride", 1)
    scan.setdefault("emit_intensity", False)
    scan.setdefault("intensity_realizations", 256)


def _resolve_bell(data: Raw) -> None:
    bell = _section(data, "bell")
    theta_a, theta_b, theta_a_prime, theta_b_prime = defaults.BELL_SETTINGS

    bell.setdefault("radial_px", defaults.BELL_RADIAL_PX)
    bell.setdefault("azimuthal_deg", defaults.BELL_AZIMUTHAL_DEG)
    bell.setdefault("azimuthal_samples", defaults.BELL_AZIMUTHAL_SAMPLES)
    bell.setdefault("theta_a", list(defaults.BELL_THETA_A))
    bell.setdefault("settings_theta_a", theta_a)
    bell.setdefault("settings_theta_b", theta_b)
    bell.setdefault("settings_theta_a_prime", theta_a_prime)
    bell.setdefault("settings_theta_b_prime", theta_b_prime)
    bell.setdefault("subtract_background", False)


def _resolve_defaults(data: Raw, kind: ExperimentKind) -> None:
    data["kind"] = kind.value
    data.setdefault("mode", "analytic")
    data.setdefault("mc_realizations", defaults.MC_REALIZATIONS)
    data.setdefault("seed", 0)
    data.setdefault("coherence_px", 0.0)
    data.setdefault("detector_pitch_um", defaults.DETECTOR_PITCH_UM)
    data.setdefault("output_dir", f"runs/{kind.value}")

    match kind:
        case ExperimentKind.SCAN:
            object_dims = _resolve_object(data, kind)
            size = _resolve_filter(data)
            window = _resolve_window(data, kind, (size, size))
            _resolve_scan(data, object_dims, size, window)
        case ExperimentKind.BELL:
            _resolve_object(data, kind)
            _resolve_window(data, kind, (defaults.FILTER_SIZE, defaults.FILTER_SIZE))
            _resolve_bell(data)
        case ExperimentKind.SPECTRUM:
            object_dims = _resolve_object(data, kind)
            _resolve_window(data, kind, object_dims)
            _section(data, "spectrum").setdefault("l_max", defaults.SPECTRUM_L_MAX)
        case ExperimentKind.SPECKLE_CHECK:
            section = _section(data, "speckle_check")
            section.setdefault("grid", defaults.SPECKLE_CHECK_GRID)
            section.setdefault("samples", defaults.SPECKLE_CHECK_SAMPLES)


def _config_error(error: ValidationError, data: Raw | None = None, prefix: tuple[str, ...] = ()) -> ConfigError:
    """First validation problem as 'dotted.key: message'.

    Discriminator tags that pydantic inserts into the location of a tagged union are dropped.
    """
    problem = error.errors()[0]
    loc = [str(part) for part in (*prefix, *problem["loc"])]
    if data is not None and len(loc) > 1 and loc[0] in UNION_SECTIONS:
        tag = data.get(loc[0], {}).get("type")
        if loc[1] == tag:
            del loc[1]

    message = "unknown key" if problem["type"] == "extra_forbidden" else problem["msg"]
    return ConfigError(f"{'.'.join(loc) or 'config'}: {message}")


def parse_config(
    text: str,
    kind: ExperimentKind | None = None,
    overrides: dict[str, Any] | None = None,
) -> ExperimentConfig:
    """Parse config text into a validated, fully resolved ExperimentConfig.

    This function:
    1. reads TOML, or JSON when the text starts with "{"
    2. checks the declared kind against `kind` (the subcommand), when both are present
    3. applies `overrides`, keyed by dotted path ("seed", "bell.subtract_background")
    4. rejects sections the kind never reads, then expands every default
    5. validates the result; the first problem becomes a ConfigError naming its key

    Example:
        >>> config = parse_config('kind = "bell"', overrides={"seed": 7})
        >>> config.object.radius, config.bell.azimuthal_deg, config.seed
        (60.0, 3.0, 7)
    """
    data = _load(text)
    kind = _resolve_kind(data, kind)

    for dotted, value in (overrides or {}).items():
        if value is not None:
            _set_dotted(data, dotted, value)

    for name in ALL_SECTIONS:
        if name in data and name not in SECTIONS[kind]:
            raise ConfigError(f"{name}: section is not used by {kind.subcommand} experiments")

    _resolve_defaults(data, kind)

    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as e:
        raise _config_error(e, data) from e


def load_config(
    path: Path,
    kind: ExperimentKind | None = None,
    overrides: dict[str, Any] | None = None,
) -> ExperimentConfig:
    """Read and parse a config file."""

    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ConfigError(f"config: cannot read {path}: {e.strerror}") from e
    return parse_config(text, kind=kind, overrides=overrides)
