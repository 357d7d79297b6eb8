import asyncio
import inspect
from collections.abc import Callable
from typing import Any

from pydantic import ValidationError

from edge_ghost.artifacts import ArtifactWriter
from edge_ghost.artifacts.formats import (
    curve_table,
    degrees_label,
    e_table,
    moments_table,
    resolved_config_bytes,
    scan_table,
    spectrum_table,
    summary_table,
    unit_range,
)
from edge_ghost.core.bell import chsh_S, sweep_curves
from edge_ghost.core.correlator import mean_intensity_image
from edge_ghost.core.masks import (
    azimuthal_spectrum,
    load_bitmap,
    make_disk,
    make_spiral,
    make_step,
    make_uniform,
)
from edge_ghost.core.scan import normalize_image, run_scan
from edge_ghost.core.speckle import speckle_moments
from edge_ghost.defaults import FILTER_SIZE, SIGMA_TOLERANCE
from edge_ghost.errors import BellError, EdgeGhostError, ScanError
from edge_ghost.executor import WorkerPool
from edge_ghost.lib.logger import logger
from edge_ghost.models import (
    BellSettings,
    Binning,
    Event,
    EventHandler,
    EventType,
    ExperimentConfig,
    ExperimentKind,
    OffsetGrid,
    PhaseMask,
    RunOutcome,
    RunStatus,
    ScanConfig,
    Window,
    WindowShape,
)
from edge_ghost.models.config import FilterSpec, ObjectSpec, WindowSpec


def build_object(spec: ObjectSpec) -> PhaseMask:
    """Phase object described by a resolved `[object]` section."""

    match spec.type:
        case "uniform":
            return make_uniform(spec.grid, spec.phase)
        case "spiral":
            return make_spiral(spec.grid, spec.l, (spec.center_x, spec.center_y))
        case "step":
            return make_step(spec.grid, spec.orientation, (spec.center_x, spec.center_y))
        case "disk":
            return make_disk(spec.grid, spec.radius, (spec.center_x, spec.center_y))
        case "bitmap":
            return load_bitmap(spec.path)


def build_filter(spec: FilterSpec) -> PhaseMask:
    match spec.type:
        case "uniform":
            return make_uniform(spec.size, spec.phase)
        case "spiral":
            return make_spiral(spec.size, spec.l, (spec.center_x, spec.center_y))
        case "step":
            return make_step(spec.size, spec.orientation, (spec.center_x, spec.center_y))


def build_window(spec: WindowSpec) -> Window:
    center = (spec.center_x, spec.center_y)
    if spec.shape == WindowShape.DISK:
        return Window.disk(center, spec.extent)
    return Window.square(center, spec.extent)


class ExperimentRunner:
    """Turns a resolved ExperimentConfig into artifact files and emits run events on the way.

    Numerical work is fanned out over a WorkerPool; every file is written from this runner only, after
    the work it depends on has been gathered.

    Example:
        >>> runner = ExperimentRunner(workers=4)
        >>>
        >>> @runner.on(EventType.ARTIFACT_WRITTEN)
        >>> def on_artifact(event):
        ...     print(event.data["path"])
        >>>
        >>> outcome = await runner.run(parse_config(text))
        >>> outcome.status
        <RunStatus.COMPLETED: 'completed'>
    """

    def __init__(self, workers: int | None = None) -> None:
        self.pool = WorkerPool(workers)

        self._event_handlers: dict[EventType, list[EventHandler]] = {}
        self._on_any_handlers: list[EventHandler] = []

    def on(self, event_type: EventType) -> Callable[[EventHandler], EventHandler]:
        """Decorator to register handler for specific event type.

        Handlers are called sequentially in registration order. Both sync and async handlers are supported.
        """

        def decorator(handler: EventHandler) -> EventHandler:
            self._event_handlers.setdefault(event_type, []).append(handler)
            return handler

        return decorator

    def on_any_event(self, handler: EventHandler) -> EventHandler:
        """Decorator to register handler for all event types."""

        self._on_any_handlers.append(handler)
        return handler

    async def run(self, config: ExperimentConfig) -> RunOutcome:
        """Run one experiment and write its artifacts.

        Domain errors end the run with status ERROR; they are reported through a RUN_ERROR event and the
        returned outcome rather than raised.
        """
        kind = config.kind
        await self._emit(
            EventType.RUN_STARTED,
            kind,
            {"mode": config.mode.value, "seed": config.seed, "output_dir": str(config.output_dir)},
        )

        writer = ArtifactWriter(config.output_dir)
        try:
            with logger.span("experiment.run", kind=kind.value, mode=config.mode.value, seed=config.seed):
                match kind:
                    case ExperimentKind.SCAN:
                        headline = await self._run_scan(config, writer)
                    case ExperimentKind.BELL:
                        headline = await self._run_bell(config, writer)
                    case ExperimentKind.SPECTRUM:
                        headline = await self._run_spectrum(config, writer)
                    case ExperimentKind.SPECKLE_CHECK:
                        headline = await self._run_speckle_check(config, writer)
                await self._write(kind, writer, "config.resolved", resolved_config_bytes(config))

        except EdgeGhostError as e:
            logger.error("Experiment failed", kind=kind.value, error=str(e))
            await self._emit(EventType.RUN_ERROR, kind, {"error": str(e)})
            return RunOutcome(kind=kind, status=RunStatus.ERROR, artifacts=list(writer.written), error=str(e))

        await self._emit(EventType.RUN_FINISHED, kind, {"status": RunStatus.COMPLETED.value, **headline})
        return RunOutcome(kind=kind, status=RunStatus.COMPLETED, artifacts=list(writer.written), headline=headline)

    async def _run_scan(self, config: ExperimentConfig, writer: ArtifactWriter) -> dict[str, Any]:
        obj = build_object(config.object)
        try:
            scan_cfg = ScanConfig(
                object=obj,
                filter=build_filter(config.filter),
                window=build_window(config.window),
                offsets=OffsetGrid(
                    x_start=config.scan.x_start,
                    x_stop=config.scan.x_stop,
                    y_start=config.scan.y_start,
                    y_stop=config.scan.y_stop,
                    stride=config.scan.stride,
                ),
                mode=config.mode,
                mc_realizations=config.mc_realizations,
                seed=config.seed,
                coherence_px=config.coherence_px,
            )
        except ValidationError as e:
            raise ScanError(f"scan: {e.errors()[0]['msg']}") from e

        image = await run_scan(scan_cfg, self.pool)
        await self._emit(
            EventType.STEP_FINISHED,
            config.kind,
            {"step": "scan", "offsets": int(image.values.size), "max_delta_g2": float(image.values.max())},
        )

        await self._write_image(config.kind, writer, "image.pgm", normalize_image(image).values)
        await self._write_table(config.kind, writer, "scan.csv", scan_table(image))

        if config.scan.emit_intensity:
            intensity = await asyncio.to_thread(
                mean_intensity_image,
                obj,
                config.scan.intensity_realizations,
                config.seed,
                config.coherence_px,
            )
            await self._write_image(config.kind, writer, "intensity.pgm", unit_range(intensity))

        return {"min_delta_g2": float(image.values.min()), "max_delta_g2": float(image.values.max())}

    async def _run_bell(self, config: ExperimentConfig, writer: ArtifactWriter) -> dict[str, Any]:
        section = config.bell
        labels = [degrees_label(theta) for theta in section.theta_a]
        if len(set(labels)) != len(labels):
            raise BellError(f"bell.theta_a: orientations repeat ({', '.join(labels)} degrees)")

        curves = await sweep_curves(
            build_object(config.object),
            window=build_window(config.window),
            theta_a_list=section.theta_a,
            binning=Binning(
                radial_px=section.radial_px,
                azimuthal_deg=section.azimuthal_deg,
                azimuthal_samples=section.azimuthal_samples,
            ),
            mode=config.mode,
            mc_realizations=config.mc_realizations,
            seed=config.seed,
            coherence_px=config.coherence_px,
            filter_size=FILTER_SIZE,
            pool=self.pool,
        )
        await self._emit(EventType.STEP_FINISHED, config.kind, {"step": "sweep", "curves": len(curves)})

        result = chsh_S(
            curves,
            BellSettings(
                theta_a=section.settings_theta_a,
                theta_b=section.settings_theta_b,
                theta_a_prime=section.settings_theta_a_prime,
                theta_b_prime=section.settings_theta_b_prime,
            ),
            subtract_background=section.subtract_background,
        )
        logger.info("CHSH combination", s=result.s, max_abs_e=result.max_abs_e, classical=result.classical)

        for label, curve in zip(labels, curves, strict=True):
            await self._write_table(config.kind, writer, f"curve_{label}.csv", curve_table(curve))
        await self._write_table(config.kind, writer, "e_table.csv", e_table(result))
        await self._write_table(config.kind, writer, "summary.csv", summary_table(result))

        return {"S": result.s, "max_abs_E": result.max_abs_e, "classical": result.classical}

    async def _run_spectrum(self, config: ExperimentConfig, writer: ArtifactWriter) -> dict[str, Any]:
        spectrum = azimuthal_spectrum(
            build_object(config.object),
            build_window(config.window),
            config.spectrum.l_max,
        )
        logger.info("Azimuthal spectrum", pixels=spectrum.pixel_count, parseval_excess=spectrum.parseval_excess)

        await self._write_table(config.kind, writer, "spectrum.csv", spectrum_table(spectrum))
        return {"pixels": spectrum.pixel_count, "parseval_excess": spectrum.parseval_excess}

    async def _run_speckle_check(self, config: ExperimentConfig, writer: ArtifactWriter) -> dict[str, Any]:
        section = config.speckle_check
        moments = await asyncio.to_thread(
            speckle_moments,
            (section.grid, section.grid),
            config.seed,
            section.samples,
            config.coherence_px,
        )
        failed = [check.name for check in moments.checks if not check.within(SIGMA_TOLERANCE)]
        if failed:
            logger.warning("Speckle moments outside tolerance", checks=failed, sigmas=SIGMA_TOLERANCE)

        await self._write_table(config.kind, writer, "speckle_check.csv", moments_table(moments, SIGMA_TOLERANCE))
        return {"samples": moments.samples, "outside_tolerance": failed}

    async def _write(self, kind: ExperimentKind, writer: ArtifactWriter, name: str, data: bytes) -> None:
        path = writer.write_bytes(name, data)
        await self._emit(EventType.ARTIFACT_WRITTEN, kind, {"path": str(path), "bytes": len(data)})

    async def _write_table(self, kind: ExperimentKind, writer: ArtifactWriter, name: str, frame: Any) -> None:
        path = writer.write_table(name, frame)
        await self._emit(EventType.ARTIFACT_WRITTEN, kind, {"path": str(path), "rows": len(frame)})

    async def _write_image(self, kind: ExperimentKind, writer: ArtifactWriter, name: str, values: Any) -> None:
        path = writer.write_image(name, values)
        await self._emit(EventType.ARTIFACT_WRITTEN, kind, {"path": str(path), "shape": list(values.shape)})

    async def _emit(self, event_type: EventType, kind: ExperimentKind, data: dict[str, Any]) -> None:
        """Dispatch an event to all registered handlers.

        Handlers are executed sequentially. If a handler raises an exception, it's logged but other handlers
        still execute.
        """
        event = Event(type=event_type, kind=kind, data=data)

        for handler in self._event_handlers.get(event_type, []):
            await self._execute_handler(handler, event)

        for handler in self._on_any_handlers:
            await self._execute_handler(handler, event)

    async def _execute_handler(self, handler: EventHandler, event: Event) -> None:
        try:
            if inspect.iscoroutinefunction(handler):
                await handler(event)
            else:
                handler(event)
        except Exception as e:
            handler_name = getattr(handler, "__name__", repr(handler))
            logger.error(
                f"Handler {handler_name} failed for event {event.type.value}",
                error=str(e),
                handler=handler_name,
            )
