from collections.abc import Callable
from pathlib import Path

import pytest

from edge_ghost.core import make_disk, make_uniform
from edge_ghost.defaults import BELL_DISK_RADIUS, BELL_GRID, FILTER_SIZE, SCAN_DISK_RADIUS, SCAN_GRID
from edge_ghost.models import PhaseMask, Window
from tests.helpers.event_collector import EventCollector


@pytest.fixture
def run_dir(tmp_path: Path) -> Path:
    """Fresh output directory for this test.

    Example:
        >>> async def test_something(run_dir):
        ...     outcome = await runner.run(parse_config(text, overrides={"output_dir": str(run_dir)}))
    """

    directory = tmp_path / "runs"
    directory.mkdir()
    return directory


@pytest.fixture
def write_config(tmp_path: Path) -> Callable[[str, str], Path]:
    """Factory that writes config text to a file and returns its path.

    Example:
        >>> def test_cli(write_config):
        ...     path = write_config('kind = "spectrum"')
        ...     assert main(["spectrum", "--config", str(path)]) == 0
    """

    def write(text: str, name: str = "experiment.toml") -> Path:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return path

    return write


@pytest.fixture
def window() -> Window:
    """The 10×10 filter window."""

    return Window.covering(FILTER_SIZE, FILTER_SIZE)


@pytest.fixture
def flat_filter() -> PhaseMask:
    return make_uniform(FILTER_SIZE)


@pytest.fixture(scope="session")
def scan_disk() -> PhaseMask:
    """Radius-40 disk on the 128×128 scan grid."""

    return make_disk(SCAN_GRID, SCAN_DISK_RADIUS)


@pytest.fixture(scope="session")
def bell_disk() -> PhaseMask:
    """Radius-60 disk on the 160×160 Bell grid."""

    return make_disk(BELL_GRID, BELL_DISK_RADIUS)


@pytest.fixture
def event_collector() -> EventCollector:
    """Fresh EventCollector instance per test.

    Example:
        >>> async def test_runner(event_collector):
        ...     runner = ExperimentRunner(workers=1)
        ...     runner.on_any_event(event_collector.collect)
        ...     await runner.run(config)
        ...     event_collector.assert_completed_successfully()
    """

    return EventCollector()
