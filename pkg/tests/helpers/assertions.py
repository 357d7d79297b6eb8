"""Assertions shared by the numerical and end-to-end tests.

Statistical checks compare an estimate with its expectation in units of its standard error; file checks compare
run directories byte for byte.
"""

from pathlib import Path

from edge_ghost.models import Event, EventType

SIGMAS = 5.0


def assert_within_sigmas(estimate: float, expected: float, stderr: float, sigmas: float = SIGMAS, label: str = "") -> None:
    """Assert |estimate - expected| <= sigmas·stderr.

    Example:
        >>> assert_within_sigmas(est.g2, 2.0, est.stderr, label="flat masks")
    """

    assert stderr > 0, f"{label or 'estimate'}: standard error must be positive, got {stderr}"
    z = (estimate - expected) / stderr
    assert abs(z) <= sigmas, f"{label or 'estimate'}: {estimate} vs {expected} is {z:+.2f} standard errors away"


def assert_fraction_within_sigmas(z_scores: list[float], fraction: float, sigmas: float = SIGMAS) -> None:
    """Assert that at least `fraction` of the z-scores lie within ±sigmas."""

    inside = sum(1 for z in z_scores if abs(z) <= sigmas)
    assert inside >= fraction * len(z_scores), (
        f"only {inside}/{len(z_scores)} estimates within {sigmas} standard errors; "
        f"worst z = {max(z_scores, key=abs):+.2f}"
    )


def assert_same_bytes(left: Path, right: Path) -> None:
    """Assert that two run directories hold the same files with identical content.

    Example:
        >>> assert_same_bytes(run_dir / "one_worker", run_dir / "four_workers")
    """

    left_files = sorted(p.name for p in left.iterdir() if not p.name.startswith("."))
    right_files = sorted(p.name for p in right.iterdir() if not p.name.startswith("."))
    assert left_files == right_files, f"file sets differ: {left_files} vs {right_files}"

    for name in left_files:
        assert (left / name).read_bytes() == (right / name).read_bytes(), f"{name} differs between {left} and {right}"


def assert_no_errors(events: list[Event]) -> None:
    """Assert that no error events occurred."""

    error_events = [e for e in events if e.type == EventType.RUN_ERROR]
    assert not error_events, f"Found {len(error_events)} error event(s):\n" + "\n".join(
        [f"  - {e.data.get('error', 'Unknown error')}" for e in error_events]
    )


def assert_starts_and_finishes(events: list[Event]) -> None:
    """Assert that a run started and finished properly."""

    assert len(events) > 0, "No events collected"
    assert events[0].type == EventType.RUN_STARTED, f"First event must be RUN_STARTED, got {events[0].type.value}"
    assert events[-1].type in (
        EventType.RUN_FINISHED,
        EventType.RUN_ERROR,
    ), f"Last event must be RUN_FINISHED or RUN_ERROR, got {events[-1].type.value}"


def assert_event_count(events: list[Event], event_type: EventType, expected_count: int) -> None:
    actual_count = sum(1 for e in events if e.type == event_type)
    assert actual_count == expected_count, f"Expected {expected_count} {event_type.value} event(s), got {actual_count}"
