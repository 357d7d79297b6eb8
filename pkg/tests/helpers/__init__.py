from tests.helpers.assertions import (
    assert_event_count,
    assert_fraction_within_sigmas,
    assert_no_errors,
    assert_same_bytes,
    assert_starts_and_finishes,
    assert_within_sigmas,
)
from tests.helpers.curves import curves_from, ideal_curves, random_curves, triangular_curves
from tests.helpers.event_collector import EventCollector

__all__ = [
    # Assertions
    "assert_event_count",
    "assert_fraction_within_sigmas",
    "assert_no_errors",
    "assert_same_bytes",
    "assert_starts_and_finishes",
    "assert_within_sigmas",
    # Curves
    "curves_from",
    "ideal_curves",
    "random_curves",
    "triangular_curves",
    # Event collector
    "EventCollector",
]
