import asyncio
import os
from collections.abc import Callable, Sequence
from typing import TypeVar

Item = TypeVar("Item")
Result = TypeVar("Result")


class WorkerPool:
    """Bounded fan-out of independent work items onto worker threads.

    Results come back in item order whatever the schedule, so a caller that reduces them afterwards gets
    the same bytes at any worker count. NumPy releases the GIL in the heavy kernels, which is where the
    threads pay off.

    Example:
        >>> pool = WorkerPool(workers=4)
        >>> rows = await pool.map(scan_row, range(119))
        >>> image = np.vstack(rows)
    """

    def __init__(self, workers: int | None = None):
        workers = workers if workers is not None else min(8, os.cpu_count() or 1)
        if workers < 1:
            raise ValueError(f"workers must be at least 1, got {workers}")
        self.workers = workers

    async def map(self, fn: Callable[[Item], Result], items: Sequence[Item]) -> list[Result]:
        """Apply `fn` to every item and return the results in item order."""

        if self.workers == 1:
            return [fn(item) for item in items]

        semaphore = asyncio.Semaphore(self.workers)

        async def run(item: Item) -> Result:
            async with semaphore:
                return await asyncio.to_thread(fn, item)

        return list(await asyncio.gather(*(run(item) for item in items)))
