import os
import tempfile
from pathlib import Path

import numpy as np
import pandas as pd

from edge_ghost.artifacts.formats import csv_bytes, pgm_bytes
from edge_ghost.lib.logger import logger


class ArtifactWriter:
    """Single writer for one run's output directory.

    Every file is written to a temporary sibling and renamed into place, so a reader never sees a partial
    artifact. All writes happen on the caller's thread.

    Example:
        >>> writer = ArtifactWriter(Path("runs/scan"))
        >>> writer.write_table("scan.csv", scan_table(image))
        PosixPath('runs/scan/scan.csv')
        >>> writer.written
        [PosixPath('runs/scan/scan.csv')]
    """

    def __init__(self, output_dir: Path):
        self.output_dir = Path(output_dir)
        self.output_dir.mkdir(parents=True, exist_ok=True)
        self.written: list[Path] = []

    def write_bytes(self, name: str, data: bytes) -> Path:
        """Atomically write `data` to `name` inside the output directory."""

        target = self.output_dir / name
        fd, tmp = tempfile.mkstemp(dir=self.output_dir, prefix=f".{name}.", suffix=".tmp")
        try:
            with os.fdopen(fd, "wb") as f:
                f.write(data)
            os.replace(tmp, target)
        except BaseException:
            Path(tmp).unlink(missing_ok=True)
            raise

        self.written.append(target)
        logger.debug("Artifact written", path=str(target), bytes=len(data))
        return target

    def write_table(self, name: str, frame: pd.DataFrame) -> Path:
        return self.write_bytes(name, csv_bytes(frame))

    def write_image(self, name: str, values: np.ndarray) -> Path:
        """16-bit graymap of values already scaled to [0, 1]."""

        return self.write_bytes(name, pgm_bytes(values))
