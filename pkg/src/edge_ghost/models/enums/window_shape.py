from enum import Enum


class WindowShape(str, Enum):
    """Pixel-set shapes a window can take."""

    SQUARE = "square"
    DISK = "disk"
