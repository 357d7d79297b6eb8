from edge_ghost.lib.logger import logger
from edge_ghost.utils.printer import print_event

__all__ = [
    "logger",
    "print_event",
]
