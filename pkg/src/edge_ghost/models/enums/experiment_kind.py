from enum import Enum


class ExperimentKind(str, Enum):
    """Experiments the command line can run.

    The value is the config spelling; `subcommand` is the CLI spelling.
    """

    SCAN = "scan"
    BELL = "bell"
    SPECTRUM = "spectrum"
    SPECKLE_CHECK = "speckle_check"

    @property
    def subcommand(self) -> str:
        return self.value.replace("_", "-")
