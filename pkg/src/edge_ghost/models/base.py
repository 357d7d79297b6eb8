import numpy as np
from pydantic import BaseModel as BasePydanticModel
from pydantic import ConfigDict


class BaseModel(BasePydanticModel):
    """Immutable value type; numpy fields are stored read-only."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


def readonly(values: np.ndarray, dtype: type | np.dtype | None = None) -> np.ndarray:
    """Return a private, non-writeable copy of `values`.

    Example:
        >>> grid = readonly(np.zeros((2, 2)))
        >>> grid.flags.writeable
        False
    """
    copy = np.array(values, dtype=dtype, copy=True)
    copy.setflags(write=False)
    return copy
