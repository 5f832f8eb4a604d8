"""Small internal helpers shared across modules."""

import numpy as np


def as_readonly(values, dtype=float) -> np.ndarray:
    """Copy to a contiguous array of the given dtype and lock it."""
    out = np.array(values, dtype=dtype, copy=True)
    out.flags.writeable = False
    return out
