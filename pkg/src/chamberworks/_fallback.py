"""Pure numpy versions of the hot kernels."""
from __future__ import annotations

import numpy as np


def hull_mask(signs: np.ndarray, seed: np.ndarray) -> np.ndarray:
    """Vertices lying in every closed root half-space that contains the seed.

    ``signs`` is (walls, vertices) with entries in {-1, 0, 1}.
    """
    s = signs[:, seed]
    no_neg = ~(s < 0).any(axis=1)
    no_pos = ~(s > 0).any(axis=1)
    bad = (no_neg[:, None] & (signs < 0)) | (no_pos[:, None] & (signs > 0))
    return ~bad.any(axis=0)


def rows_into(table: np.ndarray, cols: np.ndarray, mask: np.ndarray) -> np.ndarray:
    """Indices g with mask[table[g, c]] true for every c in ``cols``."""
    keep = np.ones(table.shape[0], dtype=bool)
    for c in cols:
        keep &= mask[table[:, c]]
    return np.nonzero(keep)[0]
