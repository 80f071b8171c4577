"""Kernel selection: the compiled extension when importable, numpy otherwise.

Set CHAMBERWORKS_PURE=1 to force the numpy versions.
"""
from __future__ import annotations

import os

import numpy as np

from . import _fallback

BACKEND = "numpy"
_impl = _fallback
if os.environ.get("CHAMBERWORKS_PURE") != "1":
    try:
        from . import _kernels as _impl  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        _impl = _fallback


def hull_mask(signs: np.ndarray, seed) -> np.ndarray:
    seed = np.ascontiguousarray(np.asarray(seed, dtype=np.int64).reshape(-1))
    return _impl.hull_mask(np.ascontiguousarray(signs, dtype=np.int8), seed)


def rows_into(table: np.ndarray, cols, mask: np.ndarray) -> np.ndarray:
    cols = np.ascontiguousarray(np.asarray(cols, dtype=np.int64).reshape(-1))
    mask = np.ascontiguousarray(mask, dtype=np.bool_)
    if table.dtype not in (np.int16, np.int32):
        table = table.astype(np.int32)
    return _impl.rows_into(np.ascontiguousarray(table), cols, mask)
