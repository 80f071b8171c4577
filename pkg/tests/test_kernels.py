from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chamberworks import _fallback, kernels
from chamberworks.complex import build_complex

_kernels = pytest.importorskip("chamberworks._kernels")


def test_backend_selected():
    assert kernels.BACKEND in ("cython", "numpy")


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(["B3", "F4", "D4"]), st.lists(st.integers(0, 10**6), min_size=1, max_size=6))
def test_hull_mask_matches_fallback(label, picks):
    cc = build_complex(label)
    signs = np.ascontiguousarray(cc.signs, dtype=np.int8)
    seed = np.array(sorted({p % cc.nvertices for p in picks}), dtype=np.int64)
    assert np.array_equal(_kernels.hull_mask(signs, seed), _fallback.hull_mask(signs, seed))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.booleans(), min_size=240, max_size=240), st.lists(st.integers(0, 239), min_size=1, max_size=4))
def test_rows_into_matches_fallback(mask, cols):
    cc = build_complex("F4")
    table = np.ascontiguousarray(cc.weyl.verts_perm.astype(np.int32))
    m = np.array(mask, dtype=np.bool_)
    c = np.array(cols, dtype=np.int64)
    assert np.array_equal(_kernels.rows_into(table, c, m), _fallback.rows_into(table, c, m))


def test_rows_into_short_table():
    table = np.array([[0, 1], [1, 0]], dtype=np.int16)
    mask = np.array([True, False])
    assert _kernels.rows_into(table, np.array([0], dtype=np.int64), mask).tolist() == [0]
    assert _fallback.rows_into(table, np.array([0], dtype=np.int64), mask).tolist() == [0]
