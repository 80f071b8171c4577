from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
import pytest

from chamberworks import center
from chamberworks.center import (
    COUNTEREXAMPLE, FIXED_FACE, SUBBUILDING, Stabilizer, exhaustive_sweep, fixed_face_in,
    invariant_set_radius_check, sampled_sweep, stabilizer, verdict,
)
from chamberworks.complex import build_complex
from chamberworks.convexity import NotConvex, Subcomplex, simplicial_convex_hull
from chamberworks.linalg import ANGLE_PI_2, ExactAngle


def _brute_stabilizer_order(cc, K):
    """Oracle: count all Aut permutations mapping K's face set onto itself."""
    P = cc.aut.all_perms()
    faces = K.faces
    n = 0
    for p in P:
        if all(tuple(sorted(int(p[v]) for v in f)) in faces for f in faces):
            n += 1
    return n


def test_stabilizer_of_whole_complex():
    cc = build_complex("F4")
    assert stabilizer(cc, Subcomplex.whole(cc)).order == cc.aut.order == 2304


@pytest.mark.parametrize("k", [0, 17, 500, 1151])
def test_stabilizer_of_f4_chamber(k):
    cc = build_complex("F4")
    K = Subcomplex(cc, [cc.chambers()[k]])
    st = stabilizer(cc, K)
    assert st.order in (1, 2)
    assert st.order == _brute_stabilizer_order(cc, K)


def test_stabilizer_of_e6_2_vertex():
    cc = build_complex("E6")
    v = cc.fundamental_index[2]
    st = stabilizer(cc, Subcomplex(cc, [(v,)]))
    assert st.inner_order == 51840 // 27
    assert st.order == st.inner_order


def test_fixed_face_trivial_group():
    cc = build_complex("B3")
    K = simplicial_convex_hull(cc, [cc.chambers()[0], cc.chambers()[20]])
    ident = Stabilizer(cc, np.zeros(1, dtype=np.int64), np.zeros(1, dtype=np.int64))
    f = fixed_face_in(cc, K, ident)
    assert f is not None and K.contains_face(f)


def test_fixed_face_of_chamber_is_chamber():
    cc = build_complex("B3")
    ch = cc.chambers()[5]
    K = Subcomplex(cc, [ch])
    assert fixed_face_in(cc, K, stabilizer(cc, K)).vertices == ch


def test_fixed_face_of_swapped_chambers_is_panel():
    cc = build_complex("A3")
    a = cc.chambers()[0]
    b = next(c for c in cc.chambers() if len(set(a) & set(c)) == 2)
    K = Subcomplex(cc, [a, b])
    G = stabilizer(cc, K)
    assert G.order >= 2
    assert fixed_face_in(cc, K, G).vertices == tuple(sorted(set(a) & set(b)))


def test_verdict_examples():
    cc = build_complex("B3")
    v = verdict(cc, Subcomplex.whole(cc))
    assert v.kind == SUBBUILDING and v.to_json()["witness"] is None
    ch = cc.chambers()[0]
    v = verdict(cc, Subcomplex(cc, [ch]))
    assert v.kind == FIXED_FACE and set(v.face) <= set(ch)
    with pytest.raises(NotConvex):
        verdict(cc, Subcomplex(cc, [cc.chambers()[0], cc.chambers()[40]]))


def test_verdict_witness_is_fixed_by_stabilizer():
    cc = build_complex("F4")
    K = simplicial_convex_hull(cc, [cc.chambers()[0], cc.chambers()[300]])
    v = verdict(cc, K)
    assert v.kind in (FIXED_FACE, SUBBUILDING)
    if v.kind == FIXED_FACE:
        G = stabilizer(cc, K)
        imgs = np.sort(G.images(list(v.face)), axis=1)
        assert (imgs == np.array(sorted(v.face))).all()


def test_radius_check_examples():
    c, r = invariant_set_radius_check(None, [(1, 0, 0)])
    assert r == ExactAngle(1, Fraction(1))
    c, r = invariant_set_radius_check(None, [(1, 0, 0), (0, 1, 0)])
    assert r == ExactAngle(1, Fraction(1, 2))
    e6 = build_complex("E6")
    L = e6.link_of_vertex(e6.fundamental_index[2])
    six = [u for u in range(L.nvertices) if L.vertex_labels[u] == 6]
    tri = next((a, b, c) for a in six for b in six for c in six
               if a < b < c and L.angle(a, b) == L.angle(b, c) == L.angle(a, c) == ANGLE_PI_2)
    c, r = invariant_set_radius_check(L, list(tri))
    assert L.vertex_labels[L.index_of(c)] == 4
    assert r < ANGLE_PI_2 and math.isclose(r.radians(), math.acos(1 / math.sqrt(3)))
    with pytest.raises(ValueError):
        invariant_set_radius_check(None, [(1, 0), (-1, 1)])


def test_exhaustive_sweep_a3():
    res = exhaustive_sweep(build_complex("A3"))
    assert res.ok and res.coverage == res.expected_coverage == 74 * 74
    assert res.counts.get(COUNTEREXAMPLE, 0) == 0


def test_sampled_sweep_is_deterministic_and_thread_independent(monkeypatch):
    cc = build_complex("B3")
    monkeypatch.setenv("CHAMBERWORKS_THREADS", "1")
    a = sampled_sweep(cc, 60, seed=3).to_json()
    monkeypatch.setenv("CHAMBERWORKS_THREADS", "4")
    b = sampled_sweep(cc, 60, seed=3).to_json()
    assert a == b
    assert sampled_sweep(cc, 60, seed=4).to_json() != a or a["distinct_hulls"] <= 1


def test_threads_env(monkeypatch):
    monkeypatch.setenv("CHAMBERWORKS_THREADS", "bogus")
    assert center.threads() == 1
    monkeypatch.setenv("CHAMBERWORKS_THREADS", "3")
    assert center.threads() == 3


def test_e7_stabilizer_unsupported():
    from chamberworks.complex import CoxeterComplex
    from chamberworks.coxeter import build_root_system

    cc = CoxeterComplex(build_root_system("E7"))
    with pytest.raises(center.Unsupported):
        stabilizer(cc, Subcomplex(cc, [(0,)]))
