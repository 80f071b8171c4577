from __future__ import annotations

import math
from fractions import Fraction

import pytest

from chamberworks.complex import build_complex
from chamberworks.geodesy import (
    AntipodalInput, antipodes_in, balanced_sum, circumcenter, descent_circumcenter, distance_set,
    midpoint, pairs_weyl_equivalent, segment_trace,
)
from chamberworks.linalg import ANGLE_PI_2, ANGLE_PI_3, ExactAngle, angle, canonical_ray

import oracles

H = Fraction(1, 2)


def strs(angles):
    return [str(a) for a in angles]


def test_segment_trace_f4_121():
    cc = build_complex("F4")
    tr = segment_trace(cc, (0, 0, 0, -1), (H, H, H, -H))
    assert tr.vertex_types(cc) == "121"
    assert tr.is_singular()


def test_segment_trace_e6_232():
    cc = build_complex("E6")
    tr = segment_trace(cc, (-3, 3, 3, 3, 3, -1, -1, -1), (0, 0, 0, 0, 6, 2, 2, 2))
    assert tr.vertex_types(cc) == "232"


def test_segment_trace_inside_chamber():
    cc = build_complex("B3")
    ch = cc.fundamental_chamber()
    x = cc.face_point(ch)
    y = tuple(a + b for a, b in zip(x, cc.vertices[ch.vertices[0]]))
    tr = segment_trace(cc, x, y)
    assert tr.crossings == [] and tr.faces() == [ch, ch, ch]


def test_segment_trace_rejects_antipodes():
    cc = build_complex("B3")
    with pytest.raises(AntipodalInput):
        segment_trace(cc, (1, 0, 0), (-2, 0, 0))


def test_distance_sets():
    f4 = build_complex("F4")
    assert strs(distance_set(f4, 1, 1)) == ["0", "pi/3", "pi/2", "2pi/3", "pi"]
    e6 = build_complex("E6")
    assert strs(distance_set(e6, 2, 2)) == ["0", "arccos(1/4)", "2pi/3"]
    assert strs(distance_set(e6, 2, 6)) == ["pi/3", "arccos(-1/4)", "pi"]


def test_pairs_weyl_equivalent():
    f4 = build_complex("F4")
    a, b = (0, 0, 0, -1), (1, 0, 0, 0)
    assert pairs_weyl_equivalent(f4, (a, b), (a, b)) is not None
    ones = [f4.vertices[i] for i in range(f4.nvertices) if f4.vertex_labels[i] == 1]
    right = [(p, q) for p in ones[:6] for q in ones if angle(p, q) == ANGLE_PI_2]
    for p, q in right[:20]:
        assert pairs_weyl_equivalent(f4, (a, b), (p, q)) is not None
    e6 = build_complex("E6")
    v2 = (-3, 3, 3, 3, 3, -1, -1, -1)
    twos = [e6.vertices[i] for i in range(e6.nvertices) if e6.vertex_labels[i] == 2]
    far = [u for u in twos if str(angle(v2, u)) == "arccos(1/4)"]
    for p in twos[:4]:
        for q in twos:
            if str(angle(p, q)) == "arccos(1/4)":
                assert pairs_weyl_equivalent(e6, (v2, far[0]), (p, q)) is not None
    with pytest.raises(ValueError):
        pairs_weyl_equivalent(f4, (a, b), (a, (H, H, H, -H)))


def test_midpoints_e6():
    e6 = build_complex("E6")
    v1 = (1, 1, 1, 1, 1, -1, -1, -1)
    m = midpoint(e6, v1, (0, 0, 0, 2, 2, 0, 0, 0))
    assert m.direction == (1, 1, 1, 3, 3, -1, -1, -1) and m.label == 4
    v2, v6 = (-3, 3, 3, 3, 3, -1, -1, -1), (3, 3, 3, 3, 3, 1, 1, 1)
    a = midpoint(e6, v2, v6)
    b = midpoint(e6, v1, (-1, 1, 1, 1, 1, 1, 1, 1))
    assert a.direction == b.direction == (0, 1, 1, 1, 1, 0, 0, 0)
    assert midpoint(e6, v1, v1).direction == v1


def test_antipodes():
    f4 = build_complex("F4")
    for i in range(f4.nvertices):
        (j,) = antipodes_in(f4, i)
        assert f4.vertex_labels[j] == f4.vertex_labels[i]
    e6 = build_complex("E6")
    for i in range(e6.nvertices):
        if e6.vertex_labels[i] == 2:
            (j,) = antipodes_in(e6, i)
            assert e6.vertex_labels[j] == 6


def test_balanced_sum_uses_equal_norms():
    s = balanced_sum([(1, 0), (0, 3)])
    assert canonical_ray(s) == (1, 1)
    with pytest.raises(ValueError):
        balanced_sum([(1, 0), (1, 1)])


def test_circumcenter_trivial_cases():
    r = circumcenter([(1, 2, 2)])
    assert r.center == (1, 2, 2) and r.radius == ExactAngle(1, Fraction(1))
    r = circumcenter([(1, 0, 0), (0, 1, 0)])
    assert r.center == (1, 1, 0) and r.radius == ExactAngle(1, Fraction(1, 2))
    assert math.isclose(r.radius_radians, math.pi / 4)


def _sigma2_orthogonal_sixes():
    e6 = build_complex("E6")
    L = e6.link_of_vertex(e6.fundamental_index[2])
    six = [u for u in range(L.nvertices) if L.vertex_labels[u] == 6]
    for a in six:
        for b in six:
            for c in six:
                if a < b < c and L.angle(a, b) == L.angle(a, c) == L.angle(b, c) == ANGLE_PI_2:
                    return L, (a, b, c)
    raise AssertionError("no orthogonal triple")


def test_circumcenter_of_orthogonal_sixes_is_a_4_vertex():
    L, tri = _sigma2_orthogonal_sixes()
    r = circumcenter([L.vertices[u] for u in tri])
    assert r.certificate == "exact"
    assert L.vertex_labels[L.index_of(r.center)] == 4
    assert r.radius == ExactAngle(1, Fraction(1, 3))
    d = descent_circumcenter([L.vertices[u] for u in tri])
    assert abs(d.radius_radians - math.acos(1 / math.sqrt(3))) < 1e-8


def test_circumcenter_rejects_antipodal_pairs():
    with pytest.raises(AntipodalInput):
        circumcenter([(1, 0), (-1, 0)])


def test_float_oracle_agrees_with_exact_angle():
    cc = build_complex("F4")
    for i in range(0, cc.nvertices, 11):
        for j in range(0, cc.nvertices, 13):
            a = angle(cc.vertices[i], cc.vertices[j])
            assert abs(a.radians() - oracles.float_angle(cc.vertices[i], cc.vertices[j])) < 1e-7
    assert ANGLE_PI_3.radians() == pytest.approx(math.pi / 3)
