from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chamberworks.linalg import (
    ANGLE_0, ANGLE_2PI_3, ANGLE_PI, ANGLE_PI_2, ANGLE_PI_3, ExactAngle, RationalCone, angle,
    canonical_ray, feasible_point, nullspace, primitive_line, rank, reflect, relint_meets_cone, solve,
    sqrt_fraction, vec,
)

ints = st.integers(-6, 6)
vectors = st.lists(ints, min_size=3, max_size=3).filter(any)


def test_angle_identity():
    assert angle((1, 0, 0), (1, 0, 0)) == ANGLE_0


def test_angle_arccos_quarter():
    a = angle((-3, 3, 3, 3, 3, -1, -1, -1), (0, 0, 0, 0, 6, 2, 2, 2))
    assert (a.cos_sign, a.cos_squared) == (1, Fraction(1, 16))
    assert str(a) == "arccos(1/4)"


def test_angle_pi_3():
    assert angle((-3, 3, 3, 3, 3, -1, -1, -1), (3, 3, 3, 3, 3, 1, 1, 1)) == ANGLE_PI_3


def test_named_angles_and_order():
    assert [str(x) for x in (ANGLE_0, ANGLE_PI_3, ANGLE_PI_2, ANGLE_2PI_3, ANGLE_PI)] == [
        "0", "pi/3", "pi/2", "2pi/3", "pi"]
    assert ANGLE_0 < ANGLE_PI_3 < ANGLE_PI_2 < ANGLE_2PI_3 < ANGLE_PI
    assert str(ExactAngle.from_cos(Fraction(-1, 4))) == "arccos(-1/4)"
    assert str(ExactAngle(1, Fraction(1, 3))) == "arccos(sqrt(1/3))"


def test_angle_rejects_zero():
    with pytest.raises(ValueError):
        angle((0, 0), (1, 0))
    with pytest.raises(ValueError):
        ExactAngle(0, Fraction(1, 2))


@settings(max_examples=200, deadline=None)
@given(vectors, vectors, vectors, vectors)
def test_angle_order_matches_float(u, v, x, y):
    def rad(p, q):
        c = sum(a * b for a, b in zip(p, q)) / math.sqrt(sum(a * a for a in p) * sum(b * b for b in q))
        return math.acos(max(-1.0, min(1.0, c)))

    a, b = angle(u, v), angle(x, y)
    fa, fb = rad(u, v), rad(x, y)
    if abs(fa - fb) > 1e-9:
        assert (a < b) == (fa < fb)
    assert abs(a.radians() - fa) < 1e-9


@settings(max_examples=100, deadline=None)
@given(vectors, st.integers(1, 5))
def test_canonical_ray_scale_invariant(v, k):
    r = canonical_ray(v)
    assert canonical_ray([k * a for a in v]) == r
    assert canonical_ray([Fraction(a, k) for a in v]) == r
    assert math.gcd(*r) == 1
    assert primitive_line([-a for a in v]) == primitive_line(v)


@settings(max_examples=100, deadline=None)
@given(vectors, vectors)
def test_reflection_is_involution(v, r):
    w = reflect(reflect(v, r), r)
    assert w == vec(v)


def test_rank_nullspace_solve():
    rows = [(1, 2, 3), (2, 4, 6), (0, 1, 1)]
    assert rank(rows) == 2
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    assert all(sum(a * b for a, b in zip(r, ns[0])) == 0 for r in rows)
    assert solve([[1, 1], [1, -1]], [3, 1]) == (2, 1)
    assert solve([[1, 1], [1, 1]], [1, 2]) is None
    assert sqrt_fraction(Fraction(9, 16)) == Fraction(3, 4)
    assert sqrt_fraction(Fraction(1, 2)) is None


def test_feasible_point_is_feasible():
    a = [[1, 1, 0], [0, 1, 1]]
    b = [2, 3]
    x = feasible_point(a, b)
    assert x is not None and all(t >= 0 for t in x)
    assert [sum(r * t for r, t in zip(row, x)) for row in a] == b
    assert feasible_point([[1, 1]], [-1]) is None


def test_relint_meets_cone_examples():
    e1, e2 = (1, 0), (0, 1)
    assert relint_meets_cone([e1], RationalCone((e1,)))
    assert not relint_meets_cone([e2], RationalCone((e1,)))
    assert relint_meets_cone([(1, 1)], RationalCone((e1, e2)))


def test_relint_of_edge_against_ray():
    # the open edge e1e2 misses the ray e1 but meets the ray e1+e2
    assert not relint_meets_cone([(1, 0, 0), (0, 1, 0)], RationalCone(((1, 0, 0),)))
    assert relint_meets_cone([(1, 0, 0), (0, 1, 0)], RationalCone(((1, 1, 0),)))


def test_relint_rejects_non_pointed_by_default():
    cone = RationalCone(((1, 0), (-1, 0)))
    assert not cone.is_pointed()
    with pytest.raises(ValueError):
        relint_meets_cone([(1, 0)], cone)
    assert relint_meets_cone([(1, 0)], cone, require_pointed=False)


@settings(max_examples=60, deadline=None)
@given(st.lists(vectors, min_size=1, max_size=4), vectors)
def test_cone_contains_its_generators_sums(gens, extra):
    cone = RationalCone(tuple(gens))
    s = [sum(g[i] for g in gens) for i in range(3)]
    assert cone.contains(s)
    for g in gens:
        assert cone.contains(g)
