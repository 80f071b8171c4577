"""Exact spherical geodesics: traces, distances, midpoints, antipodes and
circumcenters.

A segment between rational points x, y (not antipodal) is the radial image
of the chord (1 - s) x + s y, 0 <= s <= 1. The chord meets the wall with
normal n where (1 - s)<x, n> + s<y, n> = 0, so all crossing parameters are
rational.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import nnls

from .complex import CoxeterComplex, Face
from .coxeter import WeylElement, transporter
from .linalg import (
    ANGLE_PI_2,
    ExactAngle,
    RationalCone,
    sqrt_fraction,
    add,
    angle,
    canonical_ray,
    dot,
    norm2,
    rank,
    scale,
    solve,
    vec,
)


class AntipodalInput(ValueError):
    pass


def _antipodal(x: Sequence, y: Sequence) -> bool:
    return rank([x, y]) == 1 and dot(x, y) < 0


@dataclass
class SegmentTrace:
    endpoints: tuple[tuple, tuple]
    crossings: list[tuple[Fraction, Face]]
    interval_faces: list[Face]
    start_face: Face
    end_face: Face

    def faces(self) -> list[Face]:
        """Faces met in order: start, then alternating intervals and crossings."""
        out = [self.start_face]
        for k, f in enumerate(self.interval_faces):
            out.append(f)
            out.append(self.crossings[k][1] if k < len(self.crossings) else self.end_face)
        return out

    def vertices(self) -> list[int]:
        out: list[int] = []
        for f in self.faces():
            if len(f) == 1 and (not out or out[-1] != f.vertices[0]):
                out.append(f.vertices[0])
        return out

    def vertex_types(self, cc: CoxeterComplex) -> str:
        return "".join(str(cc.vertex_labels[v]) for v in self.vertices())

    def is_singular(self) -> bool:
        """True iff every open piece lies in a face of dimension <= 1."""
        return all(len(f) <= 2 for f in self.interval_faces)


def segment_trace(cc: CoxeterComplex, x: Sequence, y: Sequence) -> SegmentTrace:
    x, y = vec(x), vec(y)
    if _antipodal(x, y):
        raise AntipodalInput("antipodal endpoints: the geodesic is not unique")
    params = set()
    for n in cc.walls:
        a, b = dot(x, n), dot(y, n)
        if (a > 0 and b < 0) or (a < 0 and b > 0):
            params.add(Fraction(a, a - b))
    ss = sorted(params)

    def point(s):
        return tuple((1 - s) * p + s * q for p, q in zip(x, y))

    if rank([x, y]) == 1:
        f = cc.carrier_face(x)
        return SegmentTrace((x, y), [], [f], f, f)
    crossings = [(s, cc.carrier_face(point(s))) for s in ss]
    bounds = [Fraction(0)] + ss + [Fraction(1)]
    intervals = [cc.carrier_face(point((lo + hi) / 2)) for lo, hi in zip(bounds, bounds[1:])]
    return SegmentTrace((x, y), crossings, intervals, cc.carrier_face(x), cc.carrier_face(y))


def distance_set(cc: CoxeterComplex, label_i, label_j) -> list[ExactAngle]:
    """Sorted angles from the fundamental i-vertex to every j-vertex."""
    if label_i not in cc.fundamental_index or label_j not in cc.fundamental_index:
        raise ValueError("unknown vertex label")
    v = cc.vertices[cc.fundamental_index[label_i]]
    out = {angle(v, cc.vertices[u]) for u, l in enumerate(cc.vertex_labels) if l == label_j}
    return sorted(out)


def pairs_weyl_equivalent(cc: CoxeterComplex, pair1: Sequence, pair2: Sequence) -> WeylElement | None:
    """Some w in W with w(pair1[k]) on the ray of pair2[k], or None."""
    (a, b), (c, d) = pair1, pair2
    types1 = (cc.vertex_type(a), cc.vertex_type(b))
    types2 = (cc.vertex_type(c), cc.vertex_type(d))
    if types1 != types2:
        raise ValueError(f"type pairs differ: {types1} vs {types2}")
    if angle(a, b) != angle(c, d):
        raise ValueError("pairs have different distances")
    w = transporter(cc.rs, [vec(a), vec(b)], [vec(c), vec(d)])
    if w is not None:
        for s, t in ((a, c), (b, d)):
            if canonical_ray(w.apply(s)) != canonical_ray(t):
                raise AssertionError("transporter returned a wrong element")
    return w


def rescale(x: Sequence, y: Sequence) -> tuple[tuple, tuple] | None:
    """Positive rational multiples of x, y with equal squared norms, if any."""
    q = sqrt_fraction(Fraction(norm2(x)) / norm2(y))
    if q is None:
        return None
    return vec(x), scale(q, y)


@dataclass
class Midpoint:
    direction: tuple
    face: Face
    label: object = None


def midpoint(cc: CoxeterComplex, x: Sequence, y: Sequence) -> Midpoint:
    x, y = vec(x), vec(y)
    if _antipodal(x, y):
        raise AntipodalInput("antipodal points have no unique midpoint")
    if norm2(x) != norm2(y):
        pair = rescale(x, y)
        if pair is None:
            raise ValueError("no common rational rescaling: the midpoint is irrational")
        x, y = pair
    m = add(x, y)
    f = cc.carrier_face(m)
    lab = cc.vertex_labels[f.vertices[0]] if len(f) == 1 else None
    return Midpoint(tuple(canonical_ray(m)), f, lab)


def antipodes_in(cc: CoxeterComplex, v: Sequence | int, K: Iterable[int] | None = None) -> list[int]:
    """Vertices u of K (all vertices by default) at angle pi from v."""
    i = v if isinstance(v, (int, np.integer)) else cc.index_of(v)
    verts = range(cc.nvertices) if K is None else (K.vertices if hasattr(K, "vertices") and not isinstance(K, Face) else K)
    target = tuple(-a for a in cc.vertices[i])
    return sorted(u for u in verts if cc.vertices[u] == target)


# --------------------------------------------------------------------------
# circumcenters


@dataclass
class CircumcenterResult:
    center: object
    radius: object
    certificate: str
    tolerance: float = 0.0
    at_least_right_angle: bool = False
    candidates_tried: int = 0
    extra: dict = field(default_factory=dict)

    @property
    def radius_radians(self) -> float:
        return self.radius.radians() if isinstance(self.radius, ExactAngle) else float(self.radius)

    def center_float(self) -> np.ndarray:
        c = np.array([float(a) for a in self.center])
        return c / np.linalg.norm(c)


def _max_angle(c: Sequence, points: Sequence[Sequence]) -> ExactAngle:
    return max(angle(c, p) for p in points)


def certify_center(c: Sequence, points: Sequence[Sequence]) -> ExactAngle | None:
    """Radius if ``c`` is provably the circumcenter (radius < pi/2), else None.

    The optimality condition is that c lies in the cone spanned by the
    points farthest from it.
    """
    if all(a == 0 for a in c):
        return None
    angs = [angle(c, p) for p in points]
    rad = max(angs)
    if not rad < ANGLE_PI_2:
        return None
    active = [vec(p) for p, a in zip(points, angs) if a == rad]
    if not RationalCone(tuple(active)).contains(c):
        return None
    return rad


def _common_norm(points: Sequence[Sequence]) -> list[tuple] | None:
    base = vec(points[0])
    out = [base]
    for p in points[1:]:
        pair = rescale(base, p)
        if pair is None:
            return None
        out.append(pair[1])
    return out


def balanced_sum(points: Sequence[Sequence]) -> tuple:
    """Sum of positive multiples of ``points`` sharing one squared norm.

    For points of a common W-orbit this is the direction of their spherical
    barycenter.
    """
    scaled = _common_norm(points)
    if scaled is None:
        raise ValueError("points admit no common rational rescaling")
    s = scaled[0]
    for t in scaled[1:]:
        s = add(s, t)
    return s


def _exact_min_norm(points: Sequence[tuple]) -> tuple | None:
    """Exact min-norm point of conv(points) by active-set enumeration."""
    n = len(points)
    dim = len(points[0])
    for k in range(1, min(n, dim + 1) + 1):
        for S in combinations(range(n), k):
            A = [points[i] for i in S]
            # [G 1; 1^T 0] [lam; t] = [0; 1]
            rows = [[dot(a, b) for b in A] + [Fraction(1)] for a in A] + [[Fraction(1)] * k + [Fraction(0)]]
            sol = solve(rows, [Fraction(0)] * k + [Fraction(1)])
            if sol is None:
                continue
            lam = sol[:k]
            if any(l < 0 for l in lam):
                continue
            p = tuple(sum(l * a[c] for l, a in zip(lam, A)) for c in range(dim))
            p2 = dot(p, p)
            if all(dot(p, q) >= p2 for q in points):
                return p
    return None


def _subset_sum_candidates(points, limit=4):
    scaled = _common_norm(points)
    base = scaled if scaled is not None else [vec(p) for p in points]
    for k in range(1, min(limit, len(base)) + 1):
        for S in combinations(base, k):
            s = S[0]
            for t in S[1:]:
                s = add(s, t)
            if any(s):
                yield s


def exact_circumcenter(points: Sequence[Sequence]) -> CircumcenterResult | None:
    pts = [vec(p) for p in points]
    tried = 0
    scaled = _common_norm(pts)
    if scaled is not None and len(pts) <= 16:
        p = _exact_min_norm(scaled)
        tried += 1
        if p is not None and any(p):
            rad = certify_center(p, pts)
            if rad is not None:
                return CircumcenterResult(tuple(canonical_ray(p)), rad, "exact", 0.0, False, tried)
        if p is not None and not any(p):
            return CircumcenterResult(None, ANGLE_PI_2, "exact", 0.0, True, tried)
    for c in _subset_sum_candidates(pts):
        tried += 1
        rad = certify_center(c, pts)
        if rad is not None:
            return CircumcenterResult(tuple(canonical_ray(c)), rad, "exact", 0.0, False, tried)
    return None


def _unit(points) -> np.ndarray:
    u = np.array([[float(a) for a in p] for p in points])
    return u / np.linalg.norm(u, axis=1, keepdims=True)


def _slerp(c, u, t):
    cosw = float(np.clip(c @ u, -1.0, 1.0))
    w = math.acos(cosw)
    if w < 1e-15:
        return c
    out = (math.sin((1 - t) * w) * c + math.sin(t * w) * u) / math.sin(w)
    return out / np.linalg.norm(out)


def descent_circumcenter(points: Sequence[Sequence], iters: int = 4000, tol: float = 1e-10) -> CircumcenterResult:
    """Geodesic subgradient descent on the max-angle function, then a polish
    by the min-norm point of the convex hull of the unit vectors."""
    U = _unit(points)
    c = U.mean(axis=0)
    if np.linalg.norm(c) < 1e-12:
        c = U[0].copy()
    c /= np.linalg.norm(c)
    best, best_val = c, float(np.max(np.arccos(np.clip(U @ c, -1, 1))))
    for k in range(iters):
        far = int(np.argmin(U @ c))
        c = _slerp(c, U[far], 1.0 / (k + 2))
        val = float(np.max(np.arccos(np.clip(U @ c, -1, 1))))
        if val < best_val:
            best, best_val = c, val
    # min over lam >= 0 of |U^T lam|^2 + (sum lam - 1)^2 is attained at a
    # positive multiple of the min-norm convex combination
    A = np.vstack([U.T, np.ones(len(U))])
    b = np.zeros(A.shape[0])
    b[-1] = 1.0
    lam, _ = nnls(A, b)
    p = U.T @ (lam / lam.sum())
    if np.linalg.norm(p) < 1e-12:
        return CircumcenterResult(None, math.pi / 2, "numeric", tol, True)
    polished = p / np.linalg.norm(p)
    pol_val = float(np.max(np.arccos(np.clip(U @ polished, -1, 1))))
    if pol_val <= best_val + tol:
        best, best_val = polished, pol_val
    # KKT residual: distance of the center from the cone of near-active points
    act = U[np.arccos(np.clip(U @ best, -1, 1)) >= best_val - 1e-9]
    mu, res = nnls(act.T, best)
    return CircumcenterResult(best, best_val, "numeric", max(tol, float(res)), best_val >= math.pi / 2,
                              extra={"descent_value": val})


def circumcenter(points: Sequence[Sequence], *, numeric_only: bool = False) -> CircumcenterResult:
    pts = [vec(p) for p in points]
    if not pts:
        raise ValueError("empty point set")
    for a, b in combinations(pts, 2):
        if _antipodal(a, b):
            raise AntipodalInput("point set contains an antipodal pair")
    if not numeric_only:
        res = exact_circumcenter(pts)
        if res is not None:
            return res
    return descent_circumcenter(pts)
