"""Convex subcomplexes: face-pair hulls, simplicial convex hulls, convexity,
subbuilding and interior-vertex tests.

Two hull routes are provided and cross-checked:

* ``roots``: the hull is the intersection of all closed root half-spaces
  containing the seed. A vertex lies in it iff it is on the seed's side of
  every wall that does not separate seed vertices; the hull is the full
  subcomplex on those vertices.
* ``closure``: the least fixed point of face-pair conic hulls, each decided
  by exact LP (face relative interior meets the cone of the pair).
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .complex import CoxeterComplex, Face, _orthogonal_basis
from .linalg import (
    RationalCone,
    angle,
    canonical_ray,
    dot,
    nullspace,
    project_out,
    rank,
    relint_meets_cone,
    vec,
)


class NotConvex(ValueError):
    pass


class AntipodalPair(ValueError):
    pass


def _close_down(faces: Iterable[Sequence[int]]) -> frozenset:
    out = set()
    for f in faces:
        f = tuple(sorted(f))
        if f in out:
            continue
        for k in range(1, len(f) + 1):
            out.update(combinations(f, k))
    return frozenset(out)


class Subcomplex:
    """A set of faces of ``cc`` closed under taking faces.

    Full subcomplexes (every face whose vertices are all present) are stored
    by their vertex set; their faces are enumerated on demand.
    """

    def __init__(self, cc: CoxeterComplex, faces: Iterable[Sequence[int]] | None = None, *,
                 vertices: Iterable[int] | None = None):
        self.cc = cc
        self._convex = False
        if (faces is None) == (vertices is None):
            raise ValueError("give exactly one of faces or vertices")
        if vertices is not None:
            self._vertices = frozenset(int(v) for v in vertices)
            self._faces = None
            self.full = True
        else:
            fs = _close_down(faces)
            for f in fs:
                if len(f) > 1 and not cc.is_simplex(f):
                    raise ValueError(f"{f} is not a face")
            self._faces = fs
            self._vertices = frozenset(f[0] for f in fs if len(f) == 1)
            self.full = False

    @classmethod
    def whole(cls, cc: CoxeterComplex) -> "Subcomplex":
        return cls(cc, vertices=range(cc.nvertices))

    @property
    def vertices(self) -> frozenset:
        return self._vertices

    @property
    def faces(self) -> frozenset:
        if self._faces is None:
            self._faces = frozenset(self.cc.faces_on(self._vertices))
        return self._faces

    def maximal_faces(self) -> list[tuple]:
        fs = self.faces
        out = []
        for f in sorted(fs, key=lambda f: (-len(f), f)):
            if not any(set(f) < set(g) for g in out):
                out.append(f)
        return sorted(out)

    @property
    def dim(self) -> int:
        if not self._vertices:
            return -1
        if self._convex:
            # a convex subcomplex is a polyhedral cone; it has a face of full dimension
            return rank([self.cc.vertices[v] for v in self._vertices]) - 1
        return max(len(f) for f in self.faces) - 1

    @property
    def mask(self) -> np.ndarray:
        m = np.zeros(self.cc.nvertices, dtype=bool)
        m[list(self._vertices)] = True
        return m

    def contains_face(self, f: Sequence[int]) -> bool:
        f = tuple(sorted(f.vertices if isinstance(f, Face) else f))
        if self.full:
            return set(f) <= self._vertices and self.cc.is_simplex(f)
        return f in self._faces

    def contains_point(self, p: Sequence) -> bool:
        return self.contains_face(self.cc.carrier_face(p))

    def canonical_faces(self) -> list[tuple]:
        return sorted(self.faces, key=lambda f: (len(f), f))

    def __eq__(self, other):
        if not isinstance(other, Subcomplex) or other.cc is not self.cc:
            return NotImplemented
        if self.full and other.full:
            return self._vertices == other._vertices
        return self.faces == other.faces

    def __hash__(self):
        return hash(self._vertices)

    def __le__(self, other: "Subcomplex") -> bool:
        if self.full and other.full:
            return self._vertices <= other._vertices
        return all(other.contains_face(f) for f in self.faces)

    def __len__(self) -> int:
        return len(self.faces)

    def __repr__(self):
        return f"Subcomplex({self.cc.type_label}, vertices={len(self._vertices)})"

    def image(self, perm: Sequence[int]) -> "Subcomplex":
        if self.full:
            return Subcomplex(self.cc, vertices=(perm[v] for v in self._vertices))
        return Subcomplex(self.cc, [tuple(perm[v] for v in f) for f in self._faces])

    def to_json(self) -> dict:
        return {"complex": {"type": self.cc.type_label, "rank": len(self.cc.rs.labels)},
                "faces": [list(f) for f in self.canonical_faces()]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))


def subcomplex_from_json(cc: CoxeterComplex, data: dict) -> Subcomplex:
    faces = data["faces"]
    if not isinstance(faces, list) or not all(isinstance(f, list) and f for f in faces):
        raise ValueError("faces must be a list of nonempty index lists")
    for f in faces:
        for v in f:
            if not isinstance(v, int) or not 0 <= v < cc.nvertices:
                raise ValueError(f"vertex index {v!r} out of range")
    return Subcomplex(cc, [tuple(f) for f in faces])


# --------------------------------------------------------------------------
# hulls


def _seed_vertices(seed) -> list[int]:
    if isinstance(seed, Subcomplex):
        return sorted(seed.vertices)
    out = set()
    for f in seed:
        out.update(f.vertices if isinstance(f, Face) else ([f] if isinstance(f, (int, np.integer)) else f))
    return sorted(int(v) for v in out)


def root_hull_vertices(cc: CoxeterComplex, vertices: Sequence[int]) -> np.ndarray:
    if len(vertices) == 0:
        return np.zeros(cc.nvertices, dtype=bool)
    return kernels.hull_mask(cc.signs, np.asarray(vertices, dtype=np.int64))


def _has_antipodal_pair(cc: CoxeterComplex, verts: Sequence[int]) -> bool:
    vs = set(verts)
    return any(cc.antipode_index[v] in vs for v in vs)


def hull_of_face_pair(cc: CoxeterComplex, sigma, tau, *, allow_antipodal: bool = False,
                      known: frozenset | set = frozenset()) -> Subcomplex:
    """Faces whose relative interior meets cone(sigma + tau), closed downwards.

    With antipodal vertices present the cone is not pointed. Cancelling each
    pair +-a shows it is the union of the cones of the antipode-free vertex
    selections, so the same LP still gives the hull; callers opt in with
    ``allow_antipodal``. Faces in ``known`` are taken as already present and
    are not tested (the closure passes its current face set).
    """
    s = tuple(sigma.vertices if isinstance(sigma, Face) else sigma)
    t = tuple(tau.vertices if isinstance(tau, Face) else tau)
    verts = sorted(set(s) | set(t))
    if not allow_antipodal and _has_antipodal_pair(cc, verts):
        raise AntipodalPair("face pair contains antipodal vertices")
    cone = RationalCone(tuple(vec(cc.vertices[v]) for v in verts))
    candidates = cc.faces_within(root_hull_vertices(cc, verts))
    covered: set = set(known)
    hit = []
    for f in sorted(candidates, key=lambda f: (-len(f), f)):
        if f in covered:
            continue
        if relint_meets_cone([cc.vertices[v] for v in f], cone, require_pointed=False):
            hit.append(f)
            for k in range(1, len(f)):
                covered.update(combinations(f, k))
    return Subcomplex(cc, hit + [s, t])


@dataclass
class HullStats:
    rounds: int = 0
    pairs: int = 0
    antipodal_pairs: int = 0


def closure_hull(cc: CoxeterComplex, seed, stats: HullStats | None = None) -> Subcomplex:
    """Least fixed point of face-pair hulls over the current maximal faces."""
    stats = stats if stats is not None else HullStats()
    if isinstance(seed, Subcomplex):
        faces = set(seed.faces)
    else:
        faces = set(_close_down(f.vertices if isinstance(f, Face) else f for f in seed))
    done: set = set()
    while True:
        stats.rounds += 1
        current = Subcomplex(cc, faces)
        maximal = current.maximal_faces()
        new = set(faces)
        for a, b in combinations(maximal, 2):
            key = (a, b)
            if key in done:
                continue
            done.add(key)
            if _has_antipodal_pair(cc, set(a) | set(b)):
                stats.antipodal_pairs += 1
            stats.pairs += 1
            new |= hull_of_face_pair(cc, a, b, allow_antipodal=True, known=new).faces
        if new == faces:
            return current
        faces = new


def simplicial_convex_hull(cc: CoxeterComplex, seed, *, method: str = "roots") -> Subcomplex:
    """Smallest convex subcomplex containing the seed faces."""
    if method == "closure":
        return closure_hull(cc, seed)
    if method != "roots":
        raise ValueError(f"unknown hull method {method!r}")
    mask = root_hull_vertices(cc, _seed_vertices(seed))
    K = Subcomplex(cc, vertices=np.nonzero(mask)[0].tolist())
    K._convex = True
    return K


def is_convex(cc: CoxeterComplex, K: Subcomplex, *, method: str = "roots") -> bool:
    hull = simplicial_convex_hull(cc, K, method=method)
    if hull.vertices != K.vertices:
        return False
    return K.full or K.faces == hull.faces


def _require_convex(cc, K):
    if not is_convex(cc, K):
        raise NotConvex("subcomplex is not convex")


def is_subbuilding(cc: CoxeterComplex, K: Subcomplex, *, check: bool = True) -> bool:
    """Every vertex of the convex subcomplex K has its antipode in K."""
    if check:
        _require_convex(cc, K)
    vs = K.vertices
    return all(int(cc.antipode_index[v]) in vs for v in vs)


def is_singular_sphere(cc: CoxeterComplex, K: Subcomplex) -> bool:
    """K is the set of all vertices on a singular subspace (top-sphere oracle)."""
    vs = sorted(K.vertices)
    if not vs:
        return False
    span = [cc.vertices[v] for v in vs]
    d = rank(span)
    perp = [r for r in cc.rs.roots if all(dot(r, u) == 0 for u in span)]
    if (rank(perp) if perp else 0) != len(cc.rs.simple_roots) - d:
        return False
    comp = nullspace(span, cc.rs.ambient_dim)
    inside = {i for i, u in enumerate(cc.vertices) if all(dot(c, u) == 0 for c in comp)}
    return inside == set(vs)


def vertex_link_set(cc: CoxeterComplex, K: Subcomplex, v: int, link) -> set[int]:
    """Link vertices of Sigma_v K inside the link complex of v."""
    rows = cc.conformal_rows([v])[0]
    return {link.from_ambient[u] for u in K.vertices if u != v and rows[u]}


def is_interior_vertex(cc: CoxeterComplex, K: Subcomplex, v: int) -> bool:
    """Sigma_v K is a subbuilding of the link of v (the empty link counts as one)."""
    if v not in K.vertices:
        raise ValueError("vertex not in K")
    if len(cc.rs.labels) == 1:
        return True
    link = cc.link_of_vertex(v)
    sub = Subcomplex(link, vertices=vertex_link_set(cc, K, v, link))
    return is_subbuilding(link, sub, check=False)


def is_interior_vertex_star(cc: CoxeterComplex, K: Subcomplex, v: int) -> bool:
    """Independent route: compare projected star rays directly in the ambient space."""
    basis = _orthogonal_basis([cc.vertices[v]])
    rows = cc.conformal_rows([v])[0]
    star = [u for u in K.vertices if u != v and rows[u]]
    rays = {canonical_ray(project_out(cc.vertices[u], basis)) for u in star}
    return all(tuple(-a for a in r) in rays for r in rays)


def antipode_propagation_check(cc: CoxeterComplex, K: Subcomplex, x1: Sequence, x2: Sequence,
                               z: Sequence, zhat: Sequence) -> tuple[bool, list]:
    """Given z inside the segment x1x2 of K and an antipode of z in K, find
    antipodes of x1 and x2 in K."""
    x1, x2, z, zhat = vec(x1), vec(x2), vec(z), vec(zhat)
    if rank([x1, x2]) < 2:
        raise ValueError("x1 and x2 must span a segment shorter than pi")
    coeffs = _segment_coefficients(x1, x2, z)
    if coeffs is None:
        raise ValueError("z is not interior to the segment x1x2")
    if not (rank([z, zhat]) == 1 and dot(z, zhat) < 0):
        raise ValueError("zhat is not antipodal to z")
    for p in (x1, x2, z, zhat):
        if not K.contains_point(p):
            raise ValueError("a given point is not in K")
    from .geodesy import segment_trace

    tr = segment_trace(cc, x1, x2)
    if not all(K.contains_face(f) for f in tr.faces()):
        raise ValueError("segment x1x2 is not contained in K")
    found = []
    for x in (x1, x2):
        anti = tuple(-a for a in x)
        found.append(anti if K.contains_point(anti) else None)
    return all(f is not None for f in found), found


def _segment_coefficients(x1, x2, z):
    from .linalg import solve

    sol = solve([[a, b] for a, b in zip(x1, x2)], list(z))
    if sol is None or sol[0] <= 0 or sol[1] <= 0:
        return None
    return sol


def hemisphere_center(cc: CoxeterComplex, K: Subcomplex, sphere_vertices: Sequence[int]) -> tuple | None:
    """Pole of the codimension-one singular sphere s inside span(K), on K's side.

    Returns None if no vertex of K lies off s.
    """
    kv = [cc.vertices[v] for v in sorted(K.vertices)]
    sv = [cc.vertices[v] for v in sphere_vertices]
    basis_s = _orthogonal_basis(sv)
    off = [u for u in kv if any(project_out(u, basis_s))]
    if not off:
        return None
    n = project_out(off[0], basis_s)
    basis_k = _orthogonal_basis(kv)
    if rank(basis_k) != rank(basis_s) + 1:
        raise ValueError("s is not of codimension one in K")
    return tuple(canonical_ray(n))


def within_closed_right_ball(center: Sequence, points: Iterable[Sequence]) -> bool:
    from .linalg import ANGLE_PI_2

    return all(angle(center, p) <= ANGLE_PI_2 for p in points)
