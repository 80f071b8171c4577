"""The Coxeter complex of a root system as a finite face lattice.

Vertices are canonical primitive integer rays, indexed in a fixed order
(label by label, lexicographic within a label). A set of vertices is a face
iff no wall strictly separates two of them; faces are stored as sorted
tuples of vertex indices.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from itertools import combinations
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .coxeter import (
    RootSystem,
    WeylElement,
    build_root_system,
    canonical_involution,
    classify_graph,
    fold,
    fold_to_chamber,
    root_system_from_simple,
    same_graph,
    simple_system,
    transporter,
)
from .groups import EnumerationRefused
from .linalg import (
    ExactAngle,
    angle,
    canonical_ray,
    dot,
    project_out,
    rank,
    reflect_ray,
    vec,
)


class NotAVertex(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    """A face given by sorted vertex indices into its complex."""

    vertices: tuple[int, ...]
    rays: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    types: tuple = field(compare=False)

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    @property
    def type_set(self) -> tuple:
        return tuple(sorted(self.types))

    def __len__(self) -> int:
        return len(self.vertices)


def _orthogonal_basis(vectors: Sequence[Sequence]) -> list[tuple]:
    basis: list[tuple] = []
    for v in vectors:
        w = project_out(v, basis)
        if any(w):
            basis.append(w)
    return basis


def _cycle_string(types: Sequence) -> str:
    """Canonical closed type string of a cyclic sequence (rotation/reflection)."""
    seq = [str(t) for t in types]
    n = len(seq)
    variants = []
    for s in (seq, seq[::-1]):
        for k in range(n):
            variants.append(s[k:] + s[:k])
    best = min(variants)
    return "".join(best + best[:1])


@dataclass
class SingularCircle:
    """A singular 1-sphere: its plane and its vertices in cyclic order."""

    plane: tuple[tuple, tuple]
    cycle: list[int]
    cycle_types: list
    arc: list[int]
    arc_types: str

    @property
    def type_string(self) -> str:
        return _cycle_string(self.cycle_types)


class CoxeterComplex:
    """Face lattice of the Coxeter complex of ``rs``."""

    def __init__(self, rs: RootSystem, *, allow_e7: bool | None = None):
        if rs.type_label == "E8":
            # only the E8 root system is supported, never its face lattice
            raise EnumerationRefused("the E8 complex is not enumerated")
        self.rs = rs
        self.allow_e7 = allow_e7
        simple_int = [canonical_ray(r) for r in rs.simple_roots]
        verts: list[tuple[int, ...]] = []
        labels: list = []
        for lab in rs.labels:
            start = canonical_ray(rs.fundamental_vertices[lab])
            orbit = {start}
            frontier = [start]
            while frontier:
                nxt = []
                for v in frontier:
                    for r in simple_int:
                        u = reflect_ray(v, r)
                        if u not in orbit:
                            orbit.add(u)
                            nxt.append(u)
                frontier = nxt
            for v in sorted(orbit):
                verts.append(v)
                labels.append(lab)
        self.vertices = verts
        self.vertex_labels = labels
        self.vindex = {v: i for i, v in enumerate(verts)}
        if len(self.vindex) != len(verts):
            raise RuntimeError("vertex orbits of different labels overlap")
        self.fundamental_index = {lab: self.vindex[canonical_ray(rs.fundamental_vertices[lab])]
                                  for lab in rs.labels}
        self.walls = [tuple(w) for w in rs.walls]
        self.V = np.array(verts, dtype=np.int64)
        self.Wn = np.array(self.walls, dtype=np.int64)
        self.signs = np.sign(self.Wn @ self.V.T).astype(np.int8)
        self.labels_array = np.array([rs.labels.index(l) for l in labels], dtype=np.int64)

    # -- identity ---------------------------------------------------------
    @property
    def type_label(self) -> str:
        return self.rs.type_label

    @property
    def name(self) -> str:
        return self.rs.type_label

    @property
    def nvertices(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"CoxeterComplex({self.type_label}, vertices={self.nvertices})"

    def index_of(self, v: Sequence) -> int:
        try:
            return self.vindex[canonical_ray(v)]
        except (KeyError, ValueError):
            raise NotAVertex(f"{tuple(v)} is not a vertex of the {self.type_label} complex") from None

    def is_vertex(self, v: Sequence) -> bool:
        try:
            return canonical_ray(v) in self.vindex
        except ValueError:
            return False

    def ray(self, i: int) -> tuple[Fraction, ...]:
        return vec(self.vertices[i])

    def label(self, i: int):
        return self.vertex_labels[i]

    # -- groups ------------------------------------------------------------
    @cached_property
    def weyl(self):
        from .groups import WeylGroup

        return WeylGroup(self.rs, self.vertices, allow_e7=self.allow_e7)

    @cached_property
    def aut(self):
        from .groups import AutGroup

        return AutGroup(self.weyl, self.fundamental_index, self.is_simplex)

    def canonical_involution(self) -> dict:
        return canonical_involution(self.rs)

    # -- incidence ---------------------------------------------------------
    @cached_property
    def conformal(self) -> np.ndarray:
        """Boolean matrix: no wall strictly separates vertices i and j."""
        pos = (self.signs > 0).astype(np.int32)
        neg = (self.signs < 0).astype(np.int32)
        clash = pos.T @ neg
        return (clash + clash.T) == 0

    def is_simplex(self, idx: Sequence[int]) -> bool:
        idx = list(idx)
        if len(set(idx)) != len(idx):
            return False
        s = self.signs[:, idx]
        return not (np.any((s > 0).any(axis=1) & (s < 0).any(axis=1)))

    def conformal_rows(self, idx: Sequence[int]) -> np.ndarray:
        """(len(idx), nvertices): no wall separates idx[k] from vertex j."""
        out = []
        for k in idx:
            col = self.signs[:, k:k + 1]
            clash = ((col > 0) & (self.signs < 0)) | ((col < 0) & (self.signs > 0))
            out.append(~clash.any(axis=0))
        return np.array(out)

    def face(self, idx: Iterable[int]) -> Face:
        t = tuple(sorted(set(int(i) for i in idx)))
        if not t:
            raise ValueError("empty face")
        if not self.is_simplex(t):
            raise ValueError(f"vertices {t} do not span a face")
        return Face(t, tuple(self.vertices[i] for i in t), tuple(self.vertex_labels[i] for i in t))

    def face_from_rays(self, rays: Iterable[Sequence]) -> Face:
        return self.face(self.index_of(r) for r in rays)

    def fundamental_face(self, labels: Iterable) -> Face:
        return self.face(self.fundamental_index[l] for l in labels)

    def fundamental_chamber(self) -> Face:
        return self.fundamental_face(self.rs.labels)

    def vertex_type(self, v: Sequence):
        """Label of the fundamental vertex in the W-orbit of the vertex ``v``."""
        i = self.index_of(v)
        _, x0 = fold(self.rs.simple_roots, self.vertices[i])
        ray = canonical_ray(x0)
        for lab, f in self.fundamental_index.items():
            if self.vertices[f] == ray:
                return lab
        raise NotAVertex(f"{tuple(v)} folds to a non-vertex")

    def sign_vector(self, p: Sequence) -> np.ndarray:
        p = canonical_ray(p)
        return np.sign(self.Wn @ np.array(p, dtype=object)).astype(np.int8)

    def carrier_face(self, p: Sequence) -> Face:
        """The face containing the nonzero rational point ``p`` in its relative interior."""
        sp = self.sign_vector(p)
        ok = np.all((self.signs == 0) | (self.signs == sp[:, None]), axis=0)
        ok &= ~np.any((sp[:, None] == 0) & (self.signs != 0), axis=0)
        f = self.face(np.nonzero(ok)[0])
        lhs = sum((np.array(self.vertices[i], dtype=object) for i in f.vertices), np.zeros(len(p), dtype=object))
        if not np.array_equal(np.sign(self.Wn @ lhs), sp):
            raise AssertionError("carrier face does not reproduce the sign vector")
        return f

    def face_point(self, f: Face | Sequence[int]) -> tuple[Fraction, ...]:
        """A rational point in the relative interior: the sum of the vertex rays."""
        idx = f.vertices if isinstance(f, Face) else f
        out = [Fraction(0)] * self.rs.ambient_dim
        for i in idx:
            for k, a in enumerate(self.vertices[i]):
                out[k] += a
        return tuple(out)

    def antipode(self, i: int) -> int:
        return self.vindex[tuple(-a for a in self.vertices[i])]

    @cached_property
    def antipode_index(self) -> np.ndarray:
        return np.array([self.antipode(i) for i in range(self.nvertices)], dtype=np.int64)

    # -- face lattice ------------------------------------------------------
    def fundamental_subsets(self) -> list[tuple]:
        labels = list(self.rs.labels)
        out = []
        for k in range(1, len(labels) + 1):
            out.extend(combinations(labels, k))
        return out

    def face_orbit(self, labels: Sequence) -> np.ndarray:
        """Sorted rows of vertex indices: the W-orbit of a fundamental face."""
        cols = [self.fundamental_index[l] for l in labels]
        rows = np.sort(self.weyl.verts_perm[:, cols].astype(np.int64), axis=1)
        return np.unique(rows, axis=0)

    @cached_property
    def faces_by_type(self) -> dict:
        return {J: self.face_orbit(J) for J in self.fundamental_subsets()}

    def faces(self, dim: int | None = None) -> list[tuple[int, ...]]:
        out = []
        for J, rows in self.faces_by_type.items():
            if dim is None or len(J) - 1 == dim:
                out.extend(tuple(int(x) for x in r) for r in rows)
        return sorted(out, key=lambda f: (len(f), f))

    def chambers(self) -> list[tuple[int, ...]]:
        return self.faces(len(self.rs.labels) - 1)

    def faces_on(self, vertex_set: Iterable[int]) -> list[tuple[int, ...]]:
        """All faces whose vertices lie in ``vertex_set`` (cliques of conformality)."""
        vs = sorted(set(int(v) for v in vertex_set))
        if not vs:
            return []
        sub = self.conformal[np.ix_(vs, vs)]
        g = nx.Graph()
        g.add_nodes_from(range(len(vs)))
        a, b = np.nonzero(np.triu(sub, 1))
        g.add_edges_from(zip(a.tolist(), b.tolist()))
        out = [tuple(vs[i] for i in sorted(c)) for c in nx.enumerate_all_cliques(g)]
        return sorted(out, key=lambda f: (len(f), f))

    def faces_within(self, mask: np.ndarray) -> list[tuple[int, ...]]:
        """Faces all of whose vertices have ``mask`` set."""
        try:
            by_type = self.faces_by_type
        except Exception:
            return self.faces_on(np.nonzero(mask)[0])
        out = []
        for rows in by_type.values():
            sel = rows[mask[rows].all(axis=1)]
            out.extend(tuple(int(x) for x in r) for r in sel)
        return sorted(out, key=lambda f: (len(f), f))

    def face_counts(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for J, rows in self.faces_by_type.items():
            out[len(J) - 1] = out.get(len(J) - 1, 0) + len(rows)
        return out

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in self.face_counts().items())

    # -- links -------------------------------------------------------------
    def fold_face(self, f: Face) -> tuple[WeylElement, tuple]:
        """(w, J): w maps ``f`` onto the fundamental face with labels J."""
        w, _ = fold_to_chamber(self.rs, self.face_point(f))
        return w, tuple(sorted(f.types))

    def link_of_face(self, f: Face) -> "LinkComplex":
        """Link of ``f``, built by diagram deletion and checked against the
        root subsystem orthogonal to ``f``."""
        if len(f) >= len(self.rs.labels):
            raise ValueError("the link of a chamber is empty")
        w, J = self.fold_face(f)
        winv = w.inverse()
        base = [self.rs.fundamental_vertices[l] for l in J]
        if sorted(canonical_ray(w.apply(self.vertices[i])) for i in f.vertices) != sorted(
                canonical_ray(b) for b in base):
            raise AssertionError("folding did not carry the face onto the fundamental face")
        keep = [k for k in self.rs.labels if k not in J]
        basis = _orthogonal_basis(base)
        simple_b = [winv.apply(self.rs.simple_roots[self.rs.label_index(k)]) for k in keep]
        verts_b = {k: winv.apply(project_out(self.rs.fundamental_vertices[k], basis)) for k in keep}
        name = classify_graph(_graph_of(simple_b, keep))
        link_rs = root_system_from_simple(simple_b, keep, name, verts_b)
        # route (a): roots orthogonal to the face, lexicographic simple system
        perp = [r for r in self.rs.roots if all(dot(r, self.vertices[i]) == 0 for i in f.vertices)]
        simple_a = simple_system(perp)
        graph_a = _graph_of(simple_a, list(range(len(simple_a))))
        if set(perp) != set(link_rs.roots):
            raise AssertionError("link root systems from the two constructions differ")
        if not same_graph(graph_a, link_rs.graph()):
            raise AssertionError("link Coxeter graphs from the two constructions differ")
        if sorted(classify_graph(graph_a).split("∘")) != sorted(name.split("∘")):
            raise AssertionError("link type names disagree")
        return LinkComplex(self, f, link_rs)

    def link_of_vertex(self, i: int) -> "LinkComplex":
        return self.link_of_face(self.face([i]))

    # -- spheres -----------------------------------------------------------
    def singular_circle_through(self, x: Sequence, y: Sequence) -> SingularCircle | None:
        """The singular circle through the rays x and y, if any."""
        x, y = vec(x), vec(y)
        if rank([x, y]) < 2:
            raise ValueError("x and y must not be proportional")
        perp = [r for r in self.rs.roots if dot(r, x) == 0 and dot(r, y) == 0]
        if (rank(perp) if perp else 0) != len(self.rs.simple_roots) - 2:
            return None
        if perp:
            P = np.array([canonical_ray(r) for r in perp], dtype=np.int64)
            on = np.nonzero(np.all(P @ self.V.T == 0, axis=0))[0].tolist()
        else:
            on = list(range(self.nvertices))
        yp = project_out(y, [x])

        # coordinates along x and yp; positive rescaling keeps every sign test exact
        def coords(i):
            u = self.vertices[i]
            return dot(u, x), dot(u, yp)

        def half(i):
            a, b = coords(i)
            return 0 if (b > 0 or (b == 0 and a > 0)) else 1

        def cmp(i, j):
            hi, hj = half(i), half(j)
            if hi != hj:
                return hi - hj
            (a1, b1), (a2, b2) = coords(i), coords(j)
            # orientation of (u_i, u_j) in the orthonormalized plane
            cross = a1 * b2 - a2 * b1
            return -1 if cross > 0 else (1 if cross < 0 else 0)

        cycle = sorted(on, key=cmp_to_key(cmp))
        start = self.index_of(x) if self.is_vertex(x) else None
        if start is not None:
            k = cycle.index(start)
            cycle = cycle[k:] + cycle[:k]
        types = [self.vertex_labels[i] for i in cycle]
        arc: list[int] = []
        if start is not None and self.is_vertex(y):
            end = self.index_of(y)
            arc = cycle[: cycle.index(end) + 1]
        arc_types = "".join(str(self.vertex_labels[i]) for i in arc)
        return SingularCircle((x, y), cycle, types, arc, arc_types)

    def poles(self, f: Face) -> list[tuple[int, ...]]:
        """Faces all of whose vertices are orthogonal to every vertex of ``f``."""
        if len(f) >= len(self.rs.labels):
            raise ValueError("a chamber has no poles")
        F = self.V[list(f.vertices)]
        mask = np.all(F @ self.V.T == 0, axis=0)
        return self.faces_on(np.nonzero(mask)[0])

    def angle(self, i: int, j: int) -> ExactAngle:
        return angle(self.vertices[i], self.vertices[j])

    # -- export ------------------------------------------------------------
    def to_json(self, *, faces: bool = True) -> dict:
        out = {
            "complex": {"type": self.type_label, "rank": len(self.rs.labels)},
            "vertices": [list(v) for v in self.vertices],
            "labels": list(self.vertex_labels),
            "walls": [list(w) for w in self.walls],
        }
        if faces:
            out["faces"] = [list(f) for f in self.faces()]
        return out

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(**kw), separators=(",", ":"))


def _graph_of(simple, labels):
    from .coxeter import coxeter_graph

    return coxeter_graph(simple, labels)


class LinkComplex(CoxeterComplex):
    """Link of a face ``base`` of ``parent``, a Coxeter complex in its own right.

    Link labels are the ambient labels of the deleted diagram. Each link
    vertex is the projection of an ambient vertex u with base + {u} a face;
    ``to_ambient`` records u.
    """

    def __init__(self, parent: CoxeterComplex, base: Face, rs: RootSystem):
        super().__init__(rs)
        self.parent = parent
        self.base = base
        basis = _orthogonal_basis([parent.vertices[i] for i in base.vertices])
        cand = np.nonzero(np.all(parent.conformal_rows(base.vertices), axis=0))[0]
        to_amb = {}
        for u in cand.tolist():
            if u in base.vertices:
                continue
            p = canonical_ray(project_out(parent.vertices[u], basis))
            j = self.vindex.get(p)
            if j is None or j in to_amb:
                raise AssertionError("link vertex correspondence is not a bijection")
            if self.vertex_labels[j] != parent.vertex_labels[u]:
                raise AssertionError("link vertex label disagrees with the ambient label")
            to_amb[j] = u
        if len(to_amb) != self.nvertices:
            raise AssertionError("link vertices missing from the star")
        self.to_ambient = [to_amb[j] for j in range(self.nvertices)]
        self.from_ambient = {u: j for j, u in enumerate(self.to_ambient)}

    @property
    def label_map(self) -> dict:
        return {l: l for l in self.rs.labels}


@dataclass(frozen=True)
class CircleSymmetries:
    """Image of Stab_W(s) in Isom(s) for a singular circle s with m vertices.

    ``rotations`` holds the steps k realized by c_i -> c_{i+k};
    ``reflections`` the k realized by c_i -> c_{k-i}. The induced Weyl group
    W_s is generated by the realized reflections only.
    """

    m: int
    rotations: tuple[int, ...]
    reflections: tuple[int, ...]

    @property
    def stabilizer_image_order(self) -> int:
        return len(self.rotations) + len(self.reflections)

    @property
    def induced_order(self) -> int:
        """|W_s|: a dihedral group of order 2r from r reflections, else 1."""
        if not self.reflections:
            return 1
        # the reflections of a finite dihedral group generate it; a group
        # generated by reflections alone has as many rotations as reflections
        return 2 * len(self.reflections)

    @property
    def realizes_antipodal(self) -> bool:
        return self.m % 2 == 0 and (self.m // 2) in self.rotations


def induced_weyl_on_circle(cc: CoxeterComplex, circle: SingularCircle) -> CircleSymmetries:
    """Dihedral symmetries of ``circle`` induced by Weyl elements.

    Candidates are the polygon symmetries preserving vertex types and edge
    angles. Each is tested by transporting two consecutive circle vertices
    onto their images; the returned element is then checked on every
    vertex of the circle. No enumeration of W is needed.
    """
    cyc = circle.cycle
    m = len(cyc)
    rays = [cc.vertices[i] for i in cyc]
    labs = [cc.vertex_labels[i] for i in cyc]
    gaps = [angle(rays[i], rays[(i + 1) % m]) for i in range(m)]

    def realized(images: list[int]) -> bool:
        if any(labs[i] != labs[images[i]] for i in range(m)):
            return False
        w = transporter(cc.rs, [rays[0], rays[1]], [rays[images[0]], rays[images[1]]])
        if w is None:
            return False
        return all(canonical_ray(w.apply(rays[i])) == rays[images[i]] for i in range(m))

    rots, refl = [], []
    for k in range(m):
        if all(gaps[i] == gaps[(i + k) % m] for i in range(m)) and realized([(i + k) % m for i in range(m)]):
            rots.append(k)
        # c_i -> c_{k-i} sends the edge (i, i+1) to (k-i-1, k-i)
        if all(gaps[i] == gaps[(k - i - 1) % m] for i in range(m)) and realized([(k - i) % m for i in range(m)]):
            refl.append(k)
    return CircleSymmetries(m, tuple(rots), tuple(refl))


_CACHE: dict = {}


def build_complex(type_label: str, rank: int | None = None, *, allow_e7: bool | None = None) -> CoxeterComplex:
    """Cached complex for a standard type, e.g. ``build_complex('F4')``."""
    rs = build_root_system(type_label, rank)
    key = rs.type_label
    if key not in _CACHE:
        _CACHE[key] = CoxeterComplex(rs, allow_e7=allow_e7)
    return _CACHE[key]
