"""Fact catalogues: exact checks of the tabulated geometry of each complex.

Each fact has a stable id, a short descriptive anchor, the computed value
and the expected value. Expected values are the published data; computed
values come from the engine. Facts are evaluated in a fixed order and every
value is rendered deterministically, so a report is byte-stable.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Sequence

import numpy as np

from .complex import CoxeterComplex, build_complex, induced_weyl_on_circle
from .convexity import Subcomplex, simplicial_convex_hull
from .coxeter import (
    build_root_system,
    canonical_involution,
    parse_type,
    weyl_order_formula,
)
from .geodesy import balanced_sum, distance_set, midpoint, pairs_weyl_equivalent, rescale, segment_trace
from .groups import WeylGroup
from .linalg import (
    ANGLE_PI,
    ANGLE_PI_2,
    ExactAngle,
    angle,
    canonical_ray,
    dot,
    neg,
    nullspace,
    primitive_line,
    sub,
)


# --------------------------------------------------------------------------
# report structure


def jsonable(x: Any) -> Any:
    if isinstance(x, ExactAngle):
        return str(x)
    if isinstance(x, Fraction):
        return str(x) if x.denominator != 1 else int(x.numerator)
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in sorted(x.items(), key=lambda kv: str(kv[0]))}
    if isinstance(x, (set, frozenset)):
        return sorted((jsonable(v) for v in x), key=lambda v: repr(v))
    if isinstance(x, (list, tuple)):
        return [jsonable(v) for v in x]
    return x


@dataclass
class Fact:
    id: str
    anchor: str
    computed: Any
    expected: Any

    @property
    def passed(self) -> bool:
        return jsonable(self.computed) == jsonable(self.expected)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "anchor": self.anchor,
            "status": "pass" if self.passed else "fail",
            "computed": jsonable(self.computed),
            "expected": jsonable(self.expected),
        }


@dataclass
class FactReport:
    complex: str
    facts: list[Fact] = field(default_factory=list)
    published: dict = field(default_factory=dict)

    def add(self, fid: str, anchor: str, computed, expected) -> Fact:
        if any(f.id == fid for f in self.facts):
            raise ValueError(f"duplicate fact id {fid}")
        f = Fact(fid, anchor, computed, expected)
        self.facts.append(f)
        return f

    @property
    def ok(self) -> bool:
        return all(f.passed for f in self.facts)

    def failures(self) -> list[Fact]:
        return [f for f in self.facts if not f.passed]

    def __getitem__(self, fid: str) -> Fact:
        for f in self.facts:
            if f.id == fid:
                return f
        raise KeyError(fid)

    def to_json(self) -> dict:
        facts = [f.to_json() for f in self.facts]
        return {
            "complex": self.complex,
            "facts": facts,
            "published": jsonable(self.published),
            "summary": {
                "total": len(facts),
                "passed": sum(f["status"] == "pass" for f in facts),
                "failed": sum(f["status"] == "fail" for f in facts),
            },
        }


# --------------------------------------------------------------------------
# shared computations


def of_type(cc: CoxeterComplex, label) -> list[int]:
    return [i for i, l in enumerate(cc.vertex_labels) if l == label]


def angle_strings(angles: Iterable[ExactAngle]) -> list[str]:
    return [str(a) for a in sorted(set(angles))]


def segment_types_by_distance(cc: CoxeterComplex, x: int, targets: Iterable[int]) -> dict[str, list[str]]:
    """Distance class -> sorted segment type strings from vertex x (antipodes skipped)."""
    out: dict[ExactAngle, set] = {}
    for y in targets:
        a = cc.angle(x, y)
        if y == x or a == ANGLE_PI:
            continue
        tr = segment_trace(cc, cc.vertices[x], cc.vertices[y])
        tag = tr.vertex_types(cc) + ("" if tr.is_singular() else " (not singular)")
        out.setdefault(a, set()).add(tag)
    return {str(a): sorted(v) for a, v in sorted(out.items())}


def pair_transitivity(cc: CoxeterComplex, label_i, label_j) -> dict[str, bool]:
    """For each distance class: all (v_i, u) pairs are W-equivalent.

    W is transitive on i-vertices, so pairs based at the fundamental
    i-vertex suffice.
    """
    x = cc.fundamental_index[label_i]
    by_dist: dict[ExactAngle, list[int]] = {}
    for u in of_type(cc, label_j):
        if u != x:
            by_dist.setdefault(cc.angle(x, u), []).append(u)
    out = {}
    for a, us in sorted(by_dist.items()):
        rx, r0 = cc.vertices[x], cc.vertices[us[0]]
        out[str(a)] = all(pairs_weyl_equivalent(cc, (rx, r0), (rx, cc.vertices[u])) is not None for u in us)
    return out


def root_type_counts(cc: CoxeterComplex) -> dict:
    return dict(Counter(cc.vertex_type(r) for r in cc.rs.roots))


def chamber_inequalities_match(rs, functionals: Sequence[Sequence]) -> list[bool]:
    """Inequality k (f_k(x) >= 0) defines the same half-space as simple root k."""
    return [canonical_ray(f) == canonical_ray(r) for f, r in zip(functionals, rs.simple_roots)]


def vertex_table_matches(rs, table: dict) -> dict:
    return {k: canonical_ray(rs.fundamental_vertices[k]) == canonical_ray(v) for k, v in table.items()}


def link_summary(cc: CoxeterComplex, labels: Sequence) -> tuple[str, list]:
    L = cc.link_of_face(cc.fundamental_face(labels))
    g = L.rs.graph()
    edges = sorted((min(a, b), max(a, b), d["m"]) for a, b, d in g.edges(data=True))
    return L.type_label, edges


def hull_of_vertices(cc: CoxeterComplex, verts: Iterable[int]) -> Subcomplex:
    return simplicial_convex_hull(cc, [[v] for v in verts])


def face_type(cc: CoxeterComplex, f: Sequence[int]) -> str:
    return "".join(str(t) for t in sorted(cc.vertex_labels[i] for i in f))


def rhombus_diagonal(cc: CoxeterComplex, a: int, b: int) -> str | None:
    """Type of the other diagonal if hull(a, b) is two triangles a-x-y, b-x-y."""
    H = hull_of_vertices(cc, [a, b])
    tops = H.maximal_faces()
    if len(tops) != 2 or any(len(f) != 3 for f in tops):
        return None
    s, t = set(tops[0]), set(tops[1])
    shared = s & t
    if len(shared) != 2 or {a, b} != (s | t) - shared or a in shared or b in shared:
        return None
    return face_type(cc, sorted(shared))


def center_edge(cc: CoxeterComplex, verts: Sequence[int]) -> str | None:
    """Type of the edge whose midpoint is the barycenter of ``verts`` and
    which is perpendicular to their span; None if there is no such edge."""
    pts = [cc.vertices[v] for v in verts]
    c = balanced_sum(pts)
    f = cc.carrier_face(c)
    if len(f) != 2:
        return None
    x, y = (cc.vertices[i] for i in f.vertices)
    pair = rescale(x, y)
    if pair is None:
        return None
    xs, ys = pair
    if canonical_ray(balanced_sum([xs, ys])) != canonical_ray(c):
        return None
    d = sub(xs, ys)
    if any(dot(d, p) != 0 for p in pts):
        return None
    return face_type(cc, f.vertices)


def vertices_in_span(cc: CoxeterComplex, verts: Sequence[int]) -> list[int]:
    """Vertices on the great sphere spanned by ``verts`` (exact)."""
    normals = nullspace([cc.vertices[v] for v in verts], cc.V.shape[1])
    if not normals:
        return list(range(cc.nvertices))
    N = np.array([primitive_line(n) for n in normals], dtype=np.int64)
    return np.nonzero(np.all(N @ cc.V.T == 0, axis=0))[0].tolist()


def sphere_through(cc: CoxeterComplex, verts: Sequence[int]) -> Subcomplex:
    """Faces lying in the great sphere spanned by ``verts``."""
    return Subcomplex(cc, cc.faces_on(vertices_in_span(cc, verts)))


def pairwise(cc: CoxeterComplex, verts: Sequence[int], a: ExactAngle) -> bool:
    return all(cc.angle(u, v) == a for u, v in combinations(verts, 2))


def orthogonal_family(cc: CoxeterComplex, label, k: int) -> list[int]:
    """k vertices of the given type, pairwise at pi/2, starting from the
    fundamental one (greedy; types with such families always succeed)."""
    pool = of_type(cc, label)
    fam = [cc.fundamental_index[label]]
    for u in pool:
        if len(fam) == k:
            break
        if all(cc.angle(u, v) == ANGLE_PI_2 for v in fam):
            fam.append(u)
    if len(fam) != k:
        raise RuntimeError(f"no {k} pairwise orthogonal {label}-vertices")
    return fam


def singular_circle_types(cc: CoxeterComplex) -> list[str]:
    """Closed type strings of all singular circles, up to W.

    Every circle meets a vertex, hence up to W a fundamental one, and
    leaves it along an edge; so circles through a fundamental vertex and an
    adjacent vertex exhaust the types.
    """
    out = set()
    for lab in cc.rs.labels:
        x = cc.fundamental_index[lab]
        adj = np.nonzero(cc.conformal_rows([x])[0])[0]
        for y in adj.tolist():
            if y == x:
                continue
            C = cc.singular_circle_through(cc.vertices[x], cc.vertices[y])
            if C is not None:
                out.add(C.type_string)
    return sorted(out, key=lambda s: (len(s), s))


def circle_from(cc: CoxeterComplex, x: int, y: int) -> tuple[str, list[str]] | None:
    C = cc.singular_circle_through(cc.vertices[x], cc.vertices[y])
    if C is None:
        return None
    m = len(C.cycle)
    gaps = {str(cc.angle(C.cycle[i], C.cycle[(i + 1) % m])) for i in range(m)}
    return C.type_string, sorted(gaps)


def walls_through(cc: CoxeterComplex) -> list[list[int]]:
    """Vertex sets of the walls (great spheres perpendicular to a root)."""
    return [np.nonzero(cc.Wn[k] @ cc.V.T == 0)[0].tolist() for k in range(len(cc.walls))]


def twoface_types_on_walls(cc: CoxeterComplex) -> list[list[str]]:
    dim2 = len(cc.rs.labels) - 1
    out = set()
    for verts in walls_through(cc):
        S = set(verts)
        types = sorted({face_type(cc, f) for f in cc.faces(dim2 - 1) if set(f) <= S})
        out.add(tuple(types))
    return [list(t) for t in sorted(out)]


def root_orbit_count(cc: CoxeterComplex) -> int:
    W = cc.weyl
    seen, orbits = set(), 0
    for r in range(W.nroots):
        if r in seen:
            continue
        orbits += 1
        seen.update(W.roots_perm[:, r].tolist())
    return orbits


def aut_label_action(cc: CoxeterComplex) -> list[dict]:
    return [dict(d) for d in cc.aut.diagram_maps[1:]]


# --------------------------------------------------------------------------
# F4


def _f4_root_forms() -> tuple[set, set]:
    ones, fours = set(), set()
    for i in range(4):
        for s in (1, -1):
            e = [0] * 4
            e[i] = s
            ones.add(tuple(e))
    for signs in np.ndindex(2, 2, 2, 2):
        ones.add(canonical_ray([Fraction(1 if b == 0 else -1, 2) for b in signs]))
    for i, j in combinations(range(4), 2):
        for s, t in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            e = [0] * 4
            e[i], e[j] = s, t
            fours.add(tuple(e))
    return ones, fours


def f4_facts(report: FactReport | None = None) -> FactReport:
    cc = build_complex("F4")
    rs = cc.rs
    rep = report or FactReport("F4")
    ones, fours = _f4_root_forms()
    roots_by_type: dict = {}
    for r in rs.roots:
        roots_by_type.setdefault(cc.vertex_type(r), set()).add(canonical_ray(r))
    rep.add("f4.roots.count", "F4 root system size", len(rs.roots), 48)
    rep.add("f4.roots.type1", "F4 roots of 1-vertex form (unit vectors and half-integer vectors)",
            sorted(roots_by_type.get(1, ())), sorted(ones))
    rep.add("f4.roots.type4", "F4 roots of 4-vertex form (sums and differences of two unit vectors)",
            sorted(roots_by_type.get(4, ())), sorted(fours))
    rep.add("f4.roots.types", "F4 vertices of root type", sorted(roots_by_type), [1, 4])
    rep.add("f4.simple.r4", "F4 fourth simple root (the duplicated r_2 read as r_4)",
            list(rs.simple_roots[3]), [0, -1, 1, 0])
    rep.add("f4.chamber.inequalities", "F4 fundamental chamber inequalities (1)-(4) vs simple roots",
            chamber_inequalities_match(rs, [(-1, -1, -1, -1), (1, 0, 0, 0), (-1, 1, 0, 0), (0, -1, 1, 0)]),
            [True] * 4)
    rep.add("f4.vertices.table", "F4 fundamental vertex table",
            vertex_table_matches(rs, {1: (0, 0, 0, -1), 2: (1, 1, 1, -3), 3: (0, 1, 1, -2), 4: (0, 0, 1, -1)}),
            {k: True for k in (1, 2, 3, 4)})
    rep.add("f4.weyl.order", "F4 Weyl group order", cc.weyl.order, 1152)
    d4 = build_root_system("D4")
    contained = {canonical_ray(r) for r in d4.roots} <= {canonical_ray(r) for r in rs.roots}
    wd4 = WeylGroup(d4).order
    rep.add("f4.weyl.index_d4", "index of W_D4 inside W_F4 (D4 roots are F4 roots)",
            {"contained": contained, "index": Fraction(cc.weyl.order, wd4)}, {"contained": True, "index": 6})
    rep.add("f4.half_apartments.centered", "every F4 root hemisphere is centered at a vertex",
            all(cc.is_vertex(r) for r in rs.roots), True)
    rep.add("f4.out.order", "F4 outer automorphism group order", cc.aut.out_order, 2)
    rep.add("f4.out.action", "F4 diagram flip on labels", aut_label_action(cc), [{1: 4, 2: 3, 3: 2, 4: 1}])
    rep.add("f4.out.fixes_no_vertex", "F4 diagram flip fixes no vertex of the model chamber",
            [k for k, v in aut_label_action(cc)[0].items() if k == v], [])
    rep.add("f4.aut.order", "F4 automorphism group order", cc.aut.order, 2304)
    rep.add("f4.iota", "F4 canonical involution", canonical_involution(rs), {k: k for k in (1, 2, 3, 4)})
    anti = cc.antipode_index
    rep.add("f4.antipode.types", "F4 antipodes keep their type",
            all(cc.vertex_labels[i] == cc.vertex_labels[anti[i]] for i in range(cc.nvertices)), True)
    five = ["0", "pi/3", "pi/2", "2pi/3", "pi"]
    rep.add("f4.dist.11", "F4 distances between 1-vertices", angle_strings(distance_set(cc, 1, 1)), five)
    rep.add("f4.dist.44", "F4 distances between 4-vertices", angle_strings(distance_set(cc, 4, 4)), five)
    rep.add("f4.pairs.11", "F4 1-vertex pairs at equal distance are W-equivalent",
            pair_transitivity(cc, 1, 1), {a: True for a in five[1:]})
    rep.add("f4.seg.11", "F4 singular segments between 1-vertices by distance",
            segment_types_by_distance(cc, cc.fundamental_index[1], of_type(cc, 1)),
            {"pi/3": ["121"], "pi/2": ["141"], "2pi/3": ["12121"]})
    rep.add("f4.link.1", "F4 link of a 1-vertex", link_summary(cc, [1]), ("B3", [[2, 3, 4], [3, 4, 3]]))
    rep.add("f4.link.2", "F4 link of a 2-vertex", link_summary(cc, [2])[0], "A1∘A2")
    L1 = cc.link_of_vertex(cc.fundamental_index[1])
    x = L1.fundamental_index[2]
    near, far = set(), set()
    for y in of_type(L1, 2):
        a = L1.angle(x, y)
        if y == x or a == ANGLE_PI or a == ANGLE_PI_2:
            continue
        tr = segment_trace(L1, L1.vertices[x], L1.vertices[y])
        (near if a < ANGLE_PI_2 else far).add(tr.vertex_types(L1))
    rep.add("f4.sigma1.22", "F4: 2-vertices in the link of a 1-vertex, segments below and above pi/2",
            {"below": sorted(near), "above": sorted(far)}, {"below": ["232"], "above": ["242"]})
    rep.published["singular_circle_types"] = singular_circle_types(cc)
    return rep


# --------------------------------------------------------------------------
# E6


def _e6_root_forms() -> set:
    out = set()
    for i, j in combinations(range(5), 2):
        for s, t in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
            e = [0] * 8
            e[i], e[j] = s, t
            out.add(tuple(e))
    for signs in np.ndindex(2, 2, 2, 2, 2, 2):
        eps = [1 if b == 0 else -1 for b in signs]
        eps = eps[:5] + [eps[5]] * 3
        if np.prod(eps) == -1:
            out.add(canonical_ray([Fraction(e, 2) for e in eps]))
    return out


def _wprime_form(v: Sequence[int]) -> tuple:
    """Canonical form under permutations of x1..x5 with even sign changes."""
    head = sorted(abs(a) for a in v[:5])
    negs = sum(a < 0 for a in v[:5])
    if negs % 2 == 1 and head[0] != 0:
        head[0] = -head[0]
    return tuple(head) + tuple(v[5:])


def _e6_core(cc: CoxeterComplex, rep: FactReport) -> None:
    rs = cc.rs
    rep.add("e6.roots.count", "E6 root system size", len(rs.roots), 72)
    rep.add("e6.roots.forms", "E6 roots: D5 roots plus half-vectors with equal last three signs",
            sorted(canonical_ray(r) for r in rs.roots) == sorted(_e6_root_forms()), True)
    rep.add("e6.model.plane", "E6 roots are the E8 roots orthogonal to e8-e7 and e7-e6",
            all(r[5] == r[6] == r[7] for r in rs.roots), True)
    rep.add("e6.chamber.inequalities", "E6 fundamental chamber inequalities (1)-(6) vs simple roots",
            chamber_inequalities_match(rs, [
                (1, 1, 1, -1, -1, -1, -1, -1), (-1, 1, 0, 0, 0, 0, 0, 0), (0, -1, 1, 0, 0, 0, 0, 0),
                (0, 0, -1, 1, 0, 0, 0, 0), (0, 0, 0, -1, 1, 0, 0, 0), (1, 1, 1, 1, -1, 1, 1, 1)]),
            [True] * 6)
    rep.add("e6.vertices.table", "E6 fundamental vertex table",
            vertex_table_matches(rs, {
                1: (1, 1, 1, 1, 1, -1, -1, -1), 2: (-3, 3, 3, 3, 3, -1, -1, -1), 3: (0, 0, 3, 3, 3, -1, -1, -1),
                4: (1, 1, 1, 3, 3, -1, -1, -1), 5: (3, 3, 3, 3, 9, -1, -1, -1), 6: (3, 3, 3, 3, 3, 1, 1, 1)}),
            {k: True for k in range(1, 7)})
    rep.add("e6.weyl.order", "E6 Weyl group order", cc.weyl.order, 51840)
    d5 = {canonical_ray(r) for r in build_root_system("D5").roots}
    d5 = {tuple(r) + (0, 0, 0) for r in d5}
    rep.add("e6.wprime.subgroup", "coordinate permutations and even sign changes of x1..x5 lie in W_E6",
            d5 <= {canonical_ray(r) for r in rs.roots}, True)
    rep.add("e6.half_apartments.centered", "every E6 root hemisphere is centered at a 1-vertex",
            {cc.vertex_type(r) for r in rs.roots}, {1})
    rep.add("e6.out.action", "E6 diagram flip on labels", aut_label_action(cc), [{1: 1, 2: 6, 3: 5, 4: 4, 5: 3, 6: 2}])
    rep.add("e6.aut.order", "E6 automorphism group order", cc.aut.order, 103680)
    rep.add("e6.iota", "E6 canonical involution", canonical_involution(rs), {1: 1, 2: 6, 3: 5, 4: 4, 5: 3, 6: 2})
    rep.add("e6.neg_v6", "E6: the antipode of v6 has type 2", cc.vertex_type(neg(rs.fundamental_vertices[6])), 2)
    anti = cc.antipode_index
    rep.add("e6.antipode.26", "E6: 6-vertices are exactly the antipodes of 2-vertices",
            sorted(int(anti[i]) for i in of_type(cc, 2)) == of_type(cc, 6), True)
    reps2 = [(-3, 3, 3, 3, 3, -1, -1, -1), (0, 0, 0, 0, 6, 2, 2, 2), (0, 0, 0, 0, 0, -4, -4, -4)]
    forms = {_wprime_form(cc.vertices[i]) for i in of_type(cc, 2)}
    rep.add("e6.two_vertices.wprime", "E6 2-vertices modulo W' (three representatives)",
            sorted(forms), sorted(_wprime_form(canonical_ray(v)) for v in reps2))
    five = ["0", "pi/3", "pi/2", "2pi/3", "pi"]
    rep.add("e6.dist.11", "E6 distances between 1-vertices", angle_strings(distance_set(cc, 1, 1)), five)
    rep.add("e6.dist.22", "E6 distances between 2-vertices", angle_strings(distance_set(cc, 2, 2)),
            ["0", "arccos(1/4)", "2pi/3"])
    rep.add("e6.dist.66", "E6 distances between 6-vertices", angle_strings(distance_set(cc, 6, 6)),
            ["0", "arccos(1/4)", "2pi/3"])
    rep.add("e6.dist.26", "E6 distances between 2- and 6-vertices", angle_strings(distance_set(cc, 2, 6)),
            ["pi/3", "arccos(-1/4)", "pi"])
    rep.add("e6.pairs.11", "E6 1-vertex pairs at equal distance are W-equivalent",
            pair_transitivity(cc, 1, 1), {a: True for a in five[1:]})
    rep.add("e6.pairs.22", "E6 2-vertex pairs at equal distance are W-equivalent",
            pair_transitivity(cc, 2, 2), {"arccos(1/4)": True, "2pi/3": True})
    rep.add("e6.seg.11", "E6 segments between 1-vertices by distance",
            segment_types_by_distance(cc, cc.fundamental_index[1], of_type(cc, 1)),
            {"pi/3": ["141"], "pi/2": ["11 (not singular)"], "2pi/3": ["14141"]})
    rep.add("e6.seg.22", "E6 segments between 2-vertices by distance",
            segment_types_by_distance(cc, cc.fundamental_index[2], of_type(cc, 2)),
            {"arccos(1/4)": ["232"], "2pi/3": ["262"]})
    rep.add("e6.seg.66", "E6 segments between 6-vertices by distance",
            segment_types_by_distance(cc, cc.fundamental_index[6], of_type(cc, 6)),
            {"arccos(1/4)": ["656"], "2pi/3": ["626"]})
    rep.add("e6.seg.26", "E6 segments from a 2-vertex to 6-vertices by distance",
            segment_types_by_distance(cc, cc.fundamental_index[2], of_type(cc, 6)),
            {"pi/3": ["26"], "arccos(-1/4)": ["216"]})
    v = rs.fundamental_vertices
    m = midpoint(cc, v[1], (0, 0, 0, 2, 2, 0, 0, 0))
    rep.add("e6.midpoint.v4", "E6: v4 is the midpoint of v1 and e4+e5",
            {"direction": m.direction, "label": m.label}, {"direction": canonical_ray(v[4]), "label": 4})
    m26 = midpoint(cc, v[2], v[6])
    m1h = midpoint(cc, v[1], tuple(Fraction(a, 2) for a in (-1, 1, 1, 1, 1, 1, 1, 1)))
    rep.add("e6.midpoint.v2v6", "E6: midpoint of v2v6 equals the midpoint of v1 and (-1,1,...,1)/2",
            m26.direction == m1h.direction, True)
    v1 = cc.fundamental_index[1]
    ones = of_type(cc, 1)
    diag = Counter(rhombus_diagonal(cc, v1, u) for u in ones if cc.angle(v1, u) == ANGLE_PI_2)
    rep.add("e6.rhombus.26edge", "E6: hull of two 1-vertices at pi/2 is a rhombus, other diagonal type",
            sorted(str(k) for k in diag), ["26"])
    nb = [u for u in ones if cc.angle(v1, u) < ANGLE_PI_2 and u != v1]
    tri, tri_faces = Counter(), set()
    for a, b in combinations(nb, 2):
        if cc.angle(a, b) == cc.angle(v1, a):
            t = [v1, a, b]
            tri[center_edge(cc, t)] += 1
            tri_faces.add(cc.is_simplex(t))
    rep.add("e6.triangle.35edge", "E6: center of a 141-sided equilateral triangle is the midpoint of a "
            "perpendicular edge", sorted(str(k) for k in tri), ["35"])
    rep.add("e6.triangle.not_face", "E6: 141-sided triangles are not faces", sorted(tri_faces), [False])
    sq = Counter()
    for a, b in combinations(nb, 2):
        if cc.angle(a, b) != ANGLE_PI_2:
            continue
        for d in ones:
            if d not in (v1, a, b) and cc.angle(d, v1) == ANGLE_PI_2 and cc.angle(d, a) == cc.angle(d, b) == cc.angle(v1, a):
                sq[center_edge(cc, [v1, a, d, b])] += 1
    rep.add("e6.square.26edge", "E6: center of a 141-sided square is the midpoint of a perpendicular edge",
            sorted(str(k) for k in sq), ["26"])


def _e6_links(cc: CoxeterComplex, rep: FactReport) -> None:
    for labs, name in (([1], "A5"), ([2], "D5"), ([6], "D5"), ([2, 6], "D4"), ([3, 5], "A2∘A1∘A1")):
        key = "".join(map(str, labs))
        got = link_summary(cc, labs)[0]
        rep.add(f"e6.link.{key}", f"E6 link of a {key}-face", sorted(got.split("∘")), sorted(name.split("∘")))

    # link of a 1-vertex: 4-vertex pairs
    L1 = cc.link_of_vertex(cc.fundamental_index[1])
    x = L1.fundamental_index[4]
    dists, diag = set(), {}
    for y in of_type(L1, 4):
        a = L1.angle(x, y)
        if y == x or a == ANGLE_PI:
            continue
        dists.add(a)
        tr = segment_trace(L1, L1.vertices[x], L1.vertices[y])
        diag.setdefault(str(a), set()).add((tr.is_singular(), rhombus_diagonal(L1, x, y)))
    rep.add("e6.sigma1.dist44", "E6 link of a 1-vertex: distances between non-antipodal 4-vertices",
            angle_strings(dists), ["arccos(1/3)", "arccos(-1/3)"])
    rep.add("e6.sigma1.rhombus", "E6 link of a 1-vertex: 4-vertex segments are not singular; rhombus diagonals",
            {k: sorted(v) for k, v in diag.items()},
            {"arccos(1/3)": [[False, "35"]], "arccos(-1/3)": [[False, "26"]]})

    # link of a 35-edge and of a 26-edge: the 1414 circle
    L35 = cc.link_of_face(cc.fundamental_face([3, 5]))
    x = L35.fundamental_index[1]
    y = next(u for u in of_type(L35, 4) if L35.conformal[x, u])
    rep.add("e6.sigma35.circle", "E6 link of a 35-edge: circle through adjacent 1- and 4-vertices",
            circle_from(L35, x, y), ("1414141", ["pi/3"]))
    L26 = cc.link_of_face(cc.fundamental_face([2, 6]))
    x = L26.fundamental_index[1]
    y = next(u for u in of_type(L26, 4) if L26.conformal[x, u])
    rep.add("e6.sigma26.circle", "E6 link of a 26-edge: circle through adjacent 1- and 4-vertices",
            circle_from(L26, x, y), ("141414141", ["pi/4"]))

    # link of a 2-vertex
    L2 = cc.link_of_vertex(cc.fundamental_index[2])
    a = L2.fundamental_index[6]
    d66, seg = set(), set()
    for u in of_type(L2, 6):
        if u == a:
            continue
        d66.add(L2.angle(a, u))
        if L2.angle(a, u) == ANGLE_PI_2:
            seg.add((segment_trace(L2, L2.vertices[a], L2.vertices[u]).vertex_types(L2),
                     midpoint(L2, L2.vertices[a], L2.vertices[u]).label))
    rep.add("e6.sigma2.66", "E6 link of a 2-vertex: distances between 6-vertices", angle_strings(d66), ["pi/2", "pi"])
    rep.add("e6.sigma2.656", "E6 link of a 2-vertex: orthogonal 6-vertices, segment and midpoint type",
            sorted(seg), [("656", 5)])
    tri = orthogonal_family(L2, 6, 3)
    S = sphere_through(L2, tri)
    tops = [f for f in S.faces if len(f) == 3]
    c = L2.carrier_face(balanced_sum([L2.vertices[i] for i in tri]))
    rep.add("e6.sigma2.triangle", "E6 link of a 2-vertex: orthogonal 6-vertex triple, center and 2-sphere",
            {"center_type": list(c.types), "triangles": len(tops),
             "triangle_types": sorted({face_type(L2, f) for f in tops}),
             "walls": len(_walls_meeting(L2, tri))},
            {"center_type": [4], "triangles": 48, "triangle_types": ["456"], "walls": 9})
    tet = orthogonal_family(L2, 6, 4)
    facets = Counter()
    for sub3 in combinations(tet, 3):
        H = hull_of_vertices(L2, sub3)
        facets[(len(H.maximal_faces()), tuple(sorted({face_type(L2, f) for f in H.maximal_faces()})))] += 1
    c = L2.carrier_face(balanced_sum([L2.vertices[i] for i in tet]))
    ends = [L2.vertices[i] for i in c.vertices]
    sphere_hull = hull_of_vertices(L2, vertices_in_span(L2, tet))
    rep.add("e6.sigma2.tetrahedron", "E6 link of a 2-vertex: orthogonal 6-vertex quadruple",
            {"facet_hulls": [[k[0], list(k[1]), n] for k, n in sorted(facets.items())],
             "is_face": L2.is_simplex(tet),
             "center_edge": face_type(L2, c.vertices) if len(c) == 2 else None,
             "center_is_midpoint": len(c) == 2 and angle(balanced_sum([L2.vertices[i] for i in tet]), ends[0])
             == angle(balanced_sum([L2.vertices[i] for i in tet]), ends[1]),
             "sphere_hull_is_link": sphere_hull.full},
            {"facet_hulls": [[6, ["456"], 4]], "is_face": False, "center_edge": "13",
             "center_is_midpoint": True, "sphere_hull_is_link": True})

    # link of a 6-vertex
    L6 = cc.link_of_vertex(cc.fundamental_index[6])
    S = sphere_through(L6, list(L6.fundamental_face([2, 3, 4]).vertices))
    tops = [f for f in S.faces if len(f) == 3]
    rep.add("e6.sigma6.234sphere", "E6 link of a 6-vertex: 2-sphere through a 234-triangle",
            {"triangles": len(tops), "triangle_types": sorted({face_type(L6, f) for f in tops})},
            {"triangles": 48, "triangle_types": ["234"]})
    rep.add("e6.sigma6.pi_segments", "E6 link of a 6-vertex: half-circles between antipodal 2-vertices",
            sorted(_half_circle_types(L6, L6.fundamental_index[2])),
            sorted(min(s, s[::-1]) for s in ("23232", "24342", "2512")))

    # link of a 26-edge
    _sigma26(L26, rep)


def _walls_meeting(L: CoxeterComplex, verts: Sequence[int]) -> set[tuple]:
    """Distinct great subspheres cut on the sphere through ``verts`` by walls,
    each recorded by the restriction of the wall normal to the spanning rays."""
    span = [L.vertices[v] for v in verts]
    out = set()
    for w in L.walls:
        coords = [dot(w, p) for p in span]
        if any(coords):
            out.add(primitive_line(coords))
    return out


def _half_circle_types(L: CoxeterComplex, u: int) -> set[str]:
    ua = int(L.antipode_index[u])
    seen, out = set(), set()
    for y in range(L.nvertices):
        if y in (u, ua):
            continue
        C = L.singular_circle_through(L.vertices[u], L.vertices[y])
        if C is None or frozenset(C.cycle) in seen:
            continue
        seen.add(frozenset(C.cycle))
        cyc = C.cycle
        k = cyc.index(ua)
        for arc in (cyc[: k + 1], [cyc[0]] + cyc[k:][::-1]):
            s = "".join(str(L.vertex_labels[i]) for i in arc)
            out.add(min(s, s[::-1]))
    return out


def _sigma26(L: CoxeterComplex, rep: FactReport) -> None:
    four = of_type(L, 4)
    adj = {str(L.angle(i, j)) for i in four for j in range(L.nvertices) if i != j and L.conformal[i, j]}
    rep.add("e6.sigma26.adj4", "E6 link of a 26-edge: distance from a 4-vertex to its neighbours", sorted(adj), ["pi/4"])
    mixed = {}
    for i, j in ((1, 3), (1, 5), (3, 5)):
        x = L.fundamental_index[i]
        found = set()
        for y in of_type(L, j):
            if L.conformal[x, y]:
                continue
            tr = segment_trace(L, L.vertices[x], L.vertices[y])
            C = L.singular_circle_through(L.vertices[x], L.vertices[y])
            found.add((tr.vertex_types(L), tr.is_singular(), C.type_string if C else None))
        mixed[f"{i}{j}"] = sorted(found)
    rep.add("e6.sigma26.mixed", "E6 link of a 26-edge: non-adjacent vertices of two types other than 4",
            mixed, {"13": [("153", True, "1351351")], "15": [("135", True, "1351351")],
                    "35": [("315", True, "1351351")]})
    same = {}
    for i in (1, 3, 5):
        x = L.fundamental_index[i]
        found = set()
        for y in of_type(L, i):
            if y == x:
                continue
            a = L.angle(x, y)
            if a == ANGLE_PI:
                found.add(("pi", None, None))
                continue
            tr = segment_trace(L, L.vertices[x], L.vertices[y])
            found.add((str(a), midpoint(L, L.vertices[x], L.vertices[y]).label, tr.vertex_types(L)))
        same[str(i)] = sorted(found, key=repr)
    rep.add("e6.sigma26.same", "E6 link of a 26-edge: distinct vertices of one type other than 4",
            same, {str(i): sorted([("pi", None, None), ("pi/2", 4, f"{i}4{i}")], key=repr) for i in (1, 3, 5)})
    tri = {}
    for i in (1, 3, 5):
        t = orthogonal_family(L, i, 3)
        tri[str(i)] = {"is_face": L.is_simplex(t), "center_edge": center_edge(L, t),
                       "sphere_is_subcomplex": _sphere_is_subcomplex(L, t),
                       "sphere_hull_is_link": hull_of_vertices(L, vertices_in_span(L, t)).full}
    others = {"1": "35", "3": "15", "5": "13"}
    rep.add("e6.sigma26.triangle", "E6 link of a 26-edge: orthogonal triples of one type other than 4",
            tri, {k: {"is_face": False, "center_edge": v, "sphere_is_subcomplex": False, "sphere_hull_is_link": True}
                  for k, v in others.items()})
    rep.add("e6.sigma26.spheres", "E6 link of a 26-edge: singular 2-spheres form one class and carry all "
            "four 2-face types", {"root_orbits": root_orbit_count(L), "types": twoface_types_on_walls(L)},
            {"root_orbits": 1, "types": [["134", "135", "145", "345"]]})


def _sphere_is_subcomplex(L: CoxeterComplex, verts: Sequence[int]) -> bool:
    """Whether the great sphere through ``verts`` is a union of faces: the
    faces lying in it must have as many top cells as a sphere needs, which
    is detected by every codimension-one cell having two neighbours."""
    S = sphere_through(L, verts)
    k = len(verts)
    tops = [f for f in S.faces if len(f) == k]
    if not tops:
        return False
    ridges = Counter(r for f in tops for r in combinations(f, k - 1))
    return all(n == 2 for n in ridges.values())


def e6_facts(report: FactReport | None = None) -> FactReport:
    cc = build_complex("E6")
    rep = report or FactReport("E6")
    _e6_core(cc, rep)
    _e6_links(cc, rep)
    rep.published["singular_circle_types"] = singular_circle_types(cc)
    return rep


# --------------------------------------------------------------------------
# classical types


def _classical_tables(t: str, n: int) -> tuple[list, dict]:
    """(chamber functionals, vertex table) transcribed for A_n, B_n, D_n."""
    def unit(dim, i, c=1):
        e = [0] * dim
        e[i] = c
        return e

    if t == "A":
        dim = n + 1
        funcs = [[(1 if c == k else -1 if c == k - 1 else 0) for c in range(dim)] for k in range(1, n + 1)]
        table = {k: tuple([-(n + 1 - k)] * k + [k] * (n + 1 - k)) for k in range(1, n + 1)}
        return funcs, table
    if t == "B":
        funcs = [unit(n, 0)] + [[(1 if c == k else -1 if c == k - 1 else 0) for c in range(n)] for k in range(1, n)]
        table = {k: tuple([0] * (k - 1) + [1] * (n - k + 1)) for k in range(1, n + 1)}
        return funcs, table
    funcs = [[1, 1] + [0] * (n - 2)] + [[(1 if c == k else -1 if c == k - 1 else 0) for c in range(n)]
                                        for k in range(1, n)]
    table = {1: tuple([1] * n), 2: tuple([-1] + [1] * (n - 1))}
    table.update({k: tuple([0] * (k - 1) + [1] * (n - k + 1)) for k in range(3, n + 1)})
    return funcs, table


def expected_involution(t: str, n: int) -> dict:
    labels = range(1, n + 1)
    if t == "A":
        return {i: n + 1 - i for i in labels}
    if t == "D" and n % 2 == 1:
        return {i: {1: 2, 2: 1}.get(i, i) for i in labels}
    return {i: i for i in labels}


def _root_type_rays(t: str, n: int) -> dict:
    rays: dict = {}
    for i in range(n):
        if t == "B":
            for s in (1, -1):
                e = [0] * n
                e[i] = s
                rays.setdefault(n, set()).add(tuple(e))
        for j in range(i + 1, n):
            for s, u in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                e = [0] * n
                e[i], e[j] = s, u
                rays.setdefault(n - 1, set()).add(tuple(e))
    return {k: sorted(v) for k, v in rays.items()}


def _same_permutation_sets(a: np.ndarray, b: np.ndarray) -> bool:
    return a.shape == b.shape and np.array_equal(np.unique(a, axis=0), np.unique(b, axis=0))


def classical_facts(t: str, n: int, report: FactReport | None = None) -> FactReport:
    t, n = parse_type(t, n)
    cc = build_complex(t, n)
    rs = cc.rs
    tl = f"{t.lower()}{n}"
    rep = report or FactReport(f"{t}{n}")
    funcs, table = _classical_tables(t, n)
    rep.add(f"{tl}.weyl.order", f"{t}{n} Weyl group order vs closed formula", cc.weyl.order, weyl_order_formula(f"{t}{n}"))
    rep.add(f"{tl}.chamber.inequalities", f"{t}{n} fundamental chamber inequalities vs simple roots",
            chamber_inequalities_match(rs, funcs), [True] * n)
    rep.add(f"{tl}.vertices.table", f"{t}{n} fundamental vertex table", vertex_table_matches(rs, table),
            {k: True for k in table})
    rep.add(f"{tl}.iota", f"{t}{n} canonical involution", canonical_involution(rs), expected_involution(t, n))
    anti = cc.antipode_index
    pairs = {(cc.vertex_labels[i], cc.vertex_labels[anti[i]]) for i in range(cc.nvertices)}
    rep.add(f"{tl}.antipode.types", f"{t}{n} antipodal vertex types", dict(sorted(pairs)), expected_involution(t, n))
    if t in "BD":
        got: dict = {}
        for r in rs.roots:
            got.setdefault(cc.vertex_type(r), set()).add(canonical_ray(r))
        rep.add(f"{tl}.root_type", f"{t}{n} vertices of root type and their vectors",
                {k: sorted(v) for k, v in got.items()}, _root_type_rays(t, n))
    # B2 is the square diagram I2(4), whose two nodes can be swapped
    out_expected = {"A": 2 if n >= 2 else 1, "B": 2 if n == 2 else 1, "D": 6 if n == 4 else 2}[t]
    rep.add(f"{tl}.out.order", f"{t}{n} outer automorphism group order", cc.aut.out_order, out_expected)
    if t == "D" and n >= 5:
        wb = WeylGroup(build_root_system("B", n), cc.vertices)
        rep.add(f"{tl}.aut_is_wb", f"Aut of the D{n} complex is the W_B{n} action",
                _same_permutation_sets(cc.aut.all_perms(), wb.verts_perm), True)
    if t == "D" and n == 4:
        _d4_f4(cc, rep)
    return rep


def _d4_f4(cc: CoxeterComplex, rep: FactReport) -> None:
    f4 = build_complex("F4")
    wf = WeylGroup(f4.rs, cc.vertices)
    rep.add("d4.aut_is_wf4", "Aut of the D4 complex is the W_F4 action",
            _same_permutation_sets(cc.aut.all_perms(), wf.verts_perm), True)
    rep.add("d4.index_in_f4", "index of W_D4 in W_F4", Fraction(wf.order, cc.weyl.order), 6)
    simple = cc.rs.simple_roots
    inside = [ch for ch in f4.chambers() if all(dot(f4.face_point(ch), r) > 0 for r in simple)]
    barycentric, flags = True, []
    for ch in inside:
        carriers = {}
        for i in ch:
            f = cc.carrier_face(f4.vertices[i])
            # each F4 vertex must be the spherical barycenter of its D4 carrier
            if canonical_ray(balanced_sum([cc.vertices[j] for j in f.vertices])) != f4.vertices[i]:
                barycentric = False
            carriers[face_type(cc, f.vertices)] = i
        flags.append(sorted(carriers))
    rep.add("d4.f4_chambers", "the D4 fundamental chamber is cut into F4 chambers: barycentric "
            "subdivision of its 124-face coned from its 3-vertex",
            {"chambers": len(inside), "barycentric": barycentric, "flags": sorted(flags)},
            {"chambers": 6, "barycentric": True,
             "flags": sorted(sorted([v, e, "124", "3"]) for v, e in
                             (("1", "12"), ("1", "14"), ("2", "12"), ("2", "24"), ("4", "14"), ("4", "24")))})


# --------------------------------------------------------------------------
# E7 remark


def e7_remark(report: FactReport | None = None) -> FactReport:
    """Singular circle of type 13756137561 in E7: trivial induced Weyl group,
    yet its half-turn is induced by W. Weyl elements are found by transport,
    so W_E7 is never enumerated."""
    from .complex import CoxeterComplex

    rs = build_root_system("E7")
    cc = CoxeterComplex(rs)
    rep = report or FactReport("E7")
    x = cc.fundamental_index[1]
    target = "13756137561"
    found = None
    for y in range(cc.nvertices):
        if cc.vertex_labels[y] != 3 or np.any(cc.signs[:, x] * cc.signs[:, y] < 0):
            continue
        C = cc.singular_circle_through(cc.vertices[x], cc.vertices[y])
        if C is not None and C.type_string == target:
            found = C
            break
    rep.add("e7.remark.circle", "E7 singular circle of the given type exists",
            found.type_string if found else None, target)
    if found is not None:
        g = induced_weyl_on_circle(cc, found)
        rep.add("e7.remark.induced", "E7 circle: induced Weyl group and image of its stabilizer",
                {"induced_order": g.induced_order, "stabilizer_image_order": g.stabilizer_image_order,
                 "half_turn_induced": g.realizes_antipodal},
                {"induced_order": 1, "stabilizer_image_order": 2, "half_turn_induced": True})
    return rep


# --------------------------------------------------------------------------
# entry point


def run_facts(type_label: str, rank: int | None = None, *, remark_circle: bool = False) -> FactReport:
    t, n = parse_type(type_label, rank)
    if t == "F":
        return f4_facts()
    if t == "E" and n == 6:
        return e6_facts()
    if t == "E" and n == 7:
        if not remark_circle:
            raise ValueError("E7 has only the circle remark; pass --remark-circle")
        return e7_remark()
    if t == "E":
        raise ValueError("no fact catalogue for E8")
    return classical_facts(t, n)
