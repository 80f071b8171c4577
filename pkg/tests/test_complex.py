from __future__ import annotations

import json
from fractions import Fraction

import numpy as np
import pytest

from chamberworks.complex import CoxeterComplex, NotAVertex, build_complex, induced_weyl_on_circle
from chamberworks.coxeter import root_system_from_simple
from chamberworks.linalg import ANGLE_PI_2, ANGLE_PI_3, angle, dot

H = Fraction(1, 2)


def test_vertex_types_f4():
    cc = build_complex("F4")
    assert cc.vertex_type((1, 0, 0, 0)) == 1
    assert cc.vertex_type((1, 1, 0, 0)) == 4
    assert cc.vertex_type((H, -H, H, H)) == 1
    with pytest.raises(NotAVertex):
        cc.vertex_type((1, 2, 0, 0))


def test_vertex_type_e6():
    cc = build_complex("E6")
    assert cc.vertex_type((0, 0, 0, 1, 1, 0, 0, 0)) == 1


@pytest.mark.parametrize("label", ["A2", "A3", "B3", "D4", "F4"])
def test_lattice_counts(label):
    cc = build_complex(label)
    n = len(cc.rs.labels)
    counts = cc.face_counts()
    assert counts[n - 1] == cc.weyl.order
    # the complex triangulates S^(n-1)
    assert cc.euler_characteristic() == 1 + (-1) ** (n - 1)
    # every panel lies in exactly two chambers
    panels = {}
    for ch in cc.chambers():
        for k in range(n):
            p = ch[:k] + ch[k + 1:]
            panels[p] = panels.get(p, 0) + 1
    assert set(panels.values()) == {2}
    assert len(panels) == counts[n - 2]


def test_vertex_orbits_e6():
    cc = build_complex("E6")
    sizes = {l: cc.vertex_labels.count(l) for l in cc.rs.labels}
    assert sizes == {1: 72, 2: 27, 3: 216, 4: 720, 5: 216, 6: 27}
    # orbit-stabilizer: |W| / |W_J| for J the labels other than l
    assert sum(sizes.values()) == cc.nvertices == 1278


def test_every_chamber_sees_all_types():
    cc = build_complex("F4")
    labels = np.array(cc.vertex_labels)
    for ch in cc.chambers():
        assert sorted(labels[list(ch)]) == [1, 2, 3, 4]


def test_links():
    f4 = build_complex("F4")
    L = f4.link_of_vertex(f4.fundamental_index[1])
    assert L.type_label == "B3" and L.rs.labels == (2, 3, 4)
    assert L.weyl.order == 48
    e6 = build_complex("E6")
    assert e6.link_of_vertex(e6.fundamental_index[2]).type_label == "D5"
    assert e6.link_of_face(e6.fundamental_face([2, 6])).type_label == "D4"
    L2 = f4.link_of_vertex(f4.fundamental_index[2])
    assert sorted(L2.type_label.split("∘")) == ["A1", "A2"]


def test_link_of_chamber_rejected():
    cc = build_complex("A2")
    with pytest.raises(ValueError):
        cc.link_of_face(cc.fundamental_chamber())


def test_singular_circles():
    f4 = build_complex("F4")
    x, y = (0, 0, 0, -1), (H, H, H, -H)
    assert angle(x, y) == ANGLE_PI_3
    C = f4.singular_circle_through(x, y)
    assert C is not None and C.arc_types == "121"
    e6 = build_complex("E6")
    v2 = (-3, 3, 3, 3, 3, -1, -1, -1)
    others = [i for i in range(e6.nvertices) if e6.vertex_labels[i] == 2 and str(angle(v2, e6.vertices[i])) == "2pi/3"]
    C = e6.singular_circle_through(v2, e6.vertices[others[0]])
    assert C.arc_types == "262"
    v1 = e6.vertices[e6.fundamental_index[1]]
    right = [i for i in range(e6.nvertices) if e6.vertex_labels[i] == 1 and angle(v1, e6.vertices[i]) == ANGLE_PI_2]
    assert right and all(e6.singular_circle_through(v1, e6.vertices[i]) is None for i in right)


def test_poles_square_complex():
    rs = root_system_from_simple([(1, 0), (0, 1)], [1, 2], "A1∘A1")
    cc = CoxeterComplex(rs)
    v = cc.index_of((1, 0))
    assert cc.poles(cc.face([v])) == [(cc.index_of((0, -1)),), (cc.index_of((0, 1)),)]


def test_poles_are_orthogonal_faces():
    f4 = build_complex("F4")
    v = f4.fundamental_index[2]
    poles = f4.poles(f4.face([v]))
    V = np.array(f4.vertices)
    ortho = set(np.nonzero(V @ V[v] == 0)[0].tolist())
    assert {u for f in poles for u in f} == ortho
    assert all(f4.is_simplex(f) for f in poles)


def test_e6_35edge_link_holds_1414_circle_among_poles():
    e6 = build_complex("E6")
    edge = e6.fundamental_face([3, 5])
    L = e6.link_of_face(edge)
    x = L.fundamental_index[1]
    y = next(u for u in range(L.nvertices) if L.vertex_labels[u] == 4 and L.conformal[x, u])
    C = L.singular_circle_through(L.ray(x), L.ray(y))
    assert C.type_string == "1414141"
    assert {str(L.angle(a, b)) for a, b in zip(C.cycle, C.cycle[1:] + C.cycle[:1])} == {"pi/3"}
    # link vertices are points of the pole sphere of the edge
    for u in C.cycle:
        assert all(dot(L.vertices[u], e6.vertices[v]) == 0 for v in edge.vertices)


def test_induced_weyl_a2_is_full_dihedral():
    cc = build_complex("A2")
    C = cc.singular_circle_through(cc.ray(0), cc.ray(1))
    g = induced_weyl_on_circle(cc, C)
    assert g.m == 6 and g.induced_order == 6 == cc.weyl.order


def _enumerated_circle_group(cc, cycle):
    """Oracle: permutations of the circle induced by all of W."""
    P = cc.weyl.verts_perm[:, cycle]
    keep = np.all(np.isin(P, cycle), axis=1)
    return {tuple(r) for r in P[keep].tolist()}


def _first_circle(cc, label_a, label_b, type_string):
    a = cc.fundamental_index[label_a]
    for u in range(cc.nvertices):
        if cc.vertex_labels[u] == label_b and cc.conformal[a, u]:
            C = cc.singular_circle_through(cc.ray(a), cc.ray(u))
            if C is not None and C.type_string == type_string:
                return C
    raise AssertionError(f"no {type_string} circle found")


@pytest.mark.parametrize("where,type_string", [("link26", "141414141"), ("E6", "1414141414141")])
def test_induced_weyl_e6_circles_against_enumeration(where, type_string):
    e6 = build_complex("E6")
    cc = e6.link_of_face(e6.fundamental_face([2, 6])) if where == "link26" else e6
    circle = _first_circle(cc, 1, 4, type_string)
    g = induced_weyl_on_circle(cc, circle)
    images = _enumerated_circle_group(cc, circle.cycle)
    assert g.stabilizer_image_order == len(images)
    # the dihedral image acts transitively on the circle's 1-vertices
    ones = [u for u in circle.cycle if cc.vertex_labels[u] == 1]
    pos = circle.cycle.index(ones[0])
    assert {img[pos] for img in images} == set(ones)
    # reflections in the enumerated image: orientation-reversing permutations
    m = len(circle.cycle)
    idx = {u: i for i, u in enumerate(circle.cycle)}
    refl = {img for img in images if (idx[img[1]] - idx[img[0]]) % m == m - 1}
    assert g.induced_order == (2 * len(refl) if refl else 1)


def test_json_export_roundtrip():
    cc = build_complex("B3")
    d = json.loads(cc.dumps())
    assert d["complex"] == {"type": "B3", "rank": 3}
    assert len(d["vertices"]) == 26 and len(d["walls"]) == 9
    assert len(d["faces"]) == sum(cc.face_counts().values())


def test_antipodes_are_vertices_of_matching_type():
    e6 = build_complex("E6")
    for i in range(0, e6.nvertices, 37):
        j = int(e6.antipode_index[i])
        assert e6.vertices[j] == tuple(-a for a in e6.vertices[i])
        assert e6.vertex_labels[j] == e6.canonical_involution()[e6.vertex_labels[i]]


def test_carrier_face_of_face_point():
    cc = build_complex("F4")
    for f in cc.faces()[::97]:
        assert cc.carrier_face(cc.face_point(f)).vertices == f
    assert dot(cc.face_point(cc.fundamental_chamber()), cc.rs.simple_roots[0]) > 0
