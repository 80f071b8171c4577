from __future__ import annotations

from fractions import Fraction

import pytest

from chamberworks.coxeter import (
    build_root_system, canonical_involution, classify_graph, fold_to_chamber, parse_type, transporter,
    vertex_label, weyl_order_formula,
)
from chamberworks.groups import EnumerationRefused, enumerate_weyl
from chamberworks.complex import build_complex
from chamberworks.linalg import canonical_ray, dot

import oracles

H = Fraction(1, 2)


def test_f4_roots_match_coordinate_list():
    rs = build_root_system("F4")
    assert set(rs.roots) == oracles.f4_roots()
    assert len(rs.roots) == 48


def test_f4_root_forms_split_24_24():
    rs = build_root_system("F4")
    short = [r for r in rs.roots if dot(r, r) == 1]
    long_ = [r for r in rs.roots if dot(r, r) == 2]
    assert len(short) == len(long_) == 24
    assert all(sum(1 for a in r if a) == 2 for r in long_)


def test_f4_simple_roots_and_chamber():
    rs = build_root_system("F4")
    assert rs.simple_roots == (
        (-H, -H, -H, -H), (1, 0, 0, 0), (-1, 1, 0, 0), (0, -1, 1, 0))
    # chamber: x1+x2+x3+x4 <= 0, 0 <= x1 <= x2 <= x3
    for x in [(0, 0, 0, -1), (1, 1, 1, -3), (0, 1, 1, -2), (0, 0, 1, -1)]:
        assert rs.chamber_inequalities_hold(x)
    assert not rs.chamber_inequalities_hold((0, 0, 0, 1))


def test_e6_roots_match_model():
    rs = build_root_system("E6")
    assert set(rs.roots) == oracles.e6_roots()
    assert len(rs.roots) == 72


def test_a2_roots():
    rs = build_root_system("A", 2)
    expected = {tuple(Fraction(x) for x in v) for v in
                [(1, -1, 0), (-1, 1, 0), (1, 0, -1), (-1, 0, 1), (0, 1, -1), (0, -1, 1)]}
    assert set(rs.roots) == expected


@pytest.mark.parametrize("label", ["A3", "B3", "D4", "F4", "A5"])
def test_root_closure_oracle(label):
    rs = build_root_system(label)
    assert set(rs.roots) == oracles.root_closure(rs.simple_roots)


def test_e7_e8_root_counts():
    assert len(build_root_system("E7").roots) == 126
    assert len(build_root_system("E8").roots) == 240


@pytest.mark.parametrize("label,order", [("A2", 6), ("B3", 48), ("D4", 192), ("F4", 1152)])
def test_weyl_orders_small(label, order):
    rs = build_root_system(label)
    assert enumerate_weyl(rs).order == order == oracles.weyl_order_bfs(rs.simple_roots)


def test_weyl_order_e6_against_bfs():
    rs = build_root_system("E6")
    assert build_complex("E6").weyl.order == 51840 == oracles.weyl_order_bfs(rs.simple_roots)


def test_enumeration_refusals(monkeypatch):
    monkeypatch.delenv("CHAMBERWORKS_E7", raising=False)
    with pytest.raises(EnumerationRefused):
        enumerate_weyl(build_root_system("E8"))
    with pytest.raises(EnumerationRefused):
        enumerate_weyl(build_root_system("E7"))
    with pytest.raises(EnumerationRefused):
        enumerate_weyl(build_root_system("A", 8))
    assert weyl_order_formula("E7") == 2903040


def test_parse_type():
    assert parse_type("f4") == ("F", 4)
    assert parse_type("a", 2) == ("A", 2)
    for bad in [("x4", None), ("d", 3), ("f", 5), ("b", None), ("e9", None)]:
        with pytest.raises(ValueError):
            parse_type(*bad)
    with pytest.raises(ValueError):
        parse_type("b3", 4)


def test_fold_identity_inside_chamber():
    rs = build_root_system("F4")
    x = (1, 2, 3, -7)
    assert rs.chamber_inequalities_hold(x)
    w, x0 = fold_to_chamber(rs, x)
    assert w.is_identity() and x0 == tuple(Fraction(a) for a in x)


def test_fold_examples():
    f4 = build_root_system("F4")
    assert vertex_label(f4, (0, 0, 0, 1)) == 1
    e6 = build_root_system("E6")
    assert vertex_label(e6, (-3, -3, -3, -3, -3, -1, -1, -1)) == 2
    w, x0 = fold_to_chamber(e6, (-3, -3, -3, -3, -3, -1, -1, -1))
    assert e6.chamber_inequalities_hold(x0)
    assert canonical_ray(w.apply((-3, -3, -3, -3, -3, -1, -1, -1))) == canonical_ray(x0)


def test_canonical_involutions():
    assert canonical_involution(build_root_system("F4")) == {1: 1, 2: 2, 3: 3, 4: 4}
    assert canonical_involution(build_root_system("E6")) == {1: 1, 2: 6, 3: 5, 4: 4, 5: 3, 6: 2}
    for n in range(1, 7):
        assert canonical_involution(build_root_system("A", n)) == {i: n + 1 - i for i in range(1, n + 1)}


def test_graph_classification():
    names = {t: classify_graph(build_root_system(t).graph()) for t in ["A3", "B3", "D4", "F4", "E6", "E7"]}
    assert names == {"A3": "A3", "B3": "B3", "D4": "D4", "F4": "F4", "E6": "E6", "E7": "E7"}


def test_out_orders():
    assert build_complex("F4").aut.out_order == 2
    assert build_complex("D4").aut.out_order == 6
    assert build_complex("E6").aut.out_order == 2
    assert build_complex("B3").aut.out_order == 1


def test_transporter_maps_pairs():
    rs = build_root_system("F4")
    src = [(0, 0, 0, -1), (H, H, H, -H)]
    w = transporter(rs, src, [(1, 0, 0, 0), (H, H, H, H)])
    assert w is not None
    assert canonical_ray(w.apply(src[0])) == (1, 0, 0, 0)
    assert canonical_ray(w.apply(src[1])) == (1, 1, 1, 1)
    # different angles cannot be transported
    assert transporter(rs, src, [(1, 0, 0, 0), (0, 1, 0, 0)]) is None
