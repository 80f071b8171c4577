from __future__ import annotations

import json

import pytest

from chamberworks.complex import build_complex
from chamberworks.facts import Fact, FactReport, jsonable, run_facts
from chamberworks.linalg import ANGLE_PI_3


def test_report_rejects_duplicate_ids():
    rep = FactReport("X")
    rep.add("x.one", "anchor", 1, 1)
    with pytest.raises(ValueError):
        rep.add("x.one", "anchor", 1, 1)


def test_fact_status_and_json():
    f = Fact("x", "a", {2: ANGLE_PI_3}, {"2": "pi/3"})
    assert f.passed and f.to_json()["status"] == "pass"
    assert not Fact("y", "a", [1], [2]).passed
    assert jsonable({"b": {3, 1}, "a": ANGLE_PI_3}) == {"a": "pi/3", "b": [1, 3]}


def test_a2_involution():
    rep = run_facts("a", 2)
    assert rep.ok, [f.id for f in rep.failures]
    assert rep["a2.iota"].computed == {1: 2, 2: 1}


@pytest.mark.parametrize("t,n", [("a", 3), ("b", 3), ("b", 4), ("d", 4), ("d", 5), ("d", 6), ("a", 5)])
def test_classical_catalogues_pass(t, n):
    rep = run_facts(t, n)
    assert rep.ok, [(f.id, f.computed, f.expected) for f in rep.failures]


def test_f4_catalogue():
    rep = run_facts("f4")
    assert rep.ok, [(f.id, f.computed, f.expected) for f in rep.failures]
    ids = [f["id"] for f in rep.to_json()["facts"]]
    assert len(ids) == len(set(ids))
    assert {"f4.dist.11", "f4.link.1", "f4.iota"} <= set(ids)


def test_reports_are_deterministic():
    a = json.dumps(run_facts("b", 3).to_json())
    b = json.dumps(run_facts("b", 3).to_json())
    assert a == b


def test_run_facts_errors():
    with pytest.raises(ValueError):
        run_facts("e8")
    with pytest.raises(ValueError):
        run_facts("e7")


def test_b2_octagon_has_a_diagram_swap():
    # the B2 complex is an octagon, whose full symmetry group has order 16
    assert build_complex("B2").aut.order == 16
    assert run_facts("b", 2).ok
