import json

import pytest
from hypothesis import given, settings, strategies as st

from tricat import BUNDLED, bundled_model
from tricat.extnat import INF, ExtNat, ext_max, ext_min
from tricat.model import (AxiomError, IndecRef, ObjClass, ParseError, SchemaError, UniverseSpec,
                          enumerate_universe, export_model, hom_dim, load_model, model_from_json,
                          shift_obj)
from tricat.parser import parse_obj


def test_semisimple_file_loads(semisimple):
    assert semisimple.kind == "periodic"
    assert semisimple.indecs == ("s",)
    assert semisimple.shift_order == 1


def test_derived_a2_shape(a2):
    assert a2.graded
    assert len(a2.indecs) == 3
    assert a2.hom_window == (0, 1)


@pytest.mark.parametrize("name", BUNDLED)
def test_round_trip_is_identity(name, tmp_path):
    m = bundled_model(name)
    path = tmp_path / "m.json"
    export_model(m, path)
    again = load_model(path)
    assert again == m
    assert again.dumps() == m.dumps()
    assert path.read_text() == m.dumps()


def test_shift_not_bijective_rejected(semisimple):
    doc = json.loads(bundled_model("cluster_A2").dumps())
    doc["shift"] = [doc["indecs"][0]] * len(doc["indecs"])
    with pytest.raises(AxiomError):
        model_from_json(doc)


def test_missing_field_rejected():
    doc = json.loads(bundled_model("semisimple").dumps())
    del doc["hom"]
    with pytest.raises(SchemaError):
        model_from_json(doc)


def test_malformed_file(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_model(p)


def test_hom_examples(semisimple, a2):
    s = parse_obj("s", semisimple)
    assert hom_dim(semisimple, ObjClass(), s) == 0
    assert hom_dim(semisimple, parse_obj("s+s", semisimple), s) == 2
    # one nonsplit extension of S1 by S2
    assert hom_dim(a2, parse_obj("S1", a2), parse_obj("S2@1", a2)) == 1


def test_shift_obj_zero_is_identity(a2):
    x = parse_obj("S1@-2+P1", a2)
    assert shift_obj(a2, x, 0) == x
    assert shift_obj(a2, shift_obj(a2, x, 3), -3) == x


def test_cluster_shift_order(cluster):
    assert cluster.shift_order == 5


def test_universe_contains_zero_and_indecs(a2):
    u = UniverseSpec(2, 1)
    objs = set(enumerate_universe(a2, u))
    assert ObjClass() in objs
    assert all(ObjClass((r,)) in objs for r in a2.indecs_in(u))
    # closed under summands
    for o in objs:
        for r in o:
            assert ObjClass((r,)) in objs


@given(st.lists(st.sampled_from(["S1", "S2", "P1"]), max_size=4),
       st.lists(st.integers(-3, 3), min_size=4, max_size=4), st.integers(-5, 5))
def test_shift_is_additive_and_invertible(labels, degs, k):
    m = bundled_model("derived_A2")
    x = ObjClass(tuple(IndecRef(b, d) for b, d in zip(labels, degs)))
    y = shift_obj(m, x, k)
    assert len(y) == len(x)
    assert shift_obj(m, y, -k) == x


@given(st.lists(st.sampled_from(["S1", "S2", "P1"]), min_size=1, max_size=3),
       st.lists(st.sampled_from(["S1", "S2", "P1"]), min_size=1, max_size=3), st.integers(-2, 2))
def test_hom_is_biadditive_and_shift_invariant(xs, ys, k):
    m = bundled_model("derived_A2")
    x = ObjClass(tuple(IndecRef(b, 0) for b in xs))
    y = ObjClass(tuple(IndecRef(b, 1) for b in ys))
    total = sum(hom_dim(m, ObjClass((a,)), ObjClass((b,))) for a in x for b in y)
    assert hom_dim(m, x, y) == total
    assert hom_dim(m, shift_obj(m, x, k), shift_obj(m, y, k)) == total


@given(st.one_of(st.none(), st.integers(0, 9)), st.one_of(st.none(), st.integers(0, 9)))
def test_extnat_order_and_sum(a, b):
    x, y = ExtNat(a), ExtNat(b)
    assert (x + y).is_inf == (x.is_inf or y.is_inf)
    assert ext_max([x, y]) in (x, y)
    assert ext_min([x, y]) in (x, y)
    assert not (x < x)
    assert INF == ExtNat(None)
    assert ExtNat.from_json(x.to_json()) == x
