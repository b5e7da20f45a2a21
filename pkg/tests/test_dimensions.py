import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from tricat import reps
from tricat.classes import check_chain
from tricat.dimensions import (BIG, EmptyCandidates, category_dim, coresdim, dim_vector, id_, pd,
                               rel_rouquier_dim, resdim)
from tricat.extnat import INF, ExtNat
from tricat.gen import interval_label
from tricat.model import IndecRef, ObjClass
from tricat.parser import parse_expr, parse_obj

INTERVALS = [(1, 1), (2, 2), (1, 2)]
MODS = "add(gen[S1, S2, P1])"


def as_int(v: ExtNat) -> int:
    return BIG if v.is_inf else v.value


def module_pd(a, b):
    """Projective dimension inside the module category, from Ext^1 against all modules."""
    m = reps.interval_rep(2, a, b)
    return int(any(reps.ext1_dim(m, reps.interval_rep(2, *j)) for j in INTERVALS))


def module_id(a, b):
    m = reps.interval_rep(2, a, b)
    return int(any(reps.ext1_dim(reps.interval_rep(2, *j), m) for j in INTERVALS))


@pytest.mark.parametrize("iv", INTERVALS)
def test_pd_id_of_modules_against_modules(a2_ev, iv):
    m = a2_ev.model
    x = a2_ev.eval(parse_expr(MODS, m))
    obj = parse_obj(interval_label(2, *iv), m)
    assert pd(a2_ev, x, obj).value == ExtNat(module_pd(*iv))
    assert id_(a2_ev, x, obj).value == ExtNat(module_id(*iv))


CLASSES = ["add(gen[S1])", "add(gen[P1, S2@1])", "ususp(add(gen[S1]))", "ucosusp(add(gen[S2, P1]))",
           MODS, "thick(gen[S2])"]
REFS = [IndecRef(b, d) for b in ("S1", "S2", "P1") for d in range(-3, 4)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CLASSES), st.lists(st.sampled_from(REFS), min_size=1, max_size=2))
def test_vector_matches_per_object(a2_ev, cls, refs):
    x = a2_ev.eval(parse_expr(cls, a2_ev.model))
    obj = ObjClass(tuple(refs))
    i = a2_ev.uni.idx(obj)
    assert i is not None
    for kind, fn in (("pd", pd), ("id", id_), ("resdim", resdim), ("coresdim", coresdim)):
        vec, _ = dim_vector(a2_ev, x, kind)
        assert vec[i] == as_int(fn(a2_ev, x, obj).value), kind


def test_pd_of_sum_is_max(a2_ev):
    m = a2_ev.model
    x = a2_ev.eval(parse_expr(MODS, m))
    a, b = parse_obj("S1@-1", m), parse_obj("P1@2", m)
    assert pd(a2_ev, x, a + b).value == max(pd(a2_ev, x, a).value, pd(a2_ev, x, b).value)


def test_resdim_certificate_is_valid(a2_ev):
    m = a2_ev.model
    x = a2_ev.eval(parse_expr("ucosusp(add(gen[S2, P1]))", m))
    for text in ("S1", "S1@1+S2", "P1@2"):
        r = resdim(a2_ev, x, parse_obj(text, m))
        assert not r.value.is_inf
        n = r.value.value
        tris = r.certificate.get("triangles", [])
        assert len(tris) == n
        chain = [tuple(parse_obj(t, m) for t in tri) for tri in tris]
        assert check_chain(m, chain)


def test_resdim_zero_iff_member(a2_ev):
    m = a2_ev.model
    x = a2_ev.eval(parse_expr("ucosusp(add(gen[S1]))", m))
    vec, _ = dim_vector(a2_ev, x, "resdim")
    rep = a2_ev.uni.reported.astype(bool)
    assert np.array_equal((vec == 0) & rep, x.mask.astype(bool) & rep)


def test_periodic_values_degenerate(cluster_ev):
    m = cluster_ev.model
    x = cluster_ev.eval(parse_expr("add(gen[S1])", m))
    for lab in m.indecs:
        obj = parse_obj(lab, m)
        assert pd(cluster_ev, x, obj).value in (ExtNat(0), INF)


def test_category_dim_semisimple(semisimple_ev):
    r = category_dim(semisimple_ev)
    assert r.value == ExtNat(0)
    assert r.certificate["generator"] == "s"


def test_category_dim_needs_candidates(semisimple_ev):
    with pytest.raises(EmptyCandidates):
        category_dim(semisimple_ev, [ObjClass()])


def test_rouquier_levels(a2_ev):
    m = a2_ev.model
    x = a2_ev.eval(parse_expr("gen[S1]", m))
    assert rel_rouquier_dim(a2_ev, x, parse_obj("S1@3+S1", m)).value == ExtNat(0)
    assert rel_rouquier_dim(a2_ev, x, parse_obj("S2", m)).value.is_inf
    g = a2_ev.eval(parse_expr("gen[S1+S2]", m))
    assert rel_rouquier_dim(a2_ev, g, parse_obj("P1", m)).value == ExtNat(1)
