import json

import pytest

from tricat.classes import Add, All, Gen, UCosusp
from tricat.verifier import (CATALOGUE, STATUSES, UnknownTheoremId, find_ab_pairs, injective_labels,
                             module_labels, projective_labels, run_suite, run_theorem)
from test_validate import with_extra_middle


def test_catalogue_ids_and_anchors():
    ids = list(CATALOGUE)
    assert ids[0] == "T01" and ids[-1] == "T34"
    assert len(ids) == 35
    assert all(e.anchor for e in CATALOGUE.values())


def test_module_labels(a2):
    assert sorted(module_labels(a2)) == ["P1", "S1", "S2"]
    assert set(injective_labels(a2)) == {"S1", "P1"}
    assert set(projective_labels(a2)) == {"P1", "S2"}


def test_unknown_id(a2):
    with pytest.raises(UnknownTheoremId):
        run_theorem("T99", a2)
    with pytest.raises(UnknownTheoremId):
        run_suite(a2, select=["T01", "T99"])


def test_canonical_pair_found(a2, a2_ctx):
    pairs = find_ab_pairs(a2, ctx=a2_ctx)
    by = {(str(p.x), str(p.omega)): p.hyps for p in pairs}
    canon = [h for (x, w), h in by.items() if x.startswith("ucosusp") and w.startswith("add")]
    assert canon and canon[0]["weak_cogenerator"] and canon[0]["x_injective"]
    mods = [h for (x, w), h in by.items() if x.startswith("add") and w.startswith("add")]
    assert mods and mods[0]["weak_cogenerator"] and not mods[0]["x_injective"]


def test_whole_category_is_a_pair(semisimple):
    pairs = find_ab_pairs(semisimple)
    kinds = [(type(p.x), type(p.omega)) for p in pairs]
    assert (All, All) in kinds
    # s = s[1], so Hom(X, omega[1]) never vanishes
    assert not any(p.hyps["x_injective"] for p in pairs)


def test_skipped_without_weak_cogenerator(a2, a2_ctx):
    res = run_theorem("T19", a2, bindings={"X": "add(gen[S1, S2, P1])", "omega": "add(gen[S1])"},
                      ctx=a2_ctx)
    assert res.status == "skipped_hypotheses"
    assert res.skipped == 1


def test_canonical_pair_t19(a2, a2_ctx):
    res = run_theorem("T19", a2, bindings={"X": "ucosusp(gen[S1, S2, P1])", "omega": "add(gen[S1, P1])"},
                      ctx=a2_ctx)
    assert res.status == "pass", res.counterexample


def test_semisimple_t03_passes(semisimple):
    assert run_theorem("T03", semisimple, samples=10).status == "pass"


def test_heuristic_model_passes_are_caveated(cluster):
    res = run_theorem("T01", cluster, samples=5)
    assert res.status == "caveated_pass"
    assert res.caveats


def test_mutated_model_fails_an_entry(cluster):
    key = sorted(cluster.mid, key=lambda p: (p[0].sort_key(), p[1].sort_key()))[0]
    rep = run_suite(with_extra_middle(cluster, key), select=["T02", "T03"], samples=10)
    assert not rep.ok
    bad = [e for e in rep.entries if e.status == "fail"]
    assert bad and all(e.counterexample for e in bad)


def test_report_shape(semisimple):
    rep = run_suite(semisimple, select=["T01", "T28"], samples=5).to_json()
    assert set(rep) == {"tool", "model", "universe", "seed", "entries", "summary", "caveats"}
    assert set(rep["summary"]) == set(STATUSES)
    assert all(e["millis"] is None for e in rep["entries"])
    json.dumps(rep)


def test_threads_do_not_change_output(semisimple):
    a = run_suite(semisimple, samples=5, threads=1).to_json()
    b = run_suite(semisimple, samples=5, threads=4).to_json()
    assert a == b
