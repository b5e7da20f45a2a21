"""Acceptance criteria 1-9; each test prints one PASS/FAIL line."""

import json
import time

import numpy as np
import pytest

from tricat import bundled_model
from tricat.classes import (Add, EpsW, Gen, PerpL, PerpR, Shift, Star, UCosusp, USusp, Wedge,
                            star_chain)
from tricat.cli import main
from tricat.dimensions import BIG, category_dim, dim_vector
from tricat.model import UniverseSpec, export_model, load_model
from tricat.parser import parse_expr
from tricat.validate import validate_model
from tricat.verifier import (Context, chain_mask, find_ab_pairs, run_suite, run_theorem,
                             sample_pool)
from test_validate import with_extra_middle

U = UniverseSpec(3, 4)
BUNDLED = {"semisimple": "semisimple", "derived": "derived_A2", "cluster": "cluster_A2"}
AB_ENTRIES = ["T15", "T16", "T17", "T18", "T19", "T21", "T22", "T23", "T26", "T27"]


@pytest.fixture(scope="module")
def contexts():
    return {k: Context(bundled_model(v), U) for k, v in BUNDLED.items()}


@pytest.fixture(scope="module")
def derived_suite():
    t0 = time.perf_counter()
    rep = run_suite(bundled_model("derived_A2"), U, seed=0)
    return rep, time.perf_counter() - t0


def sampled_classes(ctx, wraps, seed=0, count=50):
    out = []
    for i, g in enumerate(sample_pool(ctx, seed, count)):
        w = wraps[i % len(wraps)]
        out.append(w(Gen(g)) if w is not None else Gen(g))
    return out


def test_criterion_1_model_axioms(generated, criterion):
    t0 = time.perf_counter()
    reports = {k: validate_model(m, U) for k, m in generated.items()}
    elapsed = time.perf_counter() - t0
    missed = []
    mutations = 0
    for k, m in generated.items():
        for key in m.mid:
            mutations += 1
            if validate_model(with_extra_middle(m, key), U, scope="table").ok:
                missed.append((k, key))
    ok = all(r.ok for r in reports.values()) and not missed and elapsed < 30
    criterion(1, ok, f"validation {elapsed:.1f}s on 3 models, {mutations} single-entry mutations, "
                     f"{len(missed)} undetected")
    assert ok, (missed[:5], {k: r.to_json() for k, r in reports.items() if not r.ok})


def test_criterion_2_star_epsilon(contexts, criterion):
    bad = []
    checked = 0
    for name, ctx in contexts.items():
        for x in sampled_classes(ctx, (Add, None)):
            xm = ctx.m(x)
            for n in range(1, 4):
                rec = ctx.m(EpsW(x, n)) & ctx.rep
                chain = ctx.m(star_chain([x] + [Shift(x, i) for i in range(1, n + 1)])) & ctx.rep
                walk = chain_mask(ctx, xm, xm, n) & ctx.rep
                checked += 1
                if not (np.array_equal(rec, chain) and np.array_equal(rec, walk)):
                    bad.append((name, str(x), n))
    criterion(2, not bad, f"{checked} (class, n) comparisons, {len(bad)} discrepancies")
    assert not bad, bad[:5]


def test_criterion_3_cosuspended_shift_law(contexts, criterion):
    ctx = contexts["derived"]
    x = parse_expr("ucosusp(downray[S1, P1, S2])", ctx.model)
    rd = ctx.vec(x, "resdim")
    diffs = 0
    for n in range(5):
        diffs += int((((rd <= n) & ctx.rep) != (ctx.m(Shift(x, n)) & ctx.rep)).sum())
    criterion(3, diffs == 0, f"{int(ctx.rep.sum())} objects x n<=4, {diffs} discrepancies")
    assert diffs == 0


def test_criterion_4_orthogonal_characterizations(contexts, criterion):
    ctx = contexts["derived"]
    m = ctx.model
    texts = ["add(gen[S1])", "gen[P1, S2@1]", "ucosusp(gen[S1])", "ususp(gen[S2])",
             "add(gen[S1@-3, P1@2])", "add(gen[S1, S2, P1])"]
    classes = [parse_expr(t, m) for t in texts] + sampled_classes(ctx, (Add, None), count=10)
    diffs = 0
    for x in classes:
        view = ctx.v(x)
        pdv, _ = dim_vector(ctx.ev, view, "pd")
        idv, _ = dim_vector(ctx.ev, view, "id")
        rd = ctx.vec(Shift(PerpL(USusp(x)), 1), "resdim")
        cd = ctx.vec(Shift(PerpR(UCosusp(x)), -1), "coresdim")
        diffs += int(((pdv != rd) & ctx.rep).sum()) + int(((idv != cd) & ctx.rep).sum())
    criterion(4, diffs == 0, f"{len(classes)} classes, pd and id on all objects, {diffs} discrepancies")
    assert diffs == 0


def test_criterion_5_ab_pipeline(contexts, derived_suite, criterion):
    ctx = contexts["derived"]
    rep, elapsed = derived_suite
    pair = [p for p in find_ab_pairs(ctx.model, U, ctx=ctx) if isinstance(p.x, UCosusp)][0]
    hyps = pair.hyps["weak_cogenerator"] and pair.hyps["x_injective"]
    statuses = {t: rep.entry(t).status for t in AB_ENTRIES}
    canonical = all(any(b == {"X": str(pair.x), "omega": str(pair.omega)} for b in rep.entry(t).bindings)
                    for t in AB_ENTRIES)
    pd_w, res_x = ctx.vec(pair.omega, "pd"), ctx.vec(pair.x, "resdim")
    exact = int(((pd_w != res_x) & ctx.rep).sum())
    ok = hyps and canonical and all(s == "pass" for s in statuses.values()) and exact == 0 and elapsed < 180
    criterion(5, ok, f"hypotheses {hyps}, {sum(s == 'pass' for s in statuses.values())}/{len(AB_ENTRIES)} "
                     f"entries pass, pd_omega = resdim_X off by {exact}, suite {elapsed:.0f}s")
    assert ok, statuses


def test_criterion_6_torsion_pair(contexts, derived_suite, criterion):
    ctx = contexts["derived"]
    rep, _ = derived_suite
    pair = [p for p in find_ab_pairs(ctx.model, U, ctx=ctx) if isinstance(p.x, UCosusp)][0]
    y = Shift(Wedge(pair.omega), 1)
    h = ctx.hyp
    conds = (h.closed_under_summands(pair.x) and h.closed_under_summands(y), h.hom_vanishes(pair.x, y),
             np.array_equal(ctx.m(Wedge(pair.x)) & ctx.rep, ctx.m(Star(pair.x, y)) & ctx.rep))
    ok = all(conds) and rep.entry("T24").status == "pass"
    criterion(6, ok, f"summands/orthogonality/decomposition {conds}, T24 {rep.entry('T24').status}")
    assert ok


def test_criterion_7_periodic_degeneracy(contexts, criterion):
    bad = []
    count = 0
    for name in ("semisimple", "cluster"):
        ctx = contexts[name]
        for x in sampled_classes(ctx, (Add, None, UCosusp, USusp)):
            for kind in ("pd", "id"):
                v, _ = dim_vector(ctx.ev, ctx.v(x), kind)
                count += 1
                if not np.isin(v[ctx.rep], (0, BIG)).all():
                    bad.append((name, str(x), kind))
    criterion(7, not bad, f"{count} (class, kind) vectors, {len(bad)} with values outside {{0, inf}}")
    assert not bad, bad[:5]


def test_criterion_8_rouquier(contexts, derived_suite, criterion):
    rep, _ = derived_suite
    good = ("pass", "caveated_pass")
    t28 = {k: (rep.entry("T28") if k == "derived" else run_theorem("T28", c.model, U, ctx=c)).status
           for k, c in contexts.items()}
    t31 = {k: (rep.entry("T31") if k == "derived" else run_theorem("T31", c.model, U, ctx=c)).status
           for k, c in contexts.items()}
    dims = {k: category_dim(contexts[k].ev) for k in ("semisimple", "derived")}
    dims_ok = all(d.value == 0 and d.certificate and d.certificate["generator"] for d in dims.values())
    cl = contexts["cluster"]
    pentagon = parse_expr("add(gen[P1, S2])", cl.model)
    tilting = cl.hyp.is_n_cluster_tilting_orthogonality(pentagon, 2)
    top = int(cl.vec(pentagon, "resdim")[cl.rep].max())
    t34 = run_theorem("T34", cl.model, U, bindings={"C": pentagon}, ctx=cl).status
    ok = (all(s in good for s in t28.values()) and all(s in good for s in t31.values()) and dims_ok
          and tilting and top <= 1 and t34 in good)
    criterion(8, ok, f"T28 {t28}, category_dim {[(k, d.value.to_json(), d.certificate['generator']) for k, d in dims.items()]}, "
                     f"T31 {t31}, T34 pentagon {t34} with resdim <= {top}")
    assert ok


def test_criterion_9_determinism(derived_suite, tmp_path, criterion):
    outs = []
    for _ in range(2):
        path = tmp_path / f"rep{len(outs)}.json"
        assert main(["verify", "--model", "cluster_A2", "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    identical = outs[0] == outs[1]
    trips = []
    for name in BUNDLED.values():
        m = bundled_model(name)
        export_model(m, tmp_path / "m.json")
        again = load_model(tmp_path / "m.json")
        trips.append(again == m and again.dumps() == m.dumps())
    rep0, _ = derived_suite
    rep1 = run_suite(bundled_model("derived_A2"), U, seed=1)
    other = []
    for a, b in zip(rep0.to_json()["entries"], rep1.to_json()["entries"]):
        if a["bindings"] == b["bindings"]:
            if a != b:
                other.append(a["id"])
        elif a["status"] != b["status"]:
            other.append(a["id"])
    ok = identical and all(trips) and not other
    criterion(9, ok, f"repeated verify identical {identical}, round trips {sum(trips)}/{len(trips)}, "
                     f"seed 1 differences beyond bindings: {other or 'none'}")
    assert ok
