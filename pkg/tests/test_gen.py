import pytest

from tricat import bundled_model, quiver
from tricat.classes import Gen, Star, evaluate
from tricat.gen import (BadParams, DerivedAn, derived_mid, gen_cluster_An, gen_derived_An,
                        gen_semisimple)
from tricat.model import IndecRef, ObjClass
from tricat.parser import parse_obj


def test_semisimple_definition():
    m = gen_semisimple(1, 1)
    s = parse_obj("s", m)
    assert m.indecs == ("s",)
    assert m.shift_obj(s, 1) == s
    assert parse_obj("s+s", m) in m.mid_of(s, s)


def test_semisimple_period_two():
    m = gen_semisimple(2, 2)
    assert m.shift_order == 2
    x = IndecRef(m.indecs[0])
    partner = m.shift_ref(x, 1)
    assert partner != x
    assert m.hom_indec(x, partner) == 0


def test_bundled_files_match_generators():
    assert bundled_model("semisimple") == gen_semisimple(1, 1)
    assert bundled_model("cluster_A2") == gen_cluster_An(2)


def test_bundled_derived_matches_generator(generated):
    assert bundled_model("derived_A2") == generated["derived"]


def test_bad_params():
    with pytest.raises(BadParams):
        gen_semisimple(0)
    with pytest.raises(BadParams):
        gen_derived_An(0)
    with pytest.raises(BadParams):
        gen_cluster_An(1)


def test_derived_star_two_cones(a2):
    # Hom(S1, S2[1]) is one-dimensional over F2: the zero map and one nonzero map
    view = evaluate(Star(Gen((parse_obj("S2", a2),)), Gen((parse_obj("S1", a2),))), a2)
    assert set(view.elems) == {parse_obj("S2+S1", a2), parse_obj("P1", a2)}


def test_table_agrees_with_direct_cones(a2):
    # the stored table against fresh cone computations over the two-element field
    for (a, c) in sorted(a2.mid, key=lambda p: (p[0].sort_key(), p[1].sort_key()))[:40]:
        assert set(a2.mid_of(a, c)) == set(derived_mid(2, a, c))


def test_hom_table_matches_chain_maps(a2):
    # representation-level Hom/Ext against Hom in the homotopy category of complexes
    d = DerivedAn(2)
    for x in a2.indecs:
        for y in a2.indecs:
            for k in (-1, 0, 1, 2):
                cx = d.complex_of(ObjClass((IndecRef(x, 0),)))
                cy = d.complex_of(ObjClass((IndecRef(y, k),)))
                assert quiver.hom_dim(cx, cy) == a2.hom.get((x, y, k), 0)


def test_cluster_hom_symmetry(cluster):
    # 2-Calabi-Yau: Hom(X, Y[1]) = Hom(Y, X[1])
    for x in cluster.indecs:
        for y in cluster.indecs:
            X, Y = IndecRef(x), IndecRef(y)
            assert cluster.hom_indec(X, cluster.shift_ref(Y, 1)) == cluster.hom_indec(Y, cluster.shift_ref(X, 1))
