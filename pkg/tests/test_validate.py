import random

import pytest

from tricat.model import ZERO, UniverseSpec
from tricat.parser import parse_obj
from tricat.validate import RULES, validate_model


def bogus_middle(m, a, c):
    """A middle term no genuine triangle with ends ``a``, ``c`` can have."""
    b = a + m.shift_obj(c, 1) if m.graded else a + c + a
    return b if b not in m.mid[(a, c)] else a + a + c


def with_extra_middle(m, key):
    mid = dict(m.mid)
    mid[key] = tuple(sorted(set(mid[key]) | {bogus_middle(m, *key)}))
    return m.replace_mid(mid)


def test_rules_listed_in_report(semisimple):
    rep = validate_model(semisimple).to_json()
    assert [r["rule"] for r in rep["rules"]] == list(RULES)
    assert rep["ok"]


def test_cluster_passes(cluster):
    assert validate_model(cluster).ok


def test_derived_table_passes(a2):
    assert validate_model(a2, scope="table").ok


def test_zero_end_counterexample(semisimple):
    m = semisimple.replace_mid(dict(semisimple.mid))
    s = parse_obj("s", m)
    real = m.mid_of

    def broken(a, c):
        if not a and c == s:
            return (s + s,)
        return real(a, c)

    m.mid_of = broken
    rep = validate_model(m, UniverseSpec(2, 1))
    zr = rep.rules["zero-end"]
    assert not zr.passed
    assert zr.counterexample == {"C": "s"}


@pytest.mark.parametrize("name", ["semisimple", "cluster"])
def test_every_added_middle_is_caught_periodic(name, request):
    m = request.getfixturevalue(name)
    for key in m.mid:
        assert not validate_model(with_extra_middle(m, key), scope="table").ok, key


def test_added_middles_caught_derived_sample(a2):
    keys = sorted(a2.mid, key=lambda p: (p[0].sort_key(), p[1].sort_key()))
    for key in random.Random(3).sample(keys, 25):
        rep = validate_model(with_extra_middle(a2, key), scope="table")
        assert not rep.ok, key
        bad = [r for r in rep.rules.values() if not r.passed]
        assert all(r.counterexample for r in bad)


def test_unknown_scope(semisimple):
    with pytest.raises(ValueError):
        validate_model(semisimple, scope="everything")
