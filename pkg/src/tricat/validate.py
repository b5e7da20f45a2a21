"""Iso-class level checks of the triangle table of a model."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from typing import Dict, Iterable, List, Optional, Tuple

import numpy as np

from .model import (IndecRef, MidUnavailable, ModelSpec, ObjClass, UniverseSpec, ZERO,
                    enumerate_universe)

RULES = ("zero-end", "sum", "shift-equivariance", "rotation", "size-bound", "hom-exactness", "euler")


@dataclass
class RuleResult:
    rule: str
    checked: int = 0
    failures: int = 0
    counterexample: Optional[dict] = None
    unavailable: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def fail(self, **witness):
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = {k: str(v) for k, v in witness.items()}

    def to_json(self) -> dict:
        d = {"rule": self.rule, "status": "pass" if self.passed else "fail",
             "checked": self.checked, "failures": self.failures}
        if self.unavailable:
            d["unavailable"] = self.unavailable
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        return d


@dataclass
class ValidationReport:
    rules: Dict[str, RuleResult] = field(default_factory=dict)
    pairs: int = 0

    @property
    def ok(self) -> bool:
        return all(r.passed for r in self.rules.values())

    def to_json(self) -> dict:
        return {"ok": self.ok, "pairs": self.pairs,
                "rules": [self.rules[r].to_json() for r in RULES]}


def _connected_universe_pairs(m: ModelSpec, u: UniverseSpec, objs: List[ObjClass]):
    refs = m.indecs_in(u)
    for a in objs:
        if not a:
            continue
        shifted = [m.shift_ref(x, 1) for x in a]
        nbrs = [y for y in refs if any(m.hom_indec(y, xs) for xs in shifted)]
        for sc in range(1, u.S + 1):
            for ctup in combinations_with_replacement(nbrs, sc):
                c = ObjClass(ctup)
                if len(m.components(a, c)) == 1:
                    yield a, c


def _pairs(m: ModelSpec, u: UniverseSpec) -> Iterable[Tuple[ObjClass, ObjClass]]:
    """Pairs in ``O(S, W)``: all with ``|A| + |C| <= S`` plus all connected ones.

    A general pair splits into connected components and the oracle is the
    direct sum over components, so these pairs exercise every table lookup a
    universe pair can make.
    """
    objs = enumerate_universe(m, u)
    by_size: Dict[int, List[ObjClass]] = {}
    for o in objs:
        by_size.setdefault(len(o), []).append(o)
    seen = set()
    for sa in range(u.S + 1):
        for sc in range(u.S - sa + 1):
            for a in by_size.get(sa, []):
                for c in by_size.get(sc, []):
                    seen.add((a, c))
                    yield a, c
    for a, c in _connected_universe_pairs(m, u, objs):
        if (a, c) not in seen:
            yield a, c


def _table_pairs(m: ModelSpec):
    for (a, c) in sorted(m.mid, key=lambda p: (p[0].sort_key(), p[1].sort_key())):
        yield a, c


def validate_model(m: ModelSpec, u: UniverseSpec = UniverseSpec(), scope: str = "universe") -> ValidationReport:
    """Check every rule on the universe pairs and the stored table pairs.

    ``scope="table"`` restricts the pair rules to the stored entries, which
    is enough to localize a corrupted entry quickly.
    """
    if scope not in ("universe", "table"):
        raise ValueError(f"unknown scope {scope!r}")
    rep = ValidationReport({r: RuleResult(r) for r in RULES})
    zr = rep.rules["zero-end"]
    for x in enumerate_universe(m, u):
        zr.checked += 1
        if m.mid_of(ZERO, x) != (x,):
            zr.fail(C=x)
        if m.mid_of(x, ZERO) != (x,):
            zr.fail(A=x)
    cap = max(m.mid_cap, 2 * u.S)
    universe = enumerate_universe(m, u)
    probe = _HomProbe(m, list(universe) + [o for key, bs in m.mid.items() for o in key + bs])
    seen = set()
    sources = (_pairs(m, u), _table_pairs(m)) if scope == "universe" else (_table_pairs(m),)
    for src in sources:
        for a, c in src:
            if (a, c) in seen:
                continue
            seen.add((a, c))
            rep.pairs += 1
            _check_pair(m, u, a, c, cap, rep, probe)
    return rep


def _check_pair(m: ModelSpec, u: UniverseSpec, a: ObjClass, c: ObjClass, cap: int,
                rep: ValidationReport, probe: "_HomProbe"):
    try:
        bs = m.mid_of(a, c)
    except MidUnavailable:
        rep.rules["sum"].unavailable += 1
        return
    r = rep.rules["sum"]
    r.checked += 1
    if (a + c) not in bs:
        r.fail(A=a, C=c)
    r = rep.rules["size-bound"]
    for b in bs:
        r.checked += 1
        if len(b) > len(a) + len(c):
            r.fail(A=a, C=c, B=b)
    r = rep.rules["shift-equivariance"]
    r.checked += 1
    try:
        moved = m.mid_of(m.shift_obj(a, 1), m.shift_obj(c, 1))
        if set(moved) != {m.shift_obj(b, 1) for b in bs}:
            r.fail(A=a, C=c)
    except MidUnavailable:
        r.unavailable += 1
    _check_hom(probe, a, c, bs, rep)
    r = rep.rules["rotation"]
    a1 = m.shift_obj(a, 1)
    cm = m.shift_obj(c, -1)
    for b in bs:
        if len(b) > u.S and len(b) + len(a) > cap:
            continue
        # forward: b -> c -> a[1]; backward: c[-1] -> a -> b
        for ends, want in (((b, a1), c), ((cm, b), a)):
            if len(ends[0]) + len(ends[1]) > cap:
                continue
            r.checked += 1
            try:
                if want not in m.mid_of(*ends):
                    r.fail(A=a, C=c, B=b, rotated_ends=f"({ends[0]}, {ends[1]})")
            except MidUnavailable:
                r.unavailable += 1


class _HomProbe:
    """Hom and Euler vectors of objects against a fixed probe set, cached."""

    def __init__(self, m: ModelSpec, objs: Iterable[ObjClass]):
        self.m = m
        if m.graded:
            lo, hi = m.hom_window
            degs = {x.degree for o in objs for x in o}
            span = range(min(degs, default=0) - hi - 1, max(degs, default=0) + hi + 2)
            self.probes = [IndecRef(b, d) for b in m.indecs for d in span]
        else:
            self.probes = [IndecRef(b) for b in m.indecs]
        self._cache: Dict[ObjClass, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}
        self._ref: Dict[IndecRef, Tuple[np.ndarray, np.ndarray, np.ndarray]] = {}

    def _of_ref(self, x: IndecRef):
        hit = self._ref.get(x)
        if hit is None:
            m = self.m
            into = np.array([m.hom_indec(t, x) for t in self.probes], dtype=np.int64)
            out = np.array([m.hom_indec(x, t) for t in self.probes], dtype=np.int64)
            eul = np.zeros(len(m.indecs), dtype=np.int64)
            if m.graded:
                # sum_k (-1)^k hom(t, x[k]) for t = base@0; finite since Hom has bounded degree support
                lo, hi = m.hom_window
                for i, base in enumerate(m.indecs):
                    eul[i] = sum((-1) ** ((j - x.degree) % 2) * m.hom.get((base, x.base, j), 0)
                                 for j in range(lo, hi + 1))
            hit = self._ref[x] = (into, out, eul)
        return hit

    def of(self, o: ObjClass):
        hit = self._cache.get(o)
        if hit is None:
            parts = [self._of_ref(x) for x in o]
            n, k = len(self.probes), len(self.m.indecs)
            hit = (sum((p[0] for p in parts), np.zeros(n, dtype=np.int64)),
                   sum((p[1] for p in parts), np.zeros(n, dtype=np.int64)),
                   sum((p[2] for p in parts), np.zeros(k, dtype=np.int64)))
            self._cache[o] = hit
        return hit


def _check_hom(probe: _HomProbe, a: ObjClass, c: ObjClass, bs, rep: ValidationReport):
    """Long exact Hom sequences bound the middle term; Euler forms are additive (graded)."""
    ia, oa, ea = probe.of(a)
    ic, oc, ec = probe.of(c)
    r = rep.rules["hom-exactness"]
    e = rep.rules["euler"]
    for b in bs:
        ib, ob, eb = probe.of(b)
        r.checked += 1
        bad = np.flatnonzero((ib > ia + ic) | (ob > oa + oc))
        if len(bad):
            r.fail(A=a, C=c, B=b, probe=probe.probes[bad[0]])
        if probe.m.graded:
            e.checked += 1
            bad = np.flatnonzero(eb != ea + ec)
            if len(bad):
                e.fail(A=a, C=c, B=b, probe=IndecRef(probe.m.indecs[bad[0]], 0))
