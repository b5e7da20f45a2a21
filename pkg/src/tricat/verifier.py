"""Catalogue of checkable statements, run over a model, a universe and class bindings.

Every entry quantifies over the objects of the reported universe.  Classes
are bound either explicitly or by seeded sampling from a generator pool; an
entry whose hypotheses fail on a binding skips it, and an entry with no
applicable binding reports ``skipped_hypotheses``, never ``pass``.
"""

from __future__ import annotations

import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple, Union as TUnion

import numpy as np

from . import kernels
from .classes import (Add, All, Bracket, BracketN, ClassView, Delta, DownRay, EpsV, EpsW, Evaluator, Expr,
                      Gen, Intersect, PerpL, PerpR, Shift, Star, Thick, Tilde, UCosusp, USusp, Union,
                      Vee, Wedge, check_chain, push_shift, star_chain)
from .dimensions import BIG, category_dim, dim_vector, to_extnat, _class_sup
from .extnat import ExtNat
from .model import IndecRef, ModelSpec, ObjClass, TricatError, UniverseSpec

STATUSES = ("pass", "fail", "skipped_hypotheses", "caveated_pass")
DEFAULT_SAMPLES = 50


class UnknownTheoremId(TricatError):
    pass


# -- results -------------------------------------------------------------------

@dataclass
class CheckResult:
    id: str
    status: str
    anchor: str
    bindings: List[Dict[str, str]] = field(default_factory=list)
    counterexample: Optional[dict] = None
    caveats: List[str] = field(default_factory=list)
    millis: Optional[int] = None
    skipped: int = 0
    note: str = ""

    def to_json(self) -> dict:
        d = {"id": self.id, "status": self.status, "anchor": self.anchor,
             "bindings": self.bindings, "skipped_bindings": self.skipped,
             "caveats": sorted(set(self.caveats)), "millis": self.millis}
        if self.counterexample is not None:
            d["counterexample"] = self.counterexample
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class SuiteReport:
    model: dict
    universe: dict
    seed: int
    entries: List[CheckResult]
    caveats: List[str]
    tool: dict

    @property
    def summary(self) -> Dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for e in self.entries:
            out[e.status] += 1
        return out

    @property
    def ok(self) -> bool:
        return all(e.status != "fail" for e in self.entries)

    def entry(self, tid: str) -> CheckResult:
        for e in self.entries:
            if e.id == tid:
                return e
        raise KeyError(tid)

    def to_json(self) -> dict:
        return {"tool": self.tool, "model": self.model, "universe": self.universe, "seed": self.seed,
                "entries": [e.to_json() for e in self.entries], "summary": self.summary,
                "caveats": self.caveats}


# -- context and hypotheses ------------------------------------------------------

ExprOrView = TUnion[Expr, ClassView]


class Context:
    """One evaluator plus memoized dimension arrays, shared by all entries of a run."""

    def __init__(self, model: ModelSpec, spec: UniverseSpec, ev: Optional[Evaluator] = None):
        self.model = model
        self.spec = spec
        self.ev = ev if ev is not None else Evaluator(model, spec)
        self.uni = self.ev.uni
        self.rep = self.uni.reported.astype(bool)
        self.hyp = Hypotheses(self)
        self._vecs: Dict[tuple, Tuple[np.ndarray, List[str]]] = {}
        self._lock = threading.Lock()

    def v(self, e: ExprOrView) -> ClassView:
        return e if isinstance(e, ClassView) else self.ev.eval(e)

    def m(self, e: ExprOrView) -> np.ndarray:
        """Boolean membership over the working universe."""
        return self.v(e).mask.astype(bool)

    def vec(self, e: Expr, kind: str) -> np.ndarray:
        """Per-object dimension array; ``kind`` in pd, id, resdim, coresdim, dim."""
        key = (e, kind)
        hit = self._vecs.get(key)
        if hit is None:
            view = self.v(e)
            if kind == "dim":
                vals = np.full(self.uni.N, BIG, dtype=np.int64)
                from .dimensions import bracket_levels
                for n, level in enumerate(bracket_levels(self.ev, view)):
                    vals[level.astype(bool) & (vals == BIG)] = n
                hit = (vals, list(view.caveats))
            else:
                hit = dim_vector(self.ev, view, kind)
            with self._lock:
                self._vecs.setdefault(key, hit)
        return hit[0]

    def obj(self, i: int) -> ObjClass:
        return self.uni.objs[int(i)]

    def _ref_col(self, obj: ObjClass, into: bool) -> np.ndarray:
        """``Hom(r, obj)`` (``into``) or ``Hom(obj, r)`` for every working indecomposable ``r``."""
        m, refs = self.model, self.uni.refs
        col = np.zeros(len(refs), dtype=np.int64)
        for t in obj:
            col += np.array([m.hom_indec(r, t) if into else m.hom_indec(t, r) for r in refs], dtype=np.int64)
        return col

    def hom_to(self, target: ObjClass, rows: Optional[np.ndarray] = None) -> np.ndarray:
        """``hom_dim(o, target)`` for the working objects ``o`` (or just ``rows``)."""
        inc = self.uni.incidence if rows is None else self.uni.incidence[rows]
        return inc.astype(np.int64) @ self._ref_col(target, True)

    def hom_from(self, source: ObjClass, rows: Optional[np.ndarray] = None) -> np.ndarray:
        inc = self.uni.incidence if rows is None else self.uni.incidence[rows]
        return inc.astype(np.int64) @ self._ref_col(source, False)


class Hypotheses:
    """Predicates on classes, each decided within the reported universe."""

    def __init__(self, ctx: Context):
        self.ctx = ctx

    def _rep(self, mask: np.ndarray) -> np.ndarray:
        return mask.astype(bool) & self.ctx.rep

    def _le(self, a: np.ndarray, b: np.ndarray) -> bool:
        return not (self._rep(a) & ~b.astype(bool)).any()

    def contains_zero(self, x: ExprOrView) -> bool:
        return self.ctx.v(x).contains_zero

    def closed_under_extensions(self, x: ExprOrView) -> bool:
        m = self.ctx.v(x).mask
        return self._le(self.ctx.ev.star_mask(m, m), m)

    def _shift_closed(self, x: ExprOrView, k: int) -> bool:
        m = self.ctx.v(x).mask
        s, _ = self.ctx.ev.shift_mask(m, k)
        return self._le(s, m)

    def suspended(self, x: ExprOrView) -> bool:
        return self._shift_closed(x, 1) and self.closed_under_extensions(x)

    def cosuspended(self, x: ExprOrView) -> bool:
        return self._shift_closed(x, -1) and self.closed_under_extensions(x)

    def closed_under_summands(self, x: ExprOrView) -> bool:
        m = self.ctx.v(x).mask
        return self._le(self.ctx.ev.summands_mask(m), m)

    def closed_under_cones(self, x: ExprOrView) -> bool:
        u = self.ctx.uni
        m = self.ctx.v(x).mask
        return self._le(kernels.join(u.tri_x, u.tri_z, u.tri_y, m, m, u.N), m)

    def closed_under_cocones(self, x: ExprOrView) -> bool:
        u = self.ctx.uni
        m = self.ctx.v(x).mask
        return self._le(kernels.join(u.tri_z, u.tri_y, u.tri_x, m, m, u.N), m)

    def weak_cogenerator(self, x: Expr, w: Expr) -> bool:
        """``w`` inside ``x`` inside ``x[-1] * w``."""
        c = self.ctx
        return self._le(c.m(w), c.m(x)) and self._le(c.m(x), c.m(Star(Shift(x, -1), w)))

    def weak_generator(self, x: Expr, w: Expr) -> bool:
        c = self.ctx
        return self._le(c.m(w), c.m(x)) and self._le(c.m(x), c.m(Star(w, Shift(x, 1))))

    def x_injective(self, x: ExprOrView, w: ExprOrView) -> bool:
        r = _class_sup(self.ctx.ev, self.ctx.v(x), self.ctx.v(w), proj=False)
        return r.value == 0

    def x_projective(self, x: ExprOrView, w: ExprOrView) -> bool:
        r = _class_sup(self.ctx.ev, self.ctx.v(x), self.ctx.v(w), proj=True)
        return r.value == 0

    def hom_vanishes(self, x: ExprOrView, y: ExprOrView) -> bool:
        """``Hom(X, Y) = 0`` for all members, decided on indecomposable supports."""
        u = self.ctx.uni
        sx = u.indec_support(self.ctx.v(x).mask)
        sy = u.indec_support(self.ctx.v(y).mask)
        return not (u.hom[np.ix_(sx, sy)] > 0).any()

    def is_torsion_pair(self, x: Expr, y: Expr, ambient: Expr) -> bool:
        c = self.ctx
        if not (self.closed_under_summands(x) and self.closed_under_summands(y)):
            return False
        if not self.hom_vanishes(x, y):
            return False
        amb = self._rep(c.m(ambient))
        return bool(np.array_equal(amb, self._rep(c.m(Star(x, y)))))

    def is_n_cluster_tilting_orthogonality(self, cls: Expr, n: int) -> bool:
        """``C`` equals both intersections of orthogonals of its shifts ``1..n-1``."""
        c = self.ctx
        if n < 2:
            return False
        right = np.ones(c.uni.N, dtype=bool)
        left = np.ones(c.uni.N, dtype=bool)
        for i in range(1, n):
            right &= c.m(PerpR(Shift(cls, -i)))
            left &= c.m(PerpL(Shift(cls, i)))
        mine = self._rep(c.m(cls))
        return bool(np.array_equal(mine, self._rep(right)) and np.array_equal(mine, self._rep(left)))


# -- per-binding checking ----------------------------------------------------------

class _Skip(Exception):
    pass


class _Check:
    """Accumulates the outcome of one entry on one binding."""

    def __init__(self, ctx: Context, bindings: Dict[str, Expr]):
        self.ctx = ctx
        self.bindings = bindings
        self.failure: Optional[dict] = None
        self.caveats: set = set()

    def need(self, ok: bool, what: str):
        if not ok:
            raise _Skip(what)

    def note(self, *views: ClassView):
        for v in views:
            self.caveats.update(v.caveats)

    def fail(self, claim: str, obj: Optional[ObjClass] = None, **detail):
        if self.failure is None:
            self.failure = {"claim": claim,
                            "bindings": {k: str(v) for k, v in self.bindings.items()}}
            if obj is not None:
                self.failure["object"] = str(obj)
            if detail:
                self.failure["detail"] = {k: _jsonable(v) for k, v in detail.items()}

    def true(self, ok: bool, claim: str, obj: Optional[ObjClass] = None, **detail) -> bool:
        if not ok:
            self.fail(claim, obj, **detail)
        return ok

    def _masks(self, e: ExprOrView) -> np.ndarray:
        if isinstance(e, np.ndarray):
            return e.astype(bool)
        v = self.ctx.v(e)
        self.note(v)
        return v.mask.astype(bool)

    def eq(self, a, b, claim: str) -> bool:
        ma, mb = self._masks(a) & self.ctx.rep, self._masks(b) & self.ctx.rep
        bad = np.flatnonzero(ma != mb)
        if len(bad):
            i = bad[0]
            self.fail(claim, self.ctx.obj(i), in_left=bool(ma[i]), in_right=bool(mb[i]))
            return False
        return True

    def le(self, a, b, claim: str) -> bool:
        ma, mb = self._masks(a) & self.ctx.rep, self._masks(b)
        bad = np.flatnonzero(ma & ~mb)
        if len(bad):
            self.fail(claim, self.ctx.obj(bad[0]))
            return False
        return True

    def vec_eq(self, va: np.ndarray, vb: np.ndarray, domain: np.ndarray, claim: str) -> bool:
        bad = np.flatnonzero((va != vb) & domain & self.ctx.rep)
        if len(bad):
            i = bad[0]
            self.fail(claim, self.ctx.obj(i), left=_ext(va[i]), right=_ext(vb[i]))
            return False
        return True

    def vec_le(self, va: np.ndarray, vb: np.ndarray, domain: np.ndarray, claim: str) -> bool:
        bad = np.flatnonzero((va > vb) & domain & self.ctx.rep)
        if len(bad):
            i = bad[0]
            self.fail(claim, self.ctx.obj(i), left=_ext(va[i]), right=_ext(vb[i]))
            return False
        return True


def _ext(v) -> str:
    return "inf" if v >= BIG else str(int(v))


def _jsonable(v):
    if isinstance(v, (bool, int, str)) or v is None:
        return v
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, (np.bool_,)):
        return bool(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return str(v)


def _add1(v: np.ndarray) -> np.ndarray:
    return np.where(v >= BIG, BIG, v + 1)


def _sub1(v: np.ndarray) -> np.ndarray:
    return np.where(v >= BIG, BIG, v - 1)


def _plus(a: np.ndarray, b) -> np.ndarray:
    return np.where((a >= BIG) | (b >= BIG), BIG, a + b)


# -- witness masks ----------------------------------------------------------------

def family_mask(ctx: Context, x: np.ndarray, n: int, wedge: bool = True) -> np.ndarray:
    """Objects admitting an ``n``-step resolution (or coresolution) family by ``x``.

    Resolution: ``K_j[-1] -> K_{j+1} -> X_j -> K_j`` with ``K_n`` in ``x``.
    Coresolution: ``K_j -> X_j -> K_{j+1} -> K_j[1]`` with ``K_n`` in ``x``.
    Built backwards from ``K_n`` along the triangle relation, independently of
    the star recursion.
    """
    u = ctx.uni
    x8 = x.astype(np.uint8)
    good = x8.copy()
    for _ in range(n):
        if wedge:
            prev = kernels.join(u.tri_z, u.tri_y, u.tri_x, good, x8, u.N)
            good, _ = ctx.ev.shift_mask(prev, 1)
        else:
            good = kernels.join(u.tri_y, u.tri_z, u.tri_x, good, x8, u.N)
    return good.astype(bool)


def chain_mask(ctx: Context, y: np.ndarray, x: np.ndarray, n: int, upward: bool = True) -> np.ndarray:
    """End points ``K_n`` of triangle chains starting in ``x``.

    Upward: ``K_i -> Y_i -> K_{i+1} -> K_i[1]``; downward:
    ``K_{i+1} -> Y_i -> K_i -> K_{i+1}[1]``; ``Y_i`` in ``y``, ``K_0`` in ``x``.
    """
    u = ctx.uni
    y8 = y.astype(np.uint8)
    reach = x.astype(np.uint8)
    for _ in range(n):
        if upward:
            reach = kernels.join(u.tri_x, u.tri_z, u.tri_y, reach, y8, u.N)
        else:
            reach = kernels.join(u.tri_y, u.tri_z, u.tri_x, reach, y8, u.N)
    return reach.astype(bool)


def star_witness(ctx: Context, c: int, left: np.ndarray, right: np.ndarray):
    """A triangle ``L -> C -> R -> L[1]`` with ``L`` in ``left`` and ``R`` in ``right``."""
    u = ctx.uni
    rows = u.rows_at("tri_z", c)
    ok = rows[left[u.tri_x[rows]] & right[u.tri_y[rows]]]
    if len(ok) == 0:
        return None
    r = ok[0]
    return (u.objs[u.tri_x[r]], u.objs[c], u.objs[u.tri_y[r]])


# -- class pools and bindings -------------------------------------------------------

def module_labels(m: ModelSpec) -> List[str]:
    """Indecomposables of a graded model, read as degree-zero modules."""
    return list(m.indecs) if m.graded else []


def injective_labels(m: ModelSpec) -> List[str]:
    """Modules ``I`` with ``Hom(M, I[1]) = 0`` for every module ``M``."""
    if not m.graded:
        return []
    return [b for b in m.indecs if not any(m.hom.get((a, b, 1), 0) for a in m.indecs)]


def projective_labels(m: ModelSpec) -> List[str]:
    if not m.graded:
        return []
    return [a for a in m.indecs if not any(m.hom.get((a, b, 1), 0) for b in m.indecs)]


def _gen(m: ModelSpec, labels: Sequence[str]) -> Gen:
    deg = 0 if m.graded else None
    return Gen(tuple(ObjClass((IndecRef(b, deg),)) for b in labels))


SHIFT_REACH = 4  # largest shift the catalogue applies to a sampled class (n + 1 with n <= 3)


def generator_pool(ctx: Context) -> List[Tuple[ObjClass, ...]]:
    """Single indecomposables and pairs of them, drawn from the core band.

    On graded models generators sit in degrees where every catalogue shift
    keeps them inside the working window, so shifted classes stay exact.
    """
    refs = ctx.model.indecs_in(ctx.spec)
    if ctx.model.graded:
        band = max(0, ctx.uni.work.W - SHIFT_REACH)
        refs = [r for r in refs if abs(r.degree) <= band]
    singles = [(ObjClass((r,)),) for r in refs]
    pairs = [(ObjClass((a,)), ObjClass((b,))) for a, b in combinations(refs, 2)]
    return singles + pairs


def sample_pool(ctx: Context, seed: int, cap: int) -> List[Tuple[ObjClass, ...]]:
    pool = generator_pool(ctx)
    if len(pool) <= cap:
        return pool
    rng = np.random.default_rng(seed)
    idx = rng.choice(len(pool), size=cap, replace=False)
    return [pool[i] for i in idx]


WRAP: Dict[str, Callable[[Expr], Expr]] = {
    "gen": lambda g: g, "add": Add, "ucosusp": UCosusp, "ususp": USusp,
}


@dataclass
class ABPair:
    x: Expr
    omega: Expr
    hyps: Dict[str, bool]

    def to_json(self) -> dict:
        return {"X": str(self.x), "omega": str(self.omega), "hypotheses": self.hyps}


def _ab_candidates(ctx: Context, strategy: str, seed: int) -> List[Tuple[Expr, Expr]]:
    m = ctx.model
    out: List[Tuple[Expr, Expr]] = []
    if m.graded:
        mods = _gen(m, module_labels(m))
        inj = _gen(m, injective_labels(m))
        out.append((UCosusp(mods), Add(inj)))
        out.append((Add(mods), Add(mods)))
    out.append((All(), All()))
    if strategy == "exhaustive":
        base = [ObjClass((IndecRef(b, 0 if m.graded else None),)) for b in m.indecs]
        gens = [c for k in (1, 2) for c in combinations(base, k)]
        for g in gens:
            for h in (s for k in range(1, len(g) + 1) for s in combinations(g, k)):
                for wrap in (Add, UCosusp):
                    out.append((wrap(Gen(g)), Add(Gen(h))))
    else:
        for g in sample_pool(ctx, seed, 6):
            out.append((UCosusp(Gen(g)), Add(Gen(g))))
    seen = set()
    uniq = []
    for p in out:
        if p not in seen:
            seen.add(p)
            uniq.append(p)
    return uniq


def pair_hypotheses(ctx: Context, x: Expr, w: Expr) -> Dict[str, bool]:
    h = ctx.hyp
    return {"closed_under_extensions": h.closed_under_extensions(x),
            "weak_cogenerator": h.weak_cogenerator(x, w),
            "x_injective": h.x_injective(x, w),
            "x_closed_under_summands": h.closed_under_summands(x),
            "omega_closed_under_summands": h.closed_under_summands(w),
            "cosuspended": h.cosuspended(x)}


def find_ab_pairs(m: ModelSpec, u: UniverseSpec = UniverseSpec(), strategy: str = "seeded", seed: int = 0,
                  ctx: Optional[Context] = None) -> List[ABPair]:
    """Pairs ``(X, omega)`` with ``X`` closed under extensions and ``omega`` a weak cogenerator."""
    if strategy not in ("seeded", "exhaustive"):
        raise ValueError(f"unknown strategy {strategy!r}")
    ctx = ctx or Context(m, u)
    out = []
    for x, w in _ab_candidates(ctx, strategy, seed):
        if not ctx.hyp.closed_under_extensions(x) or not ctx.hyp.weak_cogenerator(x, w):
            continue
        out.append(ABPair(x, w, pair_hypotheses(ctx, x, w)))
    return out


def dual_pairs(ctx: Context) -> List[Tuple[Expr, Expr]]:
    """Pairs with ``pd_X(omega) = 0``: suspended modules against projectives."""
    m = ctx.model
    if not m.graded:
        return []
    return [(USusp(_gen(m, module_labels(m))), Add(_gen(m, projective_labels(m))))]


# -- catalogue -----------------------------------------------------------------------

@dataclass(frozen=True)
class Entry:
    id: str
    anchor: str
    binder: str
    fn: Optional[Callable[[_Check, Dict[str, Expr]], None]]
    wraps: Tuple[str, ...] = ("add",)
    cap: int = DEFAULT_SAMPLES
    note: str = ""


CATALOGUE: Dict[str, Entry] = {}


def entry(tid: str, anchor: str, binder: str, wraps=("add",), cap: int = DEFAULT_SAMPLES, note: str = ""):
    def deco(fn):
        CATALOGUE[tid] = Entry(tid, anchor, binder, fn, tuple(wraps), cap, note)
        return fn
    return deco


def _shifts(e: Expr, ks: Iterable[int]) -> List[Expr]:
    return [Shift(e, k) if k else e for k in ks]


@entry("T01", "a class with 0 is a two-sided unit for star; suspended and cosuspended classes "
       "contain 0, are idempotent under star and closed under cones (resp. cocones)", "XY",
       wraps=("ususp", "ucosusp", "add"))
def _t01(ck: _Check, b):
    ctx, h = ck.ctx, ck.ctx.hyp
    x, y = b["X"], b["Y"]
    susp, cosusp, zero = h.suspended(x), h.cosuspended(x), h.contains_zero(x)
    ck.need(susp or cosusp or zero, "X contains 0 or is (co)suspended")
    if zero:
        ck.le(y, Star(x, y), "Y inside X*Y")
        ck.le(y, Star(y, x), "Y inside Y*X")
    if susp or cosusp:
        ck.true(zero, "0 in X")
        ck.eq(x, Star(x, x), "X = X*X")
    if susp:
        ck.true(h.closed_under_cones(x), "suspended X closed under cones")
    if cosusp:
        ck.true(h.closed_under_cocones(x), "cosuspended X closed under cocones")


@entry("T02", "membership in the n-th resolution class is witnessed by a family of n triangles "
       "K_j[-1] -> K_{j+1} -> X_j -> K_j", "X", wraps=("add", "gen"))
def _t02(ck: _Check, b):
    ctx = ck.ctx
    x = b["X"]
    xm = ck._masks(x)
    for wedge, name in ((True, "resolution"), (False, "coresolution")):
        for n in range(1, 4):
            rec = ck._masks(EpsW(x, n) if wedge else EpsV(x, n))
            fam = family_mask(ctx, xm, n, wedge)
            if not ck.eq(rec, fam, f"{name} class {n}: recursion = triangle family"):
                return
            if wedge:
                chain = star_chain(_shifts(x, range(n + 1)))
                if not ck.eq(rec, chain, f"resolution class {n}: recursion = star chain"):
                    return
                walk = chain_mask(ctx, xm, xm, n)
                if not ck.eq(rec, walk, f"resolution class {n}: recursion = witness chain"):
                    return
    _spot_witnesses(ck, x, xm)


def _spot_witnesses(ck: _Check, x: Expr, xm: np.ndarray, count: int = 1):
    """Extract witness chains for a few members and re-check them against the oracle."""
    from .classes import resolution_family, witness_chain
    ctx = ck.ctx
    view = ctx.v(x)
    for n in range(1, 4):
        members = np.flatnonzero(ctx.m(EpsW(x, n)) & ctx.rep & ~xm)[:count]
        for i in members:
            z = ctx.obj(i)
            fam = resolution_family(ctx.ev, z, view, n)
            chain = witness_chain(ctx.ev, z, view, view, n)
            if fam is None or chain is None:
                ck.fail(f"no witness extracted for a member of resolution class {n}", z)
                return
            if not (check_chain(ctx.model, fam) and check_chain(ctx.model, chain)):
                ck.fail(f"extracted witness for class {n} rejected by the triangle oracle", z)
                return


@entry("T03", "the n-th resolution class equals X * X[1] * ... * X[n]", "X", wraps=("gen", "add"))
def _t03(ck: _Check, b):
    x = b["X"]
    for n in range(0, 4):
        parts = _shifts(x, range(n + 1))
        left = star_chain(parts)
        right = parts[-1]
        for p in reversed(parts[:-1]):
            right = Star(p, right)
        if not ck.eq(EpsW(x, n), left, f"resolution class {n} = left-nested star of shifts"):
            return
        if not ck.eq(left, right, f"star of shifts {n}: left nesting = right nesting"):
            return


@entry("T04", "with 0 in X: X[n] and the n-th resolution class and its shift lie in the next one",
       "X", wraps=("add", "ucosusp"))
def _t04(ck: _Check, b):
    x = b["X"]
    ck.need(ck.ctx.hyp.contains_zero(x), "0 in X")
    for n in range(0, 4):
        ck.le(Shift(x, n), EpsW(x, n), f"X[{n}] inside resolution class {n}")
        ck.le(EpsW(x, n), EpsW(x, n + 1), f"resolution class {n} inside class {n + 1}")
        ck.le(Shift(EpsW(x, n), 1), EpsW(x, n + 1), f"resolution class {n} shifted inside class {n + 1}")


@entry("T05", "for X closed under extensions, X * X^ is contained in X^", "X",
       wraps=("ucosusp", "ususp", "add"))
def _t05(ck: _Check, b):
    x = b["X"]
    ck.need(ck.ctx.hyp.closed_under_extensions(x), "X closed under extensions")
    ck.le(Star(x, Wedge(x)), Wedge(x), "X * X^ inside X^")


@entry("T06", "for cosuspended X the n-th resolution class is X[n]", "Xcosusp", wraps=("ucosusp",))
def _t06(ck: _Check, b):
    x = b["X"]
    ck.need(ck.ctx.hyp.cosuspended(x), "X cosuspended")
    for n in range(0, 4):
        if not ck.eq(EpsW(x, n), Shift(x, n), f"resolution class {n} = X[{n}]"):
            return


@entry("T07", "for cosuspended X: resdim_X(C) <= n iff C in X[n]; X^ is the union of the X[n] "
       "and the triangulated (thick, if summand-closed) hull of X", "Xcosusp", wraps=("ucosusp",))
def _t07(ck: _Check, b):
    ctx = ck.ctx
    x = b["X"]
    ck.need(ctx.hyp.cosuspended(x), "X cosuspended")
    rd = ctx.vec(x, "resdim")
    for n in range(0, 5):
        if not ck.eq(rd <= n, Shift(x, n), f"resdim_X(C) <= {n} iff C in X[{n}]"):
            return
    # union of the shifts that stay exact, against the part of X^ they can reach
    union = ctx.m(x).copy()
    k = 0
    for k in range(1, 2 * ctx.uni.work.W + 1):
        pushed = push_shift(x, k, ctx.model, ctx.uni.work.W) if ctx.model.graded else Shift(x, k)
        if ctx.model.graded and isinstance(pushed, Shift):
            k -= 1
            break
        union |= ctx.m(pushed)
    ck.eq(ctx.m(Wedge(x)) & (rd <= k), union, f"X^ up to resdim {k} = union of X[0..{k}]")
    ck.eq(Wedge(x), Delta(x), "X^ = triangulated hull of X")
    if ctx.hyp.closed_under_summands(x):
        ck.eq(Wedge(x), Thick(x), "X^ = thick hull of X")


@entry("T08", "orthogonals of suspended and cosuspended hulls are Hom-vanishing against the "
       "generators shifted in one direction", "X", wraps=("add", "gen", "ucosusp"))
def _t08(ck: _Check, b):
    ctx = ck.ctx
    x = b["X"]
    for hull, left, name in ((USusp(x), True, "left orthogonal of the suspended hull"),
                             (UCosusp(x), False, "right orthogonal of the cosuspended hull")):
        closed = PerpL(hull) if left else PerpR(hull)
        hv = ctx.v(hull)
        ck.note(hv)
        support = ctx.uni.indec_support(hv.mask)
        h = ctx.uni.hom if left else ctx.uni.hom.T
        bad = (h[:, support] > 0).any(axis=1)
        generic = ctx.ev.perp_from_bad(bad)
        if not ck.eq(closed, generic, f"{name}: closed form = direct Hom scan"):
            return


@entry("T09", "Z lies in Y * Y[1] * ... * Y[n-1] * X[n] (dually X[-n] * Y[-n+1] * ... * Y) iff a "
       "chain of n triangles through Y joins X to Z", "XY", wraps=("add",))
def _t09(ck: _Check, b):
    ctx = ck.ctx
    x, y = b["X"], b["Y"]
    xm, ym = ck._masks(x), ck._masks(y)
    for n in range(1, 4):
        up = star_chain(_shifts(y, range(n)) + [Shift(x, n)])
        if not ck.eq(up, chain_mask(ctx, ym, xm, n, True), f"upward chain of length {n}"):
            return
        down = star_chain([Shift(x, -n)] + _shifts(y, range(-n + 1, 1)))
        if not ck.eq(down, chain_mask(ctx, ym, xm, n, False), f"downward chain of length {n}"):
            return


@entry("T10", "pd_X(M) <= n iff M in the left orthogonal of U_X[n+1]; id_X(M) <= n iff M in the "
       "right orthogonal of the cosuspended hull shifted by -n-1; pd_Y(X) = id_X(Y)", "XY",
       wraps=("add", "gen", "ucosusp", "ususp"))
def _t10(ck: _Check, b):
    ctx = ck.ctx
    x, y = b["X"], b["Y"]
    pdv, idv = ctx.vec(x, "pd"), ctx.vec(x, "id")
    for n in range(0, 4):
        if not ck.eq(pdv <= n, Shift(PerpL(USusp(x)), n + 1), f"pd_X(M) <= {n} iff orthogonality"):
            return
        if not ck.eq(idv <= n, Shift(PerpR(UCosusp(x)), -n - 1), f"id_X(M) <= {n} iff orthogonality"):
            return
    xv, yv = ctx.v(x), ctx.v(y)
    a = _class_sup(ctx.ev, yv, xv, proj=True)
    c = _class_sup(ctx.ev, xv, yv, proj=False)
    ck.caveats.update(a.caveats + c.caveats)
    ck.true(a.value == c.value, "pd_Y(X) = id_X(Y)", pd=a.value.to_json(), id=c.value.to_json())


@entry("T11", "pd_X(M) is the resolution dimension by the left orthogonal of U_X[1]; id_X(M) the "
       "coresolution dimension by the right orthogonal of the cosuspended hull shifted by -1", "X",
       wraps=("add", "gen", "ucosusp", "ususp"))
def _t11(ck: _Check, b):
    ctx = ck.ctx
    x = b["X"]
    all_ = np.ones(ctx.uni.N, dtype=bool)
    ck.vec_eq(ctx.vec(x, "pd"), ctx.vec(Shift(PerpL(USusp(x)), 1), "resdim"), all_,
              "pd_X(M) = resdim over the left orthogonal")
    ck.vec_eq(ctx.vec(x, "id"), ctx.vec(Shift(PerpR(UCosusp(x)), -1), "coresdim"), all_,
              "id_X(M) = coresdim over the right orthogonal")


@entry("T12", "pd_X(L) <= pd_X(Y) + resdim_Y(L); equality on Y^ when Y is summand-closed inside "
       "U_X and the left orthogonal of U_X[1]; nonzero members of that class leave it when shifted up",
       "XY", wraps=("add", "gen", "ucosusp"))
def _t12(ck: _Check, b):
    ctx = ck.ctx
    x, y = b["X"], b["Y"]
    pdv = ctx.vec(x, "pd")
    sup = _class_sup(ctx.ev, ctx.v(x), ctx.v(y), proj=True)
    ck.caveats.update(sup.caveats)
    bound = _plus(ctx.vec(y, "resdim"), BIG if sup.value.is_inf else sup.value.value)
    ck.vec_le(pdv, bound, np.ones(ctx.uni.N, dtype=bool), "pd_X(L) <= pd_X(Y) + resdim_Y(L)")
    yy = Intersect(USusp(x), Shift(PerpL(USusp(x)), 1))
    if ctx.hyp.closed_under_summands(yy):
        dom = ctx.m(Wedge(yy))
        ck.vec_eq(pdv, ctx.vec(yy, "resdim"), dom, "pd_X(L) = resdim_Y(L) on Y^")
    ym = ctx.m(yy)
    for i in np.flatnonzero(ym & ctx.rep):
        if i == ctx.uni.zero:
            continue
        for j in range(1, 4):
            t = ctx.uni.shift_map(j)[i]
            if t >= 0 and ym[t]:
                ck.fail("nonzero member shifted up stays in U_X and the orthogonal", ctx.obj(i), shift=j)
                return


@entry("T13", "pd_Y is unchanged by passing from X to X^v or to any class between them", "XY",
       wraps=("add", "gen"))
def _t13(ck: _Check, b):
    ctx = ck.ctx
    x, y = b["X"], b["Y"]
    yv = ctx.v(y)
    base = _class_sup(ctx.ev, yv, ctx.v(x), proj=True)
    for z, name in ((Vee(x), "X^v"), (Union(x, EpsV(x, 1)), "X plus its first coresolution class")):
        r = _class_sup(ctx.ev, yv, ctx.v(z), proj=True)
        ck.caveats.update(r.caveats)
        if not ck.true(r.value == base.value, f"pd_Y({name}) = pd_Y(X)",
                       left=r.value.to_json(), right=base.value.to_json()):
            return


@entry("T14", "under id_X(Y) = 0 chains through Y preserve Hom(X, -) up to shift; dually under "
       "pd_X(Y) = 0 for Hom(-, X); checked as equality of Hom dimensions", "XYorth", wraps=("add",),
       cap=12)
def _t14(ck: _Check, b):
    ctx = ck.ctx
    h = ctx.hyp
    x, y = b["X"], b["Y"]
    inj, proj = h.x_injective(x, y), h.x_projective(x, y)
    ck.need(inj or proj, "id_X(Y) = 0 or pd_X(Y) = 0")
    xs = np.flatnonzero(ctx.m(x) & ctx.rep)
    ym = ctx.m(y)
    starts = [i for i in range(ctx.uni.N) if ctx.rep[i] and len(ctx.uni.codes[i]) == 1]
    m = ctx.model
    for k0 in starts:
        start = np.zeros(ctx.uni.N, dtype=bool)
        start[k0] = True
        K0 = ctx.obj(k0)
        for n in (1, 2):
            for upward, ok in ((True, inj), (False, proj)):
                if not ok:
                    continue
                ends = np.flatnonzero(chain_mask(ctx, ym, start, n, upward) & ctx.rep)
                for kn in ends:
                    Kn = ctx.obj(kn)
                    for k in (1, 2):
                        if upward:
                            lhs = ctx.hom_to(m.shift_obj(K0, k + n), xs)
                            rhs = ctx.hom_to(m.shift_obj(Kn, k), xs)
                        else:
                            lhs = ctx.hom_from(m.shift_obj(K0, -(k + n)), xs)
                            rhs = ctx.hom_from(m.shift_obj(Kn, -k), xs)
                        bad = np.flatnonzero(lhs != rhs)
                        if len(bad):
                            ck.fail("Hom dimensions agree along the chain", ctx.obj(xs[bad[0]]),
                                    K0=K0, Kn=Kn, n=n, k=k, upward=upward,
                                    lhs=int(lhs[bad[0]]), rhs=int(rhs[bad[0]]))
                            return


def _ab(ck: _Check, b, *, summands=True, ext=True, cogen=True, inj=True, cosusp=False):
    """Gate on the standard hypotheses of an (X, omega) pair."""
    h = ck.ctx.hyp
    x, w = b["X"], b["omega"]
    if ext:
        ck.need(h.closed_under_extensions(x), "X closed under extensions")
    if cosusp:
        ck.need(h.cosuspended(x), "X cosuspended")
    if summands:
        ck.need(h.closed_under_summands(w), "omega closed under summands")
    if summands == "both":
        ck.need(h.closed_under_summands(x), "X closed under summands")
    if cogen:
        ck.need(h.weak_cogenerator(x, w), "omega weak cogenerator in X")
    if inj:
        ck.need(h.x_injective(x, w), "omega X-injective")
    return x, w


@entry("T15", "for X-injective omega, omega^ is X-injective; with omega a summand-closed weak "
       "cogenerator, omega = X cap (right orthogonal of the cosuspended hull)[-1] = X cap omega^", "AB")
def _t15(ck: _Check, b):
    ctx = ck.ctx
    x, w = b["X"], b["omega"]
    ck.need(ctx.hyp.x_injective(x, w), "omega X-injective")
    r = _class_sup(ctx.ev, ctx.v(x), ctx.v(Wedge(w)), proj=False)
    ck.caveats.update(r.caveats)
    ck.true(r.value == 0, "id_X(omega^) = 0", value=r.value.to_json())
    if ctx.hyp.weak_cogenerator(x, w) and ctx.hyp.closed_under_summands(w):
        ck.eq(w, Intersect(x, Shift(PerpR(UCosusp(x)), -1)), "omega = X cap orthogonal[-1]")
        ck.eq(w, Intersect(x, Wedge(w)), "omega = X cap omega^")


@entry("T16", "for a summand-closed X-injective weak cogenerator omega, X cap omega^v is the set of "
       "members of X with finite id_X", "AB")
def _t16(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, ext=False)
    idv = ctx.vec(x, "id")
    finite = ctx.m(x) & (idv < BIG)
    ck.eq(Intersect(x, Vee(w)), finite, "X cap omega^v = {X in X : id_X(X) finite}")


@entry("T17", "for X closed under extensions with weak cogenerator omega, every C in X^ sits in "
       "triangles C[-1] -> Y_C -> X_C -> C and C -> Y^C -> X^C -> C[1], Y in omega^, X in X", "AB")
def _t17(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, summands=False, inj=False)
    wa = Wedge(w)
    first = Star(x, Shift(wa, 1))
    second = Star(Shift(x, -1), wa)
    ck.le(Wedge(x), first, "C in X * omega^[1]")
    ck.le(Wedge(x), second, "C in X[-1] * omega^")
    members = np.flatnonzero(ctx.m(Wedge(x)) & ctx.rep)
    lx, ly = ctx.m(x), ctx.m(Shift(wa, 1))
    sx, sy = ctx.m(Shift(x, -1)), ctx.m(wa)
    step = max(1, len(members) // 25)
    for i in members[::step]:
        for left, right, name in ((lx, ly, "X * omega^[1]"), (sx, sy, "X[-1] * omega^")):
            tri = star_witness(ctx, i, left, right)
            if tri is None:
                ck.fail(f"triangle witness for {name}", ctx.obj(i))
                return
            if not check_chain(ctx.model, [tri]):
                ck.fail(f"witness for {name} rejected by the triangle oracle", ctx.obj(i),
                        triangle=[str(t) for t in tri])
                return


@entry("T18", "for X closed under extensions with weak cogenerator omega and 0 in omega, "
       "X^ = X * omega^ = X * omega^[1]; if X is closed under [-1] also = X[-1] * omega^", "AB")
def _t18(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, summands=False, inj=False)
    zero = ctx.hyp.contains_zero(w)
    down = ctx.hyp._shift_closed(x, -1)
    ck.need(zero or down, "0 in omega or X closed under [-1]")
    wa = Wedge(w)
    ck.eq(Wedge(x), Star(x, wa), "X^ = X * omega^")
    ck.eq(Wedge(x), Star(x, Shift(wa, 1)), "X^ = X * omega^[1]")
    if down:
        ck.eq(Wedge(x), Star(Shift(x, -1), wa), "X^ = X[-1] * omega^")


@entry("T19", "for summand-closed X, omega with X closed under extensions and omega an X-injective "
       "weak cogenerator, pd over omega^ = pd over omega = resdim_X on X^", "AB")
def _t19(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, summands="both")
    dom = ctx.m(Wedge(x))
    a, c, r = ctx.vec(Wedge(w), "pd"), ctx.vec(w, "pd"), ctx.vec(x, "resdim")
    ck.vec_eq(a, c, dom, "pd over omega^ = pd over omega")
    ck.vec_eq(c, r, dom, "pd over omega = resdim_X")


@entry("T20", "on a triangle A -> B -> C -> A[1]: id(B) <= max(id A, id C), id(A) <= max(id B, "
       "id C + 1), id(C) <= max(id B, id A - 1)", "X", wraps=("add", "gen", "ucosusp", "ususp"))
def _t20(ck: _Check, b):
    ctx = ck.ctx
    u = ctx.uni
    v = ctx.vec(b["X"], "id")
    keep = ctx.rep[u.tri_x] & ctx.rep[u.tri_z] & ctx.rep[u.tri_y]
    a, bb, c = v[u.tri_x][keep], v[u.tri_z][keep], v[u.tri_y][keep]
    rows = np.flatnonzero(keep)
    for lhs, rhs, claim in ((bb, np.maximum(a, c), "id(B) <= max(id A, id C)"),
                            (a, np.maximum(bb, _add1(c)), "id(A) <= max(id B, id C + 1)"),
                            (c, np.maximum(bb, _sub1(a)), "id(C) <= max(id B, id A - 1)")):
        bad = np.flatnonzero(lhs > rhs)
        if len(bad):
            r = rows[bad[0]]
            ck.fail(claim, None, triangle=[str(u.objs[u.tri_x[r]]), str(u.objs[u.tri_z[r]]),
                                           str(u.objs[u.tri_y[r]])])
            return


@entry("T21", "for summand-closed X-injective omega inside the cosuspended hull of X, "
       "id_omega = id_X = coresdim_omega on that hull cap omega^v", "AB")
def _t21(ck: _Check, b):
    ctx = ck.ctx
    x, w = b["X"], b["omega"]
    ck.need(ctx.hyp.closed_under_summands(w), "omega closed under summands")
    ck.need(ctx.hyp.x_injective(x, w), "omega X-injective")
    ck.need(not (ctx.m(w) & ctx.rep & ~ctx.m(UCosusp(x))).any(), "omega inside the cosuspended hull")
    dom = ctx.m(Intersect(UCosusp(x), Vee(w)))
    a, c, r = ctx.vec(w, "id"), ctx.vec(x, "id"), ctx.vec(w, "coresdim")
    ck.vec_eq(a, c, dom, "id_omega = id_X")
    ck.vec_eq(c, r, dom, "id_X = coresdim_omega")


@entry("T22", "(right orthogonal of the cosuspended hull)[-1] cap X^ = omega^; if X is closed under "
       "[-1], U_omega = omega^ = X-orthogonal[-1] cap X^", "AB")
def _t22(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b)
    ck.eq(Intersect(Shift(PerpR(UCosusp(x)), -1), Wedge(x)), Wedge(w), "orthogonal[-1] cap X^ = omega^")
    if ctx.hyp._shift_closed(x, -1):
        ck.eq(USusp(w), Wedge(w), "U_omega = omega^")
        ck.eq(Intersect(Shift(PerpR(x), -1), Wedge(x)), Wedge(w), "X-orthogonal[-1] cap X^ = omega^")


@entry("T23", "for cosuspended summand-closed X with X-injective weak cogenerator omega: "
       "the n-th resolution class = X[n] = X^ cap (left orthogonal of U_omega)[n+1] "
       "= X^ cap (left orthogonal of omega^)[n+1]", "AB")
def _t23(ck: _Check, b):
    x, w = _ab(ck, b, summands="both", cosusp=True)
    for n in range(0, 4):
        ok = (ck.eq(EpsW(x, n), Shift(x, n), f"resolution class {n} = X[{n}]")
              and ck.eq(Shift(x, n), Intersect(Wedge(x), Shift(PerpL(USusp(w)), n + 1)),
                        f"X[{n}] = X^ cap orthogonal of U_omega shifted")
              and ck.eq(Shift(x, n), Intersect(Wedge(x), Shift(PerpL(Wedge(w)), n + 1)),
                        f"X[{n}] = X^ cap orthogonal of omega^ shifted"))
        if not ok:
            return


@entry("T24", "(X, omega^[1]) is a torsion theory in X^ for cosuspended summand-closed X with "
       "X-injective summand-closed weak cogenerator omega", "AB")
def _t24(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, summands="both", cosusp=True)
    y = Shift(Wedge(w), 1)
    h = ctx.hyp
    ck.true(h.closed_under_summands(x) and h.closed_under_summands(y), "both classes summand-closed")
    ck.true(h.hom_vanishes(x, y), "Hom(X, omega^[1]) = 0")
    ck.eq(Wedge(x), Star(x, y), "X^ = X * omega^[1]")


@entry("T25", "X^ is closed under cocones iff X^ = X~, in which case omega~ lies in X^ for omega "
       "inside X and X^ is closed under [-1]; for cosuspended X and omega inside X, omega~ lies in "
       "X^ = X~", "XY", wraps=("ucosusp", "add", "gen"))
def _t25(ck: _Check, b):
    ctx = ck.ctx
    x = b["X"]
    w = Intersect(x, b["Y"])
    h = ctx.hyp
    cocones = h.closed_under_cocones(Wedge(x))
    same = bool(np.array_equal(ctx.m(Wedge(x)) & ctx.rep, ctx.m(Tilde(x)) & ctx.rep))
    if not ck.true(cocones == same, "X^ closed under cocones iff X^ = X~", cocones=cocones, equal=same):
        return
    if cocones:
        ck.le(Tilde(w), Wedge(x), "omega~ inside X^")
    if same:
        s, _ = ctx.ev.shift_mask(ctx.v(Wedge(x)).mask, -1)
        ck.le(s, Wedge(x), "X^[-1] inside X^")
    if h.cosuspended(x):
        ck.le(Tilde(w), Wedge(x), "omega~ inside X^ for cosuspended X")
        ck.eq(Wedge(x), Tilde(x), "X^ = X~ for cosuspended X")


@entry("T26", "for cosuspended X with summand-closed X-injective weak cogenerator omega: omega~ is "
       "the part of X^ with finite id_X, equals the triangulated hull of omega, and the thick hull "
       "when X is summand-closed", "AB")
def _t26(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, cosusp=True)
    finite = ctx.m(Wedge(x)) & (ctx.vec(x, "id") < BIG)
    orth = Vee(Shift(PerpR(x), -1))
    ck.eq(Tilde(w), finite, "omega~ = {C in X^ : id_X(C) finite}")
    ck.eq(Tilde(w), Intersect(Wedge(x), orth), "omega~ = X^ cap (X-orthogonal[-1])^v")
    ck.eq(Tilde(w), Delta(w), "omega~ = triangulated hull of omega")
    if ctx.hyp.closed_under_summands(x):
        ck.eq(Thick(w), Tilde(w), "thick hull of omega = omega~")
        ck.eq(Tilde(w), Intersect(Thick(x), orth), "omega~ = thick hull of X cap (X-orthogonal[-1])^v")


@entry("T27", "on omega~: id_omega = id_X is finite, and omega~ meets the two shifted right "
       "orthogonals of omega and of X in the same class", "AB")
def _t27(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, cosusp=True)
    dom = ctx.m(Tilde(w))
    a, c = ctx.vec(w, "id"), ctx.vec(x, "id")
    ck.vec_eq(a, c, dom, "id_omega = id_X on omega~")
    ck.vec_le(c, np.full_like(c, BIG - 1), dom, "id_X finite on omega~")
    for n in range(0, 4):
        if not ck.eq(Intersect(Tilde(w), Shift(PerpR(UCosusp(w)), -n - 1)),
                     Intersect(Tilde(w), Shift(PerpR(x), -n - 1)),
                     f"orthogonals agree on omega~ at shift {-n - 1}"):
            return


@entry("T28", "<X>_{n+1} = < n-th resolution class of <X> > = < n-th coresolution class of <X> >, "
       "and <X>_n lies in <X>_{n+1}", "X", wraps=("gen", "add"), cap=12)
def _t28(ck: _Check, b):
    x = b["X"]
    for n in range(0, 4):
        lvl = BracketN(x, n + 1)
        ok = (ck.eq(lvl, Bracket(EpsW(Bracket(x), n)), f"level {n + 1} = bracket of resolution class {n}")
              and ck.eq(lvl, Bracket(EpsV(Bracket(x), n)), f"level {n + 1} = bracket of coresolution class {n}")
              and ck.le(BracketN(x, n), lvl, f"level {n} inside level {n + 1}"))
        if not ok:
            return


@entry("T29", "dim_X(Y) <= n iff Y lies in <X>_{n+1}; enlarging X can only lower dim_X", "XY",
       wraps=("gen", "add"), cap=12)
def _t29(ck: _Check, b):
    ctx = ck.ctx
    x, y = b["X"], b["Y"]
    dx = ctx.vec(x, "dim")
    dxy = ctx.vec(Union(x, y), "dim")
    ck.vec_le(dxy, dx, np.ones(ctx.uni.N, dtype=bool), "dim over a larger class is smaller")
    ym = ctx.m(y) & ctx.rep
    sup = int(dx[ym].max()) if ym.any() else 0
    for n in range(0, 4):
        inside = not (ym & ~ctx.m(BracketN(x, n + 1))).any()
        if not ck.true((sup <= n) == inside, f"dim_X(Y) <= {n} iff Y inside level {n + 1}",
                       dim=_ext(sup), inside=inside):
            return


@entry("T30", "the dimension of the category is the least dim_X over single objects X", "obj", cap=12)
def _t30(ck: _Check, b):
    ctx = ck.ctx
    res = category_dim(ctx.ev)
    ck.caveats.update(res.caveats)
    g = res.certificate["generator"] if res.certificate else None
    if g is not None:
        from .parser import parse_obj
        gv = ctx.vec(Gen((parse_obj(g, ctx.model),)), "dim")
        top = int(gv[ctx.rep].max())
        ck.true(_ext(top) == str(res.value.to_json()), "certificate generator attains the dimension",
                generator=g, attained=_ext(top))
    x = b["X"]
    top = int(ctx.vec(x, "dim")[ctx.rep].max())
    ck.true(not (to_extnat(top) < res.value),
            "dimension <= dim_X(universe)", value=res.value.to_json(), dim_x=_ext(top))


@entry("T31", "dim_X(M) <= min(resdim_<X>(M), coresdim_<X>(M))", "X", wraps=("gen", "add"), cap=12)
def _t31(ck: _Check, b):
    ctx = ck.ctx
    x = b["X"]
    d = ctx.vec(x, "dim")
    bound = np.minimum(ctx.vec(Bracket(x), "resdim"), ctx.vec(Bracket(x), "coresdim"))
    ck.vec_le(d, bound, np.ones(ctx.uni.N, dtype=bool), "dim_X <= min(resdim, coresdim) over <X>")


@entry("T32", "dim_X(C) <= pd_omega(C) < inf on X^ for summand-closed X, omega with X closed under "
       "extensions and omega an X-injective weak cogenerator", "AB")
def _t32(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, summands="both")
    dom = ctx.m(Wedge(x))
    p = ctx.vec(w, "pd")
    ck.vec_le(ctx.vec(x, "dim"), p, dom, "dim_X(C) <= pd_omega(C)")
    ck.vec_le(p, np.full_like(p, BIG - 1), dom, "pd_omega(C) finite")


@entry("T33", "dim_omega(C) <= id_X(C) = id_omega(C) < inf on omega^v for cosuspended summand-closed "
       "X with X-injective summand-closed weak cogenerator omega", "AB")
def _t33(ck: _Check, b):
    ctx = ck.ctx
    x, w = _ab(ck, b, summands="both", cosusp=True)
    dom = ctx.m(Vee(w))
    ix, iw = ctx.vec(x, "id"), ctx.vec(w, "id")
    ck.vec_le(ctx.vec(w, "dim"), ix, dom, "dim_omega(C) <= id_X(C)")
    ck.vec_eq(ix, iw, dom, "id_X(C) = id_omega(C)")
    ck.vec_le(ix, np.full_like(ix, BIG - 1), dom, "id_X(C) finite")


@entry("T34", "for an n-cluster tilting class C: dim_C(T) <= resdim_C(T) <= n - 1", "cluster", cap=50)
def _t34(ck: _Check, b):
    ctx = ck.ctx
    c = b["C"]
    hits = [k for k in (2, 3) if ctx.hyp.is_n_cluster_tilting_orthogonality(c, k)]
    ck.need(bool(hits), "C is n-cluster tilting (orthogonality conditions)")
    k = hits[0]
    d, r = ctx.vec(c, "dim"), ctx.vec(c, "resdim")
    dom = np.ones(ctx.uni.N, dtype=bool)
    ck.vec_le(d, r, dom, "dim_C <= resdim_C")
    ck.vec_le(r, np.full_like(r, k - 1), dom, f"resdim_C <= {k - 1}")


CATALOGUE["T17b"] = Entry(
    "T17b", "the morphisms of the two special triangles are an X-precover and an omega^-preenvelope",
    "none", None,
    note="precover and preenvelope properties concern specific morphisms; iso-class data cannot express them")

CATALOGUE = dict(sorted(CATALOGUE.items(), key=lambda kv: (int(kv[0][1:3]), kv[0])))


# -- binding generation ---------------------------------------------------------------

def _canonical_x(ctx: Context) -> List[Expr]:
    m = ctx.model
    if not m.graded:
        return []
    return [UCosusp(DownRay(tuple(ObjClass((IndecRef(b, 0),)) for b in module_labels(m))))]


def sample_bindings(e: Entry, ctx: Context, seed: int, samples: int,
                    ab: Optional[List[ABPair]] = None) -> List[Dict[str, Expr]]:
    cap = min(samples, e.cap)
    pool = sample_pool(ctx, seed, max(samples, 1))
    out: List[Dict[str, Expr]] = []
    if e.binder in ("X", "Xcosusp"):
        if e.binder == "Xcosusp":
            out += [{"X": x} for x in _canonical_x(ctx)]
        for i, g in enumerate(pool):
            out.append({"X": WRAP[e.wraps[i % len(e.wraps)]](Gen(g))})
    elif e.binder == "XY":
        rev = pool[::-1]
        for i, (g, h) in enumerate(zip(pool, rev)):
            out.append({"X": WRAP[e.wraps[i % len(e.wraps)]](Gen(g)), "Y": Add(Gen(h))})
    elif e.binder == "XYorth":
        out += [{"X": p.x, "Y": p.omega} for p in (ab or []) if p.hyps.get("x_injective")]
        out += [{"X": x, "Y": w} for x, w in dual_pairs(ctx)]
        rev = pool[::-1]
        for g, h in zip(pool, rev):
            out.append({"X": Add(Gen(g)), "Y": Add(Gen(h))})
    elif e.binder == "AB":
        out += [{"X": p.x, "omega": p.omega} for p in (ab or [])]
    elif e.binder == "obj":
        out += [{"X": Gen(g)} for g in pool if len(g) == 1]
    elif e.binder == "cluster":
        out += [{"C": Add(Gen(g))} for g in generator_pool(ctx)]
    seen = set()
    uniq = []
    for bnd in out:
        key = tuple(sorted((k, v) for k, v in bnd.items()))
        if key not in seen:
            seen.add(key)
            uniq.append(bnd)
    return uniq[:cap] if e.binder not in ("AB",) else uniq


# -- running ---------------------------------------------------------------------------

def _parse_bindings(ctx: Context, bindings: Dict[str, TUnion[str, Expr]]) -> Dict[str, Expr]:
    from .parser import parse_expr
    return {k: (parse_expr(v, ctx.model) if isinstance(v, str) else v) for k, v in bindings.items()}


EXISTENCE = frozenset({"T17"})


def _run_entry(e: Entry, ctx: Context, binding_list: List[Dict[str, Expr]], timings: bool) -> CheckResult:
    t0 = time.perf_counter()
    res = CheckResult(e.id, "skipped_hypotheses", e.anchor, note=e.note)
    if e.fn is None:
        res.millis = _ms(t0) if timings else None
        return res
    applicable = 0
    caveats: set = set()
    for bnd in binding_list:
        ck = _Check(ctx, bnd)
        try:
            e.fn(ck, bnd)
        except _Skip:
            res.skipped += 1
            continue
        applicable += 1
        res.bindings.append({k: str(v) for k, v in bnd.items()})
        caveats |= ck.caveats
        if ck.failure is not None:
            res.status = "fail"
            res.counterexample = ck.failure
            if e.id in EXISTENCE and ctx.model.mid_complete != "exact":
                # a heuristic table may lack the witnessing triangle
                res.counterexample["inconclusive"] = True
                caveats.add("missing witness on a heuristic triangle table: inconclusive")
            break
    if res.status != "fail" and applicable:
        res.status = "pass" if ctx.model.mid_complete == "exact" else "caveated_pass"
    if not ctx.model.mid_complete == "exact":
        caveats.add("triangle table is heuristic: universal claims may depend on missing triangles")
    res.caveats = sorted(caveats)
    res.millis = _ms(t0) if timings else None
    return res


def _ms(t0: float) -> int:
    return int(round((time.perf_counter() - t0) * 1000))


def run_theorem(tid: str, m: ModelSpec, u: UniverseSpec = UniverseSpec(),
                bindings: Optional[TUnion[Dict[str, TUnion[str, Expr]], List[Dict]]] = None,
                seed: int = 0, samples: int = DEFAULT_SAMPLES, ctx: Optional[Context] = None,
                timings: bool = False) -> CheckResult:
    """Check one catalogue entry on explicit bindings or on seeded samples."""
    e = CATALOGUE.get(tid)
    if e is None:
        raise UnknownTheoremId(f"unknown catalogue entry {tid!r}; known: {', '.join(CATALOGUE)}")
    ctx = ctx or Context(m, u)
    if bindings is None:
        ab = find_ab_pairs(m, u, "seeded", seed, ctx) if e.binder in ("AB", "XYorth") else None
        blist = sample_bindings(e, ctx, seed, samples, ab)
    elif isinstance(bindings, dict):
        blist = [_parse_bindings(ctx, bindings)]
    else:
        blist = [_parse_bindings(ctx, b) for b in bindings]
    return _run_entry(e, ctx, blist, timings)


def run_suite(m: ModelSpec, u: UniverseSpec = UniverseSpec(), seed: int = 0,
              select: Optional[Sequence[str]] = None, samples: int = DEFAULT_SAMPLES,
              bindings: Optional[Dict[str, List[Dict]]] = None, threads: Optional[int] = None,
              timings: bool = False) -> SuiteReport:
    """Run the selected entries (all by default); output is a pure function of the inputs."""
    from . import __version__
    ids = list(CATALOGUE) if not select else list(select)
    for tid in ids:
        if tid not in CATALOGUE:
            raise UnknownTheoremId(f"unknown catalogue entry {tid!r}")
    ctx = Context(m, u)
    ab = find_ab_pairs(m, u, "seeded", seed, ctx)
    bindings = bindings or {}
    jobs = []
    for tid in ids:
        e = CATALOGUE[tid]
        if tid in bindings:
            blist = [_parse_bindings(ctx, b) for b in bindings[tid]]
        else:
            blist = sample_bindings(e, ctx, seed, samples, ab)
        jobs.append((e, blist))
    if threads is None:
        threads = int(os.environ.get("TRICAT_THREADS", "1") or 1)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda j: _run_entry(j[0], ctx, j[1], timings), jobs))
    else:
        results = [_run_entry(e, ctx, bl, timings) for e, bl in jobs]
    order = {tid: i for i, tid in enumerate(CATALOGUE)}
    results.sort(key=lambda r: order[r.id])
    return SuiteReport(
        model={"name": m.name, "hash": m.content_hash(), "mid_complete": m.mid_complete},
        universe={"S": u.S, "W": u.W}, seed=seed, entries=results,
        caveats=sorted(set(ctx.uni.caveats)), tool={"name": "tricat", "version": __version__})
