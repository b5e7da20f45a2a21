"""Resolution, relative projective/injective and Rouquier dimensions."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .classes import ClassView, Evaluator, resolution_family
from .extnat import INF, ExtNat
from .model import ObjClass, TricatError


class EmptyCandidates(TricatError):
    pass


@dataclass
class DimResult:
    value: ExtNat
    certificate: Optional[dict] = None
    caveats: List[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"value": self.value.to_json(), "certificate": self.certificate,
                "caveats": sorted(set(self.caveats))}


def _triangles(tris) -> List[List[str]]:
    return [[str(a), str(b), str(c)] for a, b, c in tris]


# -- resolution dimensions ------------------------------------------------------

def eps_sequence(ev: Evaluator, x: ClassView, wedge: bool = True):
    """Yield the masks of the epsilon classes until the sequence repeats."""
    seen = set()
    cur = x.mask.copy()
    for _ in range(ev.cap):
        key = cur.tobytes()
        if key in seen:
            return
        seen.add(key)
        yield cur
        cur = ev._eps_step(x.mask, cur, wedge)


def resdim(ev: Evaluator, x: ClassView, m: ObjClass) -> DimResult:
    """Least ``n`` with ``m`` in the n-th resolution class of ``x``."""
    return _res_or_cores(ev, x, m, wedge=True)


def coresdim(ev: Evaluator, x: ClassView, m: ObjClass) -> DimResult:
    return _res_or_cores(ev, x, m, wedge=False)


def _res_or_cores(ev: Evaluator, x: ClassView, m: ObjClass, wedge: bool) -> DimResult:
    i = ev.uni.idx(m)
    cav = list(x.caveats)
    if i is None:
        return DimResult(INF, None, cav + [f"{m} lies outside the universe"])
    for n, mask in enumerate(eps_sequence(ev, x, wedge)):
        if mask[i]:
            cert = {"n": n}
            if wedge:
                fam = resolution_family(ev, m, x, n)
                if fam is not None:
                    cert["triangles"] = _triangles(fam)
                    cert["form"] = "K[-1] -> K' -> X"
            else:
                fam = coresolution_family(ev, m, x, n)
                if fam is not None:
                    cert["triangles"] = _triangles(fam)
                    cert["form"] = "K'[-1] -> K -> X"
            return DimResult(ExtNat(n), cert, cav)
    cav.append("infinite: the epsilon classes stabilized without containing the object")
    return DimResult(INF, None, cav)


def coresolution_family(ev: Evaluator, z: ObjClass, x: ClassView, n: int):
    """Triangles ``K_j -> X_j -> K_{j+1} -> K_j[1]`` with ``K_0 = z``, ``K_n`` in X.

    Returned as ``(K_{j+1}[-1], K_j, X_j)`` end-middle-end triples.
    """
    from . import kernels

    u = ev.uni
    zi = u.idx(z)
    if zi is None:
        return None
    good = [None] * (n + 1)
    good[n] = x.mask
    down = u.shift_map(-1)
    for j in range(n - 1, -1, -1):
        # K_j is a middle term with ends K_{j+1}[-1] (in good[j+1][-1]) and X_j
        prev, _ = ev.shift_mask(good[j + 1], -1)
        good[j] = kernels.join(u.tri_x, u.tri_y, u.tri_z, prev, x.mask, u.N)
    if not good[0][zi]:
        return None
    fam = []
    cur = zi
    for j in range(n):
        nxt_ok = np.zeros(u.N, dtype=bool)
        ok_idx = np.flatnonzero(good[j + 1])
        sh = down[ok_idx]
        nxt_ok[sh[sh >= 0]] = True
        rows = u.rows_at("tri_z", cur)
        r = rows[nxt_ok[u.tri_x[rows]] & x.mask[u.tri_y[rows]].astype(bool)][0]
        fam.append((u.objs[u.tri_x[r]], u.objs[cur], u.objs[u.tri_y[r]]))
        # recover K_{j+1} from K_{j+1}[-1]
        up = u.shift_map(1)
        cur = up[u.tri_x[r]]
    return fam


# -- relative projective / injective dimension ---------------------------------

def _boundary_caveat(kind: str) -> str:
    return f"{kind} extrapolated to infinity: the class reaches the working window boundary"


def pd(ev: Evaluator, x: ClassView, m: ObjClass) -> DimResult:
    """Least ``n`` with ``Hom(m[-i], X) = 0`` for all ``i > n`` and ``X`` in the class."""
    return _pd_id(ev, x, m, proj=True)


def id_(ev: Evaluator, x: ClassView, m: ObjClass) -> DimResult:
    """Least ``n`` with ``Hom(X, m[i]) = 0`` for all ``i > n`` and ``X`` in the class."""
    return _pd_id(ev, x, m, proj=False)


def nonzero_shifts(ev: Evaluator, x: ClassView, m: ObjClass, proj: bool) -> Tuple[dict, bool]:
    """Map ``i -> witness`` of nonzero ``Hom(m[-i], X)`` (or ``Hom(X, m[i])``).

    Also reports whether a witness sits on the far edge of the working
    window, where an infinite class would continue.
    """
    model = ev.model
    u = ev.uni
    support = [u.refs[j] for j in np.flatnonzero(u.indec_support(x.mask))]
    hits: dict = {}
    edge = False
    if model.graded:
        lo, hi = model.hom_window
        w = u.work.W
        for y in m:
            for xr in support:
                for k in range(lo, hi + 1):
                    if proj:
                        # Hom(y[-i], xr) in degree xr.deg - y.deg + i = k
                        if not model.hom.get((y.base, xr.base, k), 0):
                            continue
                        i = k - xr.degree + y.degree
                        if xr.degree == -w:
                            edge = True
                    else:
                        # Hom(xr, y[i]) in degree y.deg + i - xr.deg = k
                        if not model.hom.get((xr.base, y.base, k), 0):
                            continue
                        i = k + xr.degree - y.degree
                        if xr.degree == w:
                            edge = True
                    hits.setdefault(i, (str(y), str(xr)))
    else:
        for i in range(model.shift_order):
            for y in m:
                for xr in support:
                    h = model.hom_indec(model.shift_ref(y, -i), xr) if proj else \
                        model.hom_indec(xr, model.shift_ref(y, i))
                    if h:
                        hits.setdefault(i, (str(y), str(xr)))
    return hits, edge


def _pd_id(ev: Evaluator, x: ClassView, m: ObjClass, proj: bool) -> DimResult:
    kind = "pd" if proj else "id"
    cav = list(x.caveats)
    hits, edge = nonzero_shifts(ev, x, m, proj)
    if not ev.model.graded:
        if hits:
            i = min(hits)
            return DimResult(INF, {"periodic_nonzero_shift": i, "witness": list(hits[i]),
                                   "period": ev.model.shift_order}, cav)
        return DimResult(ExtNat(0), {"vanishing": "all shifts", "period": ev.model.shift_order}, cav)
    if edge and _is_truncated(x, "lower" if proj else "upper"):
        cav.append(_boundary_caveat(kind))
        return DimResult(INF, {"edge_witness": True}, cav)
    top = max(hits) if hits else None
    value = max(0, top) if top is not None else 0
    cert = {"max_nonzero_shift": top, "witness": list(hits[top]) if top is not None else None}
    return DimResult(ExtNat(value), cert, cav)


def _is_truncated(x: ClassView, side: Optional[str] = None) -> bool:
    """Whether ``x`` may miss members beyond the ``side`` edge (either edge if ``None``)."""
    for c in x.caveats:
        if "truncated" not in c and "outside the working window" not in c:
            continue
        tagged = "upper edge" in c or "lower edge" in c
        if side is None or not tagged or f"{side} edge" in c:
            return True
    return False


def class_pd(ev: Evaluator, x: ClassView, y: ClassView) -> DimResult:
    """``pd_X(Y)``: supremum of ``pd_X(M)`` over members of ``Y``."""
    return _class_sup(ev, x, y, proj=True)


def class_id(ev: Evaluator, x: ClassView, y: ClassView) -> DimResult:
    return _class_sup(ev, x, y, proj=False)


def _class_sup(ev: Evaluator, x: ClassView, y: ClassView, proj: bool) -> DimResult:
    """Supremum over the reported members of ``y``.

    pd grows when the argument moves up and id when it moves down, so a
    truncated argument class with a witness on that edge of the reported
    window has an unbounded supremum.
    """
    u = ev.uni
    vals, cav = dim_vector(ev, x, "pd" if proj else "id")
    members = np.flatnonzero(y.reported_mask())
    cav = cav + list(y.caveats)
    if len(members) == 0:
        return DimResult(ExtNat(0), {"attained_at": None}, cav)
    j = members[int(np.argmax(vals[members]))]
    best = to_extnat(vals[j])
    if not best.is_inf and _is_truncated(y, "upper" if proj else "lower") and ev.model.graded:
        edge_deg = u.spec.W if proj else -u.spec.W
        hits, _ = _ref_profile(ev, x, proj)
        for i in members:
            if any(u.refs[r].degree == edge_deg and hits[r] > -BIG for r in u.codes[i]):
                cav.append(_boundary_caveat("pd" if proj else "id"))
                return DimResult(INF, {"attained_at": str(u.objs[i]), "edge_witness": True}, cav)
    return DimResult(best, {"attained_at": str(u.objs[j])}, cav)


# -- dimension arrays ------------------------------------------------------------

BIG = 1 << 40  # stands for infinity inside dimension arrays


def to_extnat(v) -> ExtNat:
    return INF if v >= BIG else ExtNat(int(v))


def _ref_profile(ev: Evaluator, x: ClassView, proj: bool):
    """Per indecomposable ``r``: largest ``i`` with a nonzero Hom witness, and an edge flag.

    For pd the witness is ``Hom(r[-i], X) != 0``, for id ``Hom(X, r[i]) != 0``.
    ``-BIG`` marks no witness at all, ``BIG`` an unbounded one.
    """
    u = ev.uni
    m = ev.model
    nr = len(u.refs)
    vals = np.full(nr, -BIG, dtype=np.int64)
    edge = np.zeros(nr, dtype=bool)
    support = [u.refs[j] for j in np.flatnonzero(u.indec_support(x.mask))]
    if not support:
        return vals, edge
    if not m.graded:
        for ri, r in enumerate(u.refs):
            for i in range(m.shift_order):
                if proj:
                    hit = any(m.hom_indec(m.shift_ref(r, -i), xr) for xr in support)
                else:
                    hit = any(m.hom_indec(xr, m.shift_ref(r, i)) for xr in support)
                if hit:
                    vals[ri] = BIG
                    break
        return vals, edge
    w = u.work.W
    ext: dict = {}
    for xr in support:
        cur = ext.get(xr.base)
        d = xr.degree
        ext[xr.base] = d if cur is None else (min(cur, d) if proj else max(cur, d))
    lo, hi = m.hom_window
    for ri, r in enumerate(u.refs):
        for b, d in ext.items():
            for k in range(lo, hi + 1):
                if proj:
                    if not m.hom.get((r.base, b, k), 0):
                        continue
                    i = k - d + r.degree
                    e = d == -w
                else:
                    if not m.hom.get((b, r.base, k), 0):
                        continue
                    i = k + d - r.degree
                    e = d == w
                vals[ri] = max(vals[ri], i)
                edge[ri] |= e
    return vals, edge


def _padded_codes(u) -> np.ndarray:
    hit = getattr(u, "_padded_codes", None)
    if hit is None:
        width = max(1, max(len(c) for c in u.codes))
        hit = np.full((u.N, width), len(u.refs), dtype=np.int64)
        for i, c in enumerate(u.codes):
            hit[i, :len(c)] = c
        u._padded_codes = hit
    return hit


def dim_vector(ev: Evaluator, x: ClassView, kind: str) -> Tuple[np.ndarray, List[str]]:
    """Dimension of every working object at once: ``kind`` is pd, id, resdim or coresdim.

    Entries are integers with ``BIG`` for infinity.  pd and id of a direct
    sum are the maxima over its summands; resolution dimensions come from
    the epsilon sequence.
    """
    u = ev.uni
    cav = list(x.caveats)
    if kind in ("resdim", "coresdim"):
        vals = np.full(u.N, BIG, dtype=np.int64)
        for n, mask in enumerate(eps_sequence(ev, x, kind == "resdim")):
            vals[(mask.astype(bool)) & (vals == BIG)] = n
        return vals, cav
    if kind not in ("pd", "id"):
        raise ValueError(f"unknown dimension kind {kind!r}")
    rv, edge = _ref_profile(ev, x, kind == "pd")
    if _is_truncated(x, "lower" if kind == "pd" else "upper") and edge.any():
        rv = np.where(edge, BIG, rv)
        cav.append(_boundary_caveat(kind))
    codes = _padded_codes(u)
    ext = np.append(rv, -BIG)
    vals = ext[codes].max(axis=1)
    return np.maximum(vals, 0), cav


# -- Rouquier dimensions -------------------------------------------------------

def bracket_levels(ev: Evaluator, x: ClassView):
    """Yield ``<X>_1, <X>_2, ...`` until the sequence stabilizes."""
    base = ev.bracket_mask(x.mask)
    cur = base.copy()
    for _ in range(ev.cap):
        yield cur
        nxt = ev.bracket_mask(ev.star_mask(cur, base))
        if np.array_equal(nxt, cur):
            return
        cur = nxt


def rel_rouquier_dim(ev: Evaluator, x: ClassView, m: ObjClass) -> DimResult:
    """Least ``n`` with ``m`` in ``<X>_{n+1}``."""
    i = ev.uni.idx(m)
    cav = list(x.caveats)
    if i is None:
        return DimResult(INF, None, cav + [f"{m} lies outside the universe"])
    for n, level in enumerate(bracket_levels(ev, x)):
        if level[i]:
            return DimResult(ExtNat(n), {"level": n + 1}, cav)
    cav.append("infinite: the bracket levels stabilized without containing the object")
    return DimResult(INF, None, cav)


def universe_level(ev: Evaluator, x: ClassView) -> ExtNat:
    """Least ``n`` with ``<X>_{n+1}`` containing the whole reported universe."""
    rep = ev.uni.reported.astype(bool)
    for n, level in enumerate(bracket_levels(ev, x)):
        if level.astype(bool)[rep].all():
            return ExtNat(n)
    return INF


def _orbit_key(ev: Evaluator, g: ObjClass):
    m = ev.model
    if m.graded:
        return frozenset(r.base for r in g)
    keys = set()
    for r in g:
        orbit = [m.shift_ref(r, k).base for k in range(m.shift_order)]
        keys.add(min(orbit))
    return frozenset(keys)


def category_dim(ev: Evaluator, candidates: Optional[Sequence[ObjClass]] = None) -> DimResult:
    """Minimum over candidate generators ``G`` of the level covering the universe.

    ``<G>`` only depends on the shift orbits of the summands of ``G``, so
    candidates are deduplicated by that key before the level scan.
    """
    full = candidates is None
    if candidates is None:
        candidates = [o for o in ev.uni.elems(np.ones(ev.uni.N, dtype=np.uint8)) if o]
    candidates = [c for c in candidates if c]
    if not candidates:
        raise EmptyCandidates("no nonzero candidate generators")
    best = INF
    arg = None
    seen = set()
    for g in candidates:
        key = _orbit_key(ev, g)
        if key in seen:
            continue
        seen.add(key)
        view = ev.view(ev.uni.mask_of([g]))
        lvl = universe_level(ev, view)
        if lvl < best:
            best, arg = lvl, g
    cav = [] if full else ["upper bound: minimum over the supplied candidates only"]
    cert = {"generator": str(arg), "level": None if best.is_inf else best.value + 1,
            "candidates": len(seen)} if arg is not None else None
    return DimResult(best, cert, cav + list(ev.uni.caveats))
