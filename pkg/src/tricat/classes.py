"""Class expressions and their evaluation over a finite universe.

A class is a ``uint8`` mask over the working universe.  Every operation is a
set computation: star products and extension closures are joins over the
triangle relation, shifts are index maps, orthogonals are Hom-vanishing on
indecomposable summands.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import kernels
from .model import IndecRef, ModelSpec, ObjClass, TricatError, UniverseSpec
from .universe import Universe, get_universe


class UnsupportedRay(TricatError):
    pass


class Divergence(TricatError):
    pass


_EPS_TRUNCATED = "epsilon classes truncated at the working window"


def _side(tag: str, upward: Optional[bool]) -> str:
    """Name the window edge a truncation affects; ``None`` means both."""
    if upward is None:
        return tag
    return f"{tag} at the {'upper' if upward else 'lower'} edge"


# -- AST ----------------------------------------------------------------------

class Expr:
    """Base class of class-expression nodes."""

    def children(self) -> Tuple["Expr", ...]:
        return ()


def _objs(objs: Sequence[ObjClass]) -> str:
    return ", ".join(str(o) for o in objs)


@dataclass(frozen=True)
class Gen(Expr):
    objs: Tuple[ObjClass, ...]

    def __str__(self):
        return f"gen[{_objs(self.objs)}]"


@dataclass(frozen=True)
class All(Expr):
    def __str__(self):
        return "all"


@dataclass(frozen=True)
class Zero(Expr):
    def __str__(self):
        return "zero"


@dataclass(frozen=True)
class DownRay(Expr):
    objs: Tuple[ObjClass, ...]

    def __str__(self):
        return f"downray[{_objs(self.objs)}]"


@dataclass(frozen=True)
class UpRay(Expr):
    objs: Tuple[ObjClass, ...]

    def __str__(self):
        return f"upray[{_objs(self.objs)}]"


@dataclass(frozen=True)
class Shift(Expr):
    e: Expr
    k: int

    def children(self):
        return (self.e,)

    def __str__(self):
        return f"shift({self.e}, {self.k})"


@dataclass(frozen=True)
class Unary(Expr):
    e: Expr
    name = ""

    def children(self):
        return (self.e,)

    def __str__(self):
        return f"{self.name}({self.e})"


@dataclass(frozen=True)
class Binary(Expr):
    a: Expr
    b: Expr
    name = ""

    def children(self):
        return (self.a, self.b)

    def __str__(self):
        return f"{self.name}({self.a}, {self.b})"


@dataclass(frozen=True)
class Indexed(Expr):
    e: Expr
    n: int
    name = ""

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("index must be non-negative")

    def children(self):
        return (self.e,)

    def __str__(self):
        return f"{self.name}({self.e}, {self.n})"


class Add(Unary):
    name = "add"


class Summands(Unary):
    name = "summands"


class PerpL(Unary):
    name = "perpl"


class PerpR(Unary):
    name = "perpr"


class USusp(Unary):
    name = "ususp"


class UCosusp(Unary):
    name = "ucosusp"


class Delta(Unary):
    name = "delta"


class Thick(Unary):
    name = "thick"


class Wedge(Unary):
    name = "wedge"


class Vee(Unary):
    name = "vee"


class Tilde(Unary):
    name = "tilde"


class Bracket(Unary):
    name = "bracket"


class Union(Binary):
    name = "union"


class Intersect(Binary):
    name = "intersect"


class Star(Binary):
    name = "star"


class EpsW(Indexed):
    name = "epsw"


class EpsV(Indexed):
    name = "epsv"


class BracketN(Indexed):
    name = "bracketn"


for _cls in (Add, Summands, PerpL, PerpR, USusp, UCosusp, Delta, Thick, Wedge, Vee, Tilde, Bracket,
             Union, Intersect, Star, EpsW, EpsV, BracketN):
    dataclass(frozen=True)(_cls)


class _NoPush(Exception):
    pass


def push_shift(e: Expr, k: int, model: ModelSpec, limit: Optional[int] = None) -> Expr:
    """Rewrite ``e[k]`` with the shift moved onto the generators.

    Shifting is a triangle autoequivalence, so it commutes with every
    operator.  Evaluating the rewritten expression keeps classes exact near
    the window edge, where shifting a truncated mask would lose members that
    enter from outside the window.  With ``limit`` set, a generator leaving
    ``[-limit, limit]`` would be dropped on evaluation, so ``e[k]`` is
    returned unchanged instead.
    """
    try:
        return _push(e, k, model, limit)
    except _NoPush:
        return Shift(e, k)


def _push(e: Expr, k: int, model: ModelSpec, limit: Optional[int]) -> Expr:
    if isinstance(e, Shift):
        return _push(e.e, e.k + k, model, limit)
    if k == 0:
        return e
    if isinstance(e, Gen):
        objs = tuple(model.shift_obj(o, k) for o in e.objs)
        if limit is not None and any(abs(r.degree) > limit for o in objs for r in o):
            raise _NoPush
        return Gen(objs)
    if isinstance(e, (DownRay, UpRay)):
        return type(e)(tuple(model.shift_obj(o, k) for o in e.objs))
    if isinstance(e, (PerpL, PerpR)) and gen_support(e.e) is not None:
        # the closed-form orthogonal reads generators directly, in or out of the window
        return type(e)(_push(e.e, k, model, None))
    if isinstance(e, (All, Zero, Bracket)):
        return e
    if isinstance(e, Unary):
        return type(e)(_push(e.e, k, model, limit))
    if isinstance(e, Binary):
        return type(e)(_push(e.a, k, model, limit), _push(e.b, k, model, limit))
    if isinstance(e, BracketN):
        return e
    if isinstance(e, Indexed):
        return type(e)(_push(e.e, k, model, limit), e.n)
    return Shift(e, k)


_DIRS = {USusp: frozenset({1}), UCosusp: frozenset({-1}), Delta: frozenset({1, -1}),
         Thick: frozenset({1, -1})}


def gen_support(e: Expr) -> Optional[Tuple[Tuple[IndecRef, ...], frozenset]]:
    """Indecomposable generators and shift directions of a closure of generators.

    ``USUSP(ADD(GEN[..]))``-style expressions are determined by the summands
    of their generators and the directions they may be shifted in; returns
    ``None`` for anything else.
    """
    dirs: frozenset = frozenset()
    cur = e
    seen_closure = False
    while True:
        if isinstance(cur, Gen):
            refs = tuple(sorted({r for o in cur.objs for r in o}, key=IndecRef.key))
            return (refs, dirs) if seen_closure else None
        if isinstance(cur, tuple(_DIRS)):
            dirs = dirs | _DIRS[type(cur)]
            seen_closure = True
        elif not isinstance(cur, (Add, Summands)):
            return None
        cur = cur.e


def star_chain(parts: Sequence[Expr]) -> Expr:
    """Left-nested star product ``((p0 * p1) * p2) * ...``."""
    out = parts[0]
    for p in parts[1:]:
        out = Star(out, p)
    return out


# -- views --------------------------------------------------------------------

@dataclass(frozen=True)
class ClassView:
    """Evaluated class: a mask over the working universe plus provenance."""

    uni: Universe = field(repr=False, compare=False)
    mask: np.ndarray = field(repr=False, compare=False)
    caveats: Tuple[str, ...] = ()

    def member(self, obj: ObjClass) -> bool:
        i = self.uni.idx(obj)
        return bool(i is not None and self.mask[i])

    @property
    def elems(self) -> List[ObjClass]:
        return self.uni.elems(self.mask)

    @property
    def all_elems(self) -> List[ObjClass]:
        """Members in the whole working universe, including the padding."""
        return self.uni.elems(self.mask, reported=False)

    @property
    def contains_zero(self) -> bool:
        return bool(self.mask[self.uni.zero])

    @property
    def exact(self) -> bool:
        return not self.caveats

    def reported_mask(self) -> np.ndarray:
        return self.mask & self.uni.reported

    def __len__(self) -> int:
        return int(np.count_nonzero(self.reported_mask()))

    def to_json(self) -> dict:
        return {"elems": [str(o) for o in self.elems], "count": len(self),
                "contains_zero": self.contains_zero, "exact": self.exact,
                "caveats": list(self.caveats)}


def class_eq(a: ClassView, b: ClassView) -> Tuple[bool, Optional[ObjClass]]:
    """Equality within the reported universe, with the first differing object."""
    diff = (a.reported_mask() != b.reported_mask())
    idx = np.flatnonzero(diff)
    if len(idx) == 0:
        return True, None
    return False, a.uni.objs[idx[0]]


def class_le(a: ClassView, b: ClassView) -> Tuple[bool, Optional[ObjClass]]:
    """Inclusion ``a <= b`` within the reported universe, with a witness."""
    bad = np.flatnonzero(a.reported_mask() & ~b.reported_mask().astype(bool))
    if len(bad) == 0:
        return True, None
    return False, a.uni.objs[bad[0]]


# -- evaluation ---------------------------------------------------------------

class Evaluator:
    """Evaluates expressions for one model and universe, memoizing results."""

    def __init__(self, model: ModelSpec, spec: UniverseSpec = UniverseSpec(), pad: Optional[int] = None,
                 uni: Optional[Universe] = None):
        self.model = model
        self.spec = spec
        self.uni = uni if uni is not None else get_universe(model, spec, pad)
        self._memo: Dict[Expr, ClassView] = {}
        self._lock = threading.Lock()
        self.cap = self.uni.N + 1

    # public ---------------------------------------------------------------

    def eval(self, e: Expr) -> ClassView:
        self._eval(e)
        return self._memo[e]

    def view(self, mask: np.ndarray, caveats: Sequence[str] = ()) -> ClassView:
        mask = mask.astype(np.uint8)
        mask.setflags(write=False)
        return ClassView(self.uni, mask, tuple(sorted(set(caveats) | set(self.uni.caveats))))

    # mask primitives -------------------------------------------------------

    def star_mask(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        u = self.uni
        return kernels.join(u.tri_x, u.tri_y, u.tri_z, a, b, u.N)

    def shift_mask(self, a: np.ndarray, k: int) -> Tuple[np.ndarray, bool]:
        if k == 0:
            return a.copy(), False
        t = self.uni.shift_map(k)
        sel = a.astype(bool)
        lost = bool((sel & (t < 0)).any())
        out = self.uni.empty()
        out[t[sel & (t >= 0)]] = 1
        return out, lost

    def add_mask(self, a: np.ndarray) -> np.ndarray:
        u = self.uni
        m = a.copy()
        m[u.zero] = 1
        for _ in range(self.cap):
            new = m.copy()
            kernels.join_into(u.sum_a, u.sum_b, u.sum_z, m, m, new)
            kernels.join_into(u.sum_b, u.sum_a, u.sum_z, m, m, new)
            if np.array_equal(new, m):
                return m
            m = new
        raise Divergence("additive closure did not stabilize")

    def summands_mask(self, a: np.ndarray) -> np.ndarray:
        u = self.uni
        m = a.copy()
        sel = a[u.sum_z].astype(bool)
        m[u.sum_a[sel]] = 1
        m[u.sum_b[sel]] = 1
        return m

    def perp_from_bad(self, bad_refs: np.ndarray) -> np.ndarray:
        """Objects none of whose summands lies in ``bad_refs``."""
        hits = self.uni.incidence @ bad_refs.astype(np.int32)
        return (hits == 0).astype(np.uint8)

    def closure(self, a: np.ndarray, shifts: Sequence[int], summands: bool = False) -> Tuple[np.ndarray, bool]:
        """Least class containing ``a`` and 0, closed under shifts and extensions."""
        m = a.copy()
        m[self.uni.zero] = 1
        lost = False
        for _ in range(self.cap):
            new = m.copy()
            for k in shifts:
                s, l = self.shift_mask(m, k)
                lost |= l
                new |= s
            new |= self.star_mask(new, new)
            if summands:
                new = self.summands_mask(new)
            if np.array_equal(new, m):
                return m, lost
            m = new
        raise Divergence("closure did not stabilize within the iteration cap")

    # nodes -----------------------------------------------------------------

    def _rays(self, objs, sign: int) -> Tuple[np.ndarray, List[str]]:
        """All shifts ``o[sign * k]``, ``k >= 0``, that land in the working window."""
        if not self.model.graded:
            raise UnsupportedRay("rays need a graded model")
        u = self.uni
        w = u.work.W
        out = u.empty()
        for o in objs:
            degs = [r.degree for r in o] or [0]
            reach = (max(degs) + w) if sign < 0 else (w - min(degs))
            for k in range(0, max(0, reach) + 1):
                i = u.idx(self.model.shift_obj(o, sign * k))
                if i is not None:
                    out[i] = 1
        return out, [_side(f"rays truncated at the working window [-{w}, {w}]", sign > 0)]

    def _gen(self, objs) -> Tuple[np.ndarray, List[str]]:
        u = self.uni
        out = u.empty()
        cav = []
        for o in objs:
            i = u.idx(o)
            if i is None:
                cav.append(f"generator {o} lies outside the universe and was dropped")
            else:
                out[i] = 1
        return out, cav

    def _closed_perp(self, inner: Expr, left: bool) -> Optional[Tuple[np.ndarray, List[str]]]:
        """Orthogonal of a shift/extension closure via its generators.

        Hom-vanishing against a class is inherited by its extension closure,
        its summands and the relevant shifts, so the orthogonal of
        ``USUSP(X)`` is the orthogonal of ``X[i], i >= 0`` (dually ``i <= 0``
        for ``UCOSUSP``, all ``i`` for ``DELTA``/``THICK``).  Since Hom has
        bounded degree support this is exact for every object in the window.
        """
        gs = gen_support(inner)
        if gs is not None and self.model.graded:
            support, dirs = gs
            direction = next(iter(dirs)) if len(dirs) == 1 else 0
            cav: List[str] = []
        else:
            if isinstance(inner, USusp):
                direction = 1
            elif isinstance(inner, UCosusp):
                direction = -1
            elif isinstance(inner, (Delta, Thick)):
                direction = 0
            else:
                return None
            gm, cav = self._eval(inner.e)
            support = [self.uni.refs[j] for j in np.flatnonzero(self.uni.indec_support(gm))]
        u = self.uni
        bad = np.zeros(len(u.refs), dtype=bool)
        for zi, z in enumerate(u.refs):
            for x in support:
                if self._hom_along(z, x, direction, left):
                    bad[zi] = True
                    break
        return self.perp_from_bad(bad), cav

    def _hom_along(self, z, x, direction: int, left: bool) -> bool:
        """Is ``Hom(z, x[i])`` (left) or ``Hom(x[i], z)`` nonzero for some admissible ``i``?"""
        m = self.model
        if not m.graded:
            # every residue mod the shift order is reached by i >= 0 and by i <= 0
            for i in range(m.shift_order):
                xi = m.shift_ref(x, i)
                if m.hom_indec(z, xi) if left else m.hom_indec(xi, z):
                    return True
            return False
        lo, hi = m.hom_window
        for k in range(lo, hi + 1):
            # left: Hom(z, x[i]) lives in degree x.degree + i - z.degree = k
            i = (z.degree + k - x.degree) if left else (z.degree - k - x.degree)
            if direction > 0 and i < 0:
                continue
            if direction < 0 and i > 0:
                continue
            if left and m.hom.get((z.base, x.base, k), 0):
                return True
            if not left and m.hom.get((x.base, z.base, k), 0):
                return True
        return False

    def _eps(self, x: np.ndarray, n: int, wedge: bool, lost: Optional[list] = None) -> np.ndarray:
        cur = x.copy()
        for _ in range(n):
            cur = self._eps_step(x, cur, wedge, lost)
        return cur

    def _eps_step(self, x: np.ndarray, prev: np.ndarray, wedge: bool, lost: Optional[list] = None) -> np.ndarray:
        s, l = self.shift_mask(prev, 1 if wedge else -1)
        if l and lost is not None:
            lost.append(True)
        return self.star_mask(x, s) if wedge else self.star_mask(s, x)

    def _union_eps(self, x: np.ndarray, wedge: bool, lost: Optional[list] = None) -> np.ndarray:
        seen = set()
        cur = x.copy()
        acc = x.copy()
        for _ in range(self.cap):
            key = cur.tobytes()
            if key in seen:
                return acc
            seen.add(key)
            cur = self._eps_step(x, cur, wedge, lost)
            acc |= cur
        raise Divergence("epsilon sequence did not become periodic")

    def bracket_mask(self, a: np.ndarray) -> np.ndarray:
        m = a.copy()
        for k in self.uni.shift_range():
            s, _ = self.shift_mask(a, k)
            m |= s
        # Krull-Schmidt: summands of sums are sums of summands, so this order
        # yields a class closed under shifts, sums and summands at once
        return self.add_mask(self.summands_mask(m))

    def _eval(self, e: Expr) -> Tuple[np.ndarray, List[str]]:
        hit = self._memo.get(e)
        if hit is None:
            mask, cav = self._compute(e)
            mask.setflags(write=False)
            hit = ClassView(self.uni, mask, tuple(sorted(set(cav) | set(self.uni.caveats))))
            with self._lock:
                hit = self._memo.setdefault(e, hit)
        return hit.mask.copy(), list(hit.caveats)

    def _compute(self, e: Expr) -> Tuple[np.ndarray, List[str]]:
        u = self.uni
        if isinstance(e, Gen):
            return self._gen(e.objs)
        if isinstance(e, All):
            return np.ones(u.N, dtype=np.uint8), []
        if isinstance(e, Zero):
            out = u.empty()
            out[u.zero] = 1
            return out, []
        if isinstance(e, DownRay):
            return self._rays(e.objs, -1)
        if isinstance(e, UpRay):
            return self._rays(e.objs, 1)
        if isinstance(e, Shift) and self.model.graded:
            pushed = push_shift(e.e, e.k, self.model, u.work.W)
            if not isinstance(pushed, Shift):
                return self._eval(pushed)
        if isinstance(e, Shift):
            a, cav = self._eval(e.e)
            out, _ = self.shift_mask(a, e.k)
            if self.model.graded:
                # only reached when a generator would leave the window; members of
                # e[k] coming from beyond the opposite edge are then missing
                cav.append(_side("shifted mask misses members from outside the working window", e.k < 0))
            return out, cav
        if isinstance(e, Union):
            a, ca = self._eval(e.a)
            b, cb = self._eval(e.b)
            return a | b, ca + cb
        if isinstance(e, Intersect):
            a, ca = self._eval(e.a)
            b, cb = self._eval(e.b)
            return a & b, ca + cb
        if isinstance(e, Star):
            a, ca = self._eval(e.a)
            b, cb = self._eval(e.b)
            return self.star_mask(a, b), ca + cb
        if isinstance(e, Add):
            a, cav = self._eval(e.e)
            return self.add_mask(a), cav
        if isinstance(e, Summands):
            a, cav = self._eval(e.e)
            return self.summands_mask(a), cav
        if isinstance(e, (PerpL, PerpR)):
            left = isinstance(e, PerpL)
            closed = self._closed_perp(e.e, left)
            if closed is not None:
                return closed
            a, cav = self._eval(e.e)
            support = u.indec_support(a)
            h = u.hom if left else u.hom.T
            bad = (h[:, support] > 0).any(axis=1)
            return self.perp_from_bad(bad), cav
        if isinstance(e, (USusp, UCosusp, Delta, Thick)):
            a, cav = self._eval(e.e)
            shifts = {USusp: (1,), UCosusp: (-1,)}.get(type(e), (1, -1))
            out, lost = self.closure(a, shifts, summands=isinstance(e, Thick))
            if lost:
                up = {USusp: True, UCosusp: False}.get(type(e))
                cav.append(_side("closure truncated at the working window", up))
            return out, cav
        if isinstance(e, (EpsW, EpsV)):
            a, cav = self._eval(e.e)
            lost: list = []
            out = self._eps(a, e.n, isinstance(e, EpsW), lost)
            if lost:
                cav.append(_side(_EPS_TRUNCATED, isinstance(e, EpsW)))
            return out, cav
        if isinstance(e, (Wedge, Vee)):
            a, cav = self._eval(e.e)
            lost = []
            out = self._union_eps(a, isinstance(e, Wedge), lost)
            if lost:
                cav.append(_side(_EPS_TRUNCATED, isinstance(e, Wedge)))
            return out, cav
        if isinstance(e, Tilde):
            return self._eval(Vee(Wedge(e.e)))
        if isinstance(e, Bracket):
            a, cav = self._eval(e.e)
            return self.bracket_mask(a), cav
        if isinstance(e, BracketN):
            a, cav = self._eval(e.e)
            return self.bracket_level(a, e.n), cav
        raise TypeError(f"unknown expression node {e!r}")

    def bracket_level(self, a: np.ndarray, n: int) -> np.ndarray:
        base = self.bracket_mask(a)
        cur = self.uni.empty()
        cur[self.uni.zero] = 1
        for _ in range(n):
            cur = self.bracket_mask(self.star_mask(cur, base))
        return cur


# -- witness chains -----------------------------------------------------------

Triangle = Tuple[ObjClass, ObjClass, ObjClass]


def witness_chain(ev: Evaluator, z: ObjClass, ycls: ClassView, xcls: ClassView, n: int) -> Optional[List[Triangle]]:
    """Triangles ``K_i -> Y_i -> K_{i+1} -> K_i[1]`` with ``K_0`` in X, ``K_n = z``.

    Certifies ``z`` in ``Y * Y[1] * ... * Y[n-1] * X[n]``; ``None`` when no
    such family exists inside the universe.
    """
    u = ev.uni
    zi = u.idx(z)
    if zi is None:
        return None
    if n == 0:
        return [] if xcls.mask[zi] else None
    reach = [xcls.mask]
    for _ in range(n):
        reach.append(kernels.join(u.tri_x, u.tri_z, u.tri_y, reach[-1], ycls.mask, u.N))
    if not reach[n][zi]:
        return None
    chain: List[Triangle] = []
    cur = zi
    for i in range(n - 1, -1, -1):
        rows = u.rows_at("tri_y", cur)
        r = rows[reach[i][u.tri_x[rows]].astype(bool) & ycls.mask[u.tri_z[rows]].astype(bool)][0]
        chain.append((u.objs[u.tri_x[r]], u.objs[u.tri_z[r]], u.objs[cur]))
        cur = u.tri_x[r]
    chain.reverse()
    return chain


def resolution_family(ev: Evaluator, z: ObjClass, xcls: ClassView, n: int) -> Optional[List[Triangle]]:
    """Triangles ``K_j[-1] -> K_{j+1} -> X_j -> K_j`` with ``K_0 = z``, ``K_n`` in X.

    Returned as ``(K_j[-1], K_{j+1}, X_j)`` end-middle-end triples.  Computed
    backwards from ``K_n`` and independent of the star recursion.
    """
    u = ev.uni
    zi = u.idx(z)
    if zi is None:
        return None
    good = [None] * (n + 1)
    good[n] = xcls.mask
    for j in range(n - 1, -1, -1):
        # K_j[-1] ranges over ends x of rows whose middle is in good[j+1], end y in X
        prev = kernels.join(u.tri_z, u.tri_y, u.tri_x, good[j + 1], xcls.mask, u.N)
        good[j], _ = ev.shift_mask(prev, 1)
    if not good[0][zi]:
        return None
    fam: List[Triangle] = []
    cur = zi
    down = u.shift_map(-1)
    for j in range(n):
        km = down[cur]
        rows = u.rows_at("tri_x", km)
        r = rows[good[j + 1][u.tri_z[rows]].astype(bool) & xcls.mask[u.tri_y[rows]].astype(bool)][0]
        fam.append((u.objs[km], u.objs[u.tri_z[r]], u.objs[u.tri_y[r]]))
        cur = u.tri_z[r]
    return fam


def check_chain(model: ModelSpec, chain: Sequence[Triangle]) -> bool:
    """Re-validate each triple against the model's triangle oracle."""
    return all(b in model.mid_of(a, c) for a, b, c in chain)


def evaluate(e: Expr, model: ModelSpec, spec: UniverseSpec = UniverseSpec()) -> ClassView:
    return Evaluator(model, spec).eval(e)
