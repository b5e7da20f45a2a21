"""Generators for the bundled example models.

* ``gen_semisimple``: a semisimple category; every triangle is a sum of the
  trivial triangles ``V -> V -> 0``, ``0 -> W -> W`` and ``U -> 0 -> U[1]``.
* ``gen_derived_An``: the bounded derived category of the linearly oriented
  A_n quiver over F2.  Hom and Ext^1 come from quiver representations; middle
  terms from mapping cones of every connecting morphism.
* ``gen_cluster_An``: the cluster category of A_n, realised as the orbit
  category of the derived category under ``F = tau^{-1}[1]``.
"""

from __future__ import annotations

from itertools import combinations_with_replacement, product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import quiver, reps
from .model import (IndecRef, ModelSpec, ObjClass, TricatError, ZERO)


class BadParams(TricatError):
    pass


class CapExceeded(TricatError):
    pass


# -- semisimple ---------------------------------------------------------------

def gen_semisimple(m: int, period: int = 1, size_cap: int = 6) -> ModelSpec:
    if m < 1 or period < 1 or m % period:
        raise BadParams("need m >= 1 and period dividing m")
    if size_cap < 2:
        raise BadParams("size_cap must be at least 2")
    labels = ["s"] if m == 1 else [f"s{i}" for i in range(1, m + 1)]
    shift = {}
    for o in range(m // period):
        for j in range(period):
            shift[labels[o * period + j]] = labels[o * period + (j + 1) % period]
    hom = {(x, x): 1 for x in labels}
    mid = {}
    for x in labels:
        u, u1 = IndecRef(x), IndecRef(shift[x])
        for p in range(1, size_cap):
            for q in range(1, size_cap - p + 1):
                a = ObjClass((u,) * p)
                c = ObjClass((u1,) * q)
                mid[(a, c)] = tuple(ObjClass((u,) * (p - t) + (u1,) * (q - t))
                                    for t in range(min(p, q) + 1))
    return ModelSpec("periodic", f"semisimple-{m}-{period}", 2, labels, shift, hom, None, mid, "exact")


# -- derived A_n --------------------------------------------------------------

def interval_label(n: int, a: int, b: int) -> str:
    if a == b:
        return f"S{a}"
    if b == n:
        return f"P{a}"
    if a == 1:
        return f"I{b}"
    return f"M{a}{b}"


class DerivedAn:
    """On-demand triangle computations in the derived category of A_n."""

    def __init__(self, n: int):
        self.n = n
        self.ivs = quiver.intervals(n)
        self.label = {iv: interval_label(n, *iv) for iv in self.ivs}
        self.interval = {v: k for k, v in self.label.items()}
        self.labels = [self.label[iv] for iv in self.ivs]
        self.hom: Dict[Tuple[str, str, int], int] = {}
        rs = {iv: reps.interval_rep(n, *iv) for iv in self.ivs}
        for x in self.ivs:
            for y in self.ivs:
                h = reps.hom_dim(rs[x], rs[y])
                e = reps.ext1_dim(rs[x], rs[y])
                if h:
                    self.hom[(self.label[x], self.label[y], 0)] = h
                if e:
                    self.hom[(self.label[x], self.label[y], 1)] = e
        self._mid: Dict[Tuple[ObjClass, ObjClass], Tuple[ObjClass, ...]] = {}
        self.model = ModelSpec("graded", f"derived-A{n}", 2, self.labels, None, self.hom, (0, 1), {}, "exact")

    def complex_of(self, obj: ObjClass) -> quiver.Complex:
        parts = []
        for r in obj:
            a, b = self.interval[r.base]
            parts.append(quiver.module_complex(self.n, a, b).shift(r.degree))
        if not parts:
            return quiver.Complex(self.n, "proj")
        return quiver.direct_sum(parts)

    def object_of(self, x: quiver.Complex) -> ObjClass:
        refs = []
        for iv, sh, k in quiver.decompose(x):
            refs.extend([IndecRef(self.label[iv], sh)] * k)
        return ObjClass(tuple(refs))

    def cone_mid(self, a: ObjClass, c: ObjClass) -> Tuple[ObjClass, ...]:
        """All cones of maps ``c[-1] -> a``, decomposed into indecomposables."""
        src = self.complex_of(c).shift(-1)
        tgt = self.complex_of(a)
        layout, basis = quiver.hom_basis(src, tgt)
        expected = tuple(x + y for x, y in zip(quiver.euler_class(tgt), quiver.euler_class(src.shift(1))))
        out = set()
        for comps in quiver.all_maps(layout, basis, src, tgt):
            cn = quiver.cone(src, tgt, comps)
            assert quiver.euler_class(cn) == expected, "class of cone not conserved"
            out.add(self.object_of(cn))
        return tuple(sorted(out))

    def mid_connected(self, a: ObjClass, c: ObjClass) -> Tuple[ObjClass, ...]:
        key, k = self.model.canonical_pair(a, c)
        hit = self._mid.get(key)
        if hit is None:
            hit = self.cone_mid(*key)
            self._mid[key] = hit
        return tuple(self.model.shift_obj(b, -k) for b in hit)

    def mid(self, a: ObjClass, c: ObjClass) -> Tuple[ObjClass, ...]:
        if not a:
            return (c,)
        if not c:
            return (a,)
        options = []
        for x, y in self.model.components(a, c):
            if not y:
                options.append((x,))
            elif not x:
                options.append((y,))
            else:
                options.append(self.mid_connected(x, y))
        out = set()
        for combo in product(*options):
            s = ZERO
            for b in combo:
                s = s + b
            out.add(s)
        return tuple(sorted(out))

    def nakayama_inverse_shift(self, r: IndecRef) -> IndecRef:
        """``F^{-1}(r) = nu(r)[-2]`` for an indecomposable ``r``."""
        x = quiver.nakayama(self.complex_of(ObjClass((r,))))
        obj = self.object_of(x)
        assert len(obj) == 1
        (y,) = obj.summands
        return IndecRef(y.base, y.degree - 2)


def connected_pairs(m: ModelSpec, refs: Sequence[IndecRef], cap: int,
                    anchor: Optional[callable] = None) -> Iterable[Tuple[ObjClass, ObjClass]]:
    """Connected end pairs over ``refs`` with ``|a| + |c| <= cap``.

    ``anchor`` filters to one representative per suspension orbit.
    """
    for sa in range(1, cap):
        for atup in combinations_with_replacement(refs, sa):
            a = ObjClass(atup)
            shifted = [m.shift_ref(x, 1) for x in a]
            nbrs = [y for y in refs if any(m.hom_indec(y, xs) for xs in shifted)]
            for sc in range(1, cap - sa + 1):
                for ctup in combinations_with_replacement(nbrs, sc):
                    c = ObjClass(ctup)
                    if anchor is not None and not anchor(a, c):
                        continue
                    if len(m.components(a, c)) == 1:
                        yield a, c


def gen_derived_An(n: int, window: int = 4, size_cap: int = 6) -> ModelSpec:
    if not 1 <= n <= 3:
        raise BadParams("derived A_n is generated for 1 <= n <= 3")
    if not 1 <= window <= 6:
        raise BadParams("window must lie in 1..6")
    if size_cap < 2:
        raise BadParams("size_cap must be at least 2")
    d = DerivedAn(n)
    m0 = d.model
    refs = sorted((IndecRef(b, k) for b in d.labels for k in range(window + 1)), key=IndecRef.key)

    def anchored(a, c):
        return min(r.degree for r in a.summands + c.summands) == 0

    mid = {}
    for a, c in connected_pairs(m0, refs, size_cap, anchored):
        mid[(a, c)] = d.mid_connected(a, c)
    return ModelSpec("graded", f"derived-A{n}", 2, d.labels, None, d.hom, (0, 1), mid, "exact")


def derived_mid(n: int, a: ObjClass, c: ObjClass, size_cap: int = 6) -> Tuple[ObjClass, ...]:
    """Direct cone computation, bypassing any table (independent route)."""
    if len(a) + len(c) > size_cap:
        raise CapExceeded(f"ends of size {len(a) + len(c)} exceed cap {size_cap}")
    return DerivedAn(n).mid(a, c)


# -- cluster A_n --------------------------------------------------------------

class ClusterAn:
    """Orbit category ``D / F`` with ``F = tau^{-1}[1]``.

    Representatives of the orbits are the modules (degree 0) and the shifted
    projectives ``P_i[1]``.
    """

    def __init__(self, n: int, reach: int = 2):
        self.n = n
        self.d = DerivedAn(n)
        self.reach = reach
        lo, hi = -3 * (reach + 1), 3 * (reach + 1)
        self._finv = {}
        for b in self.d.labels:
            for k in range(lo, hi + 1):
                r = IndecRef(b, k)
                self._finv[r] = self.d.nakayama_inverse_shift(r)
        self._f = {v: k for k, v in self._finv.items()}
        proj = [self.d.label[(i, n)] for i in range(1, n + 1)]
        self.reps = [IndecRef(b, 0) for b in self.d.labels] + [IndecRef(p, 1) for p in proj]
        self.names = {}
        for r in self.reps:
            self.names[r] = r.base if r.degree == 0 else f"{r.base}s"
        self.by_name = {v: k for k, v in self.names.items()}
        self._rep_of = {}

    def F(self, r: IndecRef, k: int) -> IndecRef:
        for _ in range(abs(k)):
            r = self._f[r] if k > 0 else self._finv[r]
        return r

    def rep_of(self, r: IndecRef) -> Tuple[IndecRef, int]:
        """Representative of the orbit of ``r`` and ``k`` with ``F^k(rep) = r``."""
        hit = self._rep_of.get(r)
        if hit is not None:
            return hit
        rs = set(self.reps)
        for k in range(0, 3 * (self.reach + 1)):
            for s in (k, -k):
                x = self.F(r, -s)
                if x in rs:
                    self._rep_of[r] = (x, s)
                    return x, s
        raise AssertionError(f"no orbit representative for {r}")

    def project(self, obj: ObjClass) -> ObjClass:
        return ObjClass(tuple(IndecRef(self.names[self.rep_of(r)[0]]) for r in obj))

    def hom_orbit(self, x: IndecRef, y: IndecRef, reach: Optional[int] = None) -> int:
        """``sum_k Hom_D(x, F^k y)`` over lifts in a window around ``x``."""
        reach = self.reach if reach is None else reach
        m = self.d.model
        return sum(m.hom_indec(x, self.F(y, k)) for k in range(-reach, reach + 1))

    def hom_orbit_left(self, x: IndecRef, y: IndecRef, reach: Optional[int] = None) -> int:
        """The same sum with the orbit taken on the first argument."""
        reach = self.reach if reach is None else reach
        m = self.d.model
        return sum(m.hom_indec(self.F(x, k), y) for k in range(-reach, reach + 1))


def gen_cluster_An(n: int, size_cap: int = 6) -> ModelSpec:
    if not 2 <= n <= 4:
        raise BadParams("cluster A_n is generated for 2 <= n <= 4")
    if size_cap < 2:
        raise BadParams("size_cap must be at least 2")
    cl = ClusterAn(n)
    labels = [cl.names[r] for r in cl.reps]
    shift = {}
    for r in cl.reps:
        shift[cl.names[r]] = cl.names[cl.rep_of(IndecRef(r.base, r.degree + 1))[0]]
    hom = {}
    for x in cl.reps:
        for y in cl.reps:
            h = cl.hom_orbit(x, y)
            if h:
                hom[(cl.names[x], cl.names[y])] = h
    m0 = ModelSpec("periodic", f"cluster-A{n}", 2, labels, shift, hom, None, {}, "heuristic")
    mid = _cluster_mid_table(cl, m0, size_cap)
    return ModelSpec("periodic", f"cluster-A{n}", 2, labels, shift, hom, None, mid, "heuristic")


def _lifts(cl: ClusterAn, obj: ObjClass, fix_first: bool) -> Iterable[ObjClass]:
    base = [cl.by_name[r.base] for r in obj]
    choices = []
    for i, r in enumerate(base):
        ks = (0,) if (fix_first and i == 0) else (-1, 0, 1)
        choices.append([cl.F(r, k) for k in ks])
    seen = set()
    for combo in product(*choices):
        o = ObjClass(tuple(combo))
        if o not in seen:
            seen.add(o)
            yield o


def _cluster_mid_table(cl: ClusterAn, m0: ModelSpec, cap: int):
    refs = sorted((IndecRef(x) for x in m0.indecs), key=IndecRef.key)

    def anchored(a, c):
        return m0.canonical_pair(a, c)[1] == 0

    table: Dict[Tuple[ObjClass, ObjClass], set] = {}
    for a, c in connected_pairs(m0, refs, cap, anchored):
        out = {a + c}
        for la in _lifts(cl, a, True):
            for lc in _lifts(cl, c, False):
                for b in cl.d.mid(la, lc):
                    pb = cl.project(b)
                    if len(pb) <= cap:
                        out.add(pb)
        table[(a, c)] = out
    _saturate_rotation(m0, table, cap)
    return {k: tuple(sorted(v)) for k, v in table.items()}


def _saturate_rotation(m: ModelSpec, table, cap: int):
    """Close the table under rotation of triangles.

    If ``a -> b -> c -> a[1]`` is a triangle then so are ``b -> c -> a[1]`` and
    ``c[-1] -> a -> b``; whenever the rotated end pair is connected and within
    the cap, its middle term is recorded.
    """
    changed = True
    while changed:
        changed = False
        for (a, c), bs in list(table.items()):
            for b in list(bs):
                for ends, mid in (((b, m.shift_obj(a, 1)), c), ((m.shift_obj(c, -1), a), b)):
                    x, y = ends
                    if not x or not y or len(x) + len(y) > cap:
                        continue
                    if len(m.components(x, y)) != 1:
                        continue
                    key, k = m.canonical_pair(x, y)
                    if key not in table:
                        continue
                    mm = m.shift_obj(mid, k)
                    if mm not in table[key]:
                        table[key].add(mm)
                        changed = True
