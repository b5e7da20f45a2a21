"""Bounded complexes over the linearly oriented A_n quiver, over F2.

The quiver is ``1 -> 2 -> ... -> n``.  Indecomposable modules are the
interval modules ``[a, b]``; the projective at vertex ``j`` is ``[j, n]`` and
the injective is ``[1, j]``.  Between two indecomposable projectives
``Hom(P_i, P_j)`` is one-dimensional when ``i >= j`` and zero otherwise, and
every composite of nonzero maps is nonzero, so a morphism between direct sums
of projectives is just an F2 matrix with a forced-zero pattern.  The same
holds for injectives.

Objects of the derived category are represented by complexes whose terms are
direct sums of projectives (or, after the Nakayama functor, injectives).
Cohomology is computed vertex by vertex and decomposed into interval modules
from the hom fingerprint ``E -> dim Hom(E, H)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Dict, List, Sequence, Tuple

import numpy as np

from . import gf2

Interval = Tuple[int, int]


def intervals(n: int) -> List[Interval]:
    return [(a, b) for a in range(1, n + 1) for b in range(a, n + 1)]


@dataclass
class Complex:
    """Cochain complex of projectives or injectives.

    ``terms[i]`` lists the vertex indices of the summands in cohomological
    degree ``i``; ``diff[i]`` is the matrix ``terms[i] -> terms[i+1]`` with
    one row per target summand.
    """

    n: int
    kind: str  # "proj" | "inj"
    terms: Dict[int, List[int]] = field(default_factory=dict)
    diff: Dict[int, List[int]] = field(default_factory=dict)

    def term(self, i: int) -> List[int]:
        return self.terms.get(i, [])

    def d(self, i: int) -> List[int]:
        if i in self.diff:
            return self.diff[i]
        return [0] * len(self.term(i + 1))

    def degrees(self) -> List[int]:
        return sorted(i for i, t in self.terms.items() if t)

    def shift(self, k: int) -> "Complex":
        """``X[k]``: the term in degree ``i`` is the old term in degree ``i + k``."""
        return Complex(
            self.n,
            self.kind,
            {i - k: list(t) for i, t in self.terms.items()},
            {i - k: list(m) for i, m in self.diff.items()},
        )


def allowed(src: int, tgt: int) -> bool:
    return src >= tgt


def pattern(src: Sequence[int], tgt: Sequence[int]) -> List[int]:
    """Row masks of entries that may be nonzero for a map ``src -> tgt``."""
    rows = []
    for t in tgt:
        m = 0
        for j, s in enumerate(src):
            if allowed(s, t):
                m |= 1 << j
        rows.append(m)
    return rows


def direct_sum(xs: Sequence[Complex]) -> Complex:
    n, kind = xs[0].n, xs[0].kind
    degs = sorted({i for x in xs for i in x.terms})
    terms: Dict[int, List[int]] = {}
    diff: Dict[int, List[int]] = {}
    for i in degs:
        terms[i] = [j for x in xs for j in x.term(i)]
    for i in degs:
        rows: List[int] = []
        col_off = 0
        for x in xs:
            src_len = len(x.term(i))
            for r in x.d(i):
                rows.append(r << col_off)
            col_off += src_len
        diff[i] = rows
    return Complex(n, kind, terms, diff)


def module_complex(n: int, a: int, b: int) -> Complex:
    """Minimal projective resolution of ``[a, b]`` placed in degrees -1, 0."""
    if b == n:
        return Complex(n, "proj", {0: [a]}, {})
    return Complex(n, "proj", {-1: [b + 1], 0: [a]}, {-1: [1]})


# -- maps between complexes -------------------------------------------------

def _var_layout(src: Complex, tgt: Complex, degree: int):
    """Enumerate free entries of a graded map ``src -> tgt[degree]``.

    Returns ``{i: [(row, col, var_index), ...]}`` for component
    ``src^i -> tgt^{i+degree}``.
    """
    layout: Dict[int, List[Tuple[int, int, int]]] = {}
    v = 0
    for i in sorted(src.terms):
        s = src.term(i)
        t = tgt.term(i + degree)
        ents = []
        for r, tv in enumerate(t):
            for c, sv in enumerate(s):
                if allowed(sv, tv):
                    ents.append((r, c, v))
                    v += 1
        if ents:
            layout[i] = ents
    return layout, v


def _materialize(layout, vec: int, src: Complex, tgt: Complex, degree: int) -> Dict[int, List[int]]:
    comps: Dict[int, List[int]] = {}
    for i, ents in layout.items():
        rows = [0] * len(tgt.term(i + degree))
        for r, c, v in ents:
            if (vec >> v) & 1:
                rows[r] |= 1 << c
        comps[i] = rows
    return comps


def _component(comps: Dict[int, List[int]], i: int, nrows: int) -> List[int]:
    return comps.get(i, [0] * nrows)


def _chain_condition_rows(src: Complex, tgt: Complex, layout, nvars: int) -> List[int]:
    """Linear equations (as bit rows over variables) for ``d f = f d``."""
    eqs: List[int] = []
    degs = sorted(set(src.terms) | {i - 1 for i in src.terms})
    for i in degs:
        # d_tgt^i f^i - f^{i+1} d_src^i : src^i -> tgt^{i+1}
        s = src.term(i)
        t1 = tgt.term(i + 1)
        if not s or not t1:
            continue
        for r in range(len(t1)):
            for c in range(len(s)):
                eq = 0
                # (d_tgt f)[r, c] = sum_k d_tgt[r, k] f[k, c]
                dt = tgt.d(i)
                for (fr, fc, v) in _layout_get(layout, i):
                    if fc == c and (dt[r] >> fr) & 1:
                        eq ^= 1 << v
                ds = src.d(i)
                for (fr, fc, v) in _layout_get(layout, i + 1):
                    if fr == r and (ds[fc] >> c) & 1:
                        eq ^= 1 << v
                if eq:
                    eqs.append(eq)
    return eqs


def _layout_get(layout, i):
    return layout.get(i, [])


def chain_maps(src: Complex, tgt: Complex) -> Tuple[dict, List[int]]:
    """Basis of degree-0 chain maps ``src -> tgt`` as variable bitmasks."""
    layout, nvars = _var_layout(src, tgt, 0)
    eqs = _chain_condition_rows(src, tgt, layout, nvars)
    return layout, gf2.nullspace(eqs, nvars)


def null_homotopic(src: Complex, tgt: Complex, layout) -> List[int]:
    """Spanning set of null-homotopic chain maps in the variables of ``layout``."""
    hlayout, hvars = _var_layout(src, tgt, -1)
    vecs = []
    index = {(i, r, c): v for i, ents in layout.items() for (r, c, v) in ents}
    for hv in range(hvars):
        s = _materialize(hlayout, 1 << hv, src, tgt, -1)
        vec = 0
        for i in sorted(src.terms):
            # f^i = d_tgt^{i-1} s^i + s^{i+1} d_src^i
            si = _component(s, i, len(tgt.term(i - 1)))
            si1 = _component(s, i + 1, len(tgt.term(i)))
            f = gf2.matmul(tgt.d(i - 1), si) if si else [0] * len(tgt.term(i))
            if not f:
                f = [0] * len(tgt.term(i))
            g = gf2.matmul(si1, src.d(i)) if si1 else [0] * len(tgt.term(i))
            for r in range(len(tgt.term(i))):
                row = (f[r] if r < len(f) else 0) ^ (g[r] if r < len(g) else 0)
                c = 0
                while row:
                    if row & 1:
                        vec ^= 1 << index[(i, r, c)]
                    row >>= 1
                    c += 1
        if vec:
            vecs.append(vec)
    return vecs


def hom_basis(src: Complex, tgt: Complex):
    """Representatives of a basis of ``Hom_K(src, tgt)`` (chain maps mod homotopy)."""
    layout, cm = chain_maps(src, tgt)
    nh = null_homotopic(src, tgt, layout)
    reps = gf2.complement_basis(cm, nh)
    return layout, reps


def hom_dim(src: Complex, tgt: Complex) -> int:
    layout, cm = chain_maps(src, tgt)
    nh = null_homotopic(src, tgt, layout)
    return len(cm) - gf2.rank(nh)


def cone(src: Complex, tgt: Complex, comps: Dict[int, List[int]]) -> Complex:
    """Mapping cone of ``f: src -> tgt``; term ``i`` is ``src^{i+1} + tgt^i``."""
    degs = sorted({i - 1 for i in src.terms} | set(tgt.terms))
    terms = {}
    diff = {}
    for i in degs:
        terms[i] = src.term(i + 1) + tgt.term(i)
    for i in degs:
        a = src.term(i + 1)
        b = tgt.term(i)
        a2 = src.term(i + 2)
        b2 = tgt.term(i + 1)
        na = len(a)
        rows = []
        ds = src.d(i + 1)
        for r in range(len(a2)):
            rows.append(ds[r])
        f = _component(comps, i + 1, len(b2))
        dt = tgt.d(i)
        for r in range(len(b2)):
            rows.append(f[r] | (dt[r] << na))
        diff[i] = rows
    return Complex(src.n, src.kind, terms, diff)


# -- cohomology -------------------------------------------------------------

def _active(kind: str, j: int, v: int) -> bool:
    return j <= v if kind == "proj" else j >= v


def _restrict(rows: Sequence[int], src: Sequence[int], tgt: Sequence[int], kind: str, v: int):
    """Vertex-``v`` component of a matrix, with coordinates re-indexed."""
    cols = [c for c, j in enumerate(src) if _active(kind, j, v)]
    rws = [r for r, j in enumerate(tgt) if _active(kind, j, v)]
    out = []
    for r in rws:
        row = rows[r] if r < len(rows) else 0
        x = 0
        for k, c in enumerate(cols):
            if (row >> c) & 1:
                x |= 1 << k
        out.append(x)
    return out, cols


def _embed(vec: int, cols_from: Sequence[int], cols_to: Sequence[int]) -> int:
    """Structure map between vertex spaces: keep coordinates present in both."""
    pos = {c: k for k, c in enumerate(cols_to)}
    out = 0
    for k, c in enumerate(cols_from):
        if (vec >> k) & 1 and c in pos:
            out |= 1 << pos[c]
    return out


def cohomology_ranks(x: Complex, i: int) -> Dict[Tuple[int, int], int]:
    """Ranks ``r(a, b)`` of the structure maps ``H_a -> H_b`` of ``H^i(x)``."""
    n = x.n
    kers = {}
    ims = {}
    cols = {}
    for v in range(1, n + 1):
        d_out, c_v = _restrict(x.d(i), x.term(i), x.term(i + 1), x.kind, v)
        d_in, _ = _restrict(x.d(i - 1), x.term(i - 1), x.term(i), x.kind, v)
        cols[v] = c_v
        kers[v] = gf2.nullspace(d_out, len(c_v))
        # image of d_in = column space = row space of transpose
        n_src = len([j for j in x.term(i - 1) if _active(x.kind, j, v)])
        ims[v] = gf2.echelon(gf2.transpose(d_in, n_src)) if d_in else []
    r: Dict[Tuple[int, int], int] = {}
    for a in range(1, n + 1):
        for b in range(a, n + 1):
            moved = [_embed(z, cols[a], cols[b]) for z in kers[a]]
            r[(a, b)] = gf2.rank(list(moved) + list(ims[b])) - len(ims[b])
    return r


def _fingerprint_from_ranks(n: int, r: Dict[Tuple[int, int], int]) -> np.ndarray:
    """``dim Hom([a,b], V)`` for each interval, from the rank function of ``V``.

    A map out of ``[a, b] = P_a / P_{b+1}`` is an element of ``V_a`` killed by
    the path ``a -> b+1``.
    """
    fp = []
    for a, b in intervals(n):
        dim_a = r[(a, a)]
        fp.append(dim_a - (r[(a, b + 1)] if b < n else 0))
    return np.array(fp, dtype=np.int64)


@lru_cache(maxsize=None)
def fingerprint_matrix(n: int) -> np.ndarray:
    """Column ``E`` holds the fingerprint of the interval module ``E``."""
    ivs = intervals(n)
    cols = []
    for (a0, b0) in ivs:
        r = {}
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                r[(a, b)] = 1 if a0 <= a and b <= b0 else 0
        cols.append(_fingerprint_from_ranks(n, r))
    m = np.stack(cols, axis=1)
    # Auslander: fingerprints of indecomposables are independent
    assert round(abs(np.linalg.det(m))) != 0, "ambiguous fingerprint basis"
    return m


def decompose_module(n: int, r: Dict[Tuple[int, int], int]) -> Dict[Interval, int]:
    fp = _fingerprint_from_ranks(n, r)
    m = fingerprint_matrix(n)
    sol = np.linalg.solve(m.astype(float), fp.astype(float))
    mult = np.rint(sol).astype(np.int64)
    assert np.array_equal(m @ mult, fp) and (mult >= 0).all(), "fingerprint mismatch"
    return {iv: int(k) for iv, k in zip(intervals(n), mult) if k}


def dimvec(n: int, r: Dict[Tuple[int, int], int]) -> Tuple[int, ...]:
    return tuple(r[(v, v)] for v in range(1, n + 1))


def decompose(x: Complex) -> List[Tuple[Interval, int, int]]:
    """Split ``x`` as ``sum H^i(x)[-i]``; returns ``(interval, shift, mult)``."""
    out = []
    if not x.terms:
        return out
    lo, hi = min(x.terms) - 1, max(x.terms) + 1
    for i in range(lo, hi + 1):
        r = cohomology_ranks(x, i)
        if not any(r[(v, v)] for v in range(1, x.n + 1)):
            continue
        for iv, k in decompose_module(x.n, r).items():
            out.append((iv, -i, k))
    return out


def euler_class(x: Complex) -> Tuple[int, ...]:
    """Alternating sum of cohomology dimension vectors (class in K_0)."""
    tot = [0] * x.n
    if not x.terms:
        return tuple(tot)
    for i in range(min(x.terms) - 1, max(x.terms) + 2):
        r = cohomology_ranks(x, i)
        for v in range(1, x.n + 1):
            tot[v - 1] += (-1) ** (i % 2) * r[(v, v)]
    return tuple(tot)


def nakayama(x: Complex) -> Complex:
    """Apply the Nakayama functor termwise: ``P_j -> I_j``, same matrices."""
    assert x.kind == "proj"
    return Complex(x.n, "inj", {i: list(t) for i, t in x.terms.items()},
                   {i: list(m) for i, m in x.diff.items()})


def all_maps(layout, reps: Sequence[int], src: Complex, tgt: Complex):
    """Yield every element of the span of ``reps`` as component matrices."""
    for bits in product((0, 1), repeat=len(reps)):
        vec = 0
        for bit, rep in zip(bits, reps):
            if bit:
                vec ^= rep
        yield _materialize(layout, vec, src, tgt, 0)
