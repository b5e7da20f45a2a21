"""Integer-coded finite universe of objects and its triangle relation.

Objects of ``O(S, W')`` are numbered; classes become ``uint8`` masks over
those numbers.  ``W'`` is the working window, the reported window ``W``
widened by a padding margin, so that triangles whose ends sit just outside
the reported window are still seen.

The triangle relation holds every ``(x, z, y)`` of working objects with ``z``
a middle term of ``x -> z -> y -> x[1]``.  It is assembled from the
connected triangles of the model table plus the trivial triangles
``v -> v -> 0`` and ``0 -> v -> v``: every triangle is the direct sum of the
triangles of the connected components of its end pair.
"""

from __future__ import annotations

import threading
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .model import IndecRef, ModelSpec, ObjClass, UniverseSpec, enumerate_universe

DEFAULT_PAD = 2

Code = Tuple[int, ...]


class Universe:
    def __init__(self, model: ModelSpec, spec: UniverseSpec, pad: Optional[int] = None):
        self.model = model
        self.spec = spec
        self.pad = (DEFAULT_PAD if pad is None else pad) if model.graded else 0
        self.work = UniverseSpec(spec.S, spec.W + self.pad)
        self.refs: List[IndecRef] = model.indecs_in(self.work)
        self.ref_index = {r: i for i, r in enumerate(self.refs)}
        self.objs: List[ObjClass] = enumerate_universe(model, self.work)
        self.codes: List[Code] = [tuple(self.ref_index[r] for r in o) for o in self.objs]
        self.index: Dict[Code, int] = {c: i for i, c in enumerate(self.codes)}
        self.obj_index: Dict[ObjClass, int] = {o: i for i, o in enumerate(self.objs)}
        self.N = len(self.objs)
        self.sizes = np.array([len(c) for c in self.codes], dtype=np.int32)
        self.reported = np.array([model.in_window(o, spec) for o in self.objs], dtype=np.uint8)
        self.zero = self.index[()]
        nr = len(self.refs)
        self.hom = np.zeros((nr, nr), dtype=np.int32)
        for i, x in enumerate(self.refs):
            for j, y in enumerate(self.refs):
                self.hom[i, j] = model.hom_indec(x, y)
        # incidence[o, r] = multiplicity of ref r in object o
        self.incidence = np.zeros((self.N, nr), dtype=np.int32)
        for i, c in enumerate(self.codes):
            for r in c:
                self.incidence[i, r] += 1
        self.caveats: List[str] = []
        if model.mid_complete != "exact":
            self.caveats.append("triangle table is heuristic: memberships are sound, non-memberships may be incomplete")
        if model.mid_cap < 2 * spec.S and model.mid:
            self.caveats.append(
                f"triangle table covers connected end pairs up to {model.mid_cap} summands; larger ones are omitted")
        self._shift_cache: Dict[int, np.ndarray] = {}
        self._lock = threading.Lock()
        self._build_sums()
        self._build_triangles()

    # -- objects -----------------------------------------------------------

    def code_of(self, obj: ObjClass) -> Optional[Code]:
        out = []
        for r in obj:
            i = self.ref_index.get(r)
            if i is None:
                return None
            out.append(i)
        return tuple(sorted(out))

    def idx(self, obj: ObjClass) -> Optional[int]:
        return self.obj_index.get(obj)

    def merge(self, a: Code, b: Code) -> Code:
        return tuple(sorted(a + b))

    def shift_map(self, k: int) -> np.ndarray:
        """``T[i]`` = index of ``objs[i][k]`` or -1 when it leaves the universe."""
        hit = self._shift_cache.get(k)
        if hit is not None:
            return hit
        rmap = []
        for r in self.refs:
            rmap.append(self.ref_index.get(self.model.shift_ref(r, k), -1))
        out = np.full(self.N, -1, dtype=np.int32)
        for i, c in enumerate(self.codes):
            moved = [rmap[r] for r in c]
            if all(x >= 0 for x in moved):
                out[i] = self.index[tuple(sorted(moved))]
        with self._lock:
            self._shift_cache[k] = out
        return out

    def shift_range(self) -> range:
        """Shifts that can map some working object to another one."""
        if self.model.graded:
            return range(-2 * self.work.W, 2 * self.work.W + 1)
        return range(self.model.shift_order)

    # -- direct sums -------------------------------------------------------

    def _build_sums(self):
        a_l, b_l, z_l = [], [], []
        S = self.spec.S
        by_size: Dict[int, List[int]] = {}
        for i, c in enumerate(self.codes):
            by_size.setdefault(len(c), []).append(i)
        for sa in range(S + 1):
            for sb in range(sa, S - sa + 1):
                for i in by_size.get(sa, []):
                    ci = self.codes[i]
                    for j in by_size.get(sb, []):
                        if sa == sb and j < i:
                            continue
                        z = self.index[self.merge(ci, self.codes[j])]
                        a_l.append(i)
                        b_l.append(j)
                        z_l.append(z)
        self.sum_a = np.array(a_l, dtype=np.int32)
        self.sum_b = np.array(b_l, dtype=np.int32)
        self.sum_z = np.array(z_l, dtype=np.int32)

    # -- triangles ---------------------------------------------------------

    def _table_atoms(self) -> List[Tuple[Code, Code, Code]]:
        m = self.model
        S = self.spec.S
        atoms = set()
        if m.graded:
            lo, hi = -self.work.W, self.work.W
            for (a, c), bs in m.mid.items():
                if len(a) > S or len(c) > S:
                    continue
                degs = [r.degree for r in a.summands + c.summands]
                for b in bs:
                    if len(b) > S:
                        continue
                    ds = degs + [r.degree for r in b]
                    for t in range(lo - min(ds), hi - max(ds) + 1):
                        atoms.add((self.code_of(m.shift_obj(a, t)), self.code_of(m.shift_obj(b, t)),
                                   self.code_of(m.shift_obj(c, t))))
        else:
            for (a, c), bs in m.mid.items():
                if len(a) > S or len(c) > S:
                    continue
                for b in bs:
                    if len(b) > S:
                        continue
                    for t in range(m.shift_order):
                        atoms.add((self.code_of(m.shift_obj(a, t)), self.code_of(m.shift_obj(b, t)),
                                   self.code_of(m.shift_obj(c, t))))
        return sorted(atoms)

    def _key_tables(self):
        """Dense integer keys: a code padded with a sentinel to length ``S``."""
        S = self.spec.S
        nr = len(self.refs)
        self._base = nr + 1
        space = self._base ** S
        if space > 50_000_000:
            raise ValueError("universe too large for dense object keys")
        self._padded = np.full((self.N, S), nr, dtype=np.int64)
        for i, c in enumerate(self.codes):
            self._padded[i, :len(c)] = c
        weights = self._base ** np.arange(S - 1, -1, -1, dtype=np.int64)
        self._weights = weights
        self._keymap = np.full(space, -1, dtype=np.int32)
        self._keymap[self._padded @ weights] = np.arange(self.N, dtype=np.int32)

    def merge_idx(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Indices of ``objs[a] + objs[b]`` elementwise; -1 when too large."""
        S = self.spec.S
        both = np.sort(np.concatenate([self._padded[a], self._padded[b]], axis=1), axis=1)
        ok = both[:, S] == self._base - 1
        out = np.full(len(a), -1, dtype=np.int32)
        out[ok] = self._keymap[both[ok, :S] @ self._weights]
        return out

    def _split_pairs(self, vmax: int, wmax: int, total: int):
        key = (vmax, wmax, total)
        hit = self._pair_cache.get(key)
        if hit is not None:
            return hit
        vs, ws = [], []
        for sv in range(vmax + 1):
            for sw in range(min(wmax, total - sv) + 1):
                v = self._by_size[sv]
                w = self._by_size[sw]
                vs.append(np.repeat(v, len(w)))
                ws.append(np.tile(w, len(v)))
        v = np.concatenate(vs).astype(np.int32)
        w = np.concatenate(ws).astype(np.int32)
        vw = self.merge_idx(v, w)
        self._pair_cache[key] = (v, w, vw)
        return v, w, vw

    def _cores(self, atoms):
        """Direct sums of connected table triangles within the size bound."""
        S = self.spec.S
        groups: Dict[Tuple[int, int, int], List[int]] = {}
        for k, (x, z, y) in enumerate(atoms):
            groups.setdefault((len(x), len(z), len(y)), []).append(k)
        found = set()

        def rec(start: int, x: Code, z: Code, y: Code):
            found.add((x, z, y))
            for (sx, sz, sy), ks in groups.items():
                if len(x) + sx > S or len(z) + sz > S or len(y) + sy > S:
                    continue
                for k in ks:
                    if k < start:
                        continue
                    ax, az, ay = atoms[k]
                    rec(k, self.merge(x, ax), self.merge(z, az), self.merge(y, ay))

        rec(0, (), (), ())
        return sorted(found)

    def _build_triangles(self):
        S = self.spec.S
        self._key_tables()
        self._by_size = {s: np.flatnonzero(self.sizes == s).astype(np.int32) for s in range(S + 1)}
        self._pair_cache = {}
        atoms = self._table_atoms()
        cores = self._cores(atoms)
        by_sig: Dict[Tuple[int, int, int], List[Tuple[int, int, int]]] = {}
        for x0, z0, y0 in cores:
            by_sig.setdefault((len(x0), len(z0), len(y0)), []).append(
                (self.index[x0], self.index[z0], self.index[y0]))
        chunks = []
        for (sx, sz, sy), group in sorted(by_sig.items()):
            g = np.array(group, dtype=np.int32)
            v, w, vw = self._split_pairs(S - max(sx, sz), S - sy, S - sz)
            keep = vw >= 0
            v, w, vw = v[keep], w[keep], vw[keep]
            step = max(1, 2_000_000 // max(1, len(v)))
            for lo in range(0, len(g), step):
                gg = g[lo:lo + step]
                nc, npair = len(gg), len(v)
                cx = np.repeat(gg[:, 0], npair)
                cz = np.repeat(gg[:, 1], npair)
                cy = np.repeat(gg[:, 2], npair)
                xi = self.merge_idx(cx, np.tile(v, nc))
                zi = self.merge_idx(cz, np.tile(vw, nc))
                yi = self.merge_idx(cy, np.tile(w, nc))
                ok = (xi >= 0) & (yi >= 0) & (zi >= 0)
                chunks.append(np.stack([xi[ok], zi[ok], yi[ok]], axis=1))
        tri = np.concatenate(chunks).astype(np.int64)
        n = np.int64(self.N)
        keys = np.unique((tri[:, 0] * n + tri[:, 1]) * n + tri[:, 2])
        self.tri_x = np.ascontiguousarray(keys // (n * n), dtype=np.int32)
        self.tri_z = np.ascontiguousarray((keys // n) % n, dtype=np.int32)
        self.tri_y = np.ascontiguousarray(keys % n, dtype=np.int32)
        self.n_atoms = len(atoms)
        self.n_cores = len(cores)

    # -- masks ---------------------------------------------------------------

    def empty(self) -> np.ndarray:
        return np.zeros(self.N, dtype=np.uint8)

    def mask_of(self, objs) -> np.ndarray:
        m = self.empty()
        for o in objs:
            i = self.idx(o)
            if i is not None:
                m[i] = 1
        return m

    def elems(self, mask: np.ndarray, reported: bool = True) -> List[ObjClass]:
        sel = mask.astype(bool)
        if reported:
            sel &= self.reported.astype(bool)
        return [self.objs[i] for i in np.flatnonzero(sel)]

    def rows_at(self, column: str, i: int) -> np.ndarray:
        """Triangle rows whose ``column`` (tri_x, tri_z or tri_y) entry is object ``i``."""
        with self._lock:
            idx = self.__dict__.setdefault("_row_index", {})
            hit = idx.get(column)
            if hit is None:
                col = getattr(self, column)
                order = np.argsort(col, kind="stable")
                starts = np.searchsorted(col[order], np.arange(self.N + 1))
                hit = idx[column] = (order, starts)
        order, starts = hit
        return order[starts[i]:starts[i + 1]]

    def indec_support(self, mask: np.ndarray) -> np.ndarray:
        """Boolean vector over refs: which indecomposables occur as summands."""
        return (self.incidence[mask.astype(bool)].sum(axis=0) > 0)


_CACHE: Dict[tuple, Universe] = {}
_CACHE_LOCK = threading.Lock()


def get_universe(model: ModelSpec, spec: UniverseSpec, pad: Optional[int] = None) -> Universe:
    key = (model.content_hash(), spec, pad)
    with _CACHE_LOCK:
        hit = _CACHE.get(key)
    if hit is not None:
        return hit
    uni = Universe(model, spec, pad)
    with _CACHE_LOCK:
        _CACHE.setdefault(key, uni)
        return _CACHE[key]
