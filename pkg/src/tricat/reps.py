"""Representations of the linearly oriented A_n quiver over F2.

Hom and Ext^1 come from the standard two-term complex

    0 -> Hom(M, N) -> sum_v Hom(M_v, N_v) -> sum_{a: s->t} Hom(M_s, N_t) -> Ext^1(M, N) -> 0

whose middle map sends ``(f_v)`` to ``(N_a f_s - f_t M_a)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Tuple

from . import gf2


@dataclass(frozen=True)
class Rep:
    dims: Tuple[int, ...]
    # arrows[v] is the matrix of v+1 -> v+2 (0-based: vertex v to v+1), rows = target
    arrows: Tuple[Tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.dims)


def interval_rep(n: int, a: int, b: int) -> Rep:
    dims = tuple(1 if a <= v <= b else 0 for v in range(1, n + 1))
    arrows = []
    for v in range(1, n):
        if dims[v - 1] and dims[v]:
            arrows.append((1,))
        else:
            arrows.append(tuple([0] * dims[v]))
    return Rep(dims, tuple(arrows))


def _delta(m: Rep, n: Rep) -> Tuple[List[int], int]:
    """Matrix of the middle map as bit rows over the ``f_v`` entries."""
    offs = []
    nv = 0
    for v in range(m.n):
        offs.append(nv)
        nv += m.dims[v] * n.dims[v]

    def var(v: int, r: int, c: int) -> int:
        # entry (r, c) of f_v : M_v -> N_v, rows indexed by N_v
        return offs[v] + r * m.dims[v] + c

    rows: List[int] = []
    for s in range(m.n - 1):
        t = s + 1
        ma, na = m.arrows[s], n.arrows[s]
        # (N_a f_s - f_t M_a)[r, c] for r in N_t, c in M_s
        for r in range(n.dims[t]):
            for c in range(m.dims[s]):
                eq = 0
                for k in range(n.dims[s]):
                    if (na[r] >> k) & 1:
                        eq ^= 1 << var(s, k, c)
                for k in range(m.dims[t]):
                    if (ma[k] >> c) & 1:
                        eq ^= 1 << var(t, r, k)
                rows.append(eq)
    return rows, nv


def hom_dim(m: Rep, n: Rep) -> int:
    rows, nv = _delta(m, n)
    return nv - gf2.rank(rows)


def ext1_dim(m: Rep, n: Rep) -> int:
    rows, nv = _delta(m, n)
    return len(rows) - gf2.rank(rows)
