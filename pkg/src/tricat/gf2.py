"""Linear algebra over the two-element field.

Matrices are lists of Python ints, one int per row; bit ``j`` of a row is
the entry in column ``j``.  Vectors are single ints.
"""

from __future__ import annotations

from typing import Iterable, List, Sequence


def echelon(rows: Iterable[int]) -> List[int]:
    """Return a reduced basis of the row space (pivot = highest set bit)."""
    basis: List[int] = []
    for r in rows:
        for b in basis:
            r = min(r, r ^ b)
        if r:
            # keep basis fully reduced so ``min`` trick stays valid
            basis = [min(b, b ^ r) for b in basis]
            basis.append(r)
            basis.sort(reverse=True)
    return basis


def rank(rows: Iterable[int]) -> int:
    return len(echelon(rows))


def reduce(vec: int, basis: Sequence[int]) -> int:
    for b in basis:
        vec = min(vec, vec ^ b)
    return vec


def in_span(vec: int, basis: Sequence[int]) -> bool:
    return reduce(vec, basis) == 0


def transpose(rows: Sequence[int], ncols: int) -> List[int]:
    out = [0] * ncols
    for i, r in enumerate(rows):
        j = 0
        while r:
            if r & 1:
                out[j] |= 1 << i
            r >>= 1
            j += 1
    return out


def matmul(a: Sequence[int], b: Sequence[int]) -> List[int]:
    """Product ``a @ b`` where ``a`` is m x k and ``b`` has k rows."""
    out = []
    for r in a:
        acc = 0
        j = 0
        while r:
            if r & 1:
                acc ^= b[j]
            r >>= 1
            j += 1
        out.append(acc)
    return out


def apply(rows: Sequence[int], vec: int) -> int:
    """Matrix-vector product; result bit ``i`` is row ``i`` dotted with ``vec``."""
    out = 0
    for i, r in enumerate(rows):
        if bin(r & vec).count("1") & 1:
            out |= 1 << i
    return out


def nullspace(rows: Sequence[int], ncols: int) -> List[int]:
    """Basis of ``{x : rows @ x = 0}`` as column bitmasks."""
    # Gaussian elimination on the augmented system, tracking pivots by column.
    pivots: dict = {}
    for r in rows:
        for col, pr in pivots.items():
            if (r >> col) & 1:
                r ^= pr
        if r:
            col = r.bit_length() - 1
            for c2 in list(pivots):
                if (pivots[c2] >> col) & 1:
                    pivots[c2] ^= r
            pivots[col] = r
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = 1 << f
        for col, pr in pivots.items():
            if (pr >> f) & 1:
                x |= 1 << col
        basis.append(x)
    return basis


def complement_basis(space: Sequence[int], sub: Sequence[int]) -> List[int]:
    """Vectors of ``space`` spanning a complement of ``span(sub)`` inside it."""
    base = echelon(sub)
    out = []
    for v in space:
        r = reduce(v, base)
        if r:
            out.append(v)
            base = echelon(base + [r])
    return out
