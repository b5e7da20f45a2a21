"""Finite combinatorial models of triangulated categories.

A model lists indecomposable objects, the suspension, Hom dimensions between
indecomposables and a table of triangle middle terms.  Objects are
isomorphism classes, stored as sorted multisets of indecomposables
(Krull-Schmidt).

Middle terms are stored per *connected* end pair: for ends ``A`` and ``C``
join a summand ``c`` of ``C`` to a summand ``a`` of ``A`` whenever
``Hom(c, a[1]) != 0``.  A connecting morphism ``C -> A[1]`` is block diagonal
for the connected components of that graph, so the middle terms of the whole
pair are the direct sums of middle terms of the components.  Table keys are
normalized up to suspension (lowest degree 0 for graded models, least
rotation for periodic ones).
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple


class TricatError(Exception):
    """Base class for library errors."""


class ParseError(TricatError):
    pass


class SchemaError(TricatError):
    pass


class AxiomError(TricatError):
    pass


class UnknownIndec(TricatError):
    pass


class MidUnavailable(TricatError):
    """A connected end pair has no entry in an exact triangle table."""


@dataclass(frozen=True, order=True)
class IndecRef:
    base: str
    degree: Optional[int] = None

    def __str__(self) -> str:
        return self.base if self.degree is None else f"{self.base}@{self.degree}"

    def key(self) -> Tuple[str, int]:
        return (self.base, 0 if self.degree is None else self.degree)

    def to_json(self):
        return self.base if self.degree is None else [self.base, self.degree]


@dataclass(frozen=True)
class ObjClass:
    """Direct sum of indecomposables; the empty sum is the zero object."""

    summands: Tuple[IndecRef, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "summands", tuple(sorted(self.summands, key=IndecRef.key)))

    @classmethod
    def of(cls, *refs: IndecRef) -> "ObjClass":
        return cls(tuple(refs))

    def __add__(self, other: "ObjClass") -> "ObjClass":
        return ObjClass(self.summands + other.summands)

    def __len__(self) -> int:
        return len(self.summands)

    def __iter__(self) -> Iterator[IndecRef]:
        return iter(self.summands)

    def __bool__(self) -> bool:
        return bool(self.summands)

    @property
    def size(self) -> int:
        return len(self.summands)

    def sort_key(self):
        return (len(self.summands), tuple(r.key() for r in self.summands))

    def __lt__(self, other: "ObjClass") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "+".join(str(r) for r in self.summands) if self.summands else "0"

    __repr__ = __str__

    def counts(self) -> Counter:
        return Counter(self.summands)

    def to_json(self):
        return [r.to_json() for r in self.summands]


ZERO = ObjClass()


@dataclass(frozen=True)
class UniverseSpec:
    """Objects with at most ``S`` summands, graded degrees in ``[-W, W]``."""

    S: int = 3
    W: int = 4


def _ref_from_json(x, graded: bool) -> IndecRef:
    if graded:
        if not (isinstance(x, list) and len(x) == 2 and isinstance(x[0], str) and isinstance(x[1], int)):
            raise SchemaError(f"graded indecomposable must be [base, degree], got {x!r}")
        return IndecRef(x[0], x[1])
    if not isinstance(x, str):
        raise SchemaError(f"periodic indecomposable must be a label, got {x!r}")
    return IndecRef(x)


def _obj_from_json(x, graded: bool) -> ObjClass:
    if not isinstance(x, list):
        raise SchemaError(f"object must be a list of indecomposables, got {x!r}")
    return ObjClass(tuple(_ref_from_json(r, graded) for r in x))


class ModelSpec:
    """Immutable presentation of a triangulated category.

    ``hom`` maps ``(x, y)`` label pairs (periodic) or ``(b, b2, k)`` (graded,
    meaning ``Hom(b, b2[k])``) to dimensions; zero entries are omitted.
    ``mid`` maps normalized connected end pairs to sorted tuples of middle
    terms.
    """

    def __init__(self, kind: str, name: str, field_char: int, indecs: Sequence[str],
                 shift: Optional[Dict[str, str]], hom: Dict[tuple, int],
                 hom_window: Optional[Tuple[int, int]],
                 mid: Dict[Tuple[ObjClass, ObjClass], Tuple[ObjClass, ...]],
                 mid_complete: str = "exact"):
        if kind not in ("periodic", "graded"):
            raise SchemaError(f"kind must be periodic or graded, got {kind!r}")
        if mid_complete not in ("exact", "heuristic"):
            raise SchemaError(f"mid_complete must be exact or heuristic, got {mid_complete!r}")
        self.kind = kind
        self.name = name
        self.field_char = field_char
        self.indecs = tuple(indecs)
        self.shift = dict(shift) if shift is not None else None
        self.hom = {k: v for k, v in hom.items() if v}
        self.hom_window = tuple(hom_window) if hom_window is not None else None
        self.mid_complete = mid_complete
        self._labels = set(self.indecs)
        if len(self._labels) != len(self.indecs):
            raise AxiomError("duplicate indecomposable labels")
        self._check_axioms()
        self.shift_order = self._compute_order()
        self._mid_cache: Dict[Tuple[ObjClass, ObjClass], Tuple[ObjClass, ...]] = {}
        self.missing: set = set()
        self.mid = {}
        for (a, c), bs in mid.items():
            self._check_obj(a)
            self._check_obj(c)
            for b in bs:
                self._check_obj(b)
            key, k = self.canonical_pair(a, c)
            moved = {self.shift_obj(b, k) for b in bs}
            self.mid[key] = tuple(sorted(set(self.mid.get(key, ())) | moved))
        self.mid_cap = max((len(a) + len(c) for a, c in self.mid), default=0)

    # -- structure ---------------------------------------------------------

    @property
    def graded(self) -> bool:
        return self.kind == "graded"

    def _check_axioms(self):
        if self.graded:
            if self.hom_window is None:
                raise SchemaError("graded model requires hom_window")
            lo, hi = self.hom_window
            for key, v in self.hom.items():
                if len(key) != 3:
                    raise SchemaError(f"graded hom entry must be (base, base, k): {key!r}")
                b1, b2, k = key
                self._check_label(b1)
                self._check_label(b2)
                if not lo <= k <= hi:
                    raise AxiomError(f"hom({b1}, {b2}, {k}) outside hom_window")
            for b in self.indecs:
                if self.hom.get((b, b, 0), 0) < 1:
                    raise AxiomError(f"hom({b}, {b}) must be at least 1")
        else:
            if self.shift is None:
                raise SchemaError("periodic model requires a shift permutation")
            if set(self.shift) != self._labels:
                raise AxiomError("shift must be defined on every label")
            img = list(self.shift.values())
            for x in img:
                self._check_label(x)
            if len(set(img)) != len(img):
                raise AxiomError("shift is not a bijection")
            for key in self.hom:
                if len(key) != 2:
                    raise SchemaError(f"periodic hom entry must be (x, y): {key!r}")
                self._check_label(key[0])
                self._check_label(key[1])
            for x in self.indecs:
                if self.hom.get((x, x), 0) < 1:
                    raise AxiomError(f"hom({x}, {x}) must be at least 1")

    def _compute_order(self) -> Optional[int]:
        if self.graded:
            return None
        order = 1
        seen = set()
        for x in self.indecs:
            if x in seen:
                continue
            n, y = 0, x
            while True:
                seen.add(y)
                y = self.shift[y]
                n += 1
                if y == x:
                    break
            order = order * n // math.gcd(order, n)
        self._powers = [dict((x, x) for x in self.indecs)]
        for _ in range(order - 1):
            prev = self._powers[-1]
            self._powers.append({x: self.shift[prev[x]] for x in self.indecs})
        return order

    def _check_label(self, x: str):
        if x not in self._labels:
            raise UnknownIndec(x)

    def _check_ref(self, r: IndecRef):
        self._check_label(r.base)
        if self.graded != (r.degree is not None):
            raise UnknownIndec(str(r))

    def _check_obj(self, m: ObjClass):
        for r in m:
            self._check_ref(r)

    # -- shift and hom -----------------------------------------------------

    def shift_ref(self, r: IndecRef, k: int) -> IndecRef:
        if self.graded:
            return IndecRef(r.base, r.degree + k)
        return IndecRef(self._powers[k % self.shift_order][r.base])

    def shift_obj(self, m: ObjClass, k: int) -> ObjClass:
        if k == 0:
            return m
        return ObjClass(tuple(self.shift_ref(r, k) for r in m))

    def hom_indec(self, x: IndecRef, y: IndecRef) -> int:
        if self.graded:
            return self.hom.get((x.base, y.base, y.degree - x.degree), 0)
        return self.hom.get((x.base, y.base), 0)

    def hom_dim(self, m: ObjClass, n: ObjClass) -> int:
        self._check_obj(m)
        self._check_obj(n)
        return sum(self.hom_indec(x, y) for x in m for y in n)

    # -- universe ----------------------------------------------------------

    def indecs_in(self, u: UniverseSpec) -> List[IndecRef]:
        if self.graded:
            refs = [IndecRef(b, d) for b in self.indecs for d in range(-u.W, u.W + 1)]
        else:
            refs = [IndecRef(b) for b in self.indecs]
        return sorted(refs, key=IndecRef.key)

    def in_window(self, m: ObjClass, u: UniverseSpec) -> bool:
        if len(m) > u.S:
            return False
        return not self.graded or all(-u.W <= r.degree <= u.W for r in m)

    # -- triangles ---------------------------------------------------------

    def components(self, a: ObjClass, c: ObjClass) -> List[Tuple[ObjClass, ObjClass]]:
        """Connected components of the end pair ``(a, c)``."""
        na = len(a)
        items = list(a) + list(c)
        parent = list(range(len(items)))

        def find(i):
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        shifted = [self.shift_ref(x, 1) for x in a]
        for j, y in enumerate(c):
            for i, xs in enumerate(shifted):
                if self.hom_indec(y, xs):
                    parent[find(na + j)] = find(i)
        groups: Dict[int, Tuple[list, list]] = {}
        for i, r in enumerate(items):
            g = groups.setdefault(find(i), ([], []))
            g[0 if i < na else 1].append(r)
        return [(ObjClass(tuple(x)), ObjClass(tuple(y))) for x, y in groups.values()]

    def canonical_pair(self, a: ObjClass, c: ObjClass) -> Tuple[Tuple[ObjClass, ObjClass], int]:
        """Normal form of an end pair under suspension, and the shift applied."""
        if self.graded:
            degs = [r.degree for r in a] + [r.degree for r in c]
            k = -min(degs) if degs else 0
            return (self.shift_obj(a, k), self.shift_obj(c, k)), k
        best = None
        for k in range(self.shift_order):
            cand = (self.shift_obj(a, k), self.shift_obj(c, k))
            sk = (cand[0].sort_key(), cand[1].sort_key())
            if best is None or sk < best[0]:
                best = (sk, cand, k)
        return best[1], best[2]

    def mid_connected(self, a: ObjClass, c: ObjClass) -> Tuple[ObjClass, ...]:
        key, k = self.canonical_pair(a, c)
        bs = self.mid.get(key)
        if bs is None:
            if self.mid_complete == "exact":
                raise MidUnavailable(f"no triangle data for ends ({a}, {c})")
            self.missing.add(key)
            return (a + c,)
        return tuple(self.shift_obj(b, -k) for b in bs)

    def mid_of(self, a: ObjClass, c: ObjClass) -> Tuple[ObjClass, ...]:
        """Middle terms ``B`` of triangles ``a -> B -> c -> a[1]``."""
        if not a:
            return (c,)
        if not c:
            return (a,)
        key = (a, c)
        hit = self._mid_cache.get(key)
        if hit is not None:
            return hit
        options = []
        for x, y in self.components(a, c):
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
        res = tuple(sorted(out))
        self._mid_cache[key] = res
        return res

    # -- serialization -----------------------------------------------------

    def to_json(self) -> dict:
        g = self.graded
        if g:
            hom = [[b1, b2, k, v] for (b1, b2, k), v in sorted(self.hom.items())]
        else:
            hom = [[x, y, v] for (x, y), v in sorted(self.hom.items())]
        mid = []
        for (a, c) in sorted(self.mid, key=lambda p: (p[0].sort_key(), p[1].sort_key())):
            mid.append([a.to_json(), c.to_json(), [b.to_json() for b in self.mid[(a, c)]]])
        return {
            "kind": self.kind,
            "name": self.name,
            "field_char": self.field_char,
            "indecs": list(self.indecs),
            "shift": None if g else [self.shift[x] for x in self.indecs],
            "hom": hom,
            "hom_window": list(self.hom_window) if g else None,
            "mid": mid,
            "mid_complete": self.mid_complete,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"), ensure_ascii=False) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.dumps().encode("utf-8")).hexdigest()[:16]

    def __eq__(self, other) -> bool:
        return isinstance(other, ModelSpec) and self.to_json() == other.to_json()

    def __hash__(self) -> int:
        return hash(self.content_hash())

    def replace_mid(self, mid: Dict[Tuple[ObjClass, ObjClass], Tuple[ObjClass, ...]]) -> "ModelSpec":
        return ModelSpec(self.kind, self.name, self.field_char, self.indecs, self.shift,
                         self.hom, self.hom_window, mid, self.mid_complete)


_FIELDS = ("kind", "name", "field_char", "indecs", "shift", "hom", "hom_window", "mid", "mid_complete")


def model_from_json(doc: dict) -> ModelSpec:
    if not isinstance(doc, dict):
        raise SchemaError("model document must be a JSON object")
    for f in _FIELDS:
        if f not in doc:
            raise SchemaError(f"missing field {f!r}")
    kind = doc["kind"]
    if kind not in ("periodic", "graded"):
        raise SchemaError(f"kind must be periodic or graded, got {kind!r}")
    graded = kind == "graded"
    indecs = doc["indecs"]
    if not isinstance(indecs, list) or not all(isinstance(x, str) for x in indecs):
        raise SchemaError("indecs must be a list of labels")
    shift = None
    if not graded:
        sh = doc["shift"]
        if not isinstance(sh, list) or len(sh) != len(indecs):
            raise SchemaError("shift must list the image of every label")
        shift = dict(zip(indecs, sh))
    hom = {}
    for e in doc["hom"]:
        if not isinstance(e, list) or len(e) != (4 if graded else 3):
            raise SchemaError(f"bad hom entry {e!r}")
        hom[tuple(e[:-1])] = int(e[-1])
    mid = {}
    for e in doc["mid"] or []:
        if not isinstance(e, list) or len(e) != 3 or not isinstance(e[2], list):
            raise SchemaError(f"bad mid entry {e!r}")
        a = _obj_from_json(e[0], graded)
        c = _obj_from_json(e[1], graded)
        mid[(a, c)] = tuple(_obj_from_json(b, graded) for b in e[2])
    hw = doc["hom_window"]
    return ModelSpec(kind, doc["name"], int(doc["field_char"]), indecs, shift, hom,
                     tuple(hw) if hw is not None else None, mid, doc["mid_complete"])


def load_model(path) -> ModelSpec:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    return model_from_json(doc)


def export_model(m: ModelSpec, path) -> None:
    Path(path).write_bytes(m.dumps().encode("utf-8"))


def hom_dim(m: ModelSpec, a: ObjClass, b: ObjClass) -> int:
    return m.hom_dim(a, b)


def shift_obj(m: ModelSpec, a: ObjClass, k: int) -> ObjClass:
    return m.shift_obj(a, k)


def enumerate_universe(m: ModelSpec, u: UniverseSpec) -> List[ObjClass]:
    """All objects of ``O(S, W)`` in canonical order (by size, then summands)."""
    refs = m.indecs_in(u)
    out = [ZERO]
    for s in range(1, u.S + 1):
        for combo in combinations_with_replacement(refs, s):
            out.append(ObjClass(combo))
    return out
