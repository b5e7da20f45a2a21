"""Natural numbers extended by infinity."""

from __future__ import annotations

from functools import total_ordering
from typing import Iterable, Optional, Union


@total_ordering
class ExtNat:
    """An element of N u {inf}; ``ExtNat(None)`` is infinity."""

    __slots__ = ("value",)

    def __init__(self, value: Optional[int]):
        if value is not None and value < 0:
            raise ValueError("ExtNat must be non-negative")
        self.value = value

    @property
    def is_inf(self) -> bool:
        return self.value is None

    def __add__(self, other: Union["ExtNat", int]) -> "ExtNat":
        other = _coerce(other)
        if self.is_inf or other.is_inf:
            return INF
        return ExtNat(self.value + other.value)

    __radd__ = __add__

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = ExtNat(other) if other >= 0 else None
        if not isinstance(other, ExtNat):
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if self.is_inf:
            return False
        if other.is_inf:
            return True
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(self.value)

    def __repr__(self) -> str:
        return "inf" if self.is_inf else str(self.value)

    def to_json(self):
        return "inf" if self.is_inf else self.value

    @classmethod
    def from_json(cls, v) -> "ExtNat":
        return INF if v == "inf" else cls(int(v))


def _coerce(x) -> ExtNat:
    return x if isinstance(x, ExtNat) else ExtNat(x)


INF = ExtNat(None)


def ext_min(xs: Iterable[Union[ExtNat, int]]) -> ExtNat:
    """Minimum with ``min(empty) = inf``."""
    best = INF
    for x in xs:
        x = _coerce(x)
        if x < best:
            best = x
    return best


def ext_max(xs: Iterable[Union[ExtNat, int]]) -> ExtNat:
    """Supremum; the empty supremum is 0."""
    best = ExtNat(0)
    for x in xs:
        x = _coerce(x)
        if best < x:
            best = x
    return best
