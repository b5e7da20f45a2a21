"""Relational joins used by every class operation.

The compiled extension is used when it was built; otherwise the numpy
implementation below is used.  Both take ``int32`` index arrays and ``uint8``
masks and agree exactly.
"""

from __future__ import annotations

import os

import numpy as np


def join_into_numpy(first, second, third, m1, m2, out):
    sel = m1[first].astype(bool) & m2[second].astype(bool)
    out[third[sel]] = 1


def count_join_numpy(first, second, m1, m2):
    return int(np.count_nonzero(m1[first].astype(bool) & m2[second].astype(bool)))


try:
    if os.environ.get("TRICAT_PURE_PYTHON"):
        raise ImportError("compiled kernels disabled")
    from ._kernels import count_join as count_join_compiled
    from ._kernels import join_into as join_into_compiled
    BACKEND = "cython"
    join_into = join_into_compiled
    count_join = count_join_compiled
except ImportError:
    BACKEND = "numpy"
    join_into = join_into_numpy
    count_join = count_join_numpy


def join(first, second, third, m1, m2, size: int) -> np.ndarray:
    """Fresh mask with ``third`` positions of rows where both masks hold."""
    out = np.zeros(size, dtype=np.uint8)
    join_into(first, second, third, m1, m2, out)
    return out
