# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled relational joins over integer-coded triples."""

cimport cython
from libc.stdint cimport int32_t, uint8_t


def join_into(const int32_t[:] first, const int32_t[:] second, const int32_t[:] third,
              const uint8_t[:] m1, const uint8_t[:] m2, uint8_t[:] out):
    """Set ``out[third[i]]`` whenever ``m1[first[i]]`` and ``m2[second[i]]``."""
    cdef Py_ssize_t i, n = first.shape[0]
    for i in range(n):
        if m1[first[i]] and m2[second[i]]:
            out[third[i]] = 1


def count_join(const int32_t[:] first, const int32_t[:] second,
               const uint8_t[:] m1, const uint8_t[:] m2):
    """Number of rows selected by the join condition."""
    cdef Py_ssize_t i, n = first.shape[0], c = 0
    for i in range(n):
        if m1[first[i]] and m2[second[i]]:
            c += 1
    return c
