import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from hypothesis.extra.numpy import arrays

from tricat import kernels

compiled = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")


def reference_join(first, second, third, m1, m2, size):
    out = np.zeros(size, dtype=np.uint8)
    for f, s, t in zip(first, second, third):
        if m1[f] and m2[s]:
            out[t] = 1
    return out


@st.composite
def join_inputs(draw):
    n = draw(st.integers(1, 40))
    rows = draw(st.integers(0, 200))
    idx = arrays(np.int32, rows, elements=st.integers(0, n - 1))
    mask = arrays(np.uint8, n, elements=st.integers(0, 1))
    return draw(idx), draw(idx), draw(idx), draw(mask), draw(mask), n


@settings(max_examples=200, deadline=None)
@given(join_inputs())
def test_numpy_join_matches_reference(args):
    first, second, third, m1, m2, n = args
    out = np.zeros(n, dtype=np.uint8)
    kernels.join_into_numpy(first, second, third, m1, m2, out)
    assert np.array_equal(out, reference_join(*args))
    sel = m1[first].astype(bool) & m2[second].astype(bool)
    assert kernels.count_join_numpy(first, second, m1, m2) == int(sel.sum())


@compiled
@settings(max_examples=200, deadline=None)
@given(join_inputs())
def test_compiled_join_matches_numpy(args):
    first, second, third, m1, m2, n = args
    a = np.zeros(n, dtype=np.uint8)
    b = np.zeros(n, dtype=np.uint8)
    kernels.join_into_compiled(first, second, third, m1, m2, a)
    kernels.join_into_numpy(first, second, third, m1, m2, b)
    assert np.array_equal(a, b)
    assert kernels.count_join_compiled(first, second, m1, m2) == kernels.count_join_numpy(first, second, m1, m2)


def test_join_accumulates(a2_ev):
    u = a2_ev.uni
    m = u.empty()
    m[u.zero] = 1
    out = np.zeros(u.N, dtype=np.uint8)
    out[0] = 1
    kernels.join_into(u.tri_x, u.tri_y, u.tri_z, m, m, out)
    assert out[0] == 1 and out[u.zero] == 1


def test_pure_python_switch():
    env = dict(os.environ, TRICAT_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-c", "from tricat import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert res.stdout.strip() == "numpy"
