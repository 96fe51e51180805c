"""The compiled and pure-Python kernels must agree bit for bit."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sirseries import InitialState, SirParams, _backend, _pykernels, dtm_solve

ck = pytest.importorskip("sirseries._ckernels")

floats = st.floats(-100, 100)
arrays = st.lists(floats, min_size=1, max_size=20).map(lambda x: np.array(x))


def test_selected_backend_is_compiled_when_available():
    assert _backend.BACKEND in ("cython", "python")


@given(arrays, arrays, st.integers(0, 40))
def test_convolve(a, b, n):
    assert ck.convolve(a, b, n).tolist() == _pykernels.convolve(a, b, n).tolist()


@given(arrays, st.floats(-2, 2))
def test_horner(a, t):
    assert ck.horner(a, t) == _pykernels.horner(a, t)


@given(st.tuples(*[st.floats(0, 1)] * 3), st.tuples(*[floats] * 6))
def test_rhs(rates, values):
    assert ck.sir_rhs(*rates, *values) == _pykernels.sir_rhs(*rates, *values)


@settings(deadline=None, max_examples=30)
@given(st.tuples(*[st.floats(0, 0.5)] * 3), st.tuples(*[st.floats(0, 50)] * 3),
       arrays, st.integers(0, 40))
def test_dtm_recurrence(rates, x0, f, n):
    f = f / 100
    got = ck.dtm_recurrence(*rates, f, f[::-1].copy(), np.zeros(1), *x0, n)
    want = _pykernels.dtm_recurrence(*rates, f, f[::-1].copy(), np.zeros(1), *x0, n)
    for g, w in zip(got, want):
        assert g.tolist() == w.tolist()


@settings(deadline=None, max_examples=20)
@given(st.tuples(*[st.floats(0, 0.5)] * 3), st.tuples(*[st.floats(0, 50)] * 3),
       st.lists(st.floats(-2, 2), min_size=1, max_size=3))
def test_rk4(rates, x0, f):
    f = np.array(f)
    times = np.linspace(0.0, 1.0, 57)
    got, gbad = ck.rk4_sir(*rates, f, f, f, x0, times)
    want, wbad = _pykernels.rk4_sir(*rates, f, f, f, x0, times)
    assert gbad == wbad
    assert got.tolist() == want.tolist()


def test_rk4_divergence_index():
    times = np.linspace(0.0, 1.0, 1001)
    z = np.zeros(1)
    got = ck.rk4_sir(10.0, 0.0, 0.0, z, z, z, (100.0, -100.0, 0.0), times)
    want = _pykernels.rk4_sir(10.0, 0.0, 0.0, z, z, z, (100.0, -100.0, 0.0), times)
    assert got[1] == want[1] > 0
    assert got[0].tolist() == want[0].tolist()


def test_pure_python_backend_solves_default_case():
    code = ("import sirseries._backend as b; "
            "from sirseries import *; "
            "s = dtm_solve(SirParams(), InitialState(), 14); "
            "print(b.BACKEND, s.s.to_json())")
    env = {**os.environ, "SIRSERIES_PURE_PYTHON": "1"}
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True).stdout.split(" ", 1)
    assert out[0] == "python"
    assert out[1].strip() == dtm_solve(SirParams(), InitialState(), 14).s.to_json()


@given(st.lists(st.tuples(arrays, arrays), min_size=1, max_size=6), st.integers(0, 25))
def test_adomian_sum(pairs, n):
    s_terms = [p[0] for p in pairs]
    i_terms = [p[1] for p in pairs]
    j = len(pairs) - 1
    got = ck.adomian_sum(s_terms, i_terms, j, n)
    want = _pykernels.adomian_sum(s_terms, i_terms, j, n)
    assert got.tolist() == want.tolist()
