"""The compiled kernels and the pure-Python fallback compute the same thing."""

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from autostack import _kernels_py as py
from autostack import kernels

INV = [1, 0, 3, 2]
codes = st.lists(st.integers(0, 3), max_size=30)


def _compiled():
    try:
        from autostack import _kernels as cy
    except ImportError:  # pragma: no cover - only when the extension was not built
        pytest.skip("compiled kernels not built")
    return cy


def test_backend_reported():
    assert kernels.BACKEND in ("cython", "python")


@given(codes)
def test_free_reduce_agrees(w):
    cy = _compiled()
    assert list(cy.free_reduce(list(w), INV)) == list(py.free_reduce(list(w), INV))


@given(codes, st.integers(0, 30), st.lists(st.integers(0, 3), max_size=4))
def test_splice_agrees(w, pos, repl):
    cy = _compiled()
    w = list(py.free_reduce(list(w), INV))
    pos = min(pos, max(len(w) - 1, 0))
    if not w:
        return
    assert cy.splice(list(w), pos, list(repl), INV) == py.splice(list(w), pos, list(repl), INV)


def test_scan_and_run_agree():
    cy = _compiled()
    rng = random.Random(1)
    for _ in range(200):
        n = rng.randint(1, 5)
        table = [[rng.randrange(n) for _ in range(4)] for _ in range(n)]
        accepting = [rng.random() < 0.7 for _ in range(n)]
        accepting[0] = True
        w = [rng.randrange(4) for _ in range(rng.randint(0, 12))]
        s1, s2 = [0], [0]
        assert cy.scan(list(w), s1, 0, table, accepting) == py.scan(list(w), s2, 0, table, accepting)
        assert s1 == s2
        assert cy.run(table, 0, w) == py.run(table, 0, w)


def test_pure_python_fallback_selected_by_environment():
    import os
    import subprocess
    import sys
    code = ("from autostack import kernels, zoo; print(kernels.BACKEND); "
            "print(' '.join(zoo.get('Z2').structure.normal_form('b a b^-1'.split())))")
    env = dict(os.environ, AUTOSTACK_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split("\n")[:2] == ["python", "a"]
