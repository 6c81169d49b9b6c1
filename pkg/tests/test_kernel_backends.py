import pytest
from hypothesis import given, strategies as st

from conftest import fractions, sparse_dicts
from superwp.exactcore import BACKEND, _pykernel

_ckernel = pytest.importorskip("superwp.exactcore._ckernel")

limits = st.lists(
    st.tuples(st.tuples(*[st.integers(0, 2)] * 3), st.integers(0, 8)), max_size=2
).map(tuple)


def test_backend_is_reported():
    assert BACKEND in ("cython", "python")


@given(sparse_dicts(3), sparse_dicts(3), limits)
def test_sparse_mul_backends_agree(a, b, lim):
    assert _ckernel.sparse_mul(a, b, lim) == _pykernel.sparse_mul(a, b, lim)


@given(sparse_dicts(3), sparse_dicts(3), fractions)
def test_sparse_add_backends_agree(a, b, scale):
    assert _ckernel.sparse_add(a, b, scale) == _pykernel.sparse_add(a, b, scale)


@given(st.lists(fractions, max_size=12), st.lists(fractions, max_size=12), st.integers(0, 15))
def test_convolve_backends_agree(u, v, length):
    assert _ckernel.convolve(u, v, length) == _pykernel.convolve(u, v, length)


@given(sparse_dicts(2), sparse_dicts(2))
def test_product_has_no_zero_coefficients(a, b):
    assert all(_pykernel.sparse_mul(a, b).values())


def test_truncation_drops_heavy_terms():
    a = {(1, 0): 1, (3, 0): 1}
    out = _pykernel.sparse_mul(a, a, (((1, 0), 4),))
    assert out == {(2, 0): 1, (4, 0): 2}


def test_pure_python_fallback_gives_same_volumes(monkeypatch):
    from superwp.exactcore import kernel
    from superwp.volumes import RecursionSolver

    compiled = RecursionSolver().series(1, 2, 2)
    for name in ("sparse_mul", "sparse_add", "convolve"):
        monkeypatch.setattr(kernel, name, getattr(_pykernel, name))
    assert RecursionSolver().series(1, 2, 2) == compiled
