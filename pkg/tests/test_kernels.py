import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from superwp.exactcore import PiPoly, Poly
from superwp.kernels import (
    cos_coeffs, d_double_moment, euler_numbers, eval_D, eval_R, r_moment, r_moment_in_l,
    sec_coeffs, sec_times_cos, sech_moment_poly,
)
from superwp.quadrature import QuadratureError, cutoff, quadrature_oracle, tail_bound


def test_euler_numbers():
    assert euler_numbers(5) == (1, -1, 5, -61, 1385, -50521)


def test_secant_cosine_inverse():
    prod = sec_times_cos(16)
    assert prod[0] == PiPoly([1])
    assert all(c.is_zero() for c in prod[1:])
    assert cos_coeffs(1)[1] == PiPoly([0, Fraction(-2)])
    assert sec_coeffs(2)[2] == PiPoly([0, 0, Fraction(10, 3)])


def test_d_moments_low_order():
    assert d_double_moment(0, 0) == Poly(1, {(3, 0): Fraction(1, 6), (1, 1): 2})
    assert d_double_moment(1, 0) == Poly(1, {(5, 0): Fraction(1, 20), (3, 1): 2, (1, 2): 20})


def test_r_moments_low_order():
    assert r_moment(0) == Poly(2, {(1, 0, 0): 1})
    assert r_moment(1) == Poly(2, {(3, 0, 0): 1, (1, 2, 0): 3, (1, 0, 1): 12})


@given(st.integers(0, 6), st.integers(0, 6))
def test_d_moment_symmetric_and_homogeneous(i, j):
    d = d_double_moment(i, j)
    assert d == d_double_moment(j, i)
    # raw L has weight 1, p has weight 2
    assert {k[0] + 2 * k[1] for k, _ in d.items()} == {2 * i + 2 * j + 3}


@given(st.integers(0, 6))
def test_r_moment_reduces_to_sech_moment(k):
    r = r_moment(k)
    assert r.substitute(1, Poly.zero(1)) == sech_moment_poly(k)
    assert all(e % 2 == 0 for (_, e, _), _ in r.items())
    assert Poly(2, {(a, 2 * b, c): v for (a, b, c), v in r_moment_in_l(k).items()}) == r


def test_kernel_numeric_forms():
    x = np.linspace(0.1, 5, 7)
    vals = eval_D(x, 1.0, 0.5)
    assert vals.shape == x.shape
    assert eval_R(1.0, 0.3, 2.0) == pytest.approx(
        0.5 * (eval_D(1.3, 2.0, 0) + eval_D(0.7, 2.0, 0)))


@pytest.mark.parametrize("k", range(7))
@pytest.mark.parametrize("u", [0.5, 2.0, 5.0])
def test_sech_moment_vs_quadrature(k, u):
    assert quadrature_oracle("D-single", 2 * k + 1, u) == pytest.approx(
        sech_moment_poly(k)(u), rel=1e-8)


@pytest.mark.parametrize("i,j", [(0, 0), (2, 1), (6, 6), (0, 5)])
def test_double_moment_vs_quadrature(i, j):
    for L in (0.5, 3.5):
        num = quadrature_oracle("D-double", (2 * i + 1, 2 * j + 1), L)
        assert num == pytest.approx(d_double_moment(i, j)(L), rel=1e-8)


def test_tail_bound_controls_cutoff():
    T = cutoff(5, 2.0, 1e-10)
    assert tail_bound(5, 2.0, T) <= 1e-10
    assert tail_bound(5, 2.0, T / 2) > 1e-10


def test_quadrature_errors():
    with pytest.raises(ValueError):
        quadrature_oracle("E", 1, 1.0)
    with pytest.raises(ValueError):
        quadrature_oracle("D-single", 1, 1.0, atol=0.0)
    with pytest.raises(QuadratureError):
        quadrature_oracle("D-single", 41, 3.0, rtol=1e-30, atol=1e-12, max_level=1)
    with pytest.raises(QuadratureError):
        cutoff(1, 0.0, 1e-320)


def test_negative_indices_rejected():
    with pytest.raises(ValueError):
        d_double_moment(-1, 0)
    with pytest.raises(ValueError):
        sech_moment_poly(-1)
