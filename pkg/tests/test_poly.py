import json
from fractions import Fraction

import pytest
from hypothesis import given

from conftest import fractions, polys
from superwp.exactcore import PiPoly, Poly, latex_frac, rat, rat_str, symmetrize


@given(polys(2), polys(2), polys(2))
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(2)


@given(polys(3))
def test_json_round_trip(a):
    data = json.loads(json.dumps(a.to_json()))
    assert Poly.from_json(data) == a


@given(polys(2))
def test_symmetrize_is_symmetric_and_idempotent(a):
    s = symmetrize(a)
    assert s.is_symmetric()
    assert symmetrize(s) == s


@given(polys(2), fractions)
def test_evaluation_is_a_homomorphism(a, x):
    b = a * a
    assert b(float(x), 0.5) == pytest.approx(a(float(x), 0.5) ** 2, rel=1e-9, abs=1e-9)


def test_eval_at_minus4pi2():
    # l -> -4 p
    v = Poly(1, {(1, 0): Fraction(1, 2), (0, 1): 6})
    assert v.eval_at_minus4pi2(0) == Poly(0, {(1,): 4})


def test_embed_and_substitute():
    v = Poly(1, {(2, 1): 3})
    w = v.embed(3, [2])
    assert w == Poly(3, {(0, 0, 2, 1): 3})
    assert w.substitute(2, Poly.constant(2, 2)) == Poly(2, {(0, 0, 1): 12})


def test_pipoly_arithmetic():
    a = PiPoly([1, 2])
    assert a * a == PiPoly([1, 4, 4])
    assert (a - a).is_zero()
    assert a[5] == 0


def test_rational_helpers():
    assert rat("3/8") == Fraction(3, 8)
    assert rat_str(Fraction(-5, 4)) == "-5/4"
    assert latex_frac(Fraction(3, 2)) == r"\frac32"
    assert latex_frac(Fraction(15, 2)) == r"\frac{15}{2}"
    assert latex_frac(Fraction(4)) == "4"
    with pytest.raises((TypeError, ValueError)):
        rat(0.5)


def test_mismatched_arity_is_rejected():
    with pytest.raises(ValueError):
        Poly.var(1, 0) + Poly.var(2, 0)
