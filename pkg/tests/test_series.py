import json
import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from conftest import fractions, polys
from superwp.exactcore import (
    Caps, LaurentSeries, Poly, TMonomialSeries, VolumeSeries, extract_volpoly, flat_key,
    principal_part, substitute_t, symmetrize, unflatten,
)

CAPS = Caps(3, 2, 4, 4)

laurent = st.dictionaries(
    st.tuples(st.integers(0, 4), st.integers(-4, 3), st.integers(0, 2)), fractions, max_size=6
).map(lambda d: LaurentSeries(4, d))

# small series without a constant term, so exp and log stay inside the caps
t_terms = st.lists(
    st.tuples(st.integers(0, 1), st.sampled_from([0, 2]),
              st.lists(st.integers(0, 2), min_size=1, max_size=2), fractions),
    max_size=4,
).map(lambda ts: TMonomialSeries.from_terms(CAPS, ts))


@given(laurent, laurent, laurent)
def test_laurent_ring(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(laurent)
def test_principal_part(a):
    pp = principal_part(a)
    assert all(z < 0 for z in pp.z_powers())
    assert principal_part(pp) == pp
    assert all(z >= 0 for z in (a - pp).z_powers())


def test_laurent_truncates_in_s():
    a = LaurentSeries(4, {(2, -1, 0): 1})
    assert (a * a * a).items() == []


def test_volume_series_rejects_odd_orders():
    with pytest.raises(ValueError):
        VolumeSeries(4, 1, {1: Poly.zero(1)})


@given(t_terms)
def test_exp_log_inverse(f):
    assert f.exp().log() == f


@given(t_terms, t_terms)
def test_exp_is_multiplicative(f, g):
    assert (f + g).exp() == f.exp() * g.exp()


@given(t_terms, t_terms, st.integers(0, 3))
def test_derivative_leibniz(f, g, k):
    assert (f * g).d(k) == (f.d(k) * g + f * g.d(k)).with_caps(
        CAPS._replace(n_max=CAPS.n_max - 1))


@given(t_terms)
def test_tseries_json_round_trip(f):
    assert TMonomialSeries.from_json(json.loads(json.dumps(f.to_json()))) == f


@given(polys(2, max_exp=2))
def test_substitute_extract_inverse(v):
    v = symmetrize(v)
    assert extract_volpoly(substitute_t(v), 2) == v


def test_substitute_weights():
    # l1^2 l2 -> 8 t_2 * 2 t_1
    v = Poly(2, {(2, 1, 0): 1})
    assert substitute_t(v) == {(0, (1, 2)): 16}


def test_flat_key_round_trip():
    key = flat_key(1, 2, [0, 2, 2], 3, pk=1)
    t = unflatten(key)
    assert (t.a, t.sigma, t.pk, t.times, t.n) == (1, 2, 1, (0, 2, 2), 3)


def test_caps_drop_terms_outside_window():
    f = TMonomialSeries.from_terms(
        CAPS, [(3, 0, [1], 1), (0, 6, [1], 1), (0, 0, [0] * 5, 1), (0, 2, [1], 1)])
    assert [(t.sigma, t.times) for t, _ in f.readable_items()] == [(2, (1,))]


def test_exp_of_single_term():
    f = TMonomialSeries.from_terms(CAPS, [(0, 0, [0], Fraction(1, 2))])
    z = f.exp()
    for k in range(CAPS.n_max + 1):
        assert z.coefficient(0, 0, [0] * k) == Fraction(1, 2) ** k / math.factorial(k)
