import math
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superwp.exactcore import Poly
from superwp.volumes import (
    CLOSED_FORM, RECURSION, UNVERIFIED, RecursionSolver, UnverifiedOrderWarning, VolumeId,
    VolumeTable, catalan, closed_form_v2, closed_form_v4, dilaton_check, disk_direct,
    disk_laplace, disk_top_degree, free_energy, laplace_to_volume, solve_volumes,
)

SOLVER = RecursionSolver()
EXT = RecursionSolver(extended=True)


def test_disk_series():
    d = disk_direct(6)
    assert d[2] * 2 == Poly.constant(1, 1)
    assert d[4] * 24 == Poly(1, {(0, 1): 6, (1, 0): Fraction(1, 2)})
    assert d[6] * 720 == Poly(1, {(0, 2): 330, (1, 1): 30, (2, 0): Fraction(3, 8)})


def test_disk_routes_agree():
    assert laplace_to_volume(disk_laplace(12)) == disk_direct(12)


@pytest.mark.parametrize("m", range(10))
def test_top_degree_catalan(m):
    g = disk_top_degree(2 * m + 2)
    assert g.s_part(2 * m + 2) == {-(2 * m + 2): g.coefficient(2 * m + 2, -(2 * m + 2))}
    assert g.coefficient(2 * m + 2, -(2 * m + 2))[0] == Fraction(catalan(m), 2 ** (2 * m + 1))


def test_base_values():
    assert SOLVER.volume(1, 1, 0) == Poly.constant(1, Fraction(1, 8))
    assert SOLVER.volume(0, 3, 0).is_zero()
    assert SOLVER.volume(2, 1, 0) == Poly(1, {(0, 1): Fraction(9, 64), (1, 0): Fraction(3, 256)})
    assert SOLVER.volume(1, 1, 2) == Poly(1, {(0, 1): Fraction(5, 4), (1, 0): Fraction(5, 48)})


@pytest.mark.parametrize("n", range(1, 9))
def test_v2_family(n):
    assert SOLVER.volume(0, n, 2) == closed_form_v2(n) == Poly.constant(n, math.factorial(n - 1))


@pytest.mark.parametrize("n", range(1, 7))
def test_v4_family(n):
    assert EXT.volume(0, n, 4) == closed_form_v4(n)


@given(st.integers(0, 2), st.integers(1, 4), st.sampled_from([0, 2]))
def test_recursion_output_symmetric_and_homogeneous(g, n, m):
    vid = VolumeId(g, n, m)
    v = SOLVER.volume(g, n, m)
    if not vid.stable:
        assert v.is_zero()
        return
    assert v.is_symmetric()
    assert v.is_zero() or v.weights() == {vid.weight}


def test_order_guard():
    with pytest.raises(ValueError):
        RecursionSolver().volume(0, 3, 4)
    with pytest.raises(ValueError):
        SOLVER.volume(1, 0, 0)


def test_unstable_ids():
    assert not VolumeId(0, 2, 0).stable
    assert not VolumeId(0, 1, 0).stable
    assert VolumeId(0, 1, 2).stable
    assert VolumeId(1, 1, 0).weight == 0


def test_table_round_trip_and_tags():
    with pytest.warns(UnverifiedOrderWarning):
        t = solve_volumes(1, 3, (0, 2, 4), extended=True)
    assert t.provenance[VolumeId(0, 3, 4)] == (RECURSION, UNVERIFIED)
    assert t.provenance[VolumeId(0, 1, 4)] == (RECURSION,)
    back = VolumeTable.from_json(t.to_json())
    assert back.entries == t.entries and back.provenance == t.provenance
    with pytest.raises(ValueError):
        solve_volumes(1, 3, (4,))


def test_dilaton_on_table():
    t = solve_volumes(2, 5, (0, 2), chi_max=5)
    pairs = t.pairs()
    assert pairs
    for a, _ in pairs:
        assert dilaton_check(a.g, a.n, t).ok


def test_free_energy_flags_singular_orders():
    fe = free_energy(1, SOLVER, 2)
    assert 0 in fe.singular
    assert 2 in fe.coeffs


def test_table_lookup():
    t = VolumeTable()
    t.add(VolumeId(0, 1, 2), closed_form_v2(1), CLOSED_FORM)
    assert t.series_coeff(0, 1, 2) == Poly.constant(1, Fraction(1, 2))
    assert t.get(0, 2, 0).is_zero()
    with pytest.raises(KeyError):
        t.get(1, 1, 0)
