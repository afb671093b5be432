from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from pfam import (
    DimensionMismatch,
    Frobenius,
    Halfspace,
    MonomialIdeal,
    OrdinaryPower,
    Unsupported,
    ZeroIdealError,
    colength,
    covolume,
    make_convex,
    make_staircase,
    minkowski_scale_sum,
    newton_region,
    pbody,
    power,
    region_properties,
    staircase,
    volume_below,
)
from pfam.hull import inequalities, lower_chain, newton_covolume, polytope_volume, shoelace
from pfam.limits import fit_homogeneous

I = MonomialIdeal.of
M2 = MonomialIdeal.maximal(2)
M3 = MonomialIdeal.maximal(3)


@st.composite
def m_primary_2d(draw, top=7):
    pts = draw(st.lists(st.tuples(st.integers(0, top), st.integers(0, top)), max_size=4))
    pure = [(draw(st.integers(1, top)), 0), (0, draw(st.integers(1, top)))]
    return I(*(pts + pure))


def test_newton_minkowski_example():
    R = minkowski_scale_sum([(newton_region(M2), 2), (newton_region(I((2, 0), (0, 3))), 1)])
    assert list(R.points) == [(0, 5), (2, 2), (4, 0)]
    assert covolume(R).value == 9
    assert covolume(R).method == "shoelace"


def test_staircase_minkowski_example():
    R = minkowski_scale_sum([(staircase(M2), 2), (staircase(I((2, 0), (0, 3))), 1)])
    assert covolume(R).value == 14
    assert covolume(R).method == "slab"


def test_mixed_kinds_rejected():
    with pytest.raises(Unsupported):
        minkowski_scale_sum([(staircase(M2), 1), (newton_region(M2), 1)])
    with pytest.raises(Unsupported):
        minkowski_scale_sum([(newton_region(M3), 1), (newton_region(M3), 1)])
    with pytest.raises(DimensionMismatch):
        minkowski_scale_sum([(staircase(M2), 1), (staircase(M3), 1)])


def test_zero_scale_is_the_orthant():
    R = minkowski_scale_sum([(staircase(M2), 0), (staircase(I((2, 0), (0, 3))), 1)])
    assert covolume(R).value == 6


def test_covolume_not_cobounded():
    res = covolume(staircase(I((1, 1))))
    assert res.value is None and not res.cobounded


def test_covolume_d3_hull():
    res = covolume(newton_region(M3))
    assert res.value == Fraction(1, 6)
    assert res.method == "hull_triangulation"
    assert covolume(newton_region(I((2, 0, 0), (0, 3, 0), (0, 0, 5)))).value == 5


def test_zero_ideal_rejected():
    with pytest.raises(ZeroIdealError):
        staircase(MonomialIdeal.zero(2))


def test_properties():
    assert region_properties(staircase(M2)).convex is False
    assert region_properties(make_staircase([(1, 1)])).convex is True
    assert region_properties(newton_region(M2)).cobounded
    assert not region_properties(make_staircase([(1, 1)])).cobounded


def test_volume_below_examples():
    assert volume_below(staircase(M2), Halfspace((1, 1), 2)).value == 1
    assert volume_below(make_staircase([(0, 0)]), Halfspace((1, 1), 1)).value == Fraction(1, 2)
    assert volume_below(newton_region(M2), Halfspace((1, 1), 2)).value == Fraction(3, 2)
    assert volume_below(staircase(M2), Halfspace((1, 1), 0)).value == 0


def test_volume_below_d3_estimate():
    res = volume_below(newton_region(M3), Halfspace((1, 1, 1), 2), q=64)
    assert res.method == "lattice_estimate"
    assert abs(res.value - Fraction(7, 6)) <= res.error_bound


def test_pbody_frobenius_is_exact():
    J = I((2, 0), (1, 1), (0, 3))
    R = pbody(Frobenius(J), 8, 2)
    assert R.exact
    assert list(R.apexes) == [tuple(map(Fraction, g)) for g in J.gens]


def test_pbody_ordinary_powers():
    R = pbody(OrdinaryPower(M2), 8, 2)
    assert not R.exact
    assert covolume(R).value == Fraction(9, 16)


def test_hull_helpers():
    assert lower_chain([(0, 2), (1, 1), (2, 0), (1, 2)]) == [(0, 2), (2, 0)]
    ineqs, _ = inequalities([(2, 0), (0, 3)])
    assert all(all(v >= 0 for v in n) for n, _ in ineqs)
    assert polytope_volume([(0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)]) == Fraction(1, 6)
    assert shoelace([(0, 0), (1, 0), (0, 1)]) == Fraction(1, 2)
    assert newton_covolume([(2, 0), (1, 1), (0, 3)]) == Fraction(5, 2)


def test_make_convex_dimension_check():
    with pytest.raises(DimensionMismatch):
        make_convex([(0, 1), (1, 0, 0)])


@settings(max_examples=50, deadline=None)
@given(m_primary_2d())
def test_staircase_covolume_is_colength(J):
    assert covolume(staircase(J)).value == colength(J)


@settings(max_examples=50, deadline=None)
@given(m_primary_2d())
def test_newton_covolume_matches_brute_hull(J):
    assert covolume(newton_region(J)).value == oracles.polygon_covolume_2d(list(J.gens))


@settings(max_examples=30, deadline=None)
@given(m_primary_2d(), m_primary_2d(), st.integers(1, 4), st.integers(1, 4))
def test_convex_sums_are_quadratic(A, B, a, b):
    def cov(t):
        return covolume(minkowski_scale_sum([(newton_region(A), t[0]), (newton_region(B), t[1])])).value

    pts = [(1, 0), (0, 1), (1, 1), (a, b)]
    fit = fit_homogeneous(2, [(t, cov(t)) for t in pts])
    assert fit.consistent


@settings(max_examples=30, deadline=None)
@given(m_primary_2d(), st.integers(1, 3), st.integers(1, 3), st.integers(1, 12))
def test_volume_below_scales(J, a, b, alpha):
    for R in (staircase(J), newton_region(J)):
        H = Halfspace((a, b), alpha)
        v = volume_below(R, H).value
        assert volume_below(R.scaled(2), H.scaled(2)).value == 4 * v
        # monotone in the bound and capped by the full triangle
        assert 0 <= v <= Fraction(alpha * alpha, 2 * a * b)


@settings(max_examples=30, deadline=None)
@given(m_primary_2d(top=5), st.integers(1, 8))
def test_staircase_volume_below_counts_cells(J, alpha):
    # unit cells [u, u+1)^2 lie in the staircase iff u does; with H = {x + y < alpha}
    # the area equals the number of such cells fully below minus the diagonal halves
    H = Halfspace((1, 1), alpha)
    full = sum(
        1 for u in range(alpha) for v in range(alpha) if u + v + 2 <= alpha and oracles.member(J.gens, (u, v))
    )
    half = sum(1 for u in range(alpha) for v in range(alpha) if u + v + 1 == alpha and oracles.member(J.gens, (u, v)))
    assert volume_below(staircase(J), H).value == full + Fraction(half, 2)


def test_power_staircase_vs_pbody_limit():
    # covolume of (1/q) m^q tends to 1/2 from above
    vals = [covolume(pbody(OrdinaryPower(M2), 2**e, 2)).value for e in range(5)]
    assert vals == sorted(vals, reverse=True)
    assert vals[-1] - Fraction(1, 2) == Fraction(1, 32)
    assert colength(power(M2, 16)) == 136
