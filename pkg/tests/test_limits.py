from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfam import (
    ClosedPower,
    Constant,
    Frobenius,
    MonomialIdeal,
    OrdinaryPower,
    PreconditionFailed,
    SingularSystem,
    Table,
    basis_search,
    coefficient_limits,
    double_limit_table,
    fit_homogeneous,
    length_sequence,
    samuel,
)
from pfam.limits import basis_matrix, monomial_exponents
from pfam.linalg import det
from pfam.monomial import frobenius

I = MonomialIdeal.of
M2 = MonomialIdeal.maximal(2)


def test_live_sequence_m_powers():
    seq = length_sequence([(Constant(MonomialIdeal.unit(2)), 0)], [(OrdinaryPower(M2), 0)], None, 5, 2)
    assert seq.values == [(1 + Fraction(1, 2**e)) / 2 for e in range(6)]
    assert seq.last_cauchy == Fraction(1, 2**6)
    assert seq.normalization == "per q^d"


def test_based_sequence_m_powers():
    for b in range(4):
        seq = length_sequence([], [(OrdinaryPower(M2), 0)], b, 3, 2)
        assert set(seq.values) == {(1 + Fraction(1, 2**b)) / 2}


def test_principal_factor_cancels():
    seq = length_sequence([(Frobenius(I((1, 0))), 0)], [(Frobenius(M2), 0)], None, 3, 2)
    assert seq.values == [1, 1, 1, 1]


def test_non_m_primary_rejected():
    with pytest.raises(PreconditionFailed):
        length_sequence([], [(Frobenius(I((1, 0))), 0)], None, 2, 2)


def test_richardson_removes_first_order_error():
    seq = length_sequence([], [(OrdinaryPower(M2), 0)], None, 6, 2)
    assert seq.richardson(2) == Fraction(1, 2)


def test_double_limit_m_powers():
    res = double_limit_table([], [(OrdinaryPower(M2), 0)], 6, 8, 2)
    assert res.verdict == "PASS"
    assert res.lhs[6].values[-1] - Fraction(1, 2) == Fraction(1, 2**7)
    assert res.rhs[8] - Fraction(1, 2) == Fraction(1, 2**9)


def test_double_limit_frobenius_exact():
    res = double_limit_table([(Frobenius(I((1, 0), (0, 2))), 0)], [(Frobenius(M2), 1)], 3, 3, 2)
    assert res.verdict == "PASS"
    assert all(seq.values == res.rhs for seq in res.lhs)


def test_double_limit_fail_on_tight_tolerance():
    res = double_limit_table([], [(OrdinaryPower(M2), 0)], 1, 4, 2)
    assert res.verdict == "FAIL"


def test_double_limit_surfaces_axiom_failure():
    broken = Table((M2, frobenius(M2, 2), I((5, 0), (0, 5))))
    res = double_limit_table([], [(broken, 0)], 2, 3, 2)
    assert res.verdict == "HYPOTHESIS_FAIL"
    assert res.axiom_failures[0]["e"] == 1
    assert res.lhs == [] and res.rhs == []


def test_basis_examples():
    assert basis_search(1, 2, 2) == [(0,)]
    assert basis_search(2, 1, 2) == [(0, 0), (1, 0)]
    assert basis_matrix([(0, 0), (1, 0)], 1, 2) == [[1, 1], [2, 1]]
    assert det(basis_matrix([(0, 0), (1, 0)], 1, 2)) == -1
    tuples = basis_search(2, 2, 2)
    assert tuples == [(0, 0), (1, 0), (0, 1)]
    assert basis_matrix(tuples, 2, 2) == [[1, 1, 1], [4, 2, 1], [1, 2, 4]]
    assert det(basis_matrix(tuples, 2, 2)) == -3


@pytest.mark.parametrize("s,d", [(2, 1), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2)])
@pytest.mark.parametrize("p", [2, 3, 5])
def test_basis_nonsingular(s, d, p):
    tuples = basis_search(s, d, p)
    assert len(tuples) == len(monomial_exponents(s, d))
    assert det(basis_matrix(tuples, d, p)) != 0


def test_fit_examples():
    zero = fit_homogeneous(2, [((1, 0), 0), ((0, 1), 0), ((1, 1), 0), ((3, 2), 0)])
    assert all(c == 0 for c in zero.coefficients.values()) and zero.consistent
    with pytest.raises(SingularSystem):
        fit_homogeneous(2, [((1, 0), 1), ((2, 0), 4), ((3, 0), 9)])


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=7), min_size=3, max_size=3))
def test_fit_recovers_polynomials(coeffs):
    a, b, c = coeffs

    def f(t):
        return a * t[0] ** 2 + b * t[0] * t[1] + c * t[1] ** 2

    pts = [(1, 0), (0, 1), (1, 1), (2, 3), (Fraction(1, 2), 5)]
    fit = fit_homogeneous(2, [(t, f(t)) for t in pts])
    assert [fit.coefficients[k] for k in [(2, 0), (1, 1), (0, 2)]] == [a, b, c]
    assert fit.consistent
    assert all(fit(t) == f(t) for t in fit.basis_points)


def test_coefficient_limits_m_powers():
    res = coefficient_limits([OrdinaryPower(M2)], 2, 2, 6, e_live=6)
    assert [f.coefficients[(2,)] for f in res.fits] == [(1 + Fraction(1, 2**b)) / 2 for b in range(7)]
    assert res.polynomial_ok
    assert res.cauchy[(2,)] == Fraction(1, 2**7)
    n, pred, live, diff = res.live_check[0]
    assert abs(diff) <= Fraction(1, 2**6)


def test_coefficient_limits_frobenius_constant():
    res = coefficient_limits([Frobenius(I((2, 0), (1, 1), (0, 3)))], 2, 2, 3)
    assert all(f.coefficients[(2,)] == 4 for f in res.fits)


def test_coefficient_limits_staircase_pair_fails():
    res = coefficient_limits([Frobenius(M2), Frobenius(I((2, 0), (0, 3)))], 2, 2, 3)
    assert not res.polynomial_ok
    assert all(not f.consistent for f in res.fits)
    probe = coefficient_limits(
        [Frobenius(M2), Frobenius(I((2, 0), (0, 3)))], 2, 2, 1, held_out=[(1, 0), (0, 1), (1, 1)]
    )
    # actual covolumes 1, 6, 8 against the basis fit 2 t1^2 + 6 t2^2
    assert [r[3] for r in probe.fits[0].residuals] == [-1, 0, 0]


def test_coefficient_limits_pure_coefficient_is_e_over_2():
    for J in (I((2, 0), (1, 1), (0, 3)), I((2, 0), (1, 2), (0, 3))):
        for F in (OrdinaryPower(J), ClosedPower(J)):
            res = coefficient_limits([F], 2, 2, 6)
            gap = abs(res.limit[(2,)] - Fraction(samuel(J), 2))
            assert gap <= Fraction(samuel(J), 2**6)
