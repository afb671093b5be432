"""Hilbert-Kunz, Samuel and mixed multiplicities of monomial ideals.

For monomial ideals both multiplicities are covolumes: e_HK(I) is the
covolume of the staircase of I (which equals the colength of I), and
e(I) = d! * covolume(Newton polyhedron of I).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .errors import DimensionMismatch, InfiniteLength, PreconditionFailed
from .family import evaluate, verify_family_axioms
from .hull import newton_covolume
from .monomial import colength, combine, is_m_primary, power
from .regions import covolume, staircase


def _require_m_primary(I):
    if not is_m_primary(I):
        raise InfiniteLength(f"{I} is not m-primary")


def hilbert_kunz(I):
    _require_m_primary(I)
    return covolume(staircase(I)).value


def samuel(I):
    _require_m_primary(I)
    if I.is_unit:
        return 0
    value = factorial(I.dim) * newton_covolume(I.gens)
    if value.denominator != 1:
        raise ArithmeticError(f"non-integral multiplicity {value} (hull bug)")
    return int(value)


@dataclass
class MultiplicityReport:
    e_I: int
    e_J: int
    e_IJ: int
    e_hk_I: Fraction
    e_hk_J: Fraction
    mixed: Fraction
    colength_I: int
    colength_J: int
    colength_IJ: int
    r_residual: Fraction

    @property
    def r_vanishes(self):
        return self.r_residual == 0


def mixed_dim2(I, J):
    """Mixed multiplicity e(I|J) = (e(IJ) - e(I) - e(J)) / 2 and the r-residual."""
    if I.dim != 2 or J.dim != 2:
        raise DimensionMismatch("mixed multiplicities are implemented in dimension 2 only")
    _require_m_primary(I)
    _require_m_primary(J)
    IJ = combine(I, J, "product")
    eI, eJ, eIJ = samuel(I), samuel(J), samuel(IJ)
    mixed = Fraction(eIJ - eI - eJ, 2)
    lI, lJ, lIJ = colength(I), colength(J), colength(IJ)
    return MultiplicityReport(
        e_I=eI,
        e_J=eJ,
        e_IJ=eIJ,
        e_hk_I=hilbert_kunz(I),
        e_hk_J=hilbert_kunz(J),
        mixed=mixed,
        colength_I=lI,
        colength_J=lJ,
        colength_IJ=lIJ,
        r_residual=lIJ - lI - lJ - mixed,
    )


def verma_rhs(ideals, rs, inclusive=False):
    """Right side of Verma's length formula for prod I_i^{r_i} in dimension 2.

    Requires r(I_i|I_j) = 0 for all i <= j (checked). The cross terms run
    over i < j; ``inclusive=True`` adds the diagonal i = j for comparison.
    """
    if len(ideals) != len(rs):
        raise ValueError("one exponent per ideal")
    if any(r < 0 for r in rs):
        raise ValueError("exponents must be nonnegative")
    reports = {}
    for i in range(len(ideals)):
        for j in range(i, len(ideals)):
            rep = mixed_dim2(ideals[i], ideals[j])
            if not rep.r_vanishes:
                raise PreconditionFailed(
                    f"r(I_{i + 1}|I_{j + 1}) != 0 (residual {rep.r_residual})", {"pair": (i, j)}
                )
            reports[i, j] = rep
    total = Fraction(0)
    for i, r in enumerate(rs):
        rep = reports[i, i]
        total += rep.e_I * comb(r, 2) + rep.colength_I * r
    for (i, j), rep in reports.items():
        if i < j or (inclusive and i == j):
            total += rep.mixed * rs[i] * rs[j]
    return int(total) if total.denominator == 1 else total


def product_of_powers(ideals, rs):
    out = None
    for I, r in zip(ideals, rs):
        part = power(I, r)
        out = part if out is None else combine(out, part, "product")
    return out


@dataclass
class FamilyRHS:
    """RHS(b) of the dimension-2 family formula, b = 0..b_max."""

    values: list
    extrapolated: Fraction
    cauchy: Fraction
    terms: list = field(default_factory=list)


def dim2_family_rhs(families, shifts, b_max, p, inclusive=False, check_horizon=None):
    """Per-b right side of the dimension-2 family length formula.

    RHS(b) = sum_i [e(I_i)/p^2b * C(p^m_i, 2) + e_HK(I_i)/p^2b * p^m_i]
             + sum_{i<j} e(I_i|I_j)/p^2b * p^m_i p^m_j,
    with I_i = I(i)_{p^b}. Power containment I_q^p in I_pq is verified up to
    ``check_horizon`` (default b_max) and r(I_i|I_j) = 0 at every b.
    """
    if len(families) != len(shifts):
        raise ValueError("one shift per family")
    if any(F.dim != 2 for F in families):
        raise DimensionMismatch("the family formula is for dimension 2")
    horizon = b_max if check_horizon is None else check_horizon
    for k, F in enumerate(families):
        rep = verify_family_axioms(F, max(horizon, 1), p)
        if not rep.power_containment_ok:
            check, e, _ = rep.failures[0]
            raise PreconditionFailed(f"family {k + 1} fails {check} at e={e}", {"family": k, "e": e})
    values, terms = [], []
    for b in range(b_max + 1):
        Is = [evaluate(F, b, p) for F in families]
        norm = Fraction(1, p ** (2 * b))
        s = len(Is)
        row = {}
        total = Fraction(0)
        for i in range(s):
            for j in range(i, s):
                rep = mixed_dim2(Is[i], Is[j])
                if not rep.r_vanishes:
                    raise PreconditionFailed(
                        f"r(I({i + 1})|I({j + 1})) != 0 at b={b}", {"b": b, "pair": (i, j)}
                    )
                if i == j:
                    P = p ** shifts[i]
                    total += rep.e_I * norm * comb(P, 2) + rep.e_hk_I * norm * P
                    row[f"e({i + 1})"] = rep.e_I * norm
                    row[f"ehk({i + 1})"] = rep.e_hk_I * norm
                if i < j or (inclusive and i == j):
                    total += rep.mixed * norm * p ** shifts[i] * p ** shifts[j]
                    row[f"mixed({i + 1},{j + 1})"] = rep.mixed * norm
        values.append(total)
        terms.append(row)
    cauchy = abs(values[-1] - values[-2]) if len(values) > 1 else Fraction(0)
    return FamilyRHS(values, values[-1], cauchy, terms)


@dataclass
class EvsEhkReport:
    """Rows (e, q, e(I_q)/q^d, d! e_HK(I_q)/q^d)."""

    rows: list
    dim: int

    @property
    def gaps(self):
        return [abs(r["samuel"] - r["dfact_ehk"]) for r in self.rows]


def e_vs_ehk_check(F, e_max, p):
    """Table of e(I_q)/q^d against d! e_HK(I_q)/q^d for q = p^0..p^e_max."""
    rep = verify_family_axioms(F, max(e_max, 1), p)
    if not rep.power_containment_ok:
        check, e, _ = rep.failures[0]
        raise PreconditionFailed(f"power containment fails ({check} at e={e})", {"e": e})
    d = F.dim
    rows = []
    for e in range(e_max + 1):
        q = p**e
        I = evaluate(F, e, p)
        rows.append(
            {
                "e": e,
                "q": q,
                "samuel": Fraction(samuel(I), q**d),
                "dfact_ehk": factorial(d) * hilbert_kunz(I) / q**d,
            }
        )
    return EvsEhkReport(rows, d)
