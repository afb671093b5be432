"""Symbolic p-families of monomial ideals indexed by q = p^e.

A family is an immutable expression tree; :func:`evaluate` materializes
the ideal at index e for a given prime p. Evaluation is memoized per
(expression, e, p), which is safe because every node is a frozen value.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .errors import ContainmentError, DimensionMismatch, PfamError
from .monomial import (
    MonomialIdeal,
    closure_of_power,
    combine,
    contains,
    frobenius,
    intersect_max_power,
    non_members,
    power,
)


class FamilyExpr:
    """Base class of family expressions."""

    @property
    def dim(self):
        raise NotImplementedError


@dataclass(frozen=True)
class Frobenius(FamilyExpr):
    """I_q = I^[q]."""

    ideal: MonomialIdeal

    @property
    def dim(self):
        return self.ideal.dim


@dataclass(frozen=True)
class OrdinaryPower(FamilyExpr):
    """I_q = I^q."""

    ideal: MonomialIdeal

    @property
    def dim(self):
        return self.ideal.dim


@dataclass(frozen=True)
class ClosedPower(FamilyExpr):
    """I_q = integral closure of I^q."""

    ideal: MonomialIdeal

    @property
    def dim(self):
        return self.ideal.dim


@dataclass(frozen=True)
class Constant(FamilyExpr):
    """I_q = I for every q."""

    ideal: MonomialIdeal

    @property
    def dim(self):
        return self.ideal.dim


@dataclass(frozen=True)
class Table(FamilyExpr):
    """Explicit ideals for e = 0..len-1, continued by Frobenius powers of the last.

    With ``extend=False`` indices past the table are an error.
    """

    entries: tuple
    extend: bool = True

    def __post_init__(self):
        if not self.entries:
            raise ValueError("a table family needs at least one entry")
        if len({I.dim for I in self.entries}) != 1:
            raise DimensionMismatch("table entries of different dimensions")
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def dim(self):
        return self.entries[0].dim


@dataclass(frozen=True)
class Truncation(FamilyExpr):
    """The p^a-th truncation: agrees with ``family`` up to e = a, then
    J_{p^e} = sum over i <= a of J_{p^i}^[p^(e-i)]."""

    family: FamilyExpr
    a: int

    @property
    def dim(self):
        return self.family.dim


@dataclass(frozen=True)
class ShiftedProduct(FamilyExpr):
    """Product over factors (F_i, n_i).

    ``base=None`` ("live"): prod_i F_i(q p^{n_i}).
    ``base=b``: prod_i F_i(p^b)^[q p^{n_i}].
    An empty factor list evaluates to the unit ideal of dimension ``dim_hint``.
    """

    factors: tuple
    base: int | None = None
    dim_hint: int | None = field(default=None, compare=True)

    def __post_init__(self):
        factors = tuple((f, int(n)) for f, n in self.factors)
        if any(n < 0 for _, n in factors):
            raise ValueError("shifts must be nonnegative")
        if self.base is not None and self.base < 0:
            raise ValueError("frobenius base must be nonnegative")
        dims = {f.dim for f, _ in factors}
        if self.dim_hint is not None:
            dims.add(self.dim_hint)
        if len(dims) != 1:
            raise DimensionMismatch("shifted product needs factors of one dimension (or a dim_hint)")
        object.__setattr__(self, "factors", factors)

    @property
    def dim(self):
        return self.factors[0][0].dim if self.factors else self.dim_hint

    def at_base(self, b):
        return ShiftedProduct(self.factors, b, self.dim_hint)


def evaluate(F, e, p):
    """The ideal I_q of family F at q = p^e."""
    if e < 0:
        raise ValueError("index e must be nonnegative")
    return _evaluate(F, e, p)


@lru_cache(maxsize=4096)
def _evaluate(F, e, p):
    q = p**e
    if isinstance(F, Frobenius):
        return frobenius(F.ideal, q)
    if isinstance(F, OrdinaryPower):
        return power(F.ideal, q)
    if isinstance(F, ClosedPower):
        return closure_of_power(F.ideal, q)
    if isinstance(F, Constant):
        return F.ideal
    if isinstance(F, Table):
        n = len(F.entries)
        if e < n:
            return F.entries[e]
        if not F.extend:
            raise PfamError(f"table index {e} beyond stored range 0..{n - 1}")
        return frobenius(F.entries[-1], p ** (e - n + 1))
    if isinstance(F, Truncation):
        if e <= F.a:
            return _evaluate(F.family, e, p)
        out = None
        for i in range(F.a + 1):
            part = frobenius(_evaluate(F.family, i, p), p ** (e - i))
            out = part if out is None else combine(out, part, "sum")
        return out
    if isinstance(F, ShiftedProduct):
        out = MonomialIdeal.unit(F.dim)
        for fam, n in F.factors:
            if F.base is None:
                part = _evaluate(fam, e + n, p)
            else:
                part = frobenius(_evaluate(fam, F.base, p), q * p**n)
            out = combine(out, part, "product")
        return out
    raise TypeError(f"not a family expression: {F!r}")


def truncate(F, a):
    """The p^a-th truncated family of F."""
    if a < 0:
        raise ValueError("truncation level must be nonnegative")
    return Truncation(F, a)


@dataclass
class FamilyReport:
    """Horizon-bounded verdicts on the family axioms.

    ``failures`` lists (check, e, witness exponent) triples; ``check`` is
    "p_family" for I_q^[p] in I_pq, or "power_containment" for I_q^p in I_pq.
    """

    p_family_ok: bool
    power_containment_ok: bool
    finite_type_threshold: int | None
    checked_up_to: int
    failures: list = field(default_factory=list)

    def first_failure(self, check):
        return next((f for f in self.failures if f[0] == check), None)


def verify_family_axioms(F, e_max, p):
    """Check the p-family axiom, power containment and finite type for e <= e_max."""
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    ideals = [evaluate(F, e, p) for e in range(e_max + 1)]
    failures = []
    p_ok = True
    pc_ok = True
    for e in range(e_max):
        Iq, Inext = ideals[e], ideals[e + 1]
        frob = frobenius(Iq, p)
        bad = non_members(Inext, frob)
        if bad:
            p_ok = False
            failures.append(("p_family", e, bad[0]))
        ordinary = power(Iq, p)
        if not contains(ordinary, frob):
            pc_ok = False
            failures.append(("frobenius_in_ordinary", e, non_members(ordinary, frob)[0]))
        bad = non_members(Inext, ordinary)
        if bad:
            pc_ok = False
            failures.append(("power_containment", e, bad[0]))
    return FamilyReport(
        p_family_ok=p_ok,
        power_containment_ok=pc_ok and p_ok,
        finite_type_threshold=_finite_type_threshold(ideals, p),
        checked_up_to=e_max,
        failures=failures,
    )


def _finite_type_threshold(ideals, p):
    """Least a below the horizon with I_{p^a}^[p^k] = I_{p^(a+k)} for every checked a + k."""
    last = len(ideals) - 1
    for a in range(last):
        if all(frobenius(ideals[a], p**k) == ideals[a + k] for k in range(1, last - a + 1)):
            return a
    return None


def finite_type_threshold(F, e_max, p):
    return _finite_type_threshold([evaluate(F, e, p) for e in range(e_max + 1)], p)


def linear_growth_constant(Jfam, Ifam, c_max, e_max, p):
    """Least c in 1..c_max with m^{cq} meet J_q = m^{cq} meet I_q for all e <= e_max."""
    pairs = []
    for e in range(e_max + 1):
        J, I = evaluate(Jfam, e, p), evaluate(Ifam, e, p)
        if not contains(J, I):
            raise ContainmentError(f"I_q not contained in J_q at e={e}")
        pairs.append((p**e, J, I))
    for c in range(1, c_max + 1):
        if all(contains(I, intersect_max_power(J, c * q)) for q, J, I in pairs):
            return c
    return None
