"""Normalized length sequences, double-limit tables and homogeneous fits.

Values are exact Fractions throughout. Limits are never "computed"; we
report the value at the largest index with the last Cauchy difference as
the error proxy, plus an optional one-step Richardson extrapolation under
an assumed O(1/q) error.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContainmentError, DimensionMismatch, InfiniteLength, PreconditionFailed, SingularSystem
from .family import ShiftedProduct, evaluate, linear_growth_constant, verify_family_axioms
from .linalg import det, rank, solve
from .monomial import is_m_primary, relative_colength
from .regions import covolume, minkowski_scale_sum, staircase

DEFAULT_TOL = Fraction(1, 32)


@dataclass
class LimitSequence:
    entries: list
    normalization: str
    last_cauchy: Fraction | None = None
    extrapolated: Fraction | None = None

    @property
    def values(self):
        return [v for _, _, v in self.entries]

    def richardson(self, ratio):
        """One Richardson step assuming error ~ C/q with q growing by ``ratio``."""
        if len(self.entries) < 2:
            return self.extrapolated
        a, b = self.entries[-2][2], self.entries[-1][2]
        return (ratio * b - a) / (ratio - 1)


def _products(Jfactors, Ifactors, base, dim):
    J = ShiftedProduct(tuple(Jfactors), base, dim)
    IJ = ShiftedProduct(tuple(Ifactors) + tuple(Jfactors), base, dim)
    return J, IJ


def _dim_of(Jfactors, Ifactors):
    for f, _ in list(Ifactors) + list(Jfactors):
        return f.dim
    raise ValueError("at least one family is required")


def length_value(Jfactors, Ifactors, base, e, p):
    """lambda(J_q / I_q J_q) normalized by q^d (live) or p^{bd} q^d (base b)."""
    d = _dim_of(Jfactors, Ifactors)
    Jexpr, IJexpr = _products(Jfactors, Ifactors, base, d)
    J = evaluate(Jexpr, e, p)
    IJ = evaluate(IJexpr, e, p)
    for f, n in Ifactors:
        I = evaluate(f, (base if base is not None else e + n), p)
        if not is_m_primary(I):
            raise PreconditionFailed(f"I-family not m-primary at e={e}", {"e": e, "b": base})
    length = relative_colength(J, IJ)
    scale = p ** (e * d) * (p ** (base * d) if base is not None else 1)
    return Fraction(length, scale)


def length_sequence(Jfactors, Ifactors, base, e_max, p):
    """lambda(J/IJ)/q^d for e = 0..e_max (live) or with the extra p^{bd} (base b)."""
    entries = []
    for e in range(e_max + 1):
        try:
            v = length_value(Jfactors, Ifactors, base, e, p)
        except (InfiniteLength, ContainmentError) as exc:
            raise PreconditionFailed(f"{exc} (b={base}, e={e})", {"b": base, "e": e}) from exc
        entries.append((base, e, v))
    vals = [v for _, _, v in entries]
    cauchy = abs(vals[-1] - vals[-2]) if len(vals) > 1 else None
    norm = "per q^d" if base is None else "per p^(bd) q^d"
    return LimitSequence(entries, norm, cauchy, vals[-1])


@dataclass
class DoubleLimitResult:
    lhs: list
    rhs: list
    verdict: str
    difference: Fraction | None
    tolerance: Fraction
    growth_constant: int | None = None
    axiom_failures: list = field(default_factory=list)


def double_limit_table(Jfactors, Ifactors, b_max, e_max, p, tol=DEFAULT_TOL, c_max=16):
    """LHS(b, e) at Frobenius bases against the live RHS(e).

    Verdict PASS iff |LHS(b_max, e_max) - RHS(e_max)| <= tol * |RHS(e_max)|.
    Family axioms and the linear-growth hypothesis are checked first; a
    failing hypothesis yields verdict "HYPOTHESIS_FAIL" and no comparison.
    """
    d = _dim_of(Jfactors, Ifactors)
    failures = []
    for k, (f, _) in enumerate(list(Jfactors) + list(Ifactors)):
        rep = verify_family_axioms(f, max(e_max, 1), p)
        if not rep.p_family_ok:
            check, e, witness = rep.first_failure("p_family")
            failures.append({"family": k, "check": check, "e": e, "witness": witness})
    if failures:
        return DoubleLimitResult([], [], "HYPOTHESIS_FAIL", None, tol, None, failures)
    Jexpr, IJexpr = _products(Jfactors, Ifactors, None, d)
    c = linear_growth_constant(Jexpr, IJexpr, c_max, min(e_max, 4), p)
    if c is None:
        failures.append({"check": "linear_growth", "c_max": c_max})
        return DoubleLimitResult([], [], "HYPOTHESIS_FAIL", None, tol, None, failures)
    lhs = [length_sequence(Jfactors, Ifactors, b, e_max, p) for b in range(b_max + 1)]
    rhs = length_sequence(Jfactors, Ifactors, None, e_max, p)
    diff = abs(lhs[-1].values[-1] - rhs.values[-1])
    ref = abs(rhs.values[-1]) or Fraction(1)
    verdict = "PASS" if diff <= tol * ref else "FAIL"
    return DoubleLimitResult(lhs, rhs.values, verdict, diff, tol, c)


def _compositions(total, parts):
    """Tuples of ``parts`` nonnegative ints summing to ``total``, first coordinate largest first."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def monomial_exponents(s, d):
    """Degree-d exponent vectors in s variables, lex descending."""
    return list(_compositions(d, s))


def monomial_row(point, exponents):
    row = []
    for a in exponents:
        v = 1
        for t, k in zip(point, a):
            v *= Fraction(t) ** k
        row.append(int(v) if v.denominator == 1 else v)
    return row


def basis_search(s, d, p, cap=100_000):
    """Exponent tuples n(i) whose degree-d monomials in p^n(i) form a basis.

    Tuples are scanned by total degree, and within a degree from the first
    coordinate down; a tuple is kept when it raises the exact rank.
    """
    if s < 1 or d < 1:
        raise ValueError("s and d must be positive")
    exps = monomial_exponents(s, d)
    a = len(exps)
    chosen, rows = [], []
    seen = 0
    total = 0
    while len(chosen) < a:
        for n in _compositions(total, s):
            seen += 1
            if seen > cap:
                raise RuntimeError("basis search exceeded its enumeration cap")
            row = monomial_row(tuple(p**k for k in n), exps)
            if rank(rows + [row]) > len(rows):
                rows.append(row)
                chosen.append(n)
                if len(chosen) == a:
                    break
        total += 1
    return chosen


def basis_matrix(tuples, d, p):
    s = len(tuples[0])
    exps = monomial_exponents(s, d)
    return [monomial_row(tuple(p**k for k in n), exps) for n in tuples]


@dataclass
class PolynomialFit:
    degree: int
    nvars: int
    coefficients: dict
    basis_points: list
    residuals: list

    def __call__(self, point):
        total = Fraction(0)
        for a, c in self.coefficients.items():
            v = c
            for t, k in zip(point, a):
                v *= Fraction(t) ** k
            total += v
        return total

    @property
    def consistent(self):
        return all(r == 0 for _, _, _, r in self.residuals)

    @property
    def max_residual(self):
        return max((abs(r) for *_, r in self.residuals), default=Fraction(0))


def fit_homogeneous(d, samples):
    """Exact homogeneous degree-d interpolation through a spanning subset of samples.

    Samples are (point, value) pairs. Points are scanned in order and kept
    while they raise the rank; the rest become held-out residual checks
    (actual - predicted).
    """
    if not samples:
        raise SingularSystem("no samples")
    s = len(samples[0][0])
    exps = monomial_exponents(s, d)
    a = len(exps)
    rows, used, rest = [], [], []
    for point, value in samples:
        row = monomial_row(point, exps)
        if len(rows) < a and rank(rows + [row]) > len(rows):
            rows.append(row)
            used.append((tuple(point), Fraction(value)))
        else:
            rest.append((tuple(point), Fraction(value)))
    if len(rows) < a:
        raise SingularSystem(f"samples span only {len(rows)} of {a} monomial directions")
    coeffs = solve(rows, [v for _, v in used])
    fit = PolynomialFit(d, s, dict(zip(exps, coeffs)), [pt for pt, _ in used], [])
    fit.residuals = [(pt, fit(pt), v, v - fit(pt)) for pt, v in rest]
    return fit


def scaled_covolume(ideals, point, b, p):
    """covolume(sum_i t_i staircase(I_i)) / p^{bd}.

    At t = p^n this is lim_q lambda(R / prod I_i^[q p^n_i]) / (p^{bd} q^d).
    """
    d = ideals[0].dim
    R = minkowski_scale_sum([(staircase(I), t) for I, t in zip(ideals, point)])
    return covolume(R).value / p ** (b * d)


def _held_out(s, basis, count):
    out = []
    total = 0
    while len(out) < count:
        for n in _compositions(total, s):
            if n not in basis and n not in out:
                out.append(n)
                if len(out) == count:
                    break
        total += 1
    return out


@dataclass
class CoefficientLimits:
    basis: list
    held_out: list
    fits: list
    limit: dict
    cauchy: dict
    polynomial_ok: bool
    live_check: list


def coefficient_limits(Ifams, d, p, b_max, e_live=None, held_out=None):
    """Per-b homogeneous fits of the p-body covolume polynomial and their b-limits.

    For each b the sample at a point t is the exact covolume of
    sum_i t_i staircase(I(i)_{p^b}) divided by p^{bd}. The fit uses the points
    p^n for the basis tuples n; ``held_out`` points (default: p^n for the next
    s + 1 tuples) carry the residual checks. ``live_check`` compares the b_max
    fit with lambda(R / prod I(i)_{q p^n_i}) / q^d at q = p^e_live.
    """
    s = len(Ifams)
    if any(F.dim != d for F in Ifams):
        raise DimensionMismatch("families must live in dimension d")
    basis = basis_search(s, d, p)
    if held_out is None:
        extra = [tuple(p**k for k in n) for n in _held_out(s, basis, s + 1)]
    else:
        extra = [tuple(Fraction(v) for v in t) for t in held_out]
    points = [tuple(p**k for k in n) for n in basis] + extra
    fits = []
    for b in range(b_max + 1):
        ideals = [evaluate(F, b, p) for F in Ifams]
        samples = [(t, scaled_covolume(ideals, t, b, p)) for t in points]
        fits.append(fit_homogeneous(d, samples))
    last = fits[-1]
    limit = dict(last.coefficients)
    cauchy = {
        k: abs(last.coefficients[k] - fits[-2].coefficients[k]) if len(fits) > 1 else Fraction(0)
        for k in limit
    }
    ok = all(f.consistent for f in fits)
    live = []
    if e_live is not None:
        for n in basis:
            value = length_value([], [(F, k) for F, k in zip(Ifams, n)], None, e_live, p)
            pred = last(tuple(p**k for k in n))
            live.append((n, pred, value, value - pred))
    return CoefficientLimits(basis, extra, fits, limit, cauchy, ok, live)


def basis_determinant(s, d, p):
    return det(basis_matrix(basis_search(s, d, p), d, p))
