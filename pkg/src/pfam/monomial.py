"""Monomial ideals in k[x_1..x_d] as antichains of exponent vectors.

Lengths of quotients are lattice-point counts: R/I has the standard
monomials (exponents dominating no generator) as a k-basis.
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm

from . import kernels
from .errors import (
    CapExceeded,
    ContainmentError,
    DimensionMismatch,
    InfiniteLength,
    NotAPowerOfP,
    ZeroIdealError,
)

MAX_IE_GENERATORS = 20


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generators (lex-sorted).

    Build instances with :func:`minimalize` or :meth:`of`; the constructor
    trusts its input.
    """

    dim: int
    gens: tuple

    @classmethod
    def of(cls, *gens, dim=None):
        return minimalize(gens, dim=dim)

    @classmethod
    def unit(cls, dim):
        return cls(dim, ((0,) * dim,))

    @classmethod
    def zero(cls, dim):
        return cls(dim, ())

    @classmethod
    def maximal(cls, dim):
        return cls(dim, tuple(sorted((tuple(int(i == j) for j in range(dim)) for i in range(dim)))))

    @property
    def is_zero(self):
        return not self.gens

    @property
    def is_unit(self):
        return self.gens == ((0,) * self.dim,)

    def __contains__(self, u):
        """Membership of an exponent vector."""
        return member(self, tuple(u))

    def __str__(self):
        if self.is_zero:
            return "(0)"
        return "(" + ", ".join(_monomial_str(g) for g in self.gens) + ")"


def _monomial_str(g):
    names = "xyzw" if len(g) <= 4 else None
    parts = []
    for i, e in enumerate(g):
        if e == 0:
            continue
        v = names[i] if names else f"x{i + 1}"
        parts.append(v if e == 1 else f"{v}^{e}")
    return "*".join(parts) or "1"


def minimalize(gens, dim=None):
    """The antichain generating the same ideal as ``gens``."""
    gens = [tuple(int(v) for v in g) for g in gens]
    dims = {len(g) for g in gens}
    if len(dims) > 1:
        raise DimensionMismatch(f"exponents of mixed lengths {sorted(dims)}")
    if dims:
        (d,) = dims
        if dim is not None and dim != d:
            raise DimensionMismatch(f"expected dimension {dim}, got {d}")
    elif dim is None:
        raise DimensionMismatch("dimension of an empty generator list is unknown")
    else:
        d = dim
    if d < 1:
        raise DimensionMismatch("dimension must be at least 1")
    if any(v < 0 for g in gens for v in g):
        raise ValueError("exponents must be nonnegative")
    return MonomialIdeal(d, tuple(kernels.minimal(gens)))


def _check_same_dim(*ideals):
    dims = {I.dim for I in ideals}
    if len(dims) != 1:
        raise DimensionMismatch(f"ideals live in different dimensions {sorted(dims)}")


def _colon_monomial(A, m):
    return minimalize([tuple(max(gi - mi, 0) for gi, mi in zip(g, m)) for g in A.gens], A.dim)


def combine(A, B, kind):
    """Sum, product, intersection or colon A : B of two monomial ideals."""
    _check_same_dim(A, B)
    d = A.dim
    if kind == "sum":
        return minimalize(A.gens + B.gens, d)
    if kind == "product":
        return MonomialIdeal(d, tuple(kernels.product_minimal(list(A.gens), list(B.gens))))
    if kind == "intersection":
        return minimalize([tuple(map(max, g, h)) for g in A.gens for h in B.gens], d)
    if kind == "colon":
        if B.is_zero:
            return MonomialIdeal.unit(d)
        out = None
        for m in B.gens:
            part = _colon_monomial(A, m)
            out = part if out is None else combine(out, part, "intersection")
        return out
    raise ValueError(f"unknown combination {kind!r}")


def is_power_of(n, p):
    if n < 1:
        return False
    while n % p == 0:
        n //= p
    return n == 1


def power(I, n, mode="ordinary", p=None):
    """Ordinary power I^n, or Frobenius power I^[n] with n a power of p."""
    if n < 0:
        raise ValueError("exponent must be nonnegative")
    if mode == "frobenius":
        if p is None or not is_power_of(n, p):
            raise NotAPowerOfP(f"{n} is not a power of p={p}")
        return MonomialIdeal(I.dim, tuple(tuple(n * v for v in g) for g in I.gens))
    if mode != "ordinary":
        raise ValueError(f"unknown power mode {mode!r}")
    result = MonomialIdeal.unit(I.dim)
    base = I
    while n:
        if n & 1:
            result = combine(result, base, "product")
        n >>= 1
        if n:
            base = combine(base, base, "product")
    return result


def frobenius(I, q):
    """I^[q] without the power-of-p validation (internal use)."""
    return MonomialIdeal(I.dim, tuple(tuple(q * v for v in g) for g in I.gens))


def member(I, u):
    if I.dim == 2 and I.gens:
        i = bisect_right(I.gens, (u[0], float("inf"))) - 1
        return i >= 0 and I.gens[i][1] <= u[1]
    return any(all(gi <= ui for gi, ui in zip(g, u)) for g in I.gens)


def contains(A, B):
    """True when B is a subset of A."""
    _check_same_dim(A, B)
    return all(member(A, g) for g in B.gens)


def non_members(A, B):
    """Generators of B lying outside A (witnesses of B not contained in A)."""
    return [g for g in B.gens if not member(A, g)]


def is_m_primary(I):
    """True iff every variable has a pure power among the generators."""
    if I.is_zero:
        return False
    found = set()
    for g in I.gens:
        nz = [i for i, v in enumerate(g) if v]
        if not nz:
            return True
        if len(nz) == 1:
            found.add(nz[0])
    return len(found) == I.dim


def colength(I):
    """Length of R/I: the number of standard monomials."""
    if not is_m_primary(I):
        raise InfiniteLength(f"{I} is not m-primary; R/I has infinite length")
    if I.is_unit:
        return 0
    gens = list(I.gens)
    if I.dim >= 3 and kernels.grid_cell_count(gens) > 10**8:
        raise CapExceeded("staircase slab decomposition exceeds 1e8 cells")
    return kernels.outside_count(gens)


def relative_colength(J, K, method="auto"):
    """Length of J/K for monomial ideals K inside J.

    ``method="inclusion_exclusion"`` forces the colon-ideal formula
    sum over nonempty S of (-1)^(|S|+1) colength(K : lcm(g_S)); ``"auto"``
    uses colength(K) - colength(J) when J is m-primary.
    """
    _check_same_dim(J, K)
    if not contains(J, K):
        raise ContainmentError(f"{K} is not contained in {J}")
    if method == "auto" and is_m_primary(J):
        return colength(K) - colength(J)
    if method not in ("auto", "inclusion_exclusion"):
        raise ValueError(f"unknown method {method!r}")
    if len(J.gens) > MAX_IE_GENERATORS:
        raise CapExceeded(f"inclusion-exclusion over {len(J.gens)} generators (cap {MAX_IE_GENERATORS})")
    total = 0
    for r in range(1, len(J.gens) + 1):
        for S in combinations(J.gens, r):
            m = tuple(map(max, *S)) if r > 1 else S[0]
            colon = _colon_monomial(K, m)
            if not is_m_primary(colon):
                raise InfiniteLength(f"J/K has infinite length (K : {m} not m-primary)")
            total += (-1) ** (r + 1) * colength(colon)
    return total


@dataclass(frozen=True)
class Halfspace:
    """The open halfspace {u : <u, normal> < bound}, normal strictly positive."""

    normal: tuple
    bound: Fraction

    def __post_init__(self):
        normal = tuple(Fraction(v) for v in self.normal)
        if not normal or any(v <= 0 for v in normal):
            raise ValueError("halfspace normal must be strictly positive")
        object.__setattr__(self, "normal", normal)
        object.__setattr__(self, "bound", Fraction(self.bound))

    @property
    def dim(self):
        return len(self.normal)

    def scaled(self, q):
        """The halfspace qH."""
        return Halfspace(self.normal, self.bound * q)

    def integral(self):
        """(integer normal, integer bound) defining the same open halfspace."""
        den = lcm(*(v.denominator for v in self.normal), self.bound.denominator)
        return tuple(int(v * den) for v in self.normal), int(self.bound * den)


def count_below(I, H):
    """Number of exponents u of I with <u, normal> < bound."""
    if H.dim != I.dim:
        raise DimensionMismatch("halfspace and ideal dimensions differ")
    if I.is_zero or H.bound <= 0:
        return 0
    normal, bound = H.integral()
    return kernels.count_in_halfspace(list(I.gens), normal, bound)


def intersect_max_power(I, k):
    """m^k intersected with I, generator by generator."""
    out = []
    for g in I.gens:
        deficit = k - sum(g)
        if deficit <= 0:
            out.append(g)
            continue
        for a in _compositions(deficit, I.dim):
            out.append(tuple(gi + ai for gi, ai in zip(g, a)))
    return minimalize(out, I.dim)


def _compositions(n, d):
    if d == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, d - 1):
            yield (first,) + rest


def max_ideal_power(d, k):
    """m^k: all monomials of degree k."""
    return MonomialIdeal(d, tuple(sorted(_compositions(k, d))))


def integral_closure(I):
    """Minimal generators of the lattice points of the Newton polyhedron of I."""
    return closure_of_power(I, 1)


def closure_of_power(I, k):
    """Integral closure of I^k, read off the scaled polyhedron k * NP(I)."""
    from .hull import inequalities

    if I.is_zero:
        raise ZeroIdealError("integral closure of the zero ideal")
    if k == 0 or I.is_unit:
        return MonomialIdeal.unit(I.dim)
    d = I.dim
    ineqs, _ = inequalities(I.gens)
    ineqs = [(n, c * k) for n, c in ineqs]
    box = [k * max(g[i] for g in I.gens) for i in range(d)]
    lifted = [(n[:-1], n[-1], c) for n, c in ineqs if n[-1] > 0]
    flat = [(n[:-1], c) for n, c in ineqs if n[-1] == 0]
    out = []
    for prefix in _box_points(box[:-1]):
        if any(sum(a * u for a, u in zip(n, prefix)) < c for n, c in flat):
            continue
        t = 0
        for n, nd, c in lifted:
            need = c - sum(a * u for a, u in zip(n, prefix))
            if need > 0:
                t = max(t, -(-need // nd))
        if t <= box[-1]:
            out.append(prefix + (t,))
    return minimalize(out, d)


def _box_points(box):
    if not box:
        yield ()
        return
    for x in range(box[0] + 1):
        for rest in _box_points(box[1:]):
            yield (x,) + rest
