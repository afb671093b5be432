"""Exact geometry of Newton polyhedra conv(G) + orthant.

All arithmetic is over int / Fraction. Facet enumeration is by brute force
over spanning subsets, which is fine at the sizes the library targets
(a few dozen generators in d >= 3; d = 2 has a dedicated monotone chain).
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd

from .kernels import minimal
from .linalg import null_vector


def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_chain(points):
    """Vertices of the bounded boundary of conv(points) + orthant in d=2.

    Returned left to right (x increasing, y decreasing).
    """
    pts = minimal(points)
    chain = []
    for p in pts:
        while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
            chain.pop()
        chain.append(p)
    return chain


def _normalize(normal, offset):
    g = reduce(gcd, [abs(v) for v in normal] + [abs(offset)])
    if g > 1:
        normal = [v // g for v in normal]
        offset //= g
    return tuple(normal), offset


def _integer_points(points):
    """Scale a point set to integers; returns (scaled points, common denominator)."""
    den = 1
    for p in points:
        for v in p:
            if not isinstance(v, int):
                den = den * Fraction(v).denominator // gcd(den, Fraction(v).denominator)
    return [tuple(int(v * den) for v in p) for p in points], den


def inequalities(points):
    """Valid inequalities <n, u> >= c describing conv(points) + orthant.

    Returns a list of (normal, offset) with integer normal >= 0, for the
    integer-scaled point set, together with the scale. Together with u >= 0
    they cut out the polyhedron exactly.
    """
    pts, den = _integer_points(minimal(points))
    d = len(pts[0])
    found = set()
    if d == 1:
        found.add(((1,), pts[0][0]))
        return sorted(found), den
    if d == 2:
        chain = lower_chain(pts)
        for a, b in zip(chain, chain[1:]):
            n = (a[1] - b[1], b[0] - a[0])
            found.add(_normalize(n, n[0] * a[0] + n[1] * a[1]))
        first, last = chain[0], chain[-1]
        found.add(((1, 0), first[0]))
        found.add(((0, 1), last[1]))
        return sorted(found), den
    axes = range(d)
    for k in range(1, d + 1):
        for subset in combinations(pts, k):
            base = subset[0]
            diffs = [tuple(p[i] - base[i] for i in range(d)) for p in subset[1:]]
            for chosen in combinations(axes, d - k):
                rows = diffs + [tuple(int(i == a) for i in range(d)) for a in chosen]
                n = null_vector(rows)
                if not any(n):
                    continue
                if all(v <= 0 for v in n):
                    n = [-v for v in n]
                elif not all(v >= 0 for v in n):
                    continue
                c = sum(ni * bi for ni, bi in zip(n, base))
                if all(sum(ni * gi for ni, gi in zip(n, g)) >= c for g in pts):
                    found.add(_normalize(n, c))
    return sorted(found), den


def contains_point(ineqs, den, u):
    """Membership of a rational point in the polyhedron given by ``inequalities``."""
    if any(v < 0 for v in u):
        return False
    return all(sum(ni * ui for ni, ui in zip(n, u)) * den >= c for n, c in ineqs)


def compact_facets(points):
    """Compact facets of conv(points) + orthant as (normal, offset, vertices).

    Normals are strictly positive integer vectors; vertices are points of
    the (integer-scaled) input lying on the facet.
    """
    pts, den = _integer_points(minimal(points))
    d = len(pts[0])
    facets = {}
    for subset in combinations(pts, d):
        base = subset[0]
        rows = [tuple(p[i] - base[i] for i in range(d)) for p in subset[1:]]
        n = null_vector(rows)
        if not any(n):
            continue
        if all(v < 0 for v in n):
            n = [-v for v in n]
        elif not all(v > 0 for v in n):
            continue
        c = sum(ni * bi for ni, bi in zip(n, base))
        vals = [sum(ni * gi for ni, gi in zip(n, g)) for g in pts]
        if min(vals) < c:
            continue
        key = _normalize(n, c)
        if key not in facets:
            facets[key] = [g for g, v in zip(pts, vals) if v == c]
    return [(n, c, verts) for (n, c), verts in sorted(facets.items())], den


def polytope_volume(vertices):
    """Exact volume of the full-dimensional polytope conv(vertices) in R^k.

    Cone decomposition from the centroid over facets found by brute force;
    facet volumes recurse one dimension down through a coordinate projection.
    """
    V = [tuple(Fraction(v) for v in p) for p in set(map(tuple, vertices))]
    k = len(V[0])
    if k == 1:
        xs = [p[0] for p in V]
        return max(xs) - min(xs)
    if k == 2:
        return _polygon_area(V)
    c = tuple(sum(p[i] for p in V) / len(V) for i in range(k))
    seen = set()
    total = Fraction(0)
    for subset in combinations(range(len(V)), k):
        base = V[subset[0]]
        rows = [tuple(V[j][i] - base[i] for i in range(k)) for j in subset[1:]]
        rows_int, _ = _integer_points(rows)
        n = null_vector(rows_int)
        if not any(n):
            continue
        off = sum(ni * bi for ni, bi in zip(n, base))
        vals = [sum(ni * pi for ni, pi in zip(n, p)) - off for p in V]
        if min(vals) < 0 and max(vals) > 0:
            continue
        face = frozenset(i for i, v in enumerate(vals) if v == 0)
        if face in seen:
            continue
        seen.add(face)
        j = max(range(k), key=lambda i: abs(n[i]))
        proj = [tuple(V[i][t] for t in range(k) if t != j) for i in face]
        height = abs(sum(ni * ci for ni, ci in zip(n, c)) - off)
        total += height / abs(n[j]) * polytope_volume(proj) / k
    return total


def _polygon_area(points):
    """Area of the convex hull of 2D points (monotone chain + shoelace)."""
    pts = sorted(set(points))
    if len(pts) < 3:
        return Fraction(0)
    lower, upper = [], []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    return abs(shoelace(hull))


def shoelace(poly):
    """Signed area of a polygon given by its vertex cycle."""
    s = 0
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        s += x0 * y1 - x1 * y0
    return Fraction(s) / 2


def newton_covolume(points):
    """Volume of orthant \\ (conv(points) + orthant); points must touch every axis."""
    pts = minimal(points)
    d = len(pts[0])
    if d == 1:
        return Fraction(pts[0][0])
    if d == 2:
        chain = lower_chain(pts)
        poly = [(0, 0)] + chain[::-1]
        return abs(shoelace([tuple(map(Fraction, p)) for p in poly]))
    facets, den = compact_facets(pts)
    total = Fraction(0)
    for n, c, verts in facets:
        j = d - 1
        proj = [v[:j] + v[j + 1:] for v in verts]
        total += Fraction(c, n[j]) * polytope_volume(proj) / d
    return total / den**d
