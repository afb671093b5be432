"""Orthant-stable regions: staircases, Newton polyhedra and p-bodies.

A staircase region is the union of apex + orthant over a finite antichain
of rational apexes. A convex region is conv(points) + orthant. Volumes are
exact rationals wherever the method allows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

from . import hull, kernels
from .errors import CapExceeded, DimensionMismatch, Unsupported, ZeroIdealError
from .family import evaluate, finite_type_threshold
from .monomial import Halfspace

CELL_CAP = 10**8


def _frac_point(p):
    return tuple(Fraction(v) for v in p)


@dataclass(frozen=True)
class Region:
    kind: str
    dim: int
    points: tuple
    exact: bool = field(default=True, compare=False)

    @property
    def apexes(self):
        return self.points

    def scaled(self, lam):
        lam = Fraction(lam)
        if lam < 0:
            raise ValueError("scale must be nonnegative")
        if lam == 0:
            return Region(self.kind, self.dim, ((Fraction(0),) * self.dim,), self.exact)
        pts = tuple(tuple(lam * v for v in p) for p in self.points)
        return Region(self.kind, self.dim, pts, self.exact)


def make_staircase(apexes, dim=None, exact=True):
    pts = [_frac_point(p) for p in apexes]
    if not pts:
        raise ZeroIdealError("a staircase needs at least one apex")
    d = dim or len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("apexes of mixed dimension")
    return Region("staircase", d, tuple(kernels.minimal(pts)), exact)


def make_convex(points, dim=None):
    """conv(points) + orthant; in d=2 only the boundary chain is kept."""
    pts = [_frac_point(p) for p in points]
    if not pts:
        raise ValueError("a convex region needs at least one point")
    d = dim or len(pts[0])
    if any(len(p) != d for p in pts):
        raise DimensionMismatch("points of mixed dimension")
    if d == 2:
        pts = hull.lower_chain(pts)
    else:
        pts = kernels.minimal(pts)
    return Region("convex", d, tuple(pts))


def staircase(I):
    """The staircase region of a monomial ideal (its generators as apexes)."""
    if I.is_zero:
        raise ZeroIdealError("staircase of the zero ideal")
    return make_staircase(I.gens, I.dim)


def newton_region(I):
    if I.is_zero:
        raise ZeroIdealError("Newton polyhedron of the zero ideal")
    return make_convex(I.gens, I.dim)


def pbody(F, q_max, p):
    """Union over q <= q_max of (1/q) exp(F(q)) + orthant, as a staircase.

    ``exact`` is set when the family reached its finite-type threshold
    inside the horizon, so further q add nothing.
    """
    e_top = 0
    while p ** (e_top + 1) <= q_max:
        e_top += 1
    apexes = []
    for e in range(e_top + 1):
        q = p**e
        I = evaluate(F, e, p)
        if I.is_zero:
            raise ZeroIdealError(f"family is zero at e={e}")
        apexes.extend(tuple(Fraction(v, q) for v in g) for g in I.gens)
    threshold = finite_type_threshold(F, e_top + 1, p)
    exact = threshold is not None and threshold <= e_top
    return make_staircase(apexes, F.dim, exact=exact)


def _staircase_sum(A, B):
    den = lcm(*(v.denominator for p in A + B for v in p))
    Ai = [tuple(int(v * den) for v in p) for p in A]
    Bi = [tuple(int(v * den) for v in p) for p in B]
    return [tuple(Fraction(v, den) for v in p) for p in kernels.product_minimal(Ai, Bi)]


def _chain_sum(A, B):
    """Minkowski sum of two d=2 boundary chains by merging edges by slope."""
    start = (A[0][0] + B[0][0], A[0][1] + B[0][1])
    edges = [(b[0] - a[0], b[1] - a[1]) for chain in (A, B) for a, b in zip(chain, chain[1:])]
    # steepest descent first: order by dy/dx ascending, compared exactly
    edges.sort(key=lambda v: Fraction(v[1]) / v[0])
    out = [start]
    for dx, dy in edges:
        x, y = out[-1]
        out.append((x + dx, y + dy))
    return hull.lower_chain(out)


def minkowski_scale_sum(parts):
    """Sum of scaled regions, all of one kind; parts is a list of (region, scale)."""
    if not parts:
        raise ValueError("nothing to sum")
    kinds = {r.kind for r, _ in parts}
    dims = {r.dim for r, _ in parts}
    if len(kinds) > 1:
        raise Unsupported("cannot sum staircase and convex regions")
    if len(dims) > 1:
        raise DimensionMismatch("regions of different dimensions")
    (kind,), (d,) = kinds, dims
    if kind == "convex" and d > 2:
        raise Unsupported("convex Minkowski sums are implemented for d <= 2")
    scaled = [r.scaled(lam) for r, lam in parts]
    exact = all(r.exact for r, _ in parts)
    acc = list(scaled[0].points)
    for r in scaled[1:]:
        if kind == "staircase":
            acc = _staircase_sum(acc, list(r.points))
        elif d == 1:
            acc = [(acc[0][0] + r.points[0][0],)]
        else:
            acc = _chain_sum(acc, list(r.points))
    if kind == "staircase":
        return make_staircase(acc, d, exact)
    return Region("convex", d, tuple(acc), exact)


@dataclass(frozen=True)
class CovolumeResult:
    value: Fraction | None
    method: str
    cobounded: bool
    resolution: int | None = None
    error_bound: Fraction | None = None


def _on_axes(points, d):
    axes = set()
    for p in points:
        nz = [i for i, v in enumerate(p) if v]
        if not nz:
            return set(range(d))
        if len(nz) == 1:
            axes.add(nz[0])
    return axes


def is_cobounded(R):
    return len(_on_axes(R.points, R.dim)) == R.dim


def covolume(R):
    """Exact volume of orthant minus R; value None when the complement is unbounded."""
    if not is_cobounded(R):
        method = "slab" if R.kind == "staircase" else "hull"
        return CovolumeResult(None, method, False)
    if R.kind == "staircase":
        den = lcm(*(v.denominator for p in R.points for v in p))
        gens = [tuple(int(v * den) for v in p) for p in R.points]
        if R.dim >= 3 and kernels.grid_cell_count(gens) > CELL_CAP:
            raise CapExceeded("staircase slab decomposition exceeds the cell cap")
        count = 0 if all(v == 0 for v in gens[0]) and len(gens) == 1 else kernels.outside_count(gens)
        return CovolumeResult(Fraction(count, den**R.dim), "slab", True)
    if R.dim == 2:
        return CovolumeResult(hull.newton_covolume(R.points), "shoelace", True)
    return CovolumeResult(hull.newton_covolume(R.points), "hull_triangulation", True)


@dataclass(frozen=True)
class RegionProperties:
    convex: bool
    cobounded: bool


def staircase_convex_by_count(R):
    return len(R.points) <= 1


def staircase_convex_by_midpoints(R):
    pts = R.points
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            mid = tuple((a + b) / 2 for a, b in zip(pts[i], pts[j]))
            if not any(all(g <= m for g, m in zip(a, mid)) for a in pts):
                return False
    return True


def region_properties(R):
    if R.kind == "convex":
        return RegionProperties(True, is_cobounded(R))
    by_count = staircase_convex_by_count(R)
    by_mid = staircase_convex_by_midpoints(R)
    if by_count != by_mid:
        raise AssertionError("staircase convexity checks disagree")
    return RegionProperties(by_count, is_cobounded(R))


def _clip_halfplane(poly, a, alpha):
    """Sutherland-Hodgman clip of a polygon to {<u, a> <= alpha}."""
    out = []
    n = len(poly)
    for i in range(n):
        P, Q = poly[i], poly[(i + 1) % n]
        fp = a[0] * P[0] + a[1] * P[1] - alpha
        fq = a[0] * Q[0] + a[1] * Q[1] - alpha
        if fp <= 0:
            out.append(P)
        if (fp < 0 < fq) or (fq < 0 < fp):
            t = fp / (fp - fq)
            out.append((P[0] + t * (Q[0] - P[0]), P[1] + t * (Q[1] - P[1])))
    return out


def _complement_pieces_2d(R, box):
    """Polygons covering (orthant minus R) within [0, box_x] x [0, box_y]."""
    bx, by = box
    pts = [p for p in R.points]
    if R.kind == "staircase":
        pieces = []
        # column strips: x in [x_i, x_{i+1}) lies below height y_i
        xs = [p[0] for p in pts] + [None]
        if pts[0][0] > 0:
            pieces.append([(0, 0), (min(pts[0][0], bx), 0), (min(pts[0][0], bx), by), (0, by)])
        for i, (x0, y0) in enumerate(pts):
            x1 = xs[i + 1] if xs[i + 1] is not None else bx
            x0c, x1c, yc = min(x0, bx), min(max(x1, x0), bx), min(y0, by)
            if x1c > x0c and yc > 0:
                pieces.append([(x0c, 0), (x1c, 0), (x1c, yc), (x0c, yc)])
        return pieces
    chain = list(pts)
    # polygon under the chain, closed off by the box
    poly = [(Fraction(0), Fraction(0))]
    last = chain[-1]
    poly.append((max(last[0], bx), Fraction(0)))
    if last[1] > 0:
        poly.append((max(last[0], bx), last[1]))
    poly.extend(reversed(chain))
    first = chain[0]
    if first[0] > 0:
        poly.append((first[0], max(first[1], by)))
        poly.append((Fraction(0), max(first[1], by)))
    return [poly]


def volume_below(R, H, q=None, work_budget=2_000_000):
    """Vol(R intersect H): exact for d <= 2, a lattice estimate for d >= 3."""
    if H.dim != R.dim:
        raise DimensionMismatch("halfspace and region dimensions differ")
    if H.bound <= 0:
        return CovolumeResult(Fraction(0), "slab", is_cobounded(R))
    d = R.dim
    a, alpha = H.normal, H.bound
    if d == 1:
        lo = min(p[0] for p in R.points)
        return CovolumeResult(max(Fraction(0), alpha / a[0] - lo), "slab", is_cobounded(R))
    if d == 2:
        box = (alpha / a[0], alpha / a[1])
        total = box[0] * box[1] / 2
        outside = Fraction(0)
        for poly in _complement_pieces_2d(R, box):
            clipped = _clip_halfplane(poly, a, alpha)
            if len(clipped) >= 3:
                outside += abs(hull.shoelace(clipped))
        method = "slab" if R.kind == "staircase" else "shoelace"
        return CovolumeResult(total - outside, method, is_cobounded(R))
    return _lattice_estimate(R, H, q, work_budget)


def _lattice_estimate(R, H, q, work_budget):
    d = R.dim
    den = lcm(*(v.denominator for p in R.points for v in p))
    width = H.bound / min(H.normal)
    if q is None:
        q = den
        while (2 * q * width + 1) ** (d - 1) * len(R.points) <= work_budget:
            q *= 2
    elif q % den:
        raise ValueError(f"resolution q must be a multiple of {den}")
    if R.kind == "staircase":
        gens = [tuple(int(v * q) for v in p) for p in R.points]
    else:
        from .monomial import closure_of_power, minimalize

        pts, pden = hull._integer_points(R.points)
        if q % pden:
            raise ValueError("resolution incompatible with vertex denominators")
        gens = list(closure_of_power(minimalize(pts, d), q // pden).gens)
    normal, bound = H.scaled(q).integral()
    count = kernels.count_in_halfspace(kernels.minimal(gens), normal, bound)
    env = Fraction(2 * d) * (q * width + 1) ** (d - 1) / Fraction(q) ** d
    return CovolumeResult(Fraction(count, q**d), "lattice_estimate", is_cobounded(R), q, env)


def orthant_halfspace(d, bound):
    return Halfspace((1,) * d, bound)
