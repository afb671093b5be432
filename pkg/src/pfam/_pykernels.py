"""Pure-Python counting kernels.

Every function takes exponent vectors as tuples of Python ints (arbitrary
precision) and mirrors the compiled versions in ``_ckernels.pyx`` exactly.
"""

from __future__ import annotations

from bisect import bisect_right


def minimal(points):
    """Minimal elements of a finite set of vectors, lex-sorted.

    Works for any totally ordered coordinate type (ints or Fractions).
    A vector dominated by another always sorts after it lexicographically,
    so a single pass against the kept list suffices.
    """
    pts = sorted(set(map(tuple, points)))
    if not pts:
        return []
    d = len(pts[0])
    if d == 1:
        return [pts[0]]
    if d == 2:
        out = []
        best = None
        for x, y in pts:
            if best is None or y < best:
                out.append((x, y))
                best = y
        return out
    kept = []
    for u in pts:
        for g in kept:
            if all(gi <= ui for gi, ui in zip(g, u)):
                break
        else:
            kept.append(u)
    return kept


def product_minimal(A, B):
    """Minimal generators of the product of two monomial ideals."""
    if not A or not B:
        return []
    d = len(A[0])
    if d == 2:
        best = {}
        for ax, ay in A:
            for bx, by in B:
                x = ax + bx
                y = ay + by
                if y < best.get(x, y + 1):
                    best[x] = y
        return minimal(best.items())
    return minimal(tuple(a + b for a, b in zip(g, h)) for g in A for h in B)


def _column_threshold_2d(gens):
    """Sorted x-breakpoints and their y thresholds for a d=2 antichain."""
    xs = [g[0] for g in gens]
    ys = [g[1] for g in gens]
    return xs, ys


def outside_count(gens):
    """Number of lattice points in the orthant outside the staircase of ``gens``.

    ``gens`` must be a lex-sorted antichain containing a pure power of
    every variable (m-primary); otherwise the count is infinite.
    """
    d = len(gens[0])
    if any(not any(g) for g in gens):
        return 0
    if d == 1:
        return gens[0][0]
    if d == 2:
        total = 0
        for (x0, y0), (x1, _) in zip(gens, gens[1:]):
            total += (x1 - x0) * y0
        return total
    bounds = _pure_power_bounds(gens, d)
    coords = []
    for k in range(d - 1):
        cs = sorted({g[k] for g in gens if g[k] < bounds[k]} | {0})
        coords.append(cs + [bounds[k]])
    total = 0
    for corner, width in _grid_cells(coords):
        t = None
        for g in gens:
            if all(g[k] <= corner[k] for k in range(d - 1)):
                if t is None or g[-1] < t:
                    t = g[-1]
        total += width * t
    return total


def _pure_power_bounds(gens, d):
    bounds = [None] * d
    for g in gens:
        nz = [k for k in range(d) if g[k]]
        if len(nz) == 1:
            bounds[nz[0]] = g[nz[0]]
    return bounds


def _grid_cells(coords):
    """Yield (lower corner, cell volume) over a product of breakpoint lists."""
    if not coords:
        yield (), 1
        return
    head, rest = coords[0], coords[1:]
    for i in range(len(head) - 1):
        w = head[i + 1] - head[i]
        for corner, vol in _grid_cells(rest):
            yield (head[i],) + corner, w * vol


def grid_cell_count(gens):
    """Number of prefix cells ``outside_count`` will visit (for caps)."""
    d = len(gens[0])
    if d <= 2:
        return len(gens)
    bounds = _pure_power_bounds(gens, d)
    n = 1
    for k in range(d - 1):
        n *= len({g[k] for g in gens if g[k] < bounds[k]} | {0})
    return n


def count_in_halfspace(gens, normal, bound):
    """Count lattice points u >= 0 with u in the ideal and <u, normal> < bound.

    ``normal`` is a tuple of positive ints and ``bound`` an int. ``gens`` is
    a lex-sorted antichain (possibly not m-primary).
    """
    if bound <= 0 or not gens:
        return 0
    d = len(normal)
    ad = normal[-1]
    if d == 1:
        h = (bound + ad - 1) // ad
        return max(0, h - gens[0][0])
    if d == 2:
        xs, ys = _column_threshold_2d(gens)
        a1 = normal[0]
        total = 0
        x = 0
        while a1 * x < bound:
            i = bisect_right(xs, x) - 1
            if i >= 0:
                r = bound - a1 * x
                h = (r + ad - 1) // ad
                if h > ys[i]:
                    total += h - ys[i]
            x += 1
        return total
    total = 0
    for prefix, partial in _halfspace_prefixes(normal[:-1], bound):
        t = None
        for g in gens:
            if all(g[k] <= prefix[k] for k in range(d - 1)):
                if t is None or g[-1] < t:
                    t = g[-1]
        if t is None:
            continue
        h = (bound - partial + ad - 1) // ad
        if h > t:
            total += h - t
    return total


def _halfspace_prefixes(normal, bound, partial=0):
    """Lattice prefixes u' >= 0 with <u', normal> < bound, with their partial sums."""
    if not normal:
        yield (), partial
        return
    a = normal[0]
    x = 0
    while partial + a * x < bound:
        for rest, s in _halfspace_prefixes(normal[1:], bound, partial + a * x):
            yield (x,) + rest, s
        x += 1
