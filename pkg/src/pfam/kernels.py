"""Kernel dispatch: compiled Cython kernels when built, pure Python otherwise.

Set ``PFAM_KERNELS=python`` to force the fallback. The compiled path is
used only when every intermediate fits comfortably in int64; anything
larger (or non-integer) goes through the arbitrary-precision Python path,
so results never depend on the backend.
"""

from __future__ import annotations

import os

import numpy as np

from . import _pykernels as py

try:
    if os.environ.get("PFAM_KERNELS", "").lower() == "python":
        raise ImportError("fallback forced")
    from . import _ckernels as _c
except ImportError:
    _c = None

BACKEND = "cython" if _c is not None else "python"

_SAFE = 1 << 40
_SAFE_PRODUCT = 1 << 62
_MAX_DENSE_X = 10_000_000


def _ints_within(points, limit=_SAFE):
    for p in points:
        for v in p:
            if type(v) is not int or not -limit < v < limit:
                return False
    return True


def _as_array(points):
    return np.ascontiguousarray(np.array(points, dtype=np.int64).reshape(len(points), -1))


def _volume_fits(bounds):
    vol = 1
    for b in bounds:
        vol *= max(int(b), 1)
    return vol < _SAFE_PRODUCT


def minimal(points, backend=None):
    backend = backend or BACKEND
    pts = [tuple(p) for p in points]
    if backend != "cython" or _c is None or not pts or not _ints_within(pts):
        return py.minimal(pts)
    arr = _as_array(pts)
    order = np.lexsort(arr.T[::-1])
    arr = arr[order]
    if len(arr) > 1:
        keep = np.ones(len(arr), dtype=bool)
        keep[1:] = np.any(arr[1:] != arr[:-1], axis=1)
        arr = np.ascontiguousarray(arr[keep])
    mask = _c.minimal_mask(arr).astype(bool)
    return [tuple(int(v) for v in row) for row in arr[mask]]


def product_minimal(A, B, backend=None):
    backend = backend or BACKEND
    if not A or not B:
        return []
    if backend != "cython" or _c is None or not (_ints_within(A) and _ints_within(B)):
        return py.product_minimal(A, B)
    d = len(A[0])
    if d == 2:
        xmax = max(a[0] for a in A) + max(b[0] for b in B)
        if xmax <= _MAX_DENSE_X:
            return _c.product_min_2d(_as_array(A), _as_array(B), xmax)
    sums = (_as_array(A)[:, None, :] + _as_array(B)[None, :, :]).reshape(-1, d)
    return minimal([tuple(r) for r in sums.tolist()], backend)


def outside_count(gens, backend=None):
    """Lattice points of the orthant outside the staircase (gens m-primary, minimal, sorted)."""
    backend = backend or BACKEND
    d = len(gens[0])
    if any(not any(g) for g in gens):
        return 0
    if backend != "cython" or _c is None or d == 1 or not _ints_within(gens):
        return py.outside_count(gens)
    bounds = py._pure_power_bounds(gens, d)
    if not _volume_fits(bounds):
        return py.outside_count(gens)
    arr = _as_array(gens)
    if d == 2:
        return int(_c.outside_count_2d(arr))
    coords = []
    for k in range(d - 1):
        cs = sorted({g[k] for g in gens if g[k] < bounds[k]} | {0})
        coords.append(cs + [bounds[k]])
    return int(_c.outside_count_grid(arr, coords))


def count_in_halfspace(gens, normal, bound, backend=None):
    """Lattice points of the ideal with <u, normal> < bound (normal positive ints)."""
    backend = backend or BACKEND
    d = len(normal)
    if (
        backend != "cython"
        or _c is None
        or d == 1
        or not gens
        or not _ints_within(gens)
        or not _ints_within([normal, (bound,)])
        or not _volume_fits([bound // a + 1 for a in normal])
    ):
        return py.count_in_halfspace(gens, normal, bound)
    return int(
        _c.count_in_halfspace(_as_array(gens), np.asarray(normal, dtype=np.int64), bound)
    )


grid_cell_count = py.grid_cell_count
