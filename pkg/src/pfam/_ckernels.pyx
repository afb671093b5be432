# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled counting kernels on int64 exponent arrays.

Callers (``pfam.kernels``) guarantee magnitudes small enough that every
intermediate sum and volume fits in a signed 64-bit integer.
"""

import numpy as np

ctypedef long long i64


def minimal_mask(const i64[:, ::1] pts):
    """Mask of minimal rows of a lex-sorted, duplicate-free array."""
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1]
    cdef Py_ssize_t i, j, k, nk = 0, gi
    cdef bint dominated, le
    cdef i64 best
    kept_arr = np.empty(max(n, 1), dtype=np.intp)
    mask_arr = np.zeros(n, dtype=np.uint8)
    cdef Py_ssize_t[::1] kept = kept_arr
    cdef unsigned char[::1] mask = mask_arr
    if n == 0:
        return mask_arr
    if d == 2:
        best = pts[0, 1] + 1
        for i in range(n):
            if pts[i, 1] < best:
                mask[i] = 1
                best = pts[i, 1]
        return mask_arr
    for i in range(n):
        dominated = False
        for j in range(nk):
            gi = kept[j]
            le = True
            for k in range(d):
                if pts[gi, k] > pts[i, k]:
                    le = False
                    break
            if le:
                dominated = True
                break
        if not dominated:
            kept[nk] = i
            nk += 1
            mask[i] = 1
    return mask_arr


def product_min_2d(const i64[:, ::1] A, const i64[:, ::1] B, i64 xmax):
    """Min-plus convolution of two d=2 staircases: minimal generators of AB."""
    cdef Py_ssize_t na = A.shape[0], nb = B.shape[0], i, j
    cdef i64 x, y, big = 0
    for i in range(na):
        big = max(big, A[i, 1])
    for j in range(nb):
        big = max(big, B[j, 1])
    big = 2 * big + 1
    best_arr = np.full(xmax + 1, big, dtype=np.int64)
    cdef i64[::1] best = best_arr
    for i in range(na):
        for j in range(nb):
            x = A[i, 0] + B[j, 0]
            y = A[i, 1] + B[j, 1]
            if y < best[x]:
                best[x] = y
    out = []
    cdef i64 run = big
    for x in range(xmax + 1):
        if best[x] < run:
            run = best[x]
            out.append((x, run))
    return out


def outside_count_2d(const i64[:, ::1] gens):
    cdef Py_ssize_t n = gens.shape[0], i
    cdef i64 total = 0
    for i in range(n - 1):
        total += (gens[i + 1, 0] - gens[i, 0]) * gens[i, 1]
    return total


def outside_count_grid(const i64[:, ::1] gens, list coords):
    """Sum over prefix cells of (cell volume) x (column threshold on the last axis).

    ``coords[k]`` holds the sorted breakpoints of axis k, ending with the
    pure-power bound of that axis.
    """
    cdef Py_ssize_t n = gens.shape[0], d = gens.shape[1], m = d - 1
    cdef Py_ssize_t i, k, g
    cdef i64 total = 0, vol, t
    cdef bint le
    lens_arr = np.array([len(c) - 1 for c in coords], dtype=np.intp)
    cdef Py_ssize_t[::1] lens = lens_arr
    flat_arr = np.concatenate([np.asarray(c, dtype=np.int64) for c in coords])
    offs_arr = np.zeros(m, dtype=np.intp)
    for k in range(1, m):
        offs_arr[k] = offs_arr[k - 1] + len(coords[k - 1])
    cdef i64[::1] flat = flat_arr
    cdef Py_ssize_t[::1] offs = offs_arr
    idx_arr = np.zeros(m, dtype=np.intp)
    cdef Py_ssize_t[::1] idx = idx_arr
    for k in range(m):
        if lens[k] <= 0:
            return 0
    while True:
        vol = 1
        for k in range(m):
            vol *= flat[offs[k] + idx[k] + 1] - flat[offs[k] + idx[k]]
        t = -1
        for g in range(n):
            le = True
            for k in range(m):
                if gens[g, k] > flat[offs[k] + idx[k]]:
                    le = False
                    break
            if le and (t < 0 or gens[g, m] < t):
                t = gens[g, m]
        total += vol * t
        k = m - 1
        while k >= 0:
            idx[k] += 1
            if idx[k] < lens[k]:
                break
            idx[k] = 0
            k -= 1
        if k < 0:
            break
    return total


def count_in_halfspace(const i64[:, ::1] gens, const i64[::1] normal, i64 bound):
    """Count u >= 0 in the ideal of ``gens`` with <u, normal> < bound (d >= 2)."""
    cdef Py_ssize_t n = gens.shape[0], d = gens.shape[1], m = d - 1
    cdef Py_ssize_t k, g
    cdef i64 total = 0, partial, t, h, r, ad = normal[m]
    cdef bint le, advanced
    if bound <= 0 or n == 0:
        return 0
    u_arr = np.zeros(m, dtype=np.int64)
    cdef i64[::1] u = u_arr
    partial = 0
    while True:
        t = -1
        for g in range(n):
            le = True
            for k in range(m):
                if gens[g, k] > u[k]:
                    le = False
                    break
            if le and (t < 0 or gens[g, m] < t):
                t = gens[g, m]
        if t >= 0:
            r = bound - partial
            h = (r + ad - 1) // ad
            if h > t:
                total += h - t
        # odometer over prefixes with partial < bound
        advanced = False
        k = m - 1
        while k >= 0:
            u[k] += 1
            partial += normal[k]
            if partial < bound:
                advanced = True
                break
            partial -= normal[k] * u[k]
            u[k] = 0
            k -= 1
        if not advanced:
            break
    return total
