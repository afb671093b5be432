"""Time the compiled kernels against the pure-Python fallback.

Usage: python3 benchmarks/bench_kernels.py [--repeat N]
"""

from __future__ import annotations

import argparse
import random
import timeit

from pfam import kernels
from pfam.monomial import MonomialIdeal, frobenius, max_ideal_power


def _random_antichain(rng, d, n, top):
    pts = [tuple(rng.randint(0, top) for _ in range(d)) for _ in range(n)]
    pts += [tuple(top * int(i == j) for j in range(d)) for i in range(d)]
    return kernels.minimal(pts, backend="python")


def cases():
    rng = random.Random(7)
    m40 = list(max_ideal_power(2, 40).gens)
    big2 = list(frobenius(MonomialIdeal(2, tuple(m40)), 16).gens)
    a3 = _random_antichain(rng, 3, 60, 40)
    b3 = _random_antichain(rng, 3, 60, 40)
    raw = [tuple(rng.randint(0, 300) for _ in range(3)) for _ in range(3000)]
    return [
        ("minimal d=3, 3000 pts", lambda b: kernels.minimal(raw, backend=b)),
        ("product d=2, m^40 * m^40", lambda b: kernels.product_minimal(m40, m40, backend=b)),
        ("product d=3, 60x60 gens", lambda b: kernels.product_minimal(a3, b3, backend=b)),
        ("outside count d=2, (m^40)^[16]", lambda b: kernels.outside_count(big2, backend=b)),
        ("outside count d=3, random", lambda b: kernels.outside_count(a3, backend=b)),
        ("halfspace count d=3", lambda b: kernels.count_in_halfspace(a3, (1, 2, 3), 200, backend=b)),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    print(f"default backend: {kernels.BACKEND}")
    if kernels.BACKEND != "cython":
        print("compiled kernels not built; only the python backend is timed")
    print(f"{'case':36s} {'python (s)':>12s} {'cython (s)':>12s} {'speedup':>8s}")
    for name, fn in cases():
        ref = fn("python")
        t_py = min(timeit.repeat(lambda: fn("python"), number=1, repeat=args.repeat))
        if kernels.BACKEND == "cython":
            assert fn("cython") == ref, f"backend mismatch on {name}"
            t_c = min(timeit.repeat(lambda: fn("cython"), number=1, repeat=args.repeat))
            print(f"{name:36s} {t_py:12.4f} {t_c:12.4f} {t_py / t_c:8.1f}x")
        else:
            print(f"{name:36s} {t_py:12.4f} {'-':>12s} {'-':>8s}")


if __name__ == "__main__":
    main()
