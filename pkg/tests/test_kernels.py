"""Backend parity: the compiled kernels must agree with the pure-Python path."""

from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pfam import kernels

needs_cython = pytest.mark.skipif(kernels.BACKEND != "cython", reason="compiled kernels not built")


@st.composite
def point_sets(draw, d=None, top=30, size=25):
    d = d or draw(st.integers(1, 3))
    return draw(st.lists(st.tuples(*[st.integers(0, top)] * d), min_size=1, max_size=size))


@st.composite
def m_primary(draw):
    pts = draw(point_sets(top=12, size=8))
    d = len(pts[0])
    pure = [tuple(draw(st.integers(1, 12)) * int(i == j) for j in range(d)) for i in range(d)]
    return kernels.minimal(pts + pure, backend="python")


@needs_cython
@settings(max_examples=80, deadline=None)
@given(point_sets())
def test_minimal_parity(pts):
    assert kernels.minimal(pts, backend="cython") == kernels.minimal(pts, backend="python")


@needs_cython
@settings(max_examples=80, deadline=None)
@given(st.data())
def test_product_parity(data):
    A = data.draw(point_sets(top=20, size=10))
    d = len(A[0])
    B = data.draw(point_sets(d=d, top=20, size=10))
    A = kernels.minimal(A, backend="python")
    B = kernels.minimal(B, backend="python")
    assert kernels.product_minimal(A, B, backend="cython") == kernels.product_minimal(A, B, backend="python")


@needs_cython
@settings(max_examples=80, deadline=None)
@given(m_primary())
def test_outside_count_parity(gens):
    assert kernels.outside_count(gens, backend="cython") == kernels.outside_count(gens, backend="python")


@needs_cython
@settings(max_examples=80, deadline=None)
@given(m_primary(), st.integers(0, 40))
def test_halfspace_parity(gens, bound):
    normal = tuple(range(1, len(gens[0]) + 1))
    assert kernels.count_in_halfspace(gens, normal, bound, backend="cython") == kernels.count_in_halfspace(
        gens, normal, bound, backend="python"
    )


def test_large_values_use_exact_path():
    big = [(0, 2**70), (2**70, 0)]
    assert kernels.outside_count(big) == 2**140
    assert kernels.minimal(big + [(2**71, 2**71)]) == sorted(big)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
