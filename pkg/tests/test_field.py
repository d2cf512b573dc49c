import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lrcbounds.field import (
    Matrix,
    UnsupportedFieldError,
    field_new,
    mat_nullspace_basis,
    mat_rank,
    mat_rref,
)
from lrcbounds.constructions import HAMMING_6_3_PARITY

SUPPORTED = [2, 3, 4, 5, 7, 8, 11, 16, 32, 64, 128, 256, 251, 257]


def test_gf2():
    F = field_new(2)
    assert (F.p, F.m, F.poly) == (2, 1, None)


def test_gf4_polynomial():
    F = field_new(4)
    assert (F.p, F.m, F.poly) == (2, 2, 0b111)
    # x * x = x + 1 under x^2 + x + 1
    assert F.mul(2, 2) == 3


@pytest.mark.parametrize("q", [6, 9, 1, 0, 512, 263])
def test_unsupported_orders(q):
    with pytest.raises(UnsupportedFieldError, match=str(q)):
        field_new(q)


def test_fields_are_cached():
    assert field_new(8) is field_new(8)


@pytest.mark.parametrize("q", [q for q in SUPPORTED if q <= 16])
def test_axioms_exhaustive(q):
    F = field_new(q)
    els = range(q)
    for a, b in itertools.product(els, els):
        assert F.add(a, b) == F.add(b, a)
        assert F.mul(a, b) == F.mul(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a, b, c in itertools.product(els, els, els):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
    for a in range(1, q):
        assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", [q for q in SUPPORTED if q > 16])
def test_axioms_sampled(q):
    F = field_new(q)
    rng = random.Random(q)
    for _ in range(2000):
        a, b, c = (rng.randrange(q) for _ in range(3))
        assert F.mul(a, b) == F.mul(b, a)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_extension_field_multiplicative_group_is_cyclic():
    # 2 (the class of x) generates GF(2^m)* when the reduction polynomial is primitive
    for q in (4, 8, 16, 32, 64, 128, 256):
        F = field_new(q)
        seen, x = set(), 1
        for _ in range(q - 1):
            x = F.mul(x, 2)
            seen.add(x)
        assert len(seen) == q - 1


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        field_new(5).inv(0)


def test_identity_rank():
    assert mat_rank(Matrix.identity(field_new(2), 3)) == 3


def test_zero_matrix():
    Z = Matrix.zeros(field_new(2), 2, 4)
    assert mat_rank(Z) == 0
    assert mat_nullspace_basis(Z).nrows == 4


def test_printed_parity_check_rank():
    assert mat_rank(Matrix.from_rows(field_new(2), HAMMING_6_3_PARITY)) == 3


def test_rref_known():
    F = field_new(3)
    M = Matrix.from_rows(F, [[2, 1, 0], [1, 2, 1]])
    assert mat_rref(M).rows == ((1, 2, 0), (0, 0, 1))


def test_matmul_shape_error():
    F = field_new(2)
    with pytest.raises(ValueError):
        F.matmul(np.zeros((2, 3), dtype=int), np.zeros((2, 3), dtype=int))


@st.composite
def matrices(draw):
    q = draw(st.sampled_from([2, 3, 4, 5, 8]))
    r = draw(st.integers(1, 5))
    c = draw(st.integers(1, 6))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=c, max_size=c), min_size=r, max_size=r))
    return Matrix.from_rows(field_new(q), rows, c)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_rref_idempotent_and_rank(M):
    R = mat_rref(M)
    assert mat_rref(R) == R
    assert mat_rank(R) == mat_rank(M) <= min(M.shape)


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_nullspace(M):
    N = mat_nullspace_basis(M)
    assert N.nrows == M.ncols - mat_rank(M)
    if N.nrows:
        assert mat_rank(N) == N.nrows
        assert not (M @ N.transpose()).to_array().any()
