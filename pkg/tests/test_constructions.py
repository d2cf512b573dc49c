from fractions import Fraction

import pytest

from lrcbounds.bounds import rate_bound
from lrcbounds.code import GuardError, distance_via_restriction, minimum_distance
from lrcbounds.constructions import (
    parity_product_code,
    product_coordinates,
    product_lines,
    rate_gap_report,
    shortened_hamming_6_3,
)
from lrcbounds.recovery import locality_profile


def test_hamming(hamming):
    code, fam = hamming
    assert (code.n, code.k) == (6, 3)
    assert minimum_distance(code) == 3
    assert fam.is_uniform and (fam.r, fam.t) == (2, 2)
    fam.validate(6, code)


@pytest.mark.parametrize("r,t", [(1, 1), (2, 1), (3, 1), (1, 2), (2, 2), (1, 3), (3, 2)])
def test_product_parameters(r, t):
    code, fam = parity_product_code(r, t)
    assert code.n == (r + 1) ** t and code.k == r**t
    fam.validate(code.n, code)
    assert fam.is_uniform
    if code.n <= 12:
        assert distance_via_restriction(code) == 2**t
    else:
        assert minimum_distance(code) == 2**t


def test_product_labels():
    assert product_coordinates(2, 2)[:4] == [(1, 1), (1, 2), (1, 3), (2, 1)]
    fam = product_lines(2, 2)
    assert fam.sets[0] == ((2, 3), (4, 7))


def test_product_code_has_availability(product22):
    assert locality_profile(product22[0], 2) == (2,) * 9


def test_guard():
    with pytest.raises(GuardError):
        parity_product_code(2, 3, guard=20)
    with pytest.raises(ValueError):
        parity_product_code(0, 2)


def test_rate_gap():
    assert rate_gap_report(2, 2) == (Fraction(4, 9), Fraction(8, 15), Fraction(4, 45))
    for r in range(1, 5):
        assert rate_gap_report(r, 1)[2] == 0
        for t in range(1, 5):
            achieved, bound, gap = rate_gap_report(r, t)
            assert bound == rate_bound(r, t) and gap >= 0
