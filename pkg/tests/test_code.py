import itertools

import numpy as np
import pytest
from hypothesis import given, settings

from conftest import small_codes
from lrcbounds.code import (
    CodeFormatError,
    GuardError,
    LinearCode,
    coord_set,
    distance_via_restriction,
    dual_codewords,
    enumerate_codewords,
    format_code,
    minimum_distance,
    parse_code,
    read_code,
    restrict,
)
from lrcbounds.field import Matrix, field_new


def rep3():
    return LinearCode.from_generator(2, [[1, 1, 1]])


def full(n, q=2):
    return LinearCode(Matrix.identity(field_new(q), n))


def words(arr):
    return {tuple(w) for w in arr.tolist()}


def test_repetition_codewords():
    assert enumerate_codewords(rep3()).tolist() == [[0, 0, 0], [1, 1, 1]]


def test_hamming_codewords(hamming):
    code, _ = hamming
    cw = enumerate_codewords(code)
    assert cw.shape == (8, 6)
    assert len(words(cw)) == 8
    H = np.array(code.parity_check.rows)
    assert not ((cw @ H.T) % 2).any()


def test_message_order_is_lexicographic():
    code = LinearCode.from_generator(3, [[1, 0, 1], [0, 1, 1]])
    cw = enumerate_codewords(code)
    msgs = list(itertools.product(range(3), repeat=2))
    assert [tuple(w[:2]) for w in cw.tolist()] == msgs


def test_guard():
    code = LinearCode(Matrix.identity(field_new(2), 30))
    with pytest.raises(GuardError, match=str(2**30)):
        enumerate_codewords(code)


def test_minimum_distance(hamming, product22):
    assert minimum_distance(hamming[0]) == 3
    for n in range(1, 7):
        assert minimum_distance(LinearCode.from_generator(2, [[1] * n])) == n
    assert minimum_distance(product22[0]) == 4


def test_restrict(hamming):
    code, _ = hamming
    assert len(restrict(code, range(1, 7))) == 8
    assert restrict(code, []) == {()}
    assert len(restrict(code, [1, 2, 3, 4, 5])) == 8
    with pytest.raises(IndexError):
        restrict(code, [7])


def test_distance_via_restriction(hamming, product22):
    assert distance_via_restriction(rep3()) == 3
    assert distance_via_restriction(hamming[0]) == 3
    assert distance_via_restriction(product22[0]) == 4


def test_distance_via_restriction_size_limit():
    with pytest.raises(GuardError):
        distance_via_restriction(LinearCode.from_generator(2, [[1] * 13]))


@given(small_codes())
@settings(max_examples=120, deadline=None)
def test_distance_definitions_agree(code):
    assert distance_via_restriction(code) == minimum_distance(code)


@given(small_codes(max_n=6))
@settings(max_examples=60, deadline=None)
def test_restriction_monotone(code):
    sizes = {}
    for size in range(code.n + 1):
        for I in itertools.combinations(range(1, code.n + 1), size):
            sizes[I] = len(restrict(code, I))
            for j in range(size):
                sub = I[:j] + I[j + 1:]
                assert sizes[sub] <= sizes[I] <= code.q**code.k


def test_hamming_dual_supports(hamming):
    code, _ = hamming
    dual = dual_codewords(code)
    assert len(words(dual)) == 8
    weight3 = {tuple(np.flatnonzero(w) + 1) for w in dual if np.count_nonzero(w) == 3}
    assert weight3 == {(4, 5, 6), (2, 3, 6), (1, 3, 5), (1, 2, 4)}
    # every printed parity-check row is a dual word
    assert {tuple(r) for r in code.parity_check.rows} <= words(dual)


def test_trivial_duals():
    assert dual_codewords(full(4)).tolist() == [[0, 0, 0, 0]]
    even = {w for w in itertools.product(range(2), repeat=3) if sum(w) % 2 == 0}
    assert words(dual_codewords(rep3())) == even


@given(small_codes())
@settings(max_examples=80, deadline=None)
def test_code_dual_orthogonal(code):
    cw, dual = enumerate_codewords(code), dual_codewords(code)
    assert len(dual) == code.q ** (code.n - code.k)
    assert not code.field.matmul(cw, dual.T).any()


def test_rank_deficient_generator_rejected():
    with pytest.raises(ValueError, match="rank"):
        LinearCode.from_generator(2, [[1, 1, 0], [1, 1, 0]])


def test_coord_set():
    assert coord_set([3, 1, 3]) == (1, 3)
    with pytest.raises(IndexError):
        coord_set([0], 4)


# ------------------------------------------------------------- file format


def test_parity_round_trip(hamming, tmp_path):
    code, _ = hamming
    for kind in ("generator", "parity"):
        text = format_code(code, kind, comment="round trip")
        again = parse_code(text)
        assert words(enumerate_codewords(again)) == words(enumerate_codewords(code))
        path = tmp_path / f"c_{kind}.code"
        path.write_text(text)
        assert read_code(path).n == 6


def test_parity_with_redundant_rows():
    text = "q 2\nn 3 k 1\nmatrix parity\n1 1 0\n0 1 1\n1 0 1\n"
    assert words(enumerate_codewords(parse_code(text))) == {(0, 0, 0), (1, 1, 1)}


def test_full_space_from_zero_parity():
    code = parse_code("q 2\nn 3 k 3\nmatrix parity\n0 0 0\n")
    assert code.k == 3


def test_comments_and_blank_lines():
    code = parse_code("# header\n\nq 3  # field\nn 2 k 1\nmatrix generator\n1 2\n")
    assert code.q == 3 and code.generator.rows == ((1, 2),)


@pytest.mark.parametrize(
    "text, lineno",
    [
        ("q 2\nn 3 k 1\nmatrix generator\n1 1\n", 4),
        ("q 2\nn 3 k 1\nmatrix generator\n1 x 1\n", 4),
        ("q 2\nn 3 k 1\nmatrix generator\n1 2 1\n", 4),
        ("q 6\nn 3 k 1\nmatrix generator\n1 1 1\n", 1),
        ("q 2\nn 3 k 4\nmatrix generator\n1 1 1\n", 2),
        ("q 2\nn 3 k 1\nmatrix foo\n1 1 1\n", 3),
        ("q 2\nn 3 k 2\nmatrix generator\n1 1 1\n", 4),
        ("q 2\nn 3 k 1\nmatrix parity\n1 1 0\n", 4),
    ],
)
def test_parse_errors_name_the_line(text, lineno):
    with pytest.raises(CodeFormatError) as info:
        parse_code(text)
    assert info.value.lineno == lineno
    assert f"line {lineno}" in str(info.value)


def test_truncated_file():
    with pytest.raises(CodeFormatError):
        parse_code("q 2\n")
