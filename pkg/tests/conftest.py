import pytest
from hypothesis import strategies as st

from lrcbounds.code import LinearCode
from lrcbounds.constructions import parity_product_code, shortened_hamming_6_3
from lrcbounds.field import Matrix, field_new, mat_rank
from lrcbounds.graph import build_recovering_graph


@pytest.fixture(scope="session")
def hamming():
    return shortened_hamming_6_3()


@pytest.fixture(scope="session")
def product22():
    return parity_product_code(2, 2)


@pytest.fixture(scope="session")
def grid(product22):
    """Recovering graph of the 3x3 product code; vertex (a, b) has id 3(a-1) + b."""
    return build_recovering_graph(product22[1])


@pytest.fixture(scope="session")
def hamming_graph(hamming):
    return build_recovering_graph(hamming[1])


@st.composite
def small_codes(draw, qs=(2, 3, 4), max_n=7):
    q = draw(st.sampled_from(qs))
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, n))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    field = field_new(q)
    M = Matrix.from_rows(field, rows, n)
    if mat_rank(M) != k:
        # fall back to a systematic generator so every draw is usable
        rows = [[int(i == j) for j in range(k)] + row[k:] for i, row in enumerate(rows)]
        M = Matrix.from_rows(field, rows, n)
    return LinearCode(M)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
