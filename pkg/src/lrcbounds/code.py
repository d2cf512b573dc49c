"""Linear block codes over small finite fields.

Coordinates are 1-based throughout: a coordinate set is a sorted tuple of
integers in ``[1, n]``.
"""

from __future__ import annotations

import functools
import itertools
import os
from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from .field import Field, Matrix, field_new, mat_nullspace_basis, mat_rank, rref_basis

ENUMERATION_GUARD = 2**24
RESTRICTION_SCAN_MAX_N = 12


class GuardError(RuntimeError):
    """An exhaustive enumeration would exceed its size guard."""


class CodeFormatError(ValueError):
    """Malformed code file; ``lineno`` is 1-based (0 when the file is truncated)."""

    def __init__(self, message: str, lineno: int = 0):
        super().__init__(f"line {lineno}: {message}" if lineno else message)
        self.lineno = lineno


def coord_set(indices: Iterable[int], n: int | None = None) -> tuple[int, ...]:
    """Normalize to a sorted tuple of distinct 1-based coordinates, checking the range when n is known."""
    out = tuple(sorted(set(int(i) for i in indices)))
    if n is not None:
        for i in out:
            if not 1 <= i <= n:
                raise IndexError(f"coordinate {i} outside [1, {n}]")
    return out


def _mask(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def _span(field: Field, basis: np.ndarray, guard: int, what: str) -> np.ndarray:
    """All F-linear combinations of the rows of ``basis``, message vectors in lexicographic order."""
    k, n = basis.shape
    count = field.q**k
    if count > guard:
        raise GuardError(f"{what}: q^{k} = {count} exceeds the enumeration guard {guard}")
    if k == 0:
        return np.zeros((1, n), dtype=np.int64)
    idx = np.arange(count, dtype=np.int64)
    msgs = np.stack([(idx // field.q ** (k - 1 - j)) % field.q for j in range(k)], axis=1)
    return field.matmul(msgs, basis)


@dataclass(frozen=True)
class LinearCode:
    """An [n, k] linear code given by a full-rank k x n generator matrix."""

    generator: Matrix
    _parity: Matrix | None = dc_field(default=None, compare=False, repr=False)

    def __post_init__(self):
        k = self.generator.nrows
        if k < 1:
            raise ValueError("a code needs dimension k >= 1")
        if mat_rank(self.generator) != k:
            raise ValueError(f"generator matrix has rank {mat_rank(self.generator)}, expected {k}")

    @classmethod
    def from_generator(cls, q: int | Field, rows) -> LinearCode:
        field = q if isinstance(q, Field) else field_new(q)
        return cls(Matrix.from_rows(field, rows))

    @classmethod
    def from_parity_check(cls, q: int | Field, rows, n: int | None = None) -> LinearCode:
        """Build the code {x : H x^T = 0}; H may carry redundant rows."""
        field = q if isinstance(q, Field) else field_new(q)
        H = Matrix.from_rows(field, rows, n)
        G = mat_nullspace_basis(H)
        if G.nrows == 0:
            raise ValueError("parity-check matrix has full column rank; the code is {0}")
        return cls(G, H)

    @property
    def field(self) -> Field:
        return self.generator.field

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def n(self) -> int:
        return self.generator.ncols

    @property
    def k(self) -> int:
        return self.generator.nrows

    @functools.cached_property
    def parity_check(self) -> Matrix:
        if self._parity is not None:
            return self._parity
        return mat_nullspace_basis(self.generator)

    @functools.cached_property
    def dual_supports(self) -> tuple[int, ...]:
        """Distinct support bitmasks (bit i-1 for coordinate i) of the nonzero dual codewords."""
        nz = dual_codewords(self) != 0
        if self.n <= 62:
            masks = nz.astype(np.int64) @ (1 << np.arange(self.n, dtype=np.int64))
            found = set(masks.tolist())
        else:
            found = {sum(1 << j for j in np.flatnonzero(row).tolist()) for row in nz}
        found.discard(0)
        return tuple(sorted(found))

    @functools.cached_property
    def _memo(self) -> dict:
        # per-instance scratch space for derived data (e.g. minimal recovering sets)
        return {}

    def __repr__(self) -> str:
        return f"LinearCode(q={self.q}, n={self.n}, k={self.k})"


def enumerate_codewords(code: LinearCode, guard: int = ENUMERATION_GUARD) -> np.ndarray:
    """All q^k codewords as rows of an array, ordered by message vector."""
    return _span(code.field, code.generator.to_array(), guard, "codeword enumeration")


def dual_codewords(code: LinearCode, guard: int = ENUMERATION_GUARD) -> np.ndarray:
    """All vectors of the row space of the parity-check matrix."""
    H, _ = rref_basis(code.parity_check)
    basis = H.to_array().reshape(H.nrows, code.n)
    return _span(code.field, basis, guard, "dual enumeration")


def minimum_distance(code: LinearCode, guard: int = ENUMERATION_GUARD) -> int:
    words = enumerate_codewords(code, guard)
    weights = np.count_nonzero(words[1:], axis=1)
    return int(weights.min())


def restrict(code: LinearCode, I: Iterable[int], guard: int = ENUMERATION_GUARD) -> set[tuple[int, ...]]:
    """The projection C_I = {x_I : x in C} as a set of tuples."""
    cols = [i - 1 for i in coord_set(I, code.n)]
    words = enumerate_codewords(code, guard)
    return set(map(tuple, words[:, cols].tolist()))


def distance_via_restriction(code: LinearCode, guard: int = ENUMERATION_GUARD) -> int:
    """n - max{|I| : |C_I| < q^k}, by scanning coordinate subsets from the largest down.

    Exponential in n; meant as an independent check of :func:`minimum_distance`.
    """
    if code.n > RESTRICTION_SCAN_MAX_N:
        raise GuardError(f"subset scan limited to n <= {RESTRICTION_SCAN_MAX_N}, got n={code.n}")
    words = enumerate_codewords(code, guard)
    full = code.q**code.k
    for size in range(code.n, 0, -1):
        for cols in itertools.combinations(range(code.n), size):
            if len(set(map(tuple, words[:, cols].tolist()))) < full:
                return code.n - size
    return code.n  # |C_{}| = 1 < q^k


# ---------------------------------------------------------------- file format


def parse_code(text: str) -> LinearCode:
    lines = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if body:
            lines.append((lineno, body))
    if len(lines) < 3:
        raise CodeFormatError("expected 'q', 'n ... k ...' and 'matrix ...' header lines")

    def ints(tokens, lineno):
        try:
            return [int(x) for x in tokens]
        except ValueError:
            raise CodeFormatError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None

    lineno, body = lines[0]
    tok = body.split()
    if len(tok) != 2 or tok[0] != "q":
        raise CodeFormatError("expected 'q <order>'", lineno)
    (q,) = ints(tok[1:], lineno)
    try:
        field = field_new(q)
    except ValueError as exc:
        raise CodeFormatError(str(exc), lineno) from None

    lineno, body = lines[1]
    tok = body.split()
    if len(tok) != 4 or tok[0] != "n" or tok[2] != "k":
        raise CodeFormatError("expected 'n <length> k <dimension>'", lineno)
    n, k = ints([tok[1], tok[3]], lineno)
    if not 1 <= k <= n:
        raise CodeFormatError(f"need 1 <= k <= n, got n={n} k={k}", lineno)

    lineno, body = lines[2]
    tok = body.split()
    if len(tok) != 2 or tok[0] != "matrix" or tok[1] not in ("generator", "parity"):
        raise CodeFormatError("expected 'matrix generator' or 'matrix parity'", lineno)
    kind = tok[1]

    rows = []
    for lineno, body in lines[3:]:
        row = ints(body.split(), lineno)
        if len(row) != n:
            raise CodeFormatError(f"matrix row has {len(row)} entries, expected n={n}", lineno)
        bad = [x for x in row if not 0 <= x < q]
        if bad:
            raise CodeFormatError(f"entry {bad[0]} is not in [0, {q})", lineno)
        rows.append(row)

    last = lines[-1][0]
    if kind == "generator":
        if not rows:
            raise CodeFormatError("generator matrix has no rows", last)
        basis, _ = rref_basis(Matrix.from_rows(field, rows, n))
        if basis.nrows != k:
            raise CodeFormatError(f"generator rank {basis.nrows} does not match k={k}", last)
        G = Matrix.from_rows(field, rows, n) if len(rows) == k else basis
        return LinearCode(G)
    H = Matrix.from_rows(field, rows, n)
    if mat_rank(H) != n - k:
        raise CodeFormatError(f"parity-check rank {mat_rank(H)} does not match n-k={n - k}", last)
    return LinearCode(mat_nullspace_basis(H), H)


def read_code(path: str | os.PathLike) -> LinearCode:
    with open(path, encoding="utf-8") as fh:
        return parse_code(fh.read())


def format_code(code: LinearCode, kind: str = "generator", comment: str | None = None) -> str:
    if kind not in ("generator", "parity"):
        raise ValueError(f"unknown matrix kind {kind!r}")
    M = code.generator if kind == "generator" else code.parity_check
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"q {code.q}")
    out.append(f"n {code.n} k {code.k}")
    out.append(f"matrix {kind}")
    out.extend(" ".join(map(str, row)) for row in M.rows)
    return "\n".join(out) + "\n"


def write_code(code: LinearCode, path: str | os.PathLike, kind: str = "generator", comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(code, kind, comment))
