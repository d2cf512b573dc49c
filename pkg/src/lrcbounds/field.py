"""Arithmetic over small finite fields and the matrix routines built on it.

Elements are plain integers in ``[0, q)``.  For prime ``q`` they are residues;
for ``q = 2**m`` an element is the bit vector of a polynomial over GF(2)
reduced modulo a fixed primitive polynomial:

======  ==========================  =======
q       reduction polynomial        hex
======  ==========================  =======
4       x^2 + x + 1                 0x7
8       x^3 + x + 1                 0xB
16      x^4 + x + 1                 0x13
32      x^5 + x^2 + 1               0x25
64      x^6 + x + 1                 0x43
128     x^7 + x^3 + 1               0x89
256     x^8 + x^4 + x^3 + x^2 + 1   0x11D
======  ==========================  =======
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

REDUCTION_POLYNOMIALS = {
    4: 0x7,
    8: 0xB,
    16: 0x13,
    32: 0x25,
    64: 0x43,
    128: 0x89,
    256: 0x11D,
}

MAX_PRIME_ORDER = 257


class UnsupportedFieldError(ValueError):
    """Raised for field orders outside the supported table."""


class DimensionError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _poly_mulmod(a: int, b: int, poly: int, m: int) -> int:
    res = 0
    while b:
        if b & 1:
            res ^= a
        b >>= 1
        a <<= 1
        if a >> m:
            a ^= poly
    return res


class Field:
    """GF(q) with precomputed addition, multiplication and inverse tables.

    Use :func:`field_new` rather than constructing directly; it caches one
    instance per order.
    """

    def __init__(self, q: int):
        if _is_prime(q) and q <= MAX_PRIME_ORDER:
            self.p, self.m, self.poly = q, 1, None
            idx = np.arange(q, dtype=np.int64)
            add = (idx[:, None] + idx[None, :]) % q
            mul = (idx[:, None] * idx[None, :]) % q
        elif q in REDUCTION_POLYNOMIALS:
            self.p, self.m, self.poly = 2, q.bit_length() - 1, REDUCTION_POLYNOMIALS[q]
            idx = np.arange(q, dtype=np.int64)
            add = idx[:, None] ^ idx[None, :]
            mul = np.array(
                [[_poly_mulmod(a, b, self.poly, self.m) for b in range(q)] for a in range(q)],
                dtype=np.int64,
            )
        else:
            reason = "not a prime power" if not _is_prime_power(q) else "not in the supported table"
            raise UnsupportedFieldError(f"unsupported field order q={q} ({reason})")
        self.q = q
        self.add_table = add
        self.mul_table = mul
        self.neg_table = np.argmin(add, axis=1)  # the unique b with a + b = 0
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.flatnonzero(mul[a] == 1)[0])
        self.inv_table = inv
        for arr in (self.add_table, self.mul_table, self.neg_table, self.inv_table):
            arr.setflags(write=False)
        # python-level copies for the scalar hot paths in row reduction
        self._add = add.tolist()
        self._mul = mul.tolist()
        self._neg = self.neg_table.tolist()
        self._inv = inv.tolist()

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self) -> int:
        return hash(("Field", self.q))

    def __reduce__(self):
        return (field_new, (self.q,))

    @property
    def is_prime(self) -> bool:
        return self.m == 1

    def add(self, a: int, b: int) -> int:
        return self._add[a][b]

    def sub(self, a: int, b: int) -> int:
        return self._add[a][self._neg[b]]

    def neg(self, a: int) -> int:
        return self._neg[a]

    def mul(self, a: int, b: int) -> int:
        return self._mul[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return self._inv[a]

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Matrix product over the field for integer arrays with entries in [0, q)."""
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if a.shape[1] != b.shape[0]:
            raise DimensionError(f"cannot multiply {a.shape} by {b.shape}")
        if self.is_prime:
            return (a @ b) % self.q
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for j in range(a.shape[1]):
            out ^= self.mul_table[a[:, j][:, None], b[j][None, :]]
        return out


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    for p in range(2, q + 1):
        if q % p == 0:
            while q % p == 0:
                q //= p
            return q == 1
    return False


@functools.lru_cache(maxsize=None)
def field_new(q: int) -> Field:
    """Return GF(q); ``q`` must be a prime <= 257 or a power of two up to 256."""
    return Field(int(q))


@dataclass(frozen=True)
class Matrix:
    """Immutable matrix over a finite field, stored as a tuple of row tuples."""

    field: Field
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        for row in self.rows:
            if len(row) != self.ncols:
                raise DimensionError(f"row of length {len(row)} in a matrix with {self.ncols} columns")
            for x in row:
                if not 0 <= x < self.field.q:
                    raise ValueError(f"entry {x} is not an element of {self.field!r}")

    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> Matrix:
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        if ncols is None:
            if not rows:
                raise DimensionError("column count is required for a matrix without rows")
            ncols = len(rows[0])
        return cls(field, rows, ncols)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        return cls(field, tuple((0,) * ncols for _ in range(nrows)), ncols)

    @classmethod
    def identity(cls, field: Field, size: int) -> Matrix:
        return cls(field, tuple(tuple(int(i == j) for j in range(size)) for i in range(size)), size)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def to_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(self.nrows, self.ncols)

    def transpose(self) -> Matrix:
        cols = tuple(tuple(row[j] for row in self.rows) for j in range(self.ncols))
        return Matrix(self.field, cols, self.nrows)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.field != other.field:
            raise ValueError("matrices live over different fields")
        prod = self.field.matmul(self.to_array(), other.to_array())
        return Matrix.from_rows(self.field, prod.tolist(), other.ncols)


def _rref_rows(field: Field, rows: list[list[int]], ncols: int) -> tuple[list[list[int]], list[int]]:
    """Row-reduce in place; return (nonzero rows, pivot columns)."""
    add, mul, neg, inv = field._add, field._mul, field._neg, field._inv
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        pr = next((i for i in range(top, len(rows)) if rows[i][col]), None)
        if pr is None:
            continue
        rows[top], rows[pr] = rows[pr], rows[top]
        s = inv[rows[top][col]]
        if s != 1:
            rows[top] = [mul[s][x] for x in rows[top]]
        piv = rows[top]
        for i in range(len(rows)):
            if i != top and rows[i][col]:
                f = neg[rows[i][col]]
                mrow = mul[f]
                rows[i] = [add[x][mrow[y]] for x, y in zip(rows[i], piv)]
        pivots.append(col)
        top += 1
        if top == len(rows):
            break
    return rows[:top], pivots


def mat_rref(M: Matrix) -> Matrix:
    """Reduced row-echelon form, keeping zero rows at the bottom so the shape is preserved."""
    reduced, _ = _rref_rows(M.field, [list(r) for r in M.rows], M.ncols)
    zero = [(0,) * M.ncols] * (M.nrows - len(reduced))
    return Matrix(M.field, tuple(tuple(r) for r in reduced) + tuple(zero), M.ncols)


def mat_rank(M: Matrix) -> int:
    reduced, _ = _rref_rows(M.field, [list(r) for r in M.rows], M.ncols)
    return len(reduced)


def rref_basis(M: Matrix) -> tuple[Matrix, list[int]]:
    """RREF with the zero rows dropped, plus the pivot columns."""
    reduced, pivots = _rref_rows(M.field, [list(r) for r in M.rows], M.ncols)
    return Matrix(M.field, tuple(tuple(r) for r in reduced), M.ncols), pivots


def mat_nullspace_basis(M: Matrix) -> Matrix:
    """Rows spanning {x : M x^T = 0}, returned in reduced row-echelon form."""
    field = M.field
    reduced, pivots = _rref_rows(field, [list(r) for r in M.rows], M.ncols)
    free = [c for c in range(M.ncols) if c not in set(pivots)]
    basis = []
    for fc in free:
        v = [0] * M.ncols
        v[fc] = 1
        for row, pc in zip(reduced, pivots):
            v[pc] = field.neg(row[fc])
        basis.append(v)
    out, _ = _rref_rows(field, basis, M.ncols)
    return Matrix(field, tuple(tuple(r) for r in out), M.ncols)
