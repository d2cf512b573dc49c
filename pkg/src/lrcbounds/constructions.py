"""Codes that meet or nearly meet the bounds."""

from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from .bounds import product_code_rate, rate_bound
from .code import ENUMERATION_GUARD, GuardError, LinearCode
from .field import field_new
from .recovery import RecoveringFamily, find_recovering_family

HAMMING_6_3_PARITY = (
    (0, 0, 0, 1, 1, 1),
    (0, 1, 1, 0, 0, 1),
    (1, 0, 1, 0, 1, 0),
)


def product_coordinates(r: int, t: int) -> list[tuple[int, ...]]:
    """Coordinate labels of the t-fold product code: t-tuples over [1, r+1] in lexicographic order."""
    return list(itertools.product(range(1, r + 2), repeat=t))


def product_lines(r: int, t: int) -> RecoveringFamily:
    """Axis-parallel lines through each coordinate, minus the coordinate itself.

    Color l varies tuple position t - l, so color 1 is the row (the last
    position varies) and its members are consecutive coordinates.
    """
    coords = product_coordinates(r, t)
    index = {c: i for i, c in enumerate(coords, start=1)}
    sets = []
    for c in coords:
        per = []
        for color in range(1, t + 1):
            axis = t - color
            line = [index[c[:axis] + (a,) + c[axis + 1 :]] for a in range(1, r + 2) if a != c[axis]]
            per.append(tuple(sorted(line)))
        sets.append(tuple(per))
    return RecoveringFamily(r, t, tuple(sets))


def parity_product_code(r: int, t: int, guard: int = ENUMERATION_GUARD) -> tuple[LinearCode, RecoveringFamily]:
    """The t-fold tensor power of the binary [r+1, r] single-parity-check code, with its line family."""
    if r < 1 or t < 1:
        raise ValueError(f"need r >= 1 and t >= 1, got r={r}, t={t}")
    n = (r + 1) ** t
    if n > guard:
        raise GuardError(f"product code length (r+1)^t = {n} exceeds the guard {guard}")
    spc = np.hstack([np.eye(r, dtype=np.int64), np.ones((r, 1), dtype=np.int64)])
    G = np.ones((1, 1), dtype=np.int64)
    for _ in range(t):
        G = np.kron(G, spc) % 2
    code = LinearCode.from_generator(field_new(2), G.tolist())
    return code, product_lines(r, t)


def shortened_hamming_6_3() -> tuple[LinearCode, RecoveringFamily]:
    """The binary [6, 3, 3] shortened Hamming code with a t=2, r=2 family."""
    code = LinearCode.from_parity_check(2, HAMMING_6_3_PARITY)
    family = find_recovering_family(code, 2, 2)
    assert family is not None
    return code, family


def rate_gap_report(r: int, t: int) -> tuple[Fraction, Fraction, Fraction]:
    """(product-code rate, rate bound, bound minus product rate)."""
    achieved, bound = product_code_rate(r, t), rate_bound(r, t)
    return achieved, bound, bound - achieved
