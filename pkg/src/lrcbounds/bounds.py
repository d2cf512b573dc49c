"""Closed-form rate and distance bounds for codes with t disjoint recovering sets.

Everything is exact: values are :class:`fractions.Fraction` or ``int``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, prod


def _check_rt(r: int, t: int) -> None:
    if r < 1 or t < 1:
        raise ValueError(f"need r >= 1 and t >= 1, got r={r}, t={t}")


def _check_nk(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")


def rate_bound_t1(r: int) -> Fraction:
    """k/n <= r/(r+1) for a single recovering set."""
    if r < 1:
        raise ValueError(f"need r >= 1, got r={r}")
    return Fraction(r, r + 1)


def distance_bound_t1(n: int, k: int, r: int) -> int:
    """d <= n - k - ceil(k/r) + 2."""
    _check_nk(n, k)
    if r < 1:
        raise ValueError(f"need r >= 1, got r={r}")
    return n - k - -(-k // r) + 2


def availability_product(r: int, t: int) -> Fraction:
    """prod_{j=1}^t (1 + 1/(j r))."""
    _check_rt(r, t)
    return prod((1 + Fraction(1, j * r) for j in range(1, t + 1)), start=Fraction(1))


def rate_bound(r: int, t: int) -> Fraction:
    return 1 / availability_product(r, t)


def distance_bound(n: int, k: int, r: int, t: int) -> int:
    """d <= n - sum_{i=0}^t floor((k-1)/r^i)."""
    _check_nk(n, k)
    _check_rt(r, t)
    return n - sum((k - 1) // r**i for i in range(t + 1))


def coloring_probability(r: int, t: int) -> Fraction:
    """Probability that a vertex is colored by a uniformly random permutation.

    Computed twice, by inclusion-exclusion over the t colors and through the
    product form, and the two are required to agree.
    """
    _check_rt(r, t)
    alternating = sum(Fraction((-1) ** (j - 1) * comb(t, j), j * r + 1) for j in range(1, t + 1))
    closed = 1 - rate_bound(r, t)
    if alternating != closed:
        raise ArithmeticError(f"inclusion-exclusion {alternating} != product form {closed} at r={r}, t={t}")
    return alternating


def rroot_sandwich(r: int, t: int) -> tuple[bool, bool]:
    """Check (t+1) <= P^r <= (t+1)(1+1/r)^r for P = availability_product(r, t).

    Raising to the r-th power keeps the comparison inside the rationals.
    """
    _check_rt(r, t)
    Pr = availability_product(r, t) ** r
    return t + 1 <= Pr, Pr <= (t + 1) * (1 + Fraction(1, r)) ** r


@lru_cache(maxsize=None)
def expansion_constant(r: int, t: int) -> Fraction:
    """e_t = (r^{t+1} - 1) / (r^{t+1} - r^t), which also equals sum_{i<=t} r^{-i}."""
    if r < 2:
        raise ZeroDivisionError(f"expansion constant is undefined for r={r} (denominator r^(t+1) - r^t vanishes)")
    if t < 0:
        raise ValueError(f"need t >= 0, got t={t}")
    e = Fraction(r ** (t + 1) - 1, r ** (t + 1) - r**t)
    if e != sum(Fraction(1, r**i) for i in range(t + 1)):
        raise ArithmeticError(f"expansion constant forms disagree at r={r}, t={t}")
    return e


def base_r_digits(m: int, r: int) -> list[int]:
    digits = []
    while m:
        m, d = divmod(m, r)
        digits.append(d)
    return digits


def base_r_identity_check(m: int, r: int, t: int) -> bool:
    """floor(m/r^t) r^t e_t + sum_{i<t} a_i r^i e_i == sum_{i<=t} floor(m/r^i), a_i the base-r digits of m."""
    if m < 0 or r < 2 or t < 0:
        raise ValueError(f"need m >= 0, r >= 2, t >= 0, got m={m}, r={r}, t={t}")
    digits = base_r_digits(m, r)
    digits += [0] * (t - len(digits))
    lhs = (m // r**t) * r**t * expansion_constant(r, t)
    lhs += sum(digits[i] * r**i * expansion_constant(r, i) for i in range(t))
    rhs = sum(m // r**i for i in range(t + 1))
    return lhs == rhs


def product_code_rate(r: int, t: int) -> Fraction:
    _check_rt(r, t)
    return Fraction(r, r + 1) ** t


def _fmt(x) -> str | int | None:
    if isinstance(x, Fraction):
        return str(x)
    return x


@dataclass(frozen=True)
class BoundReport:
    """A code's parameters (or just (r, t)) against every applicable bound."""

    r: int
    t: int
    n: int | None = None
    k: int | None = None
    achieved_distance: int | None = None
    flags: tuple[str, ...] = field(default=())

    def __post_init__(self):
        _check_rt(self.r, self.t)
        if (self.n is None) != (self.k is None):
            raise ValueError("n and k must be given together")
        if self.n is not None:
            _check_nk(self.n, self.k)

    @property
    def rate_bound(self) -> Fraction:
        return rate_bound(self.r, self.t)

    @property
    def rate_bound_t1(self) -> Fraction:
        return rate_bound_t1(self.r)

    @property
    def distance_bound(self) -> int | None:
        return None if self.n is None else distance_bound(self.n, self.k, self.r, self.t)

    @property
    def distance_bound_t1(self) -> int | None:
        return None if self.n is None else distance_bound_t1(self.n, self.k, self.r)

    @property
    def product_rate(self) -> Fraction:
        """Rate of the t-fold single-parity-check product; conjectured optimal, never asserted."""
        return product_code_rate(self.r, self.t)

    @property
    def achieved_rate(self) -> Fraction | None:
        return None if self.n is None else Fraction(self.k, self.n)

    @property
    def rate_met(self) -> bool | None:
        return None if self.n is None else self.achieved_rate == self.rate_bound

    @property
    def distance_met(self) -> bool | None:
        if self.achieved_distance is None or self.n is None:
            return None
        return self.achieved_distance == self.distance_bound

    def violations(self) -> list[str]:
        out = []
        if self.n is not None and self.achieved_rate > self.rate_bound:
            out.append("rate")
        if self.distance_met is not None and self.achieved_distance > self.distance_bound:
            out.append("distance")
        return out

    def to_dict(self) -> dict:
        keys = [
            "n", "k", "r", "t", "rate_bound", "distance_bound", "rate_bound_t1", "distance_bound_t1",
            "product_rate", "achieved_rate", "achieved_distance", "rate_met", "distance_met",
        ]
        d = {key: _fmt(getattr(self, key)) for key in keys}
        d["product_rate_status"] = "conjectured optimal, unproven"
        d["flags"] = list(self.flags)
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    def to_text(self) -> str:
        d = self.to_dict()
        labels = {
            "product_rate": "product_rate (conjectured optimal)",
        }
        rows = [(labels.get(key, key), "-" if val is None else str(val)) for key, val in d.items() if key not in ("flags", "product_rate_status")]
        if self.flags:
            rows.append(("flags", ", ".join(self.flags)))
        width = max(len(a) for a, _ in rows)
        return "\n".join(f"{a:<{width}}  {b}" for a, b in rows)


def report_table(reports) -> str:
    """Aligned-column table, one row per report."""
    cols = ["n", "k", "r", "t", "rate_bound", "distance_bound", "product_rate", "achieved_distance", "distance_met"]
    rows = [[str("-" if (v := r.to_dict()[c]) is None else v) for c in cols] for r in reports]
    widths = [max(len(c), *(len(row[i]) for row in rows)) if rows else len(c) for i, c in enumerate(cols)]
    lines = ["  ".join(c.rjust(w) for c, w in zip(cols, widths))]
    lines += ["  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows]
    return "\n".join(lines)
