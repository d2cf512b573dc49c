"""Self-check suite: worked examples, identities and constructions checked end to end."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import bounds
from .code import LinearCode, distance_via_restriction, minimum_distance
from .constructions import parity_product_code, rate_gap_report, shortened_hamming_6_3
from .graph import (
    build_expander_set,
    build_recovering_graph,
    closure,
    distance_bound_coloring,
    exhaustive_permutation_stats,
    expansion_ratio,
    recovery_elimination_order,
)
from .recovery import find_recovering_family
from .search import max_distance_with_locality


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


def _hamming_checks(code: LinearCode) -> list[tuple[str, Callable[[], tuple[bool, str]]]]:
    def locality():
        fam = find_recovering_family(code, 2, 2)
        if fam is None:
            return False, "some coordinate lacks 2 disjoint recovering sets of size <= 2"
        fam.validate(code.n, code)
        return fam.is_uniform, f"family {fam.to_json()}"

    def distance():
        d, d2 = minimum_distance(code), distance_via_restriction(code)
        return d == d2 == 3, f"minimum distance {d}, via restriction {d2}"

    def equality():
        b = bounds.distance_bound(6, 3, 2, 2)
        d = minimum_distance(code)
        return (code.n, code.k) == (6, 3) and b == d == 3, f"[{code.n},{code.k}] code, d={d}, bound={b}"

    return [("hamming_locality", locality), ("hamming_distance", distance), ("hamming_bound_equality", equality)]


def _oracle_tightness():
    res = max_distance_with_locality(6, 3, 2, 2, 2)
    return res.distance == 3 == res.bound, f"oracle {res.distance}, bound {res.bound}, {res.flag}"


def _product_code():
    code, fam = parity_product_code(2, 2)
    fam.validate(code.n, code)
    d = minimum_distance(code)
    ok = (code.n, code.k, d) == (9, 4, 4) and Fraction(code.k, code.n) == Fraction(4, 9)
    return ok, f"[{code.n},{code.k},{d}] with row/column recovering sets"


def _rate_gap():
    gap = rate_gap_report(2, 2)
    below = all(rate_gap_report(r, t)[2] >= 0 for r in range(1, 5) for t in range(1, 5))
    return gap == (Fraction(4, 9), Fraction(8, 15), Fraction(4, 45)) and below, f"(2,2): {tuple(map(str, gap))}"


def _reduction_identities():
    ok = all(bounds.rate_bound(r, 1) == Fraction(r, r + 1) == bounds.rate_bound_t1(r) for r in range(1, 101))
    ok &= all(
        bounds.distance_bound(n, k, r, 1) == bounds.distance_bound_t1(n, k, r)
        for n in range(1, 51)
        for k in range(1, n + 1)
        for r in range(1, k)
    )
    ok &= bounds.rate_bound(2, 2) == Fraction(8, 15) == Fraction(2 * 2**2, 3 * 5)
    return ok, "t=1 reductions and rate_bound(2,2) = 8/15"


def _inclusion_exclusion():
    ok = all(1 - bounds.coloring_probability(r, t) == bounds.rate_bound(r, t) for r in range(1, 31) for t in range(1, 31))
    return ok, "alternating sum = product form for r,t <= 30"


def _base_r_identity():
    ok = all(
        bounds.base_r_identity_check(m, r, t) for m in range(1001) for r in range(2, 6) for t in range(7)
    )
    return ok, "m <= 1000, r in [2,5], t in [0,6]"


def _rroot_sandwich():
    ok = all(all(bounds.rroot_sandwich(r, t)) for r in range(1, 7) for t in range(1, 31))
    return ok, "r in [1,6], t in [1,30]"


def _expectation():
    code, fam = parity_product_code(2, 2)
    G = build_recovering_graph(fam)
    st = exhaustive_permutation_stats(G)
    eliminable = all(recovery_elimination_order(G, U) is not None for U in st["colored_sets"])
    ok = st["mean"] == Fraction(21, 5) and st["max"] >= 5 and eliminable and code.k <= code.n - st["max"]
    return ok, f"mean |U| = {st['mean']} over {st['count']} permutations, max {st['max']}"


def _expander_sets():
    _, fam = parity_product_code(2, 2)
    G = build_recovering_graph(fam)
    ok = True
    for v in sorted(G.vertices):
        for tp in range(3):
            S = build_expander_set(G, v, tp)
            ok &= len(S) <= 2**tp and v in closure(G, S)
            ok &= expansion_ratio(G, S) >= bounds.expansion_constant(2, tp)
    return ok, "all 9 anchors, t' in {0,1,2}"


def _distance_procedure():
    code, fam = parity_product_code(2, 2)
    Gp = build_recovering_graph(fam)
    cp = len(closure(Gp, distance_bound_coloring(Gp, 4)))
    hcode, hfam = shortened_hamming_6_3()
    Gh = build_recovering_graph(hfam)
    ch = len(closure(Gh, distance_bound_coloring(Gh, 3)))
    return cp >= 4 and ch >= 3, f"product closure {cp} >= 4, Hamming closure {ch} >= 3"


def run_checks(hamming: LinearCode | None = None) -> list[CheckResult]:
    """Run every check; ``hamming`` replaces the built-in [6,3] code (for fault injection)."""
    code = shortened_hamming_6_3()[0] if hamming is None else hamming
    checks = _hamming_checks(code) + [
        ("oracle_tightness", _oracle_tightness),
        ("product_code", _product_code),
        ("rate_gap", _rate_gap),
        ("reduction_identities", _reduction_identities),
        ("inclusion_exclusion", _inclusion_exclusion),
        ("base_r_identity", _base_r_identity),
        ("rroot_sandwich", _rroot_sandwich),
        ("expectation_exhaustive", _expectation),
        ("expander_sets", _expander_sets),
        ("distance_procedure", _distance_procedure),
    ]
    results = []
    for name, fn in checks:
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        results.append(CheckResult(name, bool(passed), detail))
    return results
