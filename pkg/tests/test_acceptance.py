"""Acceptance suite: one test per criterion, each reporting a PASS/FAIL line."""

import random
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from lrcbounds import bounds
from lrcbounds.code import distance_via_restriction, minimum_distance
from lrcbounds.constructions import parity_product_code, shortened_hamming_6_3
from lrcbounds.graph import (
    build_expander_set,
    build_recovering_graph,
    closure,
    distance_bound_coloring,
    exhaustive_permutation_stats,
    expansion_ratio,
    random_recovering_graph,
    recovery_elimination_order,
)
from lrcbounds.recovery import find_recovering_family
from lrcbounds.search import bound_sweep, gaussian_binomial, max_distance_with_locality, sweep_cells


def report(number, title, ok, detail, elapsed, limit=None):
    within = limit is None or elapsed < limit
    status = "PASS" if ok and within else "FAIL"
    budget = "" if limit is None else f" / {limit:g}s"
    line = f"{status} criterion {number:>2} {title}: {detail} [{elapsed:.2f}s{budget}]"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line
    assert within, line


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_criterion_01_hamming_tightness():
    with Timer() as tm:
        code, _ = shortened_hamming_6_3()
        fam = find_recovering_family(code, 2, 2)
        fam.validate(6, code)
        d = minimum_distance(code)
        bound = bounds.distance_bound(6, 3, 2, 2)
        ok = fam.is_uniform and d == distance_via_restriction(code) == 3 and bound == 3
    report(1, "hamming tightness", ok, f"d={d}, bound={bound}, equality={d == bound}", tm.elapsed, 1)


def test_criterion_02_oracle_tightness():
    with Timer() as tm:
        res = max_distance_with_locality(6, 3, 2, 2, 2)
        ok = gaussian_binomial(6, 3, 2) == 1395 and res.distance == 3 == res.bound
    report(2, "oracle tightness", ok, f"max d over 1395 codes = {res.distance}, {res.flag}", tm.elapsed, 10)


def test_criterion_03_reduction_identities():
    with Timer() as tm:
        ok = all(bounds.rate_bound(r, 1) == Fraction(r, r + 1) for r in range(1, 101))
        ok &= all(
            bounds.distance_bound(n, k, r, 1) == bounds.distance_bound_t1(n, k, r)
            for n in range(1, 51)
            for k in range(1, n + 1)
            for r in range(1, k)
        )
        ok &= bounds.rate_bound(2, 2) == Fraction(8, 15)
    report(3, "reduction identities", ok, "t=1 rate and distance, rate(2,2)=8/15", tm.elapsed)


def test_criterion_04_inclusion_exclusion():
    with Timer() as tm:
        # coloring_probability raises if its two forms disagree
        ok = all(
            1 - bounds.coloring_probability(r, t) == bounds.rate_bound(r, t)
            for r in range(1, 31)
            for t in range(1, 31)
        )
    report(4, "inclusion-exclusion", ok, "r,t <= 30", tm.elapsed)


def test_criterion_05_base_r_identity():
    with Timer() as tm:
        ok = all(
            bounds.base_r_identity_check(m, r, t) for m in range(1001) for r in range(2, 6) for t in range(7)
        )
    report(5, "base-r identity", ok, "m <= 1000, r in [2,5], t in [0,6]", tm.elapsed, 5)


def test_criterion_06_rroot_sandwich():
    with Timer() as tm:
        ok = all(all(bounds.rroot_sandwich(r, t)) for r in range(1, 7) for t in range(1, 31))
    report(6, "r-th root sandwich", ok, "r in [1,6], t in [1,30]", tm.elapsed)


def test_criterion_07_exact_expectation():
    with Timer() as tm:
        code, fam = parity_product_code(2, 2)
        G = build_recovering_graph(fam)
        st = exhaustive_permutation_stats(G)
        # every permutation's U is one of the distinct colored sets
        eliminable = all(recovery_elimination_order(G, U) is not None for U in st["colored_sets"])
        room = all(code.k <= code.n - len(U) for U in st["colored_sets"])
        ok = st["count"] == 362880 and st["mean"] == Fraction(21, 5) and st["max"] >= 5 and eliminable and room
    detail = f"mean |U| = {st['mean']} over {st['count']} permutations, max {st['max']}"
    report(7, "exact expectation", ok, detail, tm.elapsed, 30)


def test_criterion_08_expander_sets():
    with Timer() as tm:
        _, fam = parity_product_code(2, 2)
        G = build_recovering_graph(fam)
        ok = bounds.expansion_constant(2, 2) == Fraction(7, 4)
        for v in range(1, 10):
            for tp in range(3):
                S = build_expander_set(G, v, tp)
                ok &= len(S) <= 2**tp and v in closure(G, S)
                ok &= expansion_ratio(G, S) >= bounds.expansion_constant(2, tp)
    report(8, "expander sets", ok, "9 anchors, t' in {0,1,2}", tm.elapsed)


def test_criterion_09_distance_procedure():
    with Timer() as tm:
        _, pfam = parity_product_code(2, 2)
        Gp = build_recovering_graph(pfam)
        cp = len(closure(Gp, distance_bound_coloring(Gp, 4)))
        _, hfam = shortened_hamming_6_3()
        Gh = build_recovering_graph(hfam)
        ch = len(closure(Gh, distance_bound_coloring(Gh, 3)))
        ok = cp >= 4 and ch >= 3
    report(9, "distance procedure", ok, f"product closure {cp} >= 4, hamming closure {ch} >= 3", tm.elapsed)


def _random_shape(rng):
    while True:
        n, r, t = rng.randint(2, 12), rng.randint(1, 4), rng.randint(1, 4)
        if r * t <= n - 1:
            return n, r, t


@pytest.mark.slow
def test_criterion_10_closure_and_sweep():
    with Timer() as tm:
        rng = random.Random(2024)
        ok = True
        for seed in range(200):
            n, r, t = _random_shape(rng)
            G = random_recovering_graph(n, r, t, seed)
            for _ in range(10):
                A = {v for v in range(1, n + 1) if rng.random() < 0.3}
                B = A | {v for v in range(1, n + 1) if rng.random() < 0.3}
                CA = closure(G, A)
                ok &= A <= CA and closure(G, CA) == CA and CA <= closure(G, B)
        rows = bound_sweep(sweep_cells(1, 7, 6, 3), q=2)
        violations = [row for row in rows if row.oracle is not None and row.oracle > row.bound]
        ok &= not violations and all(row.flag != "GUARD" for row in rows)
    detail = f"200 graphs closure laws hold; {len(rows)} sweep cells, {len(violations)} violations"
    report(10, "closure algebra and sweep", ok, detail, tm.elapsed)


def _cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "lrcbounds.cli", *map(str, args)], capture_output=True, check=False
    )
    return proc.returncode, proc.stdout


@pytest.mark.slow
def test_criterion_11_determinism():
    with Timer() as tm:
        v1, v2 = _cli("verify-paper", "--json"), _cli("verify-paper", "--json")
        search = ["search", "--n", 6, "--k", 3, "--q", 2, "--r", 2, "--t", 2, "--json"]
        s1, s2, s4 = _cli(*search), _cli(*search), _cli(*search, "--jobs", 4)
        ok = v1 == v2 and v1[0] == 0 and s1 == s2 == s4 and s1[0] == 0
    report(11, "determinism", ok, "verify-paper and search byte-identical across reruns and --jobs", tm.elapsed)
