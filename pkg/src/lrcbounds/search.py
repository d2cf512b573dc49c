"""Exhaustive search over all small linear codes, as ground truth for the bounds."""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Iterable, Iterator

from .bounds import distance_bound
from .code import GuardError, LinearCode, minimum_distance
from .field import Field, Matrix, field_new
from .recovery import find_disjoint_recovering_sets

SUBSPACE_GUARD = 10**7


def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def pivot_patterns(n: int, k: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(n), k))


def _free_positions(pivots: tuple[int, ...], n: int) -> list[tuple[int, int]]:
    pivset = set(pivots)
    return [(row, col) for row, p in enumerate(pivots) for col in range(p + 1, n) if col not in pivset]


def _codes_for_pattern(field: Field, n: int, pivots: tuple[int, ...]) -> Iterator[LinearCode]:
    k = len(pivots)
    free = _free_positions(pivots, n)
    for values in itertools.product(range(field.q), repeat=len(free)):
        rows = [[0] * n for _ in range(k)]
        for row, p in enumerate(pivots):
            rows[row][p] = 1
        for (row, col), x in zip(free, values):
            rows[row][col] = x
        yield LinearCode(Matrix.from_rows(field, rows, n))


def _check_guard(n: int, k: int, q: int, guard: int) -> None:
    count = gaussian_binomial(n, k, q)
    if count > guard:
        raise GuardError(f"[{n},{k}] codes over GF({q}): {count} subspaces exceed the guard {guard}")


def enumerate_codes(n: int, k: int, q: int, guard: int = SUBSPACE_GUARD) -> Iterator[LinearCode]:
    """Every [n, k] code over GF(q) exactly once, through its reduced row-echelon generator.

    Codes come grouped by pivot columns (lexicographic), then by the free
    entries in lexicographic order.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    field = field_new(q)
    _check_guard(n, k, q, guard)
    for pivots in pivot_patterns(n, k):
        yield from _codes_for_pattern(field, n, pivots)


def has_locality(code: LinearCode, r: int, t: int) -> bool:
    """Every coordinate has t disjoint recovering sets of size <= r (checked in ascending order)."""
    return all(find_disjoint_recovering_sets(code, i, r, t) is not None for i in range(1, code.n + 1))


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    q: int
    r: int
    t: int
    distance: int | None
    witness: LinearCode | None
    index: int | None  # position of the witness in enumeration order

    @property
    def bound(self) -> int:
        return distance_bound(self.n, self.k, self.r, self.t)

    @property
    def flag(self) -> str:
        return _flag(self.distance, self.bound)

    def to_dict(self) -> dict:
        return {
            "n": self.n, "k": self.k, "q": self.q, "r": self.r, "t": self.t,
            "oracle": self.distance, "bound": self.bound, "flag": self.flag, "witness_index": self.index,
            "witness_generator": None if self.witness is None else [list(row) for row in self.witness.generator.rows],
        }


def _flag(oracle: int | None, bound: int) -> str:
    if oracle is None:
        return "INFEASIBLE"
    if oracle > bound:
        return "VIOLATION"
    return "TIGHT" if oracle == bound else "GAP"


def _search_patterns(n, k, q, r, t, patterns, offset):
    """Best (distance, index, generator rows) over the given pivot patterns, earliest index on ties."""
    field = field_new(q)
    best_d, best_idx, best_rows = None, None, None
    idx = offset
    for pivots in patterns:
        for code in _codes_for_pattern(field, n, pivots):
            d = minimum_distance(code)
            if (best_d is None or d > best_d) and has_locality(code, r, t):
                best_d, best_idx, best_rows = d, idx, code.generator.rows
            idx += 1
    return best_d, best_idx, best_rows


def _partition(n: int, k: int, q: int, jobs: int):
    """Split the pivot patterns into contiguous chunks with their enumeration offsets."""
    patterns = pivot_patterns(n, k)
    sizes = [q ** len(_free_positions(p, n)) for p in patterns]
    total = sum(sizes)
    chunks, cur, start, acc = [], [], 0, 0
    target = total / max(jobs, 1)
    for p, s in zip(patterns, sizes):
        if not cur:
            start = acc
        cur.append(p)
        acc += s
        if acc >= target * (len(chunks) + 1) and len(chunks) < jobs - 1:
            chunks.append((cur, start))
            cur = []
    if cur:
        chunks.append((cur, start))
    return chunks


def max_distance_with_locality(
    n: int, k: int, q: int, r: int, t: int, jobs: int = 1, guard: int = SUBSPACE_GUARD
) -> SearchResult:
    """Largest minimum distance among [n, k] codes over GF(q) with t disjoint recovering sets of size <= r.

    The witness is the first code in enumeration order reaching that
    distance, whatever the number of worker processes.
    """
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    if r < 1 or t < 1:
        raise ValueError(f"need r >= 1 and t >= 1, got r={r}, t={t}")
    field_new(q)
    _check_guard(n, k, q, guard)
    chunks = _partition(n, k, q, jobs)
    if jobs <= 1 or len(chunks) == 1:
        parts = [_search_patterns(n, k, q, r, t, pats, off) for pats, off in chunks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_search_patterns, n, k, q, r, t, pats, off) for pats, off in chunks]
            parts = [f.result() for f in futs]
    parts = [p for p in parts if p[0] is not None]
    if not parts:
        return SearchResult(n, k, q, r, t, None, None, None)
    d, idx, rows = max(parts, key=lambda p: (p[0], -p[1]))
    return SearchResult(n, k, q, r, t, d, LinearCode(Matrix(field_new(q), rows, n)), idx)


# ---------------------------------------------------------------- sweeps


@dataclass(frozen=True)
class SweepRow:
    n: int
    k: int
    r: int
    t: int
    q: int
    bound: int
    oracle: int | None
    flag: str
    note: str = ""


def _sweep_nk(n: int, k: int, q: int, rt_cells: list[tuple[int, int]]) -> list[SweepRow]:
    # one pass over the codes serves every (r, t) cell: scan by distance, descending
    codes = list(enumerate_codes(n, k, q))
    dists = [minimum_distance(c) for c in codes]
    order = sorted(range(len(codes)), key=lambda i: (-dists[i], i))
    # locality is monotone: (r, t) passing implies (r' >= r, t' <= t) passes
    passed: dict[int, list[tuple[int, int]]] = {}
    failed: dict[int, list[tuple[int, int]]] = {}

    def ok(i: int, r: int, t: int) -> bool:
        if any(r0 <= r and t0 >= t for r0, t0 in passed.get(i, ())):
            return True
        if any(r0 >= r and t0 <= t for r0, t0 in failed.get(i, ())):
            return False
        res = has_locality(codes[i], r, t)
        (passed if res else failed).setdefault(i, []).append((r, t))
        return res

    rows = []
    for r, t in rt_cells:
        oracle = next((dists[i] for i in order if ok(i, r, t)), None)
        bound = distance_bound(n, k, r, t)
        rows.append(SweepRow(n, k, r, t, q, bound, oracle, _flag(oracle, bound)))
    return rows


def _sweep_task(args):
    n, k, q, rt_cells, guard = args
    try:
        _check_guard(n, k, q, guard)
    except GuardError as exc:
        return [SweepRow(n, k, r, t, q, distance_bound(n, k, r, t), None, "GUARD", str(exc)) for r, t in rt_cells]
    return _sweep_nk(n, k, q, rt_cells)


def bound_sweep(
    cells: Iterable[tuple[int, int, int, int]], q: int = 2, jobs: int = 1, guard: int = SUBSPACE_GUARD
) -> list[SweepRow]:
    """Oracle distance against the bound for every (n, k, r, t) cell, in the given order.

    Cells whose enumeration would exceed the guard come back flagged GUARD
    rather than raising.
    """
    cells = list(cells)
    groups: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for n, k, r, t in cells:
        groups.setdefault((n, k), []).append((r, t))
    tasks = [(n, k, q, rts, guard) for (n, k), rts in groups.items()]
    if jobs <= 1 or len(tasks) <= 1:
        results = [_sweep_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_task, tasks))
    by_cell = {(row.n, row.k, row.r, row.t): row for rows in results for row in rows}
    return [by_cell[cell] for cell in cells]


def sweep_cells(n_min: int, n_max: int, r_max: int, t_max: int) -> list[tuple[int, int, int, int]]:
    return [
        (n, k, r, t)
        for n in range(n_min, n_max + 1)
        for k in range(1, n + 1)
        for r in range(1, r_max + 1)
        for t in range(1, t_max + 1)
    ]


SWEEP_FIELDS = ["n", "k", "r", "t", "q", "bound", "oracle", "flag"]


def sweep_to_csv(rows: Iterable[SweepRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_FIELDS)
    for row in rows:
        writer.writerow(["" if (v := getattr(row, f)) is None else v for f in SWEEP_FIELDS])
    return buf.getvalue()


def sweep_to_json(rows: Iterable[SweepRow]) -> str:
    return json.dumps([asdict(row) for row in rows], indent=2)
