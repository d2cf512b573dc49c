"""Edge-colored recovering graphs and the procedures that run on them.

Vertex v has an ordered tuple of recovering sets; the l-th one (1-based) is the
set of endpoints of v's color-l edges.  A graph may be *residual*: its vertex
set is a subset of ``[1, n]`` and every recovering set is restricted to the
surviving vertices, removed vertices counting as already known.
"""

from __future__ import annotations

import itertools
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

import numpy as np

from .bounds import rate_bound
from .recovery import FamilyError, RecoveringFamily

EXHAUSTIVE_MAX_N = 10


class PreconditionError(ValueError):
    pass


class RecoveringGraph:
    """Immutable edge-colored digraph; ``sets[v]`` is v's tuple of recovering sets."""

    __slots__ = ("n", "vertices", "sets")

    def __init__(self, sets: Mapping[int, Sequence[Iterable[int]]], n: int | None = None):
        frozen = {int(v): tuple(frozenset(int(u) for u in s) for s in per) for v, per in sets.items()}
        self.vertices = frozenset(frozen)
        self.n = max(self.vertices, default=0) if n is None else n
        for v, per in frozen.items():
            if not 1 <= v <= self.n:
                raise ValueError(f"vertex {v} outside [1, {self.n}]")
            seen: set[int] = set()
            for s in per:
                if v in s:
                    raise ValueError(f"self-loop at vertex {v}")
                if not s <= self.vertices:
                    raise ValueError(f"vertex {v} points outside the vertex set: {sorted(s - self.vertices)}")
                if s & seen:
                    raise ValueError(f"recovering sets of vertex {v} are not disjoint")
                seen |= s
        self.sets = frozen

    def __repr__(self) -> str:
        return f"RecoveringGraph(|V|={len(self.vertices)}, n={self.n}, r={self.r}, t={self.t})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RecoveringGraph) and (self.n, self.sets) == (other.n, other.sets)

    @property
    def r(self) -> int:
        """Largest recovering-set size."""
        return max((len(s) for per in self.sets.values() for s in per), default=0)

    @property
    def t(self) -> int:
        """Smallest number of recovering sets over the vertices."""
        return min((len(per) for per in self.sets.values()), default=0)

    @property
    def is_uniform(self) -> bool:
        sizes = {len(s) for per in self.sets.values() for s in per}
        counts = {len(per) for per in self.sets.values()}
        return len(sizes) <= 1 and len(counts) <= 1

    def out_degree(self, v: int) -> int:
        return sum(len(s) for s in self.sets[v])

    def edges(self) -> list[tuple[int, int, int]]:
        """All (tail, head, color) triples in ascending order."""
        return [
            (v, u, color)
            for v in sorted(self.vertices)
            for color, s in enumerate(self.sets[v], start=1)
            for u in sorted(s)
        ]

    def edge_color(self, v: int, u: int) -> int | None:
        for color, s in enumerate(self.sets[v], start=1):
            if u in s:
                return color
        return None

    def subgraph(self, keep: Iterable[int]) -> RecoveringGraph:
        """Residual graph on ``keep``; recovering sets lose their removed members."""
        keep = frozenset(keep) & self.vertices
        return RecoveringGraph({v: [s & keep for s in self.sets[v]] for v in keep}, self.n)

    def truncate(self, m: int) -> RecoveringGraph:
        """Keep only each vertex's first m recovering sets."""
        return RecoveringGraph({v: per[:m] for v, per in self.sets.items()}, self.n)

    def prune_for(self, v: int) -> RecoveringGraph:
        """Delete v, and drop one recovering set from every other vertex: the one holding v, else the first."""
        pruned = {}
        for u, per in self.sets.items():
            if u == v:
                continue
            drop = next((j for j, s in enumerate(per) if v in s), 0)
            pruned[u] = per[:drop] + per[drop + 1 :]
        return RecoveringGraph(pruned, self.n)

    def closure(self, S: Iterable[int]) -> frozenset[int]:
        return closure(self, S)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "vertices": {str(v): [sorted(s) for s in self.sets[v]] for v in sorted(self.vertices)},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> RecoveringGraph:
        d = json.loads(text)
        return cls({int(v): per for v, per in d["vertices"].items()}, d["n"])

    def to_dot(self) -> str:
        palette = ["red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan"]
        lines = ["digraph recovering {"]
        lines += [f"  {v};" for v in sorted(self.vertices)]
        for v, u, color in self.edges():
            lines.append(f'  {v} -> {u} [color="{palette[(color - 1) % len(palette)]}", label="{color}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def build_recovering_graph(family: RecoveringFamily, n: int | None = None) -> RecoveringGraph:
    n = family.n if n is None else n
    try:
        family.validate(n)
    except FamilyError as exc:
        raise ValueError(str(exc)) from None
    return RecoveringGraph({i: per for i, per in enumerate(family.sets, start=1)}, n)


def _check_subset(G: RecoveringGraph, S: Iterable[int]) -> set[int]:
    S = set(S)
    if not S <= G.vertices:
        raise ValueError(f"vertices {sorted(S - G.vertices)} are not in the graph")
    return S


def closure(G: RecoveringGraph, S: Iterable[int]) -> frozenset[int]:
    """Least superset of S in which no outside vertex has a recovering set fully inside it."""
    cur = _check_subset(G, S)
    order = sorted(G.vertices)
    changed = True
    while changed:
        changed = False
        for v in order:
            if v not in cur and any(s <= cur for s in G.sets[v]):
                cur.add(v)
                changed = True
    return frozenset(cur)


def expansion_ratio(G: RecoveringGraph, S: Iterable[int]) -> Fraction:
    S = set(S)
    if not S:
        raise ValueError("expansion ratio of the empty set is undefined")
    return Fraction(len(closure(G, S)), len(S))


# ------------------------------------------------------- permutation coloring


def _check_permutation(G: RecoveringGraph, tau: Sequence[int]) -> tuple[int, ...]:
    tau = tuple(int(x) for x in tau)
    if sorted(tau) != list(range(1, G.n + 1)):
        raise ValueError(f"tau is not a permutation of [1, {G.n}]")
    return tau


def color_by_permutation(G: RecoveringGraph, tau: Sequence[int]) -> dict[int, int | None]:
    """Color v with the smallest j such that tau(v) exceeds tau on all of v's j-th recovering set.

    ``tau[v - 1]`` is the value of the permutation at vertex v.  Uncolored
    vertices map to None.
    """
    tau = _check_permutation(G, tau)
    coloring = {}
    for v in sorted(G.vertices):
        tv = tau[v - 1]
        coloring[v] = next(
            (j for j, s in enumerate(G.sets[v], start=1) if all(tau[m - 1] < tv for m in s)),
            None,
        )
    return coloring


def colored_set(G: RecoveringGraph, tau: Sequence[int]) -> frozenset[int]:
    return frozenset(v for v, c in color_by_permutation(G, tau).items() if c is not None)


def colored_fraction_target(G: RecoveringGraph) -> Fraction:
    """n (1 - 1/prod(1 + 1/(j r))), the expected number of colored vertices for uniform graphs."""
    return len(G.vertices) * (1 - rate_bound(G.r, G.t))


@dataclass(frozen=True)
class ColoredSetResult:
    tau: tuple[int, ...]
    U: frozenset[int]
    trial: int
    seed: int
    target: Fraction

    @property
    def size(self) -> int:
        return len(self.U)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "trial": self.trial,
            "size": self.size,
            "target": str(self.target),
            "target_float": float(self.target),
            "tau": list(self.tau),
            "U": sorted(self.U),
        }


def trial_permutation(n: int, seed: int, trial: int) -> tuple[int, ...]:
    """The permutation drawn for a given trial: a Fisher-Yates shuffle from a per-trial seeded generator."""
    tau = list(range(1, n + 1))
    random.Random(f"{seed}:{trial}").shuffle(tau)
    return tuple(tau)


def _best_in_range(G: RecoveringGraph, seed: int, start: int, stop: int) -> tuple[int, int, tuple[int, ...]]:
    best = (-1, 0, ())
    for trial in range(start, stop):
        tau = trial_permutation(G.n, seed, trial)
        size = len(colored_set(G, tau))
        if size > best[0]:
            best = (size, trial, tau)
    return best


def find_large_colored_set(G: RecoveringGraph, trials: int, seed: int, jobs: int = 1) -> ColoredSetResult:
    """Best colored set over ``trials`` seeded random permutations.

    Ties go to the earliest trial, so the result does not depend on ``jobs``.
    """
    if trials < 1:
        raise ValueError(f"need trials >= 1, got {trials}")
    if G.vertices != frozenset(range(1, G.n + 1)):
        raise ValueError("permutation coloring needs the full vertex set [1, n]")
    if jobs <= 1 or trials < 2 * jobs:
        parts = [_best_in_range(G, seed, 0, trials)]
    else:
        bounds = np.linspace(0, trials, jobs + 1).astype(int).tolist()
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            futs = [pool.submit(_best_in_range, G, seed, a, b) for a, b in zip(bounds, bounds[1:]) if b > a]
            parts = [f.result() for f in futs]
    size, trial, tau = max(parts, key=lambda p: (p[0], -p[1]))
    return ColoredSetResult(tau, colored_set(G, tau), trial, seed, colored_fraction_target(G))


def recovery_elimination_order(G: RecoveringGraph, U: Iterable[int]) -> list[int] | None:
    """Peel U one vertex at a time, each having a recovering set disjoint from what is left.

    Always takes the smallest eligible vertex.  Removing vertices never makes
    another vertex ineligible, so the greedy order fails only when no order
    exists.  Returns None if the peeling stalls.
    """
    remaining = _check_subset(G, U)
    order = []
    while remaining:
        v = next(
            (v for v in sorted(remaining) if any(not (s & remaining) for s in G.sets[v])),
            None,
        )
        if v is None:
            return None
        order.append(v)
        remaining.remove(v)
    return order


def _stuck_core(G: RecoveringGraph, U: set[int]) -> set[int]:
    remaining = set(U)
    progress = True
    while progress:
        progress = False
        for v in sorted(remaining):
            if any(not (s & remaining) for s in G.sets[v]):
                remaining.remove(v)
                progress = True
    return remaining


def cycle_witness(
    G: RecoveringGraph,
    U: Iterable[int],
    tau: Sequence[int] | None = None,
    coloring: Mapping[int, int | None] | None = None,
) -> list[int]:
    """Closed walk v1 -> ... -> vl = v1 following each vertex's own color inside the stuck part of U.

    Exactly one of ``tau`` and ``coloring`` must be given; ``coloring`` lets a
    caller supply an arbitrary (possibly forged) assignment.  With an honest
    tau the precondition can never hold, because tau would have to decrease
    strictly around the returned cycle.
    """
    U = _check_subset(G, U)
    if (tau is None) == (coloring is None):
        raise ValueError("give exactly one of tau or coloring")
    if coloring is None:
        coloring = color_by_permutation(G, tau)
    uncolored = sorted(v for v in U if coloring.get(v) is None)
    if uncolored:
        raise PreconditionError(f"vertices {uncolored} are not colored")
    core = _stuck_core(G, U)
    if not core:
        raise PreconditionError("elimination succeeds on U; there is no stalled part")
    walk = [min(core)]
    position = {walk[0]: 0}
    while True:
        v = walk[-1]
        color = coloring[v]
        if not 1 <= color <= len(G.sets[v]):
            raise PreconditionError(f"vertex {v} has color {color} but only {len(G.sets[v])} recovering sets")
        nxt = min(G.sets[v][color - 1] & core)
        if nxt in position:
            return walk[position[nxt] :] + [nxt]
        position[nxt] = len(walk)
        walk.append(nxt)


def exhaustive_permutation_stats(G: RecoveringGraph) -> dict:
    """Distribution of |U| over all n! permutations, computed with numpy.

    Returns ``{"count", "total", "mean", "max", "histogram", "colored_sets"}``
    where ``mean`` is exact and ``colored_sets`` is the set of distinct U.
    """
    n = G.n
    if n > EXHAUSTIVE_MAX_N:
        raise ValueError(f"exhaustive enumeration limited to n <= {EXHAUSTIVE_MAX_N}, got {n}")
    if G.vertices != frozenset(range(1, n + 1)):
        raise ValueError("permutation coloring needs the full vertex set [1, n]")
    perms = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8)
    colored = np.zeros(perms.shape, dtype=bool)
    for v in range(1, n + 1):
        tv = perms[:, v - 1]
        for s in G.sets[v]:
            ok = np.ones(len(perms), dtype=bool)
            for m in s:
                ok &= tv > perms[:, m - 1]
            colored[:, v - 1] |= ok
    sizes = colored.sum(axis=1)
    masks = colored.astype(np.int64) @ (1 << np.arange(n, dtype=np.int64))
    distinct = {frozenset(j + 1 for j in range(n) if m >> j & 1) for m in np.unique(masks).tolist()}
    total = int(sizes.sum())
    hist = np.bincount(sizes, minlength=n + 1)
    return {
        "count": factorial(n),
        "total": total,
        "mean": Fraction(total, factorial(n)),
        "max": int(sizes.max()),
        "histogram": {i: int(c) for i, c in enumerate(hist) if c},
        "colored_sets": distinct,
    }


# ------------------------------------------------------------ expander sets


def _check_sets(G: RecoveringGraph, t_prime: int) -> None:
    for v in sorted(G.vertices):
        per = G.sets[v]
        if len(per) < t_prime or any(not s for s in per[:t_prime]):
            raise PreconditionError(f"vertex {v} has fewer than {t_prime} nonempty recovering sets")


def _expander(G: RecoveringGraph, v: int, t_prime: int) -> set[int]:
    if t_prime == 0:
        return {v}
    G1 = G.prune_for(v)
    S: set[int] = set()
    closed: frozenset[int] = frozenset()
    for vi in sorted(G.sets[v][0]):
        if vi in closed:
            continue
        Gi = G1.subgraph(G1.vertices - closed)
        S |= _expander(Gi, vi, t_prime - 1)
        closed = closure(G1, S)
    return S


def build_expander_set(G: RecoveringGraph, v: int, t_prime: int) -> tuple[int, ...]:
    """A set S with |S| <= r^t', v in closure(S) and expansion ratio at least e_t'.

    Recursive: with t' = 0 return {v}.  Otherwise delete v, drop one
    recovering set per remaining vertex (the one containing v if any), then
    walk v's first recovering set and recurse on each member that is not yet
    in the accumulated closure, inside the graph with that closure removed.
    """
    if v not in G.vertices:
        raise ValueError(f"vertex {v} is not in the graph")
    if t_prime < 0:
        raise ValueError(f"need t' >= 0, got {t_prime}")
    _check_sets(G, t_prime)
    return tuple(sorted(_expander(G, v, t_prime)))


def distance_bound_coloring(G: RecoveringGraph, k: int) -> tuple[int, ...]:
    """Spend a budget of k - 1 vertices on expander sets, largest admissible first.

    Each round picks the largest m <= t with r^m within the remaining budget,
    anchors at the smallest vertex outside the current closure, and builds an
    expander set with the first m colors of the residual graph.
    """
    if k < 2:
        raise PreconditionError(f"need k >= 2, got k={k}")
    r, t = G.r, G.t
    _check_sets(G, t)
    budget = k - 1
    S: set[int] = set()
    closed = closure(G, S)
    while budget > 0:
        survivors = G.vertices - closed
        if not survivors:
            break
        m = max(m for m in range(t + 1) if r**m <= budget)
        Gi = G.subgraph(survivors).truncate(m)
        Si = _expander(Gi, min(survivors), m)
        S |= Si
        budget -= len(Si)
        closed = closure(G, S)
    return tuple(sorted(S))


# ----------------------------------------------------------- random graphs


def random_recovering_graph(n: int, r: int, t: int, seed: int) -> RecoveringGraph:
    """Every vertex gets t disjoint recovering sets of exactly r other vertices."""
    if t * r > n - 1:
        raise ValueError(f"t*r = {t * r} sets need more than the {n - 1} other vertices")
    rng = random.Random(seed)
    sets = {}
    for v in range(1, n + 1):
        others = rng.sample([u for u in range(1, n + 1) if u != v], t * r)
        sets[v] = [others[j * r : (j + 1) * r] for j in range(t)]
    return RecoveringGraph(sets, n)
