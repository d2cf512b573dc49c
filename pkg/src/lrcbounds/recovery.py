"""Recovering sets: checking them, searching for disjoint families of them."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .code import ENUMERATION_GUARD, LinearCode, _mask, coord_set, enumerate_codewords


class FamilyError(ValueError):
    """A recovering family violates its structural invariants."""


def _check_target(code: LinearCode, i: int, R: Iterable[int]) -> tuple[int, ...]:
    if not 1 <= i <= code.n:
        raise IndexError(f"coordinate {i} outside [1, {code.n}]")
    R = coord_set(R, code.n)
    if i in R:
        raise ValueError(f"coordinate {i} cannot belong to its own recovering set")
    return R


def recovers_by_enumeration(code: LinearCode, i: int, R: Iterable[int], guard: int = ENUMERATION_GUARD) -> bool:
    """No two codewords agree on R while differing at i."""
    R = _check_target(code, i, R)
    words = enumerate_codewords(code, guard)
    seen: dict[tuple, int] = {}
    cols = [j - 1 for j in R]
    for proj, xi in zip(map(tuple, words[:, cols].tolist()), words[:, i - 1].tolist()):
        if seen.setdefault(proj, xi) != xi:
            return False
    return True


def recovers_by_dual(code: LinearCode, i: int, R: Iterable[int]) -> bool:
    """Some dual codeword is nonzero at i and supported inside R + {i}."""
    R = _check_target(code, i, R)
    bit = 1 << (i - 1)
    allowed = _mask(R) | bit
    return any(m & bit and not m & ~allowed for m in code.dual_supports)


def is_recovering_set(code: LinearCode, i: int, R: Iterable[int], method: str = "dual") -> bool:
    """Whether the symbols on R determine symbol i in every codeword.

    ``method`` is ``"dual"`` (dual-codeword supports), ``"enumerate"`` (direct
    check of the definition) or ``"both"``, which runs both and raises
    ``AssertionError`` if they ever disagree.
    """
    if method == "dual":
        return recovers_by_dual(code, i, R)
    if method == "enumerate":
        return recovers_by_enumeration(code, i, R)
    if method == "both":
        a, b = recovers_by_dual(code, i, R), recovers_by_enumeration(code, i, R)
        if a != b:
            raise AssertionError(f"recoverability checks disagree for i={i}, R={tuple(R)}")
        return a
    raise ValueError(f"unknown method {method!r}")


def minimal_recovering_sets(code: LinearCode, i: int, r: int | None = None) -> list[tuple[int, ...]]:
    """Inclusion-minimal recovering sets for coordinate i of size at most r, smallest first then lexicographic."""
    if not 1 <= i <= code.n:
        raise IndexError(f"coordinate {i} outside [1, {code.n}]")
    memo = code._memo.setdefault("minimal_sets", {})
    if i not in memo:
        memo[i] = _minimal_sets(code, i)
    return [c for c in memo[i] if len(c) <= r] if r is not None else list(memo[i])


def _minimal_sets(code: LinearCode, i: int) -> tuple[tuple[int, ...], ...]:
    bit = 1 << (i - 1)
    masks = sorted({m ^ bit for m in code.dual_supports if m & bit}, key=lambda m: (m.bit_count(), _members(m)))
    out: list[int] = []
    for m in masks:
        if not any(om & m == om for om in out):
            out.append(m)
    return tuple(_members(m) for m in out)


def _members(mask: int) -> tuple[int, ...]:
    out = []
    j = 1
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def _candidates(code: LinearCode, i: int, r: int) -> list[tuple[int, ...]]:
    cands = minimal_recovering_sets(code, i, r)
    if cands == [()]:
        # coordinate i is identically zero, so every nonempty set recovers it too
        others = [j for j in range(1, code.n + 1) if j != i]
        cands = [R for size in range(1, r + 1) for R in itertools.combinations(others, size)]
    return cands


def _first_disjoint(cands: Sequence[tuple[int, ...]], t: int) -> list[tuple[int, ...]] | None:
    masks = [_mask(c) for c in cands]
    chosen: list[int] = []

    def rec(start: int, used: int) -> bool:
        if len(chosen) == t:
            return True
        for idx in range(start, len(cands) - (t - len(chosen)) + 1):
            if masks[idx] & used:
                continue
            chosen.append(idx)
            if rec(idx + 1, used | masks[idx]):
                return True
            chosen.pop()
        return False

    return [cands[j] for j in chosen] if rec(0, 0) else None


def find_disjoint_recovering_sets(code: LinearCode, i: int, r: int, t: int) -> list[tuple[int, ...]] | None:
    """First family of t pairwise disjoint recovering sets of size <= r for coordinate i.

    Candidates are ordered smallest first, then lexicographically, and the
    backtracking returns the first admissible combination in that order.  Only
    inclusion-minimal sets are tried: replacing a set by a minimal subset keeps
    the family disjoint and moves it earlier in the order, so the first family
    over all recovering sets already consists of minimal ones.  The exception
    is a coordinate that is zero on every codeword: the empty set recovers it,
    but families hold nonempty sets, so every nonempty set is a candidate.
    """
    if r < 1 or t < 1:
        raise ValueError(f"need r >= 1 and t >= 1, got r={r}, t={t}")
    return _first_disjoint(_candidates(code, i, r), t)


def max_availability(code: LinearCode, i: int, r: int) -> int:
    cands = _candidates(code, i, r)
    t = 0
    while _first_disjoint(cands, t + 1) is not None:
        t += 1
    return t


def locality_profile(code: LinearCode, r: int) -> tuple[int, ...]:
    """For every coordinate, the largest t admitting t disjoint recovering sets of size <= r."""
    if r < 1:
        raise ValueError(f"need r >= 1, got {r}")
    return tuple(max_availability(code, i, r) for i in range(1, code.n + 1))


@dataclass(frozen=True)
class RecoveringFamily:
    """Per-coordinate recovering sets: ``sets[i - 1]`` holds the t sets of coordinate i."""

    r: int
    t: int
    sets: tuple[tuple[tuple[int, ...], ...], ...]

    @classmethod
    def from_lists(cls, r: int, t: int, sets) -> RecoveringFamily:
        return cls(r, t, tuple(tuple(coord_set(s) for s in per) for per in sets))

    @property
    def n(self) -> int:
        return len(self.sets)

    @property
    def is_uniform(self) -> bool:
        """True when every set has exactly r elements."""
        return all(len(s) == self.r for per in self.sets for s in per)

    def validate(self, n: int | None = None, code: LinearCode | None = None) -> None:
        """Raise FamilyError unless the structural invariants hold (and, given a code, recoverability)."""
        n = self.n if n is None else n
        if self.r < 1 or self.t < 1:
            raise FamilyError(f"need r >= 1 and t >= 1, got r={self.r}, t={self.t}")
        if len(self.sets) != n:
            raise FamilyError(f"family covers {len(self.sets)} coordinates, expected {n}")
        for i, per in enumerate(self.sets, start=1):
            if len(per) != self.t:
                raise FamilyError(f"coordinate {i} has {len(per)} sets, expected t={self.t}")
            used: set[int] = set()
            for s in per:
                if not 1 <= len(s) <= self.r:
                    raise FamilyError(f"coordinate {i}: set {list(s)} has size outside [1, {self.r}]")
                if i in s:
                    raise FamilyError(f"coordinate {i} appears in its own recovering set")
                if any(not 1 <= j <= n for j in s):
                    raise FamilyError(f"coordinate {i}: set {list(s)} leaves [1, {n}]")
                if used & set(s):
                    raise FamilyError(f"coordinate {i}: recovering sets are not pairwise disjoint")
                used |= set(s)
                if code is not None and not is_recovering_set(code, i, s):
                    raise FamilyError(f"coordinate {i}: {list(s)} does not recover it")

    def to_dict(self) -> dict:
        return {"r": self.r, "t": self.t, "sets": [[list(s) for s in per] for per in self.sets]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> RecoveringFamily:
        d = json.loads(text)
        return cls.from_lists(int(d["r"]), int(d["t"]), d["sets"])


def find_recovering_family(code: LinearCode, r: int, t: int) -> RecoveringFamily | None:
    """Lexicographic-first family for every coordinate, or None if some coordinate lacks t sets."""
    sets = []
    for i in range(1, code.n + 1):
        found = find_disjoint_recovering_sets(code, i, r, t)
        if found is None:
            return None
        sets.append(tuple(found))
    return RecoveringFamily(r, t, tuple(sets))
