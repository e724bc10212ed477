"""Parsers: greedy LZ76, a hop-bounded greedy heuristic and an exact solver."""

from __future__ import annotations

import sys
import time
from array import array
from dataclasses import dataclass

from . import kernels
from .core import Parsing, Symbols

BRUTEFORCE_LIMIT = 14


@dataclass(frozen=True)
class SolverBudget:
    max_nodes: int = 10**8
    time_limit: float = 600.0
    upper_bound: int | None = None

    def __post_init__(self):
        if self.max_nodes <= 0 or self.time_limit <= 0:
            raise ValueError("budget limits must be positive")


@dataclass(frozen=True)
class SolveResult:
    parsing: Parsing
    size: int
    proven_optimal: bool
    nodes: int


def _to_parsing(pairs) -> Parsing:
    lengths = [length for length, _ in pairs]
    sources = [src + 1 if src >= 0 else None for _, src in pairs]
    return Parsing.from_lengths(lengths, sources)


def greedy_lz76(s: Symbols) -> Parsing:
    """Left-to-right LZ76: longest earlier-starting copy plus one literal."""
    return _to_parsing(kernels.greedy_lz76(s))


def greedy_bounded_blz(s: Symbols, c: int) -> Parsing:
    """Greedy parsing with every hop number at most ``c``.

    A phrase grows while some source keeps all copied positions within the
    hop bound.  Among sources reaching the same length the one with the
    smallest maximum source hop wins, then the smallest position.
    """
    if c < 0:
        raise ValueError("hop bound must be non-negative")
    return _to_parsing(kernels.greedy_blz(s, c))


def _phrase_ok(s: Symbols, i: int, j: int) -> bool:
    # 0-based phrase s[i:j]; brute force over every earlier source
    if j - i == 1:
        return True
    copy = j - i - 1
    for src in range(i):
        period = i - src
        if all(s[i + t] == s[src + t % period] for t in range(copy)):
            return True
    return False


def exact_lz_bruteforce(s: Symbols, limit: int = BRUTEFORCE_LIMIT) -> int:
    """Minimum LZ parsing size over all boundary sets (test oracle).

    Validity of an LZ phrase does not depend on the other phrases, so the
    minimum over all boundary sets is a shortest path over prefix ends.
    """
    n = len(s)
    if n > limit:
        raise ValueError(f"string of length {n} exceeds the brute-force limit {limit}")
    inf = n + 1
    best = [0] + [inf] * n
    for j in range(1, n + 1):
        for i in range(j):
            if best[i] + 1 < best[j] and _phrase_ok(s, i, j):
                best[j] = best[i] + 1
    return best[n]


class _OutOfBudget(Exception):
    pass


class _BranchAndBound:
    def __init__(self, s: Symbols, c: int, budget: SolverBudget):
        self.s = kernels.buffer(s)
        self.n = len(self.s)
        self.c = c
        self.budget = budget
        self.hops = array("q", [0] * self.n)
        # optimal unbounded LZ size of each suffix, with the prefix as context
        longest = kernels.longest_phrase_lengths(self.s)
        lb = [0] * (self.n + 1)
        for i in range(self.n - 1, -1, -1):
            lb[i] = 1 + lb[i + longest[i]]
        self.lb = lb
        self.memo: dict[tuple[int, bytes], int] = {}
        self.stack: list[tuple[int, int]] = []
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_limit

    def _children(self, i):
        """Yield ``(length, src, hop_vector)`` choices, longest phrase first."""
        hops, c = self.hops, self.c
        ext = kernels.source_extents(self.s, hops, i, c - 1)
        maxk = max(ext, default=0)
        for length in range(maxk + 1, 1, -1):
            copy = length - 1
            seen: dict[tuple[int, ...], int] = {}
            for src in range(i):
                if ext[src] < copy:
                    continue
                period = i - src
                vec = tuple(hops[src + t % period] + 1 for t in range(copy))
                if vec not in seen:
                    seen[vec] = src
            vecs = list(seen.items())
            for vec, src in vecs:
                # a pointwise-smaller hop vector admits every completion this one does
                if any(o != vec and all(a <= b for a, b in zip(o, vec)) for o, _ in vecs):
                    continue
                yield length, src, vec
        yield 1, -1, ()

    def _tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _OutOfBudget
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _OutOfBudget

    def search(self, i: int, count: int):
        self._tick()
        if i == self.n:
            if count < self.best_size:
                self.best_size = count
                self.best = list(self.stack)
            return
        if count + self.lb[i] >= self.best_size:
            return
        key = (i, self.hops[:i].tobytes())
        if count + self.memo.get(key, 0) >= self.best_size:
            return
        hops = self.hops
        for length, src, vec in self._children(i):
            if count + 1 + self.lb[i + length] >= self.best_size:
                continue
            for t, h in enumerate(vec):
                hops[i + t] = h
            hops[i + length - 1] = 0
            self.stack.append((length, src))
            self.search(i + length, count + 1)
            self.stack.pop()
        # the whole subtree was explored: nothing here beats the incumbent
        rem = self.best_size - count
        if rem > self.memo.get(key, 0):
            self.memo[key] = rem

    def run(self, incumbent: list[tuple[int, int]]) -> SolveResult:
        self.best = incumbent
        self.best_size = len(incumbent)
        hint_below = False
        ub = self.budget.upper_bound
        if ub is not None and ub < self.best_size:
            # only look for parsings of size <= ub
            self.best_size = ub + 1
            hint_below = True
        proven = True
        old_limit = sys.getrecursionlimit()
        sys.setrecursionlimit(max(old_limit, 4 * self.n + 1000))
        try:
            self.search(0, 0)
        except _OutOfBudget:
            proven = False
        finally:
            sys.setrecursionlimit(old_limit)
        if hint_below and self.best is incumbent:
            # the hint was below the optimum, so the optimum is still unknown
            proven = False
        return SolveResult(_to_parsing(self.best), len(self.best), proven, self.nodes)


def exact_blz(s: Symbols, c: int, budget: SolverBudget | None = None) -> SolveResult:
    """Minimum-size parsing with hop numbers at most ``c`` (branch and bound).

    Starts from the greedy heuristic as incumbent.  Sources are enumerated
    per phrase because the hop profile, not only the phrase length, decides
    what can follow.  When the budget runs out the best parsing found is
    returned with ``proven_optimal=False``.
    """
    if c < 0:
        raise ValueError("hop bound must be non-negative")
    budget = budget or SolverBudget()
    if len(s) == 0:
        return SolveResult(Parsing(), 0, True, 0)
    incumbent = kernels.greedy_blz(s, c)
    return _BranchAndBound(s, c, budget).run(incumbent)
