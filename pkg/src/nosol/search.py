"""Digit-set and dependency search engines.

max_digit_set finds large solution-free digit alphabets below a base:
exact branch-and-bound when the candidate range is small, or an anytime
pipeline (greedy dive, structured two-level seeds derived from the
coefficients, greedy extension) under a node budget.  Everything is
deterministic: rerunning a search reproduces the same sets bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .certificates import Rate
from .equations import Equation
from .oracle import DEFAULT_BUDGET, BudgetExhausted, IncrementalSolutionIndex

MODE_EXACT = "exact"
MODE_GREEDY = "greedy"
MODE_ANYTIME = "anytime"

EXACT_AUTO_LIMIT = 22          # candidate count below which anytime finishes exactly
SEED_EXTENSION_PHASES = 3      # extend only the most promising seed phases


@dataclass(frozen=True)
class Dependency:
    """Primitive integer relation i1*a + j1*b + k1*c = 0."""

    i1: int
    j1: int
    k1: int

    def __post_init__(self):
        if self.i1 == self.j1 == self.k1 == 0:
            raise ValueError("dependency must be nonzero")
        if math.gcd(math.gcd(abs(self.i1), abs(self.j1)), abs(self.k1)) != 1:
            raise ValueError("dependency must be primitive (gcd 1)")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.i1, self.j1, self.k1)

    @property
    def magnitude(self) -> int:
        return max(abs(self.i1), abs(self.j1), abs(self.k1))


@dataclass
class SearchConfig:
    budget: int = DEFAULT_BUDGET
    mode: str = MODE_ANYTIME
    report: object = None          # callable(dict) for progress events
    report_interval: int = 50_000

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.mode not in (MODE_EXACT, MODE_GREEDY, MODE_ANYTIME):
            raise ValueError(f"unknown search mode {self.mode!r}")


@dataclass
class SearchResult:
    digits: tuple[int, ...]            # largest set found (canonical witness)
    exhausted: bool
    nodes: int
    best_rate_digits: tuple[int, ...]  # prefix maximizing log|D|/log(s*max+1)
    phases: list = field(default_factory=list)


def _tight_rate(eq: Equation, digits) -> Rate | None:
    if len(digits) < 2 or max(digits) < 1:
        return None
    return Rate(len(digits), eq.side_sum * max(digits) + 1)


class _Tracker:
    """Best-found bookkeeping shared by all search phases."""

    def __init__(self, eq, cfg):
        self.eq = eq
        self.cfg = cfg
        self.best: tuple[int, ...] = ()
        self.best_rate: Rate | None = None
        self.best_rate_digits: tuple[int, ...] = ()
        self._last_report = 0

    def offer(self, digits, nodes, phase):
        digits = tuple(digits)
        improved = len(digits) > len(self.best)
        if improved:
            self.best = digits
        rate = _tight_rate(self.eq, digits)
        if rate is not None and (self.best_rate is None or rate > self.best_rate):
            self.best_rate = rate
            self.best_rate_digits = digits
        if improved or nodes - self._last_report >= self.cfg.report_interval:
            self.heartbeat(nodes, phase, depth=len(digits))

    def heartbeat(self, nodes, phase, depth=0):
        if self.cfg.report is not None:
            self.cfg.report({"best_size": len(self.best), "nodes": nodes,
                             "depth": depth, "phase": phase})
        self._last_report = nodes


def _greedy_pass(index, candidates, tracker, phase, distinct):
    """Add candidates in ascending order whenever legal; snapshot each gain."""
    for x in candidates:
        if x in index.values:
            continue
        if index.legal(x):
            index.add(x)
            tracker.offer(sorted(index.values), index.nodes, phase)


def _seed_bases(eq: Equation, cap: int) -> list[int]:
    """Deterministic two-level bases: coefficient magnitudes, their pairwise
    sums/differences, and a coarse power grid."""
    mags = sorted({abs(c) for c in eq.coeffs})
    combos = set(mags)
    for i, u in enumerate(mags):
        for v in mags[i:]:
            combos.add(u + v)
            if u != v:
                combos.add(abs(u - v))
    combos.update({8, 16, 32, 64, 128, 256})
    return sorted(b for b in combos if 4 <= b <= cap)


def _exact_branch_and_bound(eq, candidates, cfg, tracker, distinct):
    """Full include-first DFS over candidates in increasing order.

    Returns True when the whole tree was enumerated within budget.
    """
    index = IncrementalSolutionIndex(eq, distinct=distinct, budget=cfg.budget)
    n = len(candidates)
    best_here = 0

    def descend(i):
        nonlocal best_here
        if i == n:
            if len(index.values) > best_here:
                best_here = len(index.values)
                tracker.offer(sorted(index.values), index.nodes, "exact")
            return
        if len(index.values) + (n - i) <= best_here:
            return  # cannot beat the incumbent
        index.tracker.spend()
        if index.legal(candidates[i]):
            index.add(candidates[i])
            descend(i + 1)
            index.pop()
        descend(i + 1)

    try:
        descend(0)
    except BudgetExhausted:
        return False, index.nodes
    return True, index.nodes


def max_digit_set(eq: Equation, L: int, cfg: SearchConfig | None = None,
                  distinct: bool = False) -> SearchResult:
    """Largest (or best-found) solution-free digit subset of {0..(L-1)//s}.

    Candidates stop at (L-1)//s so the no-carry condition holds by
    construction for base L.
    """
    cfg = cfg or SearchConfig()
    s = eq.side_sum
    if L < 2:
        raise ValueError("base must be at least 2")
    cap = (L - 1) // s
    candidates = list(range(cap + 1))
    tracker = _Tracker(eq, cfg)
    nodes_total = 0
    exhausted = False

    if cfg.mode == MODE_EXACT or (cfg.mode == MODE_ANYTIME
                                  and len(candidates) <= EXACT_AUTO_LIMIT):
        exhausted, nodes_total = _exact_branch_and_bound(
            eq, candidates, cfg, tracker, distinct)
        if cfg.mode == MODE_EXACT or exhausted:
            return SearchResult(tracker.best, exhausted, nodes_total,
                                tracker.best_rate_digits,
                                phases=[("exact", len(tracker.best))])

    phases = []

    def run_phase(name, seed_candidates, extend):
        nonlocal nodes_total
        index = IncrementalSolutionIndex(eq, distinct=distinct,
                                         budget=max(1, cfg.budget - nodes_total))
        try:
            _greedy_pass(index, seed_candidates, tracker, name, distinct)
            if extend:
                rest = [x for x in candidates if x not in set(seed_candidates)]
                _greedy_pass(index, rest, tracker, name + "+ext", distinct)
        except BudgetExhausted:
            pass
        nodes_total += index.nodes
        phases.append((name, len(index.values)))
        return sorted(index.values)

    # phase 1: plain ascending greedy
    run_phase("greedy", candidates, extend=False)

    # phase 2: structured two-level seeds; each base is tried with the
    # greedy inner alphabet and with its pure interval prefix (the prefix
    # keeps the row structure clean when the greedy inner is irregular)
    seed_results = []
    for base in _seed_bases(eq, cap):
        if nodes_total >= cfg.budget:
            break
        inner_index = IncrementalSolutionIndex(
            eq, distinct=distinct, budget=max(1, cfg.budget - nodes_total))
        prefix_end = None
        try:
            for x in range(min(base - 1, cap) + 1):
                if inner_index.legal(x):
                    inner_index.add(x)
                elif prefix_end is None:
                    prefix_end = x
        except BudgetExhausted:
            nodes_total += inner_index.nodes
            break
        nodes_total += inner_index.nodes
        inner = sorted(inner_index.values)
        inners = [("seed", inner)]
        prefix = list(range(prefix_end)) if prefix_end is not None else inner
        if prefix and prefix != inner:
            inners.append(("pseed", prefix))
        for label, alphabet in inners:
            seeds = sorted({a + base * b
                            for b in range(cap // base + 1)
                            for a in alphabet if a < base and a + base * b <= cap})
            filtered = run_phase(f"{label}[{base}]", seeds, extend=False)
            seed_results.append((len(filtered), -base, filtered, seeds))

    # phase 3: greedy extension of the most promising seeds
    seed_results.sort(reverse=True)
    for _, negbase, filtered, seeds in seed_results[:SEED_EXTENSION_PHASES]:
        if nodes_total >= cfg.budget:
            break
        index = IncrementalSolutionIndex(eq, distinct=distinct,
                                         budget=max(1, cfg.budget - nodes_total))
        try:
            for x in filtered:
                index.add(x)
            _greedy_pass(index, [x for x in candidates if x not in set(filtered)],
                         tracker, f"extend[{-negbase}]", distinct)
        except BudgetExhausted:
            pass
        nodes_total += index.nodes
        phases.append((f"extend[{-negbase}]", len(index.values)))

    return SearchResult(tracker.best, exhausted, nodes_total,
                        tracker.best_rate_digits, phases=phases)


@dataclass
class GreedyResult:
    values: list[int]
    complete: bool
    nodes: int


def greedy_set(eq: Equation, N: int, budget: int = DEFAULT_BUDGET,
               distinct: bool = False) -> GreedyResult:
    """Scan 1..N, keeping x whenever the set stays solution-free."""
    if N < 1:
        raise ValueError("N must be positive")
    index = IncrementalSolutionIndex(eq, distinct=distinct, budget=budget)
    complete = True
    try:
        for x in range(1, N + 1):
            if index.legal(x):
                index.add(x)
    except BudgetExhausted:
        complete = False
    return GreedyResult(sorted(index.values), complete, index.nodes)


def small_dependency_search(a: int, b: int, c: int, M: int) -> Dependency | None:
    """Smallest primitive triple (i,j,k) with i*a + j*b + k*c = 0.

    Smallest means lowest max-magnitude, then first in the scan order
    (i ascending from 0, j ascending); the leading nonzero entry is positive.
    """
    if min(a, b, c) < 1:
        raise ValueError("coefficients must be positive")
    if M < 1:
        raise ValueError("magnitude bound must be positive")
    for level in range(1, M + 1):
        for i in range(0, level + 1):
            for j in range(-level, level + 1):
                num = -(i * a + j * b)
                if num % c:
                    continue
                k = num // c
                if abs(k) > level:
                    continue
                if max(i, abs(j), abs(k)) != level:
                    continue
                if i == 0 and j <= 0:
                    continue
                if math.gcd(math.gcd(i, abs(j)), abs(k)) != 1:
                    continue
                return Dependency(i, j, k)
    return None
