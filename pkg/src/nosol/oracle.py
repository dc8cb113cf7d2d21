"""Exhaustive solution oracle.

Three interchangeable enumeration engines (pruned DFS, naive product scan,
meet-in-the-middle over the equation's sides) answer "does this finite set
contain a non-trivial solution?" exactly.  A search is only trusted when it
ran to completion within its node budget; running out raises BudgetExhausted
so callers can never mistake "unknown" for "verified absent".
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .certificates import MODE_DISTINCT, Certificate
from .equations import Equation, SolutionClass, SolutionKind

DEFAULT_BUDGET = 10 ** 8
MITM_TABLE_CAP = 2_000_000


class BudgetExhausted(RuntimeError):
    """Raised when an enumeration hits its node budget before finishing."""

    def __init__(self, nodes: int):
        super().__init__(f"enumeration budget exhausted after {nodes} nodes")
        self.nodes = nodes


class _Budget:
    __slots__ = ("nodes", "limit")

    def __init__(self, limit: int):
        self.nodes = 0
        self.limit = limit

    def spend(self, n: int = 1) -> None:
        self.nodes += n
        if self.nodes > self.limit:
            raise BudgetExhausted(self.nodes)


@dataclass(frozen=True)
class SolutionQuery:
    """One oracle question: equation, finite ground set, semantics, budget."""

    equation: Equation
    ground_set: tuple[int, ...]
    distinct_variables: bool = False
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        gs = tuple(int(v) for v in self.ground_set)
        if not gs:
            raise ValueError("ground set is empty")
        if list(gs) != sorted(set(gs)):
            raise ValueError("ground set must be sorted and duplicate-free")
        object.__setattr__(self, "ground_set", gs)
        if self.budget < 1:
            raise ValueError("budget must be at least 1")


def _is_countable(eq: Equation, assignment, distinct: bool) -> bool:
    """Mode filter on a satisfying assignment."""
    if distinct:
        return len(set(assignment)) == len(assignment)
    class_sums: dict[int, int] = {}
    for c, v in zip(eq.coeffs, assignment):
        class_sums[v] = class_sums.get(v, 0) + c
    return any(s != 0 for s in class_sums.values())


def _suffix_bounds(coeffs, vmin, vmax):
    m = len(coeffs)
    lo = [0] * (m + 1)
    hi = [0] * (m + 1)
    for i in range(m - 1, -1, -1):
        c = coeffs[i]
        lo[i] = lo[i + 1] + (c * vmin if c > 0 else c * vmax)
        hi[i] = hi[i + 1] + (c * vmax if c > 0 else c * vmin)
    return lo, hi


def _dfs_solutions(eq, values, distinct, budget):
    """Yield countable solutions in canonical depth-first order."""
    coeffs = eq.coeffs
    m = len(coeffs)
    lo, hi = _suffix_bounds(coeffs, values[0], values[-1])
    assignment = [0] * m
    used: dict[int, int] = {}

    def descend(i, partial):
        if i == m:
            if partial == 0 and _is_countable(eq, assignment, distinct):
                yield tuple(assignment)
            return
        for v in values:
            budget.spend()
            if distinct and used.get(v):
                continue
            p = partial + coeffs[i] * v
            if p + lo[i + 1] > 0 or p + hi[i + 1] < 0:
                continue
            assignment[i] = v
            if distinct:
                used[v] = 1
            yield from descend(i + 1, p)
            if distinct:
                used[v] = 0

    yield from descend(0, 0)


def _naive_solutions(eq, values, distinct, budget):
    """Full product scan; the reference the pruned engines are tested against."""
    coeffs = eq.coeffs
    for assignment in product(values, repeat=len(coeffs)):
        budget.spend()
        if sum(c * v for c, v in zip(coeffs, assignment)) != 0:
            continue
        if _is_countable(eq, assignment, distinct):
            yield assignment


def _mitm_solutions(eq, values, distinct, budget):
    """Meet in the middle over the equation's positive/negative sides."""
    coeffs = eq.coeffs
    m = len(coeffs)
    pos = [i for i in range(m) if coeffs[i] > 0]
    neg = [i for i in range(m) if coeffs[i] < 0]
    # table the smaller side, scan the larger
    if len(pos) <= len(neg):
        table_idx, scan_idx = pos, neg
    else:
        table_idx, scan_idx = neg, pos
    table_coeffs = [coeffs[i] for i in table_idx]
    scan_coeffs = [coeffs[i] for i in scan_idx]

    table: dict[int, list[tuple[int, ...]]] = {}
    for tup in product(values, repeat=len(table_idx)):
        budget.spend()
        s = sum(c * v for c, v in zip(table_coeffs, tup))
        table.setdefault(s, []).append(tup)

    assignment = [0] * m
    for tup in product(values, repeat=len(scan_idx)):
        budget.spend()
        s = sum(c * v for c, v in zip(scan_coeffs, tup))
        for mate in table.get(-s, ()):
            budget.spend()
            for i, v in zip(scan_idx, tup):
                assignment[i] = v
            for i, v in zip(table_idx, mate):
                assignment[i] = v
            if _is_countable(eq, assignment, distinct):
                yield tuple(assignment)


def _pick_engine(q: SolutionQuery, engine: str):
    if engine != "auto":
        return {"dfs": _dfs_solutions, "naive": _naive_solutions,
                "mitm": _mitm_solutions}[engine]
    # meet in the middle whenever its table fits and clearly beats the
    # worst-case depth-first cost (selection is per-query deterministic)
    m = q.equation.num_vars
    size = len(q.ground_set)
    table = size ** ((m + 1) // 2)
    if table <= min(q.budget, MITM_TABLE_CAP) and size ** m > 10 * table:
        return _mitm_solutions
    return _dfs_solutions


def exhaustive_check(q: SolutionQuery, engine: str = "auto"):
    """(first countable solution or None, nodes spent).

    A None result certifies the whole space was enumerated.
    """
    run = _pick_engine(q, engine)
    budget = _Budget(q.budget)
    for assignment in run(q.equation, q.ground_set, q.distinct_variables, budget):
        return SolutionClass(assignment, SolutionKind.NONTRIVIAL), budget.nodes
    return None, budget.nodes


def find_nontrivial_solution(q: SolutionQuery, engine: str = "auto"):
    """First countable solution, or None once the space is fully exhausted."""
    return exhaustive_check(q, engine)[0]


def count_nontrivial_solutions(q: SolutionQuery, engine: str = "auto") -> int:
    run = _pick_engine(q, engine)
    budget = _Budget(q.budget)
    n = 0
    for _ in run(q.equation, q.ground_set, q.distinct_variables, budget):
        n += 1
    return n


def is_injective_map(a, B: int, budget: int = DEFAULT_BUDGET) -> bool:
    """Whether (i_1..i_k) -> sum(i_j * a_j) is injective on [1, B]^k.

    Uses the difference form: injective iff no nonzero d in
    [-(B-1), B-1]^k has sum(d_j * a_j) == 0.
    """
    a = [int(v) for v in a]
    if len(a) < 2:
        raise ValueError("need at least two coefficients")
    if any(v < 1 for v in a):
        raise ValueError("coefficients must be positive")
    if B < 1:
        raise ValueError("B must be positive")
    if B == 1:
        return True
    tracker = _Budget(budget)
    k = len(a)
    span = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        span[i] = span[i + 1] + a[i] * (B - 1)
    lim = B - 1

    def search(i, partial, nonzero):
        if i == k:
            return nonzero and partial == 0
        for d in range(-lim, lim + 1):
            tracker.spend()
            p = partial + a[i] * d
            if p - span[i + 1] > 0 or p + span[i + 1] < 0:
                continue
            if search(i + 1, p, nonzero or d != 0):
                return True
        return False

    return not search(0, 0, False)


def verify_certificate(cert, budget: int = DEFAULT_BUDGET) -> bool:
    """Re-validate a persisted certificate.

    Accepts a Certificate or its raw JSON dict; a dict that violates the
    structural invariants (no-carry, digit range) is simply invalid, not an
    error.  Re-runs the oracle on the digit alphabet; BudgetExhausted
    propagates because an interrupted check proves nothing.
    """
    if isinstance(cert, dict):
        try:
            cert = Certificate.from_json(cert)
        except (ValueError, KeyError, TypeError):
            return False
    ds = cert.digit_set
    if ds.equation.side_sum * ds.digits[-1] >= ds.base:
        return False
    q = SolutionQuery(ds.equation, ds.digits,
                      ds.mode == MODE_DISTINCT, budget)
    return find_nontrivial_solution(q) is None


class IncrementalSolutionIndex:
    """Incremental legality oracle used by the digit searches.

    Keeps, for each side of the equation, a table mapping one-side sums to
    the value tuples achieving them.  Adding a candidate value only touches
    the tuples that contain it, so a legality test costs time proportional
    to the solutions it brushes against.
    """

    def __init__(self, eq: Equation, distinct: bool = False,
                 budget: int = DEFAULT_BUDGET):
        self.eq = eq
        self.distinct = distinct
        self.pos_idx = [i for i in range(eq.num_vars) if eq.coeffs[i] > 0]
        self.neg_idx = [i for i in range(eq.num_vars) if eq.coeffs[i] < 0]
        self.pos_coeffs = [eq.coeffs[i] for i in self.pos_idx]
        self.neg_coeffs = [-eq.coeffs[i] for i in self.neg_idx]
        self.values: list[int] = []
        self.pos_table: dict[int, list[tuple[int, ...]]] = {}
        self.neg_table: dict[int, list[tuple[int, ...]]] = {}
        self._undo: list[tuple[list, list]] = []
        self.tracker = _Budget(budget)

    @property
    def nodes(self) -> int:
        return self.tracker.nodes

    def _new_tuples(self, coeffs, x):
        """(tuple, sum) for every tuple over values+[x] that uses x."""
        old = self.values
        both = old + [x]
        k = len(coeffs)
        for first in range(k):
            pools = [old] * first + [[x]] + [both] * (k - first - 1)
            for tup in product(*pools):
                self.tracker.spend()
                yield tup, sum(c * v for c, v in zip(coeffs, tup))

    def _solution(self, pos_tup, neg_tup) -> bool:
        self.tracker.spend()
        assignment = [0] * self.eq.num_vars
        for i, v in zip(self.pos_idx, pos_tup):
            assignment[i] = v
        for i, v in zip(self.neg_idx, neg_tup):
            assignment[i] = v
        return _is_countable(self.eq, assignment, self.distinct)

    def conflict(self, x: int):
        """A solution that adding x would create, or None."""
        new_pos: dict[int, list[tuple[int, ...]]] = {}
        for tup, s in self._new_tuples(self.pos_coeffs, x):
            new_pos.setdefault(s, []).append(tup)
            for mate in self.neg_table.get(s, ()):
                if self._solution(tup, mate):
                    return tup, mate
        for tup, s in self._new_tuples(self.neg_coeffs, x):
            for mate in self.pos_table.get(s, ()):
                if self._solution(mate, tup):
                    return mate, tup
            for mate in new_pos.get(s, ()):
                if self._solution(mate, tup):
                    return mate, tup
        return None

    def legal(self, x: int) -> bool:
        return x not in self.values and self.conflict(x) is None

    def add(self, x: int) -> None:
        pos_added, neg_added = [], []
        for tup, s in self._new_tuples(self.pos_coeffs, x):
            self.pos_table.setdefault(s, []).append(tup)
            pos_added.append(s)
        for tup, s in self._new_tuples(self.neg_coeffs, x):
            self.neg_table.setdefault(s, []).append(tup)
            neg_added.append(s)
        self.values.append(x)
        self._undo.append((pos_added, neg_added))

    def pop(self) -> int:
        pos_added, neg_added = self._undo.pop()
        for s in reversed(pos_added):
            bucket = self.pos_table[s]
            bucket.pop()
            if not bucket:
                del self.pos_table[s]
        for s in reversed(neg_added):
            bucket = self.neg_table[s]
            bucket.pop()
            if not bucket:
                del self.neg_table[s]
        return self.values.pop()
