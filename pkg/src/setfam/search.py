"""Exhaustive searches over small intersecting and cross-intersecting families.

All engines are exact.  Branch-and-bound engines split the tree into ordered
top-level subtrees that are searched independently, so results (including
node counts and witnesses) do not depend on ``worker_count``.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Sequence

from .core import (
    DomainError,
    Family,
    ResourceError,
    binom,
    diversity,
    full_mask,
    iter_k_masks,
    popcount,
)

VERIFIED = "verified"
REFUTED = "refuted"
EXHAUSTED = "exhausted-budget"

NONUNIFORM_MAX_N = 6
UNIFORM_MAX_SETS = 24
UNIFORM_PAIR_MAX_SETS = 70
CROSS_MAX_SETS = 20
BRUTE_CROSS_MAX_SETS = 12


@dataclass(frozen=True)
class SearchBudget:
    """Limits for one search; ``max_nodes`` applies to each top-level subtree."""

    max_nodes: int = 200_000_000
    max_seconds: int = 3600
    worker_count: int = 1

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.max_seconds < 1 or self.worker_count < 1:
            raise DomainError("budget fields must be positive")

    @classmethod
    def from_env(cls, **overrides) -> "SearchBudget":
        kwargs = {
            "max_nodes": int(os.environ.get("SETFAM_MAX_NODES", cls.max_nodes)),
            "worker_count": int(os.environ.get("SETFAM_WORKERS", cls.worker_count)),
        }
        kwargs.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**kwargs)


@dataclass(frozen=True)
class SearchReport:
    status: str
    optimum: int | None
    witnesses: tuple[Family, ...]
    nodes_explored: int
    elapsed_ms: int = field(default=0, compare=False)
    target: int | None = None


class _BudgetExceeded(Exception):
    pass


class _Meter:
    def __init__(self, budget: SearchBudget) -> None:
        self.max_nodes = budget.max_nodes
        self.deadline = time.monotonic() + budget.max_seconds
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _BudgetExceeded
        if not self.nodes & 0xFFF and time.monotonic() > self.deadline:
            raise _BudgetExceeded


def _elapsed(start: float) -> int:
    return int((time.monotonic() - start) * 1000)


# ---------------------------------------------------------------------------
# maximal intersecting families of 2^[n]
# ---------------------------------------------------------------------------

def _maximal_masks(n: int, meter: _Meter) -> list[tuple[int, ...]]:
    size = 1 << n
    full = size - 1
    order = sorted(range(size), key=lambda m: (popcount(m), m))
    state = [-1] * size  # -1 unknown, 1 in, 0 out
    found: list[tuple[int, ...]] = []

    def put_in(s: int, log: list[int]) -> bool:
        # s in forces every superset in and every complement of a superset out
        free = full ^ s
        sub = free
        while True:
            t = s | sub
            st = state[t]
            if st == 0:
                return False
            if st == -1:
                state[t] = 1
                state[full ^ t] = 0
                log.append(t)
                log.append(full ^ t)
            if sub == 0:
                break
            sub = (sub - 1) & free
        return True

    def dfs(pos: int) -> None:
        meter.tick()
        while pos < size and state[order[pos]] != -1:
            pos += 1
        if pos == size:
            found.append(tuple(m for m in range(size) if state[m] == 1))
            return
        m = order[pos]
        for s in (m, full ^ m):
            log: list[int] = []
            if put_in(s, log):
                dfs(pos + 1)
            for t in log:
                state[t] = -1

    dfs(0)
    return sorted(found)


def maximal_intersecting_families(n: int, budget: SearchBudget | None = None) -> list[Family]:
    """All maximal intersecting families of subsets of [n] (upward closed, one set per complement pair)."""
    if not 2 <= n <= NONUNIFORM_MAX_N:
        raise ResourceError(f"maximal family enumeration supports 2 <= n <= {NONUNIFORM_MAX_N}, got {n}")
    meter = _Meter(budget or SearchBudget())
    try:
        masks = _maximal_masks(n, meter)
    except _BudgetExceeded:
        raise ResourceError("node budget exhausted while enumerating maximal families") from None
    return [Family(n, m) for m in masks]


def max_diversity_nonuniform(n: int, budget: SearchBudget | None = None) -> SearchReport:
    """Largest diversity of an intersecting family of subsets of [n].

    Adding a set never lowers diversity, so scanning maximal families suffices.
    Witnesses are all maximal families attaining the optimum.
    """
    if not 2 <= n <= NONUNIFORM_MAX_N:
        raise ResourceError(f"non-uniform diversity search supports 2 <= n <= {NONUNIFORM_MAX_N}, got {n}")
    start = time.monotonic()
    meter = _Meter(budget or SearchBudget())
    try:
        masks = _maximal_masks(n, meter)
    except _BudgetExceeded:
        return SearchReport(EXHAUSTED, None, (), meter.nodes, _elapsed(start))
    fams = [Family(n, m) for m in masks]
    divs = [diversity(f) for f in fams]
    best = max(divs)
    wit = tuple(f for f, d in zip(fams, divs) if d == best)
    return SearchReport(VERIFIED, best, wit, meter.nodes, _elapsed(start))


# ---------------------------------------------------------------------------
# k-uniform intersecting families
# ---------------------------------------------------------------------------

def _maximal_cliques(adj: list[int], meter: _Meter) -> list[int]:
    """Bron-Kerbosch with pivoting over bitmask adjacency; returns vertex bitmasks."""
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        meter.tick()
        if not p and not x:
            out.append(r)
            return
        px = p | x
        pivot = max(_bits(px), key=lambda u: popcount(adj[u] & p))
        cand = p & ~adj[pivot]
        for v in _bits(cand):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << len(adj)) - 1, 0)
    return out


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def maximal_intersecting_uniform(n: int, k: int, budget: SearchBudget | None = None) -> list[Family]:
    """All maximal intersecting subfamilies of C([n], k), via maximal cliques."""
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    if binom(n, k) > UNIFORM_MAX_SETS:
        raise ResourceError(f"C({n},{k}) exceeds {UNIFORM_MAX_SETS} sets")
    sets = list(iter_k_masks(n, k))
    adj = [sum(1 << j for j, b in enumerate(sets) if j != i and a & b) for i, a in enumerate(sets)]
    meter = _Meter(budget or SearchBudget())
    try:
        cliques = _maximal_cliques(adj, meter)
    except _BudgetExceeded:
        raise ResourceError("node budget exhausted while enumerating cliques") from None
    fams = {tuple(sets[v] for v in _bits(c)) for c in cliques}
    return [Family(n, m) for m in sorted(fams)]


def max_intersecting_uniform(n: int, k: int) -> int:
    """Size of the largest intersecting k-uniform family on [n]."""
    return max(len(f) for f in maximal_intersecting_uniform(n, k))


def _pair_diversity_subtree(args: tuple) -> tuple[int | None, tuple[int, ...] | None, int, bool]:
    """Minimise the max degree over one-per-complement-pair selections below a fixed prefix."""
    n, k, prefix, max_nodes, deadline = args
    full = full_mask(n)
    reps = [m for m in iter_k_masks(n, k) if m & 1]
    npairs = len(reps)
    total = k * npairs
    meter = _Meter(SearchBudget(max_nodes=max_nodes))
    meter.deadline = deadline
    deg = [0] * n
    chosen: list[int] = []
    best = [npairs + 1]
    best_sel: list[tuple[int, ...] | None] = [None]

    def add(s: int, sign: int) -> None:
        for b in _bits(s):
            deg[b] += sign

    def lower_bound(assigned: int) -> int:
        cur = max(deg)
        avg = -(-total // n)
        return max(cur, avg) if assigned < npairs else cur

    def dfs(idx: int) -> None:
        meter.tick()
        if idx == npairs:
            top = max(deg)
            if top < best[0]:
                best[0] = top
                best_sel[0] = tuple(sorted(chosen))
            return
        if lower_bound(idx) >= best[0]:
            return
        s = reps[idx]
        options = [s, full ^ s]
        options.sort(key=lambda o: max(deg[b] + 1 for b in _bits(o)))
        for o in options:
            add(o, 1)
            chosen.append(o)
            dfs(idx + 1)
            chosen.pop()
            add(o, -1)

    for o in prefix:
        add(o, 1)
        chosen.append(o)
    try:
        dfs(len(prefix))
    except _BudgetExceeded:
        return None, None, meter.nodes, True
    if best_sel[0] is None:
        return None, None, meter.nodes, False
    return best[0], best_sel[0], meter.nodes, False


def _run_subtrees(fn: Callable, tasks: Sequence[tuple], workers: int) -> list:
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def max_diversity_uniform(n: int, k: int, budget: SearchBudget | None = None) -> SearchReport:
    """Largest diversity of an intersecting family inside C([n], k).

    For n = 2k the maximal families are exactly the one-per-complement-pair
    selections, searched by branch and bound (one witness, first in search
    order).  Otherwise all maximal intersecting families are scanned and every
    optimal one is returned.
    """
    budget = budget or SearchBudget()
    start = time.monotonic()
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    if n == 2 * k:
        if binom(n, k) > UNIFORM_PAIR_MAX_SETS:
            raise ResourceError(f"C({n},{k}) exceeds {UNIFORM_PAIR_MAX_SETS} sets")
        full = full_mask(n)
        reps = [m for m in iter_k_masks(n, k) if m & 1]
        deadline = time.monotonic() + budget.max_seconds
        # top-level subtrees: the two choices for the first pair
        tasks = [(n, k, (o,), budget.max_nodes, deadline) for o in (reps[0], full ^ reps[0])]
        results = _run_subtrees(_pair_diversity_subtree, tasks, budget.worker_count)
        nodes = sum(r[2] for r in results)
        if any(r[3] for r in results):
            return SearchReport(EXHAUSTED, None, (), nodes, _elapsed(start))
        best_deg, best_sel = min(((r[0], r[1]) for r in results if r[0] is not None),
                                 key=lambda r: r[0])
        npairs = len(reps)
        return SearchReport(VERIFIED, npairs - best_deg, (Family(n, best_sel),), nodes, _elapsed(start))
    meter = _Meter(budget)
    sets = list(iter_k_masks(n, k))
    if len(sets) > UNIFORM_MAX_SETS:
        raise ResourceError(f"C({n},{k}) exceeds {UNIFORM_MAX_SETS} sets")
    adj = [sum(1 << j for j, b in enumerate(sets) if j != i and a & b) for i, a in enumerate(sets)]
    try:
        cliques = _maximal_cliques(adj, meter)
    except _BudgetExceeded:
        return SearchReport(EXHAUSTED, None, (), meter.nodes, _elapsed(start))
    fams = sorted({tuple(sets[v] for v in _bits(c)) for c in cliques})
    scored = [(diversity(Family(n, f)), f) for f in fams]
    best = max(d for d, _ in scored)
    wit = tuple(Family(n, f) for d, f in scored if d == best)
    return SearchReport(VERIFIED, best, wit, meter.nodes, _elapsed(start))


# ---------------------------------------------------------------------------
# disjoint cross-intersecting pairs: maximise min(|A|, |B|)
# ---------------------------------------------------------------------------

# per complement pair (S, S^c): where S and S^c go; A-B / B-A splits are infeasible
PAIR_STATES = (
    ("A", "A"), ("B", "B"), ("A", "-"), ("-", "A"), ("B", "-"), ("-", "B"), ("-", "-"),
)


def _pair_state_subtree(args: tuple) -> tuple[int, tuple | None, int, bool]:
    npairs, prefix, max_nodes, deadline = args
    meter = _Meter(SearchBudget(max_nodes=max_nodes))
    meter.deadline = deadline
    counts = [(s.count("A"), s.count("B")) for s in PAIR_STATES]
    best = [-1]
    best_states: list[tuple | None] = [None]
    states: list[int] = list(prefix)
    a0 = sum(counts[s][0] for s in prefix)
    b0 = sum(counts[s][1] for s in prefix)

    def dfs(idx: int, a: int, b: int, started: bool) -> None:
        meter.tick()
        rem = 2 * (npairs - idx)
        if min(a + rem, b + rem, (a + b + rem) // 2) <= best[0]:
            return
        if idx == npairs:
            best[0] = min(a, b)
            best_states[0] = tuple(states)
            return
        for si, (da, db) in enumerate(counts):
            if not started and da == 0 and db > 0:
                continue  # A <-> B symmetry: the first nonempty pair touches A
            states.append(si)
            dfs(idx + 1, a + da, b + db, started or da + db > 0)
            states.pop()

    try:
        dfs(len(prefix), a0, b0, a0 + b0 > 0)
    except _BudgetExceeded:
        return best[0], best_states[0], meter.nodes, True
    return best[0], best_states[0], meter.nodes, False


def _set_state_subtree(args: tuple) -> tuple[int, tuple | None, int, bool]:
    n, k, prefix, max_nodes, deadline = args
    sets = list(iter_k_masks(n, k))
    size = len(sets)
    disj = [sum(1 << j for j, b in enumerate(sets) if not a & b) for a in sets]
    meter = _Meter(SearchBudget(max_nodes=max_nodes))
    meter.deadline = deadline
    best = [-1]
    best_assign: list[tuple | None] = [None]
    assign: list[int] = []  # 0 -> A, 1 -> B, 2 -> neither

    def dfs(idx: int, ma: int, mb: int, a: int, b: int) -> None:
        meter.tick()
        ra = rb = rany = 0
        for j in range(idx, size):
            ok_a = not disj[j] & mb
            ok_b = not disj[j] & ma
            ra += ok_a
            rb += ok_b
            rany += ok_a or ok_b
        if min(a + ra, b + rb, (a + b + rany) // 2) <= best[0]:
            return
        if idx == size:
            best[0] = min(a, b)
            best_assign[0] = tuple(assign)
            return
        bit = 1 << idx
        started = a + b > 0
        if not disj[idx] & mb:
            assign.append(0)
            dfs(idx + 1, ma | bit, mb, a + 1, b)
            assign.pop()
        if started and not disj[idx] & ma:
            assign.append(1)
            dfs(idx + 1, ma, mb | bit, a, b + 1)
            assign.pop()
        assign.append(2)
        dfs(idx + 1, ma, mb, a, b)
        assign.pop()

    ma = mb = a = b = 0
    for i, s in enumerate(prefix):
        assign.append(s)
        if s == 0:
            ma |= 1 << i
            a += 1
        elif s == 1:
            mb |= 1 << i
            b += 1
    try:
        dfs(len(prefix), ma, mb, a, b)
    except _BudgetExceeded:
        return best[0], best_assign[0], meter.nodes, True
    return best[0], best_assign[0], meter.nodes, False


def _combine(results: list, start: float) -> tuple[str, int, tuple | None, int]:
    nodes = sum(r[2] for r in results)
    exhausted = any(r[3] for r in results)
    best, wit = -1, None
    for value, w, _, _ in results:
        if w is not None and value > best:
            best, wit = value, w
    return (EXHAUSTED if exhausted else VERIFIED), best, wit, nodes


def max_min_disjoint_cross(n: int, k: int, budget: SearchBudget | None = None) -> SearchReport:
    """Max of min(|A|, |B|) over disjoint cross-intersecting A, B in C([n], k).

    At n = 2k two k-sets are disjoint only when complementary, so each
    complement pair independently takes one of seven feasible states.
    Otherwise every k-set is assigned to A, B or neither with cross-violation
    and min-size pruning.  The first nonempty assignment goes to A.
    """
    budget = budget or SearchBudget()
    if k < 1 or k > n:
        raise DomainError(f"need 1 <= k <= n, got n={n}, k={k}")
    start = time.monotonic()
    deadline = start + budget.max_seconds
    if n == 2 * k:
        full = full_mask(n)
        reps = [m for m in iter_k_masks(n, k) if m & 1]
        npairs = len(reps)
        tasks = [(npairs, (s,), budget.max_nodes, deadline)
                 for s in range(len(PAIR_STATES)) if not (PAIR_STATES[s].count("A") == 0
                                                          and PAIR_STATES[s].count("B") > 0)]
        status, best, wit, nodes = _combine(_run_subtrees(_pair_state_subtree, tasks, budget.worker_count), start)
        if wit is None:
            return SearchReport(status, None, (), nodes, _elapsed(start))
        fa, fb = [], []
        for rep, si in zip(reps, wit):
            for s, where in zip((rep, full ^ rep), PAIR_STATES[si]):
                if where == "A":
                    fa.append(s)
                elif where == "B":
                    fb.append(s)
        pair = (Family.from_masks(n, fa), Family.from_masks(n, fb))
        return SearchReport(status, best, pair, nodes, _elapsed(start))
    if binom(n, k) > CROSS_MAX_SETS:
        raise ResourceError(f"C({n},{k}) exceeds {CROSS_MAX_SETS} sets")
    sets = list(iter_k_masks(n, k))
    tasks = [(n, k, (s,), budget.max_nodes, deadline) for s in (0, 2)]
    status, best, wit, nodes = _combine(_run_subtrees(_set_state_subtree, tasks, budget.worker_count), start)
    if wit is None:
        return SearchReport(status, None, (), nodes, _elapsed(start))
    fa = [s for s, w in zip(sets, wit) if w == 0]
    fb = [s for s, w in zip(sets, wit) if w == 1]
    return SearchReport(status, best, (Family(n, tuple(fa)), Family(n, tuple(fb))), nodes, _elapsed(start))


def exhaustive_max_min_disjoint_cross(n: int, k: int) -> SearchReport:
    """Unpruned scan of all 3^C(n,k) assignments; reference for small cases."""
    start = time.monotonic()
    sets = list(iter_k_masks(n, k))
    if len(sets) > BRUTE_CROSS_MAX_SETS:
        raise ResourceError(f"C({n},{k}) exceeds {BRUTE_CROSS_MAX_SETS} sets for the full scan")
    best, wit, nodes = -1, None, 0
    for assign in product((0, 1, 2), repeat=len(sets)):
        nodes += 1
        fa = [s for s, w in zip(sets, assign) if w == 0]
        fb = [s for s, w in zip(sets, assign) if w == 1]
        if min(len(fa), len(fb)) <= best:
            continue
        if all(x & y for x in fa for y in fb):
            best, wit = min(len(fa), len(fb)), (Family(n, tuple(fa)), Family(n, tuple(fb)))
    return SearchReport(VERIFIED, best, wit or (), nodes, _elapsed(start))


# ---------------------------------------------------------------------------
# conjecture checks
# ---------------------------------------------------------------------------

def is_power_of_two(k: int) -> bool:
    return k >= 1 and k & (k - 1) == 0


def odd_conjecture_value(k: int) -> int:
    return sum(binom(2 * k, i) for i in range(k + 1, 2 * k + 1))


def even_conjecture_value(k: int) -> int:
    middle = binom(2 * k - 1, k - 1) - (1 if is_power_of_two(k) else 0)
    half = Fraction(middle, 2)
    if half.denominator != 1:
        raise ArithmeticError(f"half-count for k={k} is not integral")
    return int(half) + sum(binom(2 * k - 1, i) for i in range(k + 1, 2 * k))


def _conjecture_report(n: int, target: int, budget: SearchBudget | None) -> SearchReport:
    rep = max_diversity_nonuniform(n, budget)
    if rep.status == EXHAUSTED:
        return SearchReport(EXHAUSTED, None, (), rep.nodes_explored, rep.elapsed_ms, target)
    status = VERIFIED if rep.optimum == target else REFUTED
    return SearchReport(status, rep.optimum, rep.witnesses, rep.nodes_explored, rep.elapsed_ms, target)


def check_conjecture_odd(k: int, budget: SearchBudget | None = None) -> SearchReport:
    """Max diversity over intersecting families of 2^[2k+1] against the Q_k value."""
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if 2 * k + 1 > NONUNIFORM_MAX_N:
        raise ResourceError(f"n = {2 * k + 1} exceeds the search envelope n <= {NONUNIFORM_MAX_N}")
    return _conjecture_report(2 * k + 1, odd_conjecture_value(k), budget)


def check_conjecture_even(k: int, budget: SearchBudget | None = None) -> SearchReport:
    """Max diversity over intersecting families of 2^[2k] against the conjectured value."""
    if k < 1:
        raise DomainError(f"need k >= 1, got {k}")
    if 2 * k > NONUNIFORM_MAX_N:
        raise ResourceError(f"n = {2 * k} exceeds the search envelope n <= {NONUNIFORM_MAX_N}")
    return _conjecture_report(2 * k, even_conjecture_value(k), budget)
