"""Exact maximum valid families (maximum independent set) and greedy families.

Vertices of the conflict graph are subsets of [n] in normalized order and a
family is valid exactly when its vertex set is independent.  The exact
search is a depth-first branch and bound over bitmasks: it branches on the
lowest candidate vertex, visiting "include" before "exclude", so sets are
visited in lexicographic order of their sorted vertex indices.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from functools import lru_cache
from math import floor
from typing import Optional

import numpy as np

from .bounds import FULL, JK_ONLY, build_lp, solve_lp_exact
from .core import SetFamily, SizeGuardError, binomial
from .predicates import RATIO, ConflictPredicate, conflict_graph, verify_family

PROVED_OPTIMAL = "proved-optimal"
LOWER_BOUND_ONLY = "lower-bound-only"


@dataclass(frozen=True)
class SearchBudget:
    max_universe: int = 1 << 14
    time_limit: Optional[float] = 60.0
    deterministic: bool = True

    def __post_init__(self):
        if self.max_universe <= 0 or (self.time_limit is not None and self.time_limit <= 0):
            raise ValueError("search budget limits must be positive")


@dataclass
class SearchResult:
    size: int
    witness: SetFamily
    status: str
    nodes_expanded: int = 0


@lru_cache(maxsize=64)
def cached_graph(n: int, pred: ConflictPredicate, levels: Optional[tuple] = None):
    return conflict_graph(n, pred, levels)


def _universe_size(n: int, levels) -> int:
    levels = range(n + 1) if levels is None else levels
    return sum(binomial(n, lv) for lv in set(levels))


def _greedy_indices(adj: list, order) -> int:
    chosen = blocked = 0
    for v in order:
        bit = 1 << int(v)
        if not blocked & bit:
            chosen |= bit
            blocked |= adj[v] | bit
    return chosen


def _indices(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def greedy_family(n: int, pred: ConflictPredicate, seed: int,
                  levels: Optional[tuple] = None) -> SetFamily:
    """A maximal valid family built by scanning the universe in a seeded random order."""
    if _universe_size(n, levels) > SearchBudget().max_universe:
        raise SizeGuardError("universe too large for greedy search")
    graph = cached_graph(n, pred, None if levels is None else tuple(sorted(set(levels))))
    rng = np.random.Generator(np.random.PCG64(seed))
    chosen = _greedy_indices(graph.adj, rng.permutation(len(graph)))
    return SetFamily(n, (graph.vertices[i] for i in _indices(chosen)))


class _OutOfTime(Exception):
    pass


def _clique_cover(cand: int, adj: list) -> int:
    """Number of cliques in a greedy clique cover of the candidate set."""
    count = 0
    while cand:
        low = cand & -cand
        clique = low
        pool = cand & adj[low.bit_length() - 1]
        while pool:
            u = pool & -pool
            clique |= u
            pool &= adj[u.bit_length() - 1]
        cand &= ~clique
        count += 1
    return count


def _level_lp_bound(n: int, pred: ConflictPredicate):
    """Memoized floor of the level LP with per-level caps, or None for non-ratio predicates."""
    if pred.kind != RATIO:
        return None
    variant = FULL if (pred.p, pred.q) == (1, 2) else JK_ONLY

    @lru_cache(maxsize=None)
    def bound(caps: tuple) -> int:
        return floor(solve_lp_exact(build_lp(n, pred.p, pred.q, variant, upper=caps)).optimum)

    return bound


def max_family(n: int, pred: ConflictPredicate, budget: Optional[SearchBudget] = None,
               levels: Optional[tuple] = None) -> SearchResult:
    budget = budget or SearchBudget()
    if _universe_size(n, levels) > budget.max_universe:
        raise SizeGuardError(f"universe exceeds max_universe={budget.max_universe}")
    levels = None if levels is None else tuple(sorted(set(levels)))
    graph = cached_graph(n, pred, levels)
    adj = graph.adj
    V = len(graph)
    level_masks = [0] * (n + 1)
    for i, w in enumerate(graph.vertices):
        level_masks[w.bit_count()] |= 1 << i

    lp_bound = _level_lp_bound(n, pred)

    best = _greedy_indices(adj, range(V))
    best_size = best.bit_count()
    from_dfs = False
    nodes = 0
    deadline = None if budget.time_limit is None else time.monotonic() + budget.time_limit
    stack = [(0, 0, (1 << V) - 1)]
    try:
        while stack:
            chosen, count, cand = stack.pop()
            nodes += 1
            if deadline is not None and nodes % 512 == 0 and time.monotonic() > deadline:
                raise _OutOfTime
            # while the incumbent is the greedy seed, ties are still explored so the
            # first optimum met in DFS order (the lexicographically smallest) is kept
            slack = 0 if (from_dfs or not budget.deterministic) else 1
            if cand == 0:
                if count > best_size or (count == best_size and slack):
                    best, best_size, from_dfs = chosen, count, True
                continue
            if count + cand.bit_count() + slack <= best_size:
                continue
            if count + _clique_cover(cand, adj) + slack <= best_size:
                continue
            if lp_bound is not None:
                caps = tuple(((chosen | cand) & m).bit_count() for m in level_masks)
                if lp_bound(caps) + slack <= best_size:
                    continue
            low = cand & -cand
            v = low.bit_length() - 1
            rest = cand & ~low
            if adj[v] & rest:
                stack.append((chosen, count, rest))
            stack.append((chosen | low, count + 1, rest & ~adj[v]))
        status = PROVED_OPTIMAL
    except _OutOfTime:
        status = LOWER_BOUND_ONLY

    witness = SetFamily(n, (graph.vertices[i] for i in _indices(best)))
    if not verify_family(witness, pred, max_violations=1).valid:
        raise RuntimeError("search produced an invalid witness")
    return SearchResult(best_size, witness, status, nodes)
