"""Forbidden configurations, pair and family checks, and conflict graphs.

Every configuration is evaluated on an ordered pair of distinct sets
``(A, B)``; a family is valid when no ordered pair of distinct members
conflicts.  Predicates have a string form shared with the CLI:
``ratio:P:Q``, ``dist:K``, ``distle:K`` and ``antichain``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Optional

import numpy as np

from .core import SetFamily, SizeGuardError, binomial, level_words, sort_key

RATIO = "ratio"
EXACT_DISTANCE = "dist"
AT_MOST_DISTANCE = "distle"
COMPARABILITY = "antichain"

PAIRWISE = "pairwise"
LEVEL_SHORTCUT = "level-shortcut"

MAX_PAIRWISE = 10**9
MAX_GRAPH_VERTICES = 1 << 20


@dataclass(frozen=True)
class ConflictPredicate:
    kind: str
    p: int = 0
    q: int = 0
    k: int = 0

    def __post_init__(self):
        if self.kind == RATIO:
            if not (0 < self.p < self.q) or gcd(self.p, self.q) != 1:
                raise ValueError(f"ratio needs coprime 0 < p < q, got {self.p}:{self.q}")
        elif self.kind in (EXACT_DISTANCE, AT_MOST_DISTANCE):
            if self.k < 0:
                raise ValueError(f"distance must be nonnegative, got {self.k}")
        elif self.kind != COMPARABILITY:
            raise ValueError(f"unknown predicate kind {self.kind!r}")

    def __str__(self) -> str:
        if self.kind == RATIO:
            return f"ratio:{self.p}:{self.q}"
        if self.kind in (EXACT_DISTANCE, AT_MOST_DISTANCE):
            return f"{self.kind}:{self.k}"
        return COMPARABILITY

    def holds(self, a_minus_b: int, b_minus_a: int) -> bool:
        """Conflict test on the two difference sizes |A\\B| and |B\\A|."""
        if self.kind == RATIO:
            return self.p * a_minus_b == self.q * b_minus_a
        if self.kind == EXACT_DISTANCE:
            return a_minus_b == self.k
        if self.kind == AT_MOST_DISTANCE:
            return a_minus_b <= self.k
        return a_minus_b == 0


def ratio(p: int, q: int) -> ConflictPredicate:
    return ConflictPredicate(RATIO, p=p, q=q)


def exact_distance(k: int) -> ConflictPredicate:
    return ConflictPredicate(EXACT_DISTANCE, k=k)


def at_most_distance(k: int) -> ConflictPredicate:
    return ConflictPredicate(AT_MOST_DISTANCE, k=k)


def comparability() -> ConflictPredicate:
    return ConflictPredicate(COMPARABILITY)


def parse_predicate(text: str) -> ConflictPredicate:
    parts = text.strip().split(":")
    try:
        if parts[0] == RATIO and len(parts) == 3:
            return ratio(int(parts[1]), int(parts[2]))
        if parts[0] in (EXACT_DISTANCE, AT_MOST_DISTANCE) and len(parts) == 2:
            return ConflictPredicate(parts[0], k=int(parts[1]))
        if parts == [COMPARABILITY]:
            return comparability()
    except ValueError as exc:
        raise ValueError(f"bad predicate {text!r}: {exc}") from None
    raise ValueError(f"bad predicate {text!r}; expected ratio:P:Q, dist:K, distle:K or antichain")


def pair_conflicts(a: int, b: int, pred: ConflictPredicate) -> bool:
    if a == b:
        raise ValueError("pair_conflicts needs distinct sets")
    return pred.holds((a & ~b).bit_count(), (b & ~a).bit_count())


# -- level rules --------------------------------------------------------------

def level_conflict_ratio(u: int, v: int, n: int, p: int, q: int) -> bool:
    """True iff a set at level max(u, v) and one at level min(u, v) can conflict."""
    if u > v:
        u, v = v, u
    d = v - u
    if d == 0 or (p * d) % (q - p):
        return False
    t = p * d // (q - p)  # |B\A| for A on the higher level
    return t <= u and v + t <= n


def level_conflict(u: int, v: int, n: int, pred: ConflictPredicate) -> Optional[tuple[int, int]]:
    """Difference sizes (|A\\B|, |B\\A|) of a conflicting pair with |A|=u, |B|=v.

    Returns None when no such pair exists.  Any pair of distinct sets with
    the given sizes is determined up to permutation of [n] by its
    intersection size, so scanning that one parameter is exhaustive.
    """
    for y in range(0, min(v, n - u) + 1):
        x = y + u - v
        if x < 0 or x > u or (x == 0 and y == 0):
            continue
        if pred.holds(x, y):
            return x, y
    return None


def witness_pair(u: int, x: int, y: int) -> tuple[int, int]:
    """Concrete sets with |A|=u, |A\\B|=x, |B\\A|=y."""
    common = u - x
    a = (1 << u) - 1
    b = ((1 << common) - 1) | (((1 << y) - 1) << u)
    return a, b


# -- family verification -------------------------------------------------------

@dataclass
class VerificationReport:
    valid: bool
    violations: list = field(default_factory=list)
    strategy: str = PAIRWISE


def full_levels(family: SetFamily) -> Optional[list[int]]:
    """Levels of the family if it is an exact union of full levels, else None."""
    counts: dict[int, int] = {}
    for w in family.members:
        c = w.bit_count()
        counts[c] = counts.get(c, 0) + 1
    if all(cnt == binomial(family.n, lv) for lv, cnt in counts.items()):
        return sorted(counts)
    return None


def verify_family(family: SetFamily, pred: ConflictPredicate, strategy: str = PAIRWISE,
                  max_violations: int = 10) -> VerificationReport:
    if strategy == PAIRWISE:
        if len(family) ** 2 > MAX_PAIRWISE:
            raise SizeGuardError(f"pairwise check of {len(family)} sets exceeds the guard")
        violations = _pairwise_violations(family, pred, max_violations)
    elif strategy == LEVEL_SHORTCUT:
        levels = full_levels(family)
        if levels is None:
            raise ValueError("level-shortcut verification needs a union of full levels")
        violations = []
        for u in levels:
            for v in levels:
                hit = level_conflict(u, v, family.n, pred)
                if hit is not None and len(violations) < max_violations:
                    violations.append(witness_pair(u, *hit))
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return VerificationReport(valid=not violations, violations=violations, strategy=strategy)


def _pairwise_violations(family: SetFamily, pred: ConflictPredicate, limit: int) -> list:
    members = family.members
    if not members:
        return []
    arr = np.array(members, dtype=np.uint64)
    out = []
    for i, a in enumerate(members):
        x = np.bitwise_count(np.uint64(a) & ~arr)
        y = np.bitwise_count(arr & ~np.uint64(a))
        mask = _holds_vec(pred, x, y)
        mask[i] = False
        for j in np.flatnonzero(mask):
            out.append((a, members[j]))
            if len(out) >= limit:
                return out
    return out


def _holds_vec(pred: ConflictPredicate, x, y):
    x = x.astype(np.int64)
    y = y.astype(np.int64)
    if pred.kind == RATIO:
        return pred.p * x == pred.q * y
    if pred.kind == EXACT_DISTANCE:
        return x == pred.k
    if pred.kind == AT_MOST_DISTANCE:
        return x <= pred.k
    return x == 0


# -- conflict graph ---------------------------------------------------------------

@dataclass
class ConflictGraph:
    """Undirected conflict graph; ``adj[i]`` is a bitmask over vertex indices."""

    n: int
    predicate: ConflictPredicate
    vertices: tuple
    adj: list

    def __len__(self) -> int:
        return len(self.vertices)

    def index(self) -> dict:
        return {w: i for i, w in enumerate(self.vertices)}

    def degree(self, word: int) -> int:
        return self.adj[self.index()[word]].bit_count()

    def edge_count(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def neighbors(self, i: int) -> list[int]:
        m, out = self.adj[i], []
        while m:
            low = m & -m
            out.append(low.bit_length() - 1)
            m ^= low
        return out


def conflict_graph(n: int, pred: ConflictPredicate,
                   levels: Optional[Iterable[int]] = None) -> ConflictGraph:
    levels = range(n + 1) if levels is None else sorted(set(levels))
    size = sum(binomial(n, lv) for lv in levels)
    if size > MAX_GRAPH_VERTICES:
        raise SizeGuardError(f"conflict graph on {size} vertices exceeds the guard")
    vertices = tuple(sorted((w for lv in levels for w in level_words(n, lv)), key=sort_key))
    arr = np.array(vertices, dtype=np.uint64)
    adj = []
    for i, a in enumerate(vertices):
        x = np.bitwise_count(np.uint64(a) & ~arr)
        y = np.bitwise_count(arr & ~np.uint64(a))
        mask = _holds_vec(pred, x, y) | _holds_vec(pred, y, x)
        mask[i] = False
        adj.append(int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little"))
    return ConflictGraph(n=n, predicate=pred, vertices=vertices, adj=adj)
