"""Explicit families that avoid the forbidden configurations.

Construction strings (shared with the CLI): ``b0``, ``levels:0,2,4``,
``interval:P:Q[:ANCHOR]``, ``modular[:R]`` and ``powersum:K``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from .core import SetFamily, binomial, check_enumeration, level_words, to_elements
from .predicates import at_most_distance, verify_family


class ConstructionError(ValueError):
    pass


@dataclass(frozen=True)
class LevelIndexSet:
    n: int
    levels: tuple
    a_chain: tuple
    b_chain: tuple


def index_set_I(n: int) -> LevelIndexSet:
    """Levels of B0: a_i = ceil(a_{i-1}/2) - 1 and b_i = floor((b_{i-1}+n)/2) + 1 from n/2.

    The chains stop once a value leaves [0, n].
    """
    if n % 2 or not 2 <= n <= 256:
        raise ConstructionError(f"index set needs an even n in [2, 256], got {n}")
    a_chain, b_chain = [n // 2], [n // 2]
    while True:
        a = -(-a_chain[-1] // 2) - 1
        if a < 0:
            break
        a_chain.append(a)
    while True:
        b = (b_chain[-1] + n) // 2 + 1
        if b > n:
            break
        b_chain.append(b)
    levels = tuple(sorted(set(a_chain) | set(b_chain)))
    return LevelIndexSet(n, levels, tuple(a_chain), tuple(b_chain))


def b0_size(n: int) -> int:
    """|B0(n)| without enumerating it."""
    return sum(binomial(n, lv) for lv in index_set_I(n).levels)


def build_level_union(n: int, levels: Iterable[int]) -> SetFamily:
    levels = sorted(set(levels))
    if any(lv < 0 or lv > n for lv in levels):
        raise ConstructionError(f"levels {levels} not within [0, {n}]")
    check_enumeration(n)
    return SetFamily(n, (w for lv in levels for w in level_words(n, lv)))


def build_B0(n: int) -> SetFamily:
    return build_level_union(n, index_set_I(n).levels)


def interval_levels(n: int, p: int, q: int, anchor: Optional[int] = None) -> list[int]:
    """The q-p consecutive levels starting at ``anchor``.

    Without an anchor the interval is centred so it contains floor(n/2).
    """
    if not 0 < p < q or gcd(p, q) != 1:
        raise ConstructionError(f"interval family needs coprime 0 < p < q, got {p}:{q}")
    width = q - p
    if anchor is None:
        anchor = max(0, (n - width + 1) // 2)
    if anchor < 0 or anchor + width - 1 > n:
        raise ConstructionError(f"interval of {width} levels from {anchor} does not fit in [0, {n}]")
    return list(range(anchor, anchor + width))


def build_interval_family(n: int, p: int, q: int, anchor: Optional[int] = None) -> SetFamily:
    return build_level_union(n, interval_levels(n, p, q, anchor))


def build_modular_family(n: int, r: Optional[int] = None) -> tuple[SetFamily, int]:
    """Sets of size floor(n/2) whose element sum is r mod n.

    With ``r`` omitted every residue is tried and the smallest one giving the
    largest family is used.
    """
    check_enumeration(n)
    half = n // 2
    classes: dict[int, list[int]] = {}
    for w in level_words(n, half):
        classes.setdefault(sum(to_elements(w)) % n, []).append(w)
    if r is None:
        r = max(range(n), key=lambda res: (len(classes.get(res, ())), -res))
    elif not 0 <= r < n:
        raise ConstructionError(f"residue {r} not in [0, {n})")
    return SetFamily(n, classes.get(r, ())), r


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def build_power_sum_family(n: int, k: int) -> SetFamily:
    """Sets of size floor(n/2) with sum of i**d = 0 mod n for d = 1..k (n prime).

    The result is checked against the distance-at-most-k condition before it
    is returned.
    """
    if not is_prime(n):
        raise ConstructionError(f"power-sum family needs a prime n, got {n}")
    if k < 1:
        raise ConstructionError(f"power-sum family needs k >= 1, got {k}")
    check_enumeration(n)
    powers = [[pow(i, d, n) for i in range(n + 1)] for d in range(1, k + 1)]
    keep = []
    for w in level_words(n, n // 2):
        elems = to_elements(w)
        if all(sum(row[i] for i in elems) % n == 0 for row in powers):
            keep.append(w)
    family = SetFamily(n, keep)
    report = verify_family(family, at_most_distance(k), max_violations=1)
    if not report.valid:
        raise ConstructionError(f"power-sum family n={n}, k={k} has a close pair {report.violations[0]}")
    return family


@dataclass(frozen=True)
class ConstructionSpec:
    kind: str
    n: int
    levels: tuple = ()
    p: int = 0
    q: int = 0
    anchor: Optional[int] = None
    r: Optional[int] = None
    k: int = 0


def parse_construction(text: str, n: int) -> ConstructionSpec:
    head, _, rest = text.strip().lower().partition(":")
    args = rest.split(":") if rest else []
    try:
        if head == "b0" and not args:
            return ConstructionSpec("b0", n)
        if head == "levels" and len(args) == 1:
            return ConstructionSpec("levels", n, levels=tuple(int(x) for x in args[0].split(",") if x))
        if head == "interval" and len(args) in (2, 3):
            anchor = int(args[2]) if len(args) == 3 else None
            return ConstructionSpec("interval", n, p=int(args[0]), q=int(args[1]), anchor=anchor)
        if head == "modular" and len(args) <= 1:
            return ConstructionSpec("modular", n, r=int(args[0]) if args else None)
        if head == "powersum" and len(args) == 1:
            return ConstructionSpec("powersum", n, k=int(args[0]))
    except ValueError:
        pass
    raise ValueError(f"bad construction {text!r}; expected b0, levels:L1,L2,..., "
                     "interval:P:Q[:ANCHOR], modular[:R] or powersum:K")


def build(spec: ConstructionSpec) -> tuple[SetFamily, dict]:
    """Build a family from a spec; the dict carries construction metadata."""
    if spec.kind == "b0":
        idx = index_set_I(spec.n)
        return build_level_union(spec.n, idx.levels), {"levels": list(idx.levels)}
    if spec.kind == "levels":
        return build_level_union(spec.n, spec.levels), {"levels": sorted(set(spec.levels))}
    if spec.kind == "interval":
        levels = interval_levels(spec.n, spec.p, spec.q, spec.anchor)
        return build_level_union(spec.n, levels), {"levels": levels}
    if spec.kind == "modular":
        family, r = build_modular_family(spec.n, spec.r)
        return family, {"r": r}
    if spec.kind == "powersum":
        return build_power_sum_family(spec.n, spec.k), {"k": spec.k}
    raise ValueError(f"unknown construction kind {spec.kind!r}")
