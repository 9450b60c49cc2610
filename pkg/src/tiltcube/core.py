"""Subsets of [n] as machine words, set families, level profiles and binomials.

A subset of ``{1, ..., n}`` is stored as a plain Python ``int`` whose bit
``i - 1`` is set when element ``i`` is present.  Families keep their members
in a normalized order: ascending by cardinality, then by numeric value.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

MAX_N = 64
# Full levels are enumerated explicitly only up to this ground-set size.
MAX_ENUMERATION_N = 28


class SizeGuardError(ValueError):
    """An operation would enumerate more objects than its guard allows."""


@dataclass(frozen=True)
class GroundSet:
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or not 1 <= self.n <= MAX_N:
            raise ValueError(f"ground set size must be in [1, {MAX_N}], got {self.n!r}")

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    def contains(self, word: int) -> bool:
        return 0 <= word <= self.full


# -- subset words --------------------------------------------------------

def popcount(word: int) -> int:
    return word.bit_count()


def from_elements(elements: Iterable[int]) -> int:
    word = 0
    for e in elements:
        if e < 1 or e > MAX_N:
            raise ValueError(f"element {e} outside [1, {MAX_N}]")
        word |= 1 << (e - 1)
    return word


def to_elements(word: int) -> list[int]:
    out = []
    i = 1
    while word:
        if word & 1:
            out.append(i)
        word >>= 1
        i += 1
    return out


def complement(word: int, n: int) -> int:
    return ((1 << n) - 1) & ~word


def sort_key(word: int) -> tuple[int, int]:
    return (word.bit_count(), word)


def level_words(n: int, k: int) -> Iterator[int]:
    """Yield every k-subset of [n] in increasing numeric order (Gosper's hack)."""
    if k < 0 or k > n:
        return
    if k == 0:
        yield 0
        return
    word = (1 << k) - 1
    limit = 1 << n
    while word < limit:
        yield word
        low = word & -word
        ripple = word + low
        word = (((ripple ^ word) >> 2) // low) | ripple


# -- binomials and rationals -----------------------------------------------

@lru_cache(maxsize=None)
def binomial(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def middle_binomial(n: int) -> int:
    return binomial(n, n // 2)


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        if int(den) <= 0:
            raise ValueError(f"denominator must be positive in {text!r}")
        return Fraction(int(num), int(den))
    return Fraction(int(text))


# -- families ---------------------------------------------------------------

@dataclass(frozen=True)
class SetFamily:
    """An explicit, duplicate-free family of subsets of [n] in normalized order."""

    n: int
    members: tuple[int, ...]
    _index: frozenset = field(default=frozenset(), repr=False, compare=False)

    def __init__(self, n: int, members: Iterable[int] = ()):
        ground = GroundSet(n)
        uniq = set()
        for w in members:
            if not isinstance(w, int) or not ground.contains(w):
                raise ValueError(f"{w!r} is not a subset of [{n}]")
            uniq.add(w)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "members", tuple(sorted(uniq, key=sort_key)))
        object.__setattr__(self, "_index", frozenset(uniq))

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> "SetFamily":
        return cls(n, (from_elements(s) for s in sets))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, word: int) -> bool:
        return word in self._index

    def level(self, i: int) -> list[int]:
        return [w for w in self.members if w.bit_count() == i]

    def as_sets(self) -> list[list[int]]:
        return [to_elements(w) for w in self.members]

    def complemented(self) -> "SetFamily":
        return SetFamily(self.n, (complement(w, self.n) for w in self.members))

    def restrict_levels(self, levels: Iterable[int]) -> "SetFamily":
        keep = set(levels)
        return SetFamily(self.n, (w for w in self.members if w.bit_count() in keep))


@dataclass(frozen=True)
class LevelProfile:
    """Per-level counts (x_0, ..., x_n); entries are exact rationals."""

    counts: tuple[Fraction, ...]

    def __init__(self, counts: Sequence):
        vals = tuple(Fraction(c) for c in counts)
        if not vals:
            raise ValueError("a profile needs at least one level")
        if any(c < 0 for c in vals):
            raise ValueError("profile counts must be nonnegative")
        object.__setattr__(self, "counts", vals)

    @property
    def n(self) -> int:
        return len(self.counts) - 1

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, i: int) -> Fraction:
        return self.counts[i]

    def __iter__(self):
        return iter(self.counts)

    def total(self) -> Fraction:
        return sum(self.counts, Fraction(0))

    def is_realizable(self) -> bool:
        return all(c.denominator == 1 and c <= binomial(self.n, i)
                   for i, c in enumerate(self.counts))


def profile_of(family: SetFamily) -> LevelProfile:
    counts = [0] * (family.n + 1)
    for w in family.members:
        counts[w.bit_count()] += 1
    return LevelProfile(counts)


def check_enumeration(n: int) -> None:
    if n > MAX_ENUMERATION_N:
        raise SizeGuardError(
            f"enumerating full levels is capped at n <= {MAX_ENUMERATION_N}, got n={n}")
