"""k-shadows and antichain checks."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .core import LevelProfile, SetFamily, SizeGuardError, binomial, profile_of

MAX_SHADOW_WORK = 10**7


@dataclass
class ShadowResult:
    shadow: SetFamily
    k: int
    source_profile: LevelProfile
    identity_sum: int
    identity_holds: bool


def _bits(word: int) -> list[int]:
    out = []
    while word:
        low = word & -word
        out.append(low)
        word ^= low
    return out


def k_shadow(family: SetFamily, k: int) -> ShadowResult:
    """All sets obtained by deleting exactly k elements from a member.

    ``identity_sum`` is sum_i binom(i, k) |F_i|, the size the shadow would
    have if no shadow set came from two different members.
    """
    if k < 0:
        raise ValueError(f"k must be nonnegative, got {k}")
    identity_sum = sum(binomial(w.bit_count(), k) for w in family.members)
    if identity_sum > MAX_SHADOW_WORK:
        raise SizeGuardError(f"shadow enumeration of {identity_sum} deletions exceeds the guard")
    out = set()
    for w in family.members:
        for removed in combinations(_bits(w), k):
            out.add(w ^ sum(removed))
    shadow = SetFamily(family.n, out)
    return ShadowResult(shadow, k, profile_of(family), identity_sum, len(shadow) == identity_sum)


def is_antichain(family: SetFamily) -> tuple[bool, Optional[tuple[int, int]]]:
    """(True, None) or (False, (A, B)) with A a proper subset of B."""
    members = family.members
    arr = np.array(members, dtype=np.uint64)
    # members are sorted by size, so a superset of members[i] can only come later
    for i, a in enumerate(members):
        hits = np.flatnonzero((np.uint64(a) & ~arr[i + 1:]) == 0)
        if hits.size:
            return False, (a, members[i + 1 + int(hits[0])])
    return True, None
