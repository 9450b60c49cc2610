"""Random orderings of [n] and the chain families built from them.

For a ratio-1:2 window [l, 2l] the ordering is split as
``(a_1..a_ceil(2n/3), b_1..b_floor(n/3))`` and

    C_i = {a_1..a_2i} | {b_(i+1)..b_l},   i = 0..l.

For a ratio p:q with n = (p+q)m the split is ``(a_1..a_qm, b_1..b_pm)`` and

    C_i = {a_1..a_(qi+k')} | {b_(pi+1)..b_pm},   i = 0..m-1 (plus C_m if k' = 0).

Any two chain members realize the forbidden configuration, so a valid family
meets each chain family at most once.  Note the orientation for 1:2: for
i < j the *larger* set C_j satisfies |C_j \\ C_i| = 2 |C_i \\ C_j|.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, sqrt

import numpy as np

from .core import SetFamily, binomial, complement

BLOCK = 4096


@dataclass(frozen=True)
class Ordering:
    perm: tuple
    seed: int | None = None

    def __post_init__(self):
        if sorted(self.perm) != list(range(1, len(self.perm) + 1)):
            raise ValueError("ordering must be a permutation of 1..n")

    @property
    def n(self) -> int:
        return len(self.perm)

    def split(self, prefix: int) -> tuple[tuple, tuple]:
        return self.perm[:prefix], self.perm[prefix:]


@dataclass(frozen=True)
class ChainFamily:
    chains: tuple
    params: dict = field(hash=False)
    ordering: Ordering


def random_ordering(n: int, seed: int) -> Ordering:
    if not 1 <= n <= 64:
        raise ValueError(f"n must be in [1, 64], got {n}")
    rng = np.random.Generator(np.random.PCG64(seed))
    return Ordering(tuple(int(x) for x in rng.permutation(np.arange(1, n + 1))), seed)


def _word(elems) -> int:
    w = 0
    for e in elems:
        w |= 1 << (e - 1)
    return w


def split_12(n: int) -> int:
    return -(-2 * n // 3)


def chain_family_12(ordering: Ordering, l: int) -> ChainFamily:
    n = ordering.n
    if l < 0 or 3 * l > n:
        raise ValueError(f"l must satisfy 0 <= l <= n/3, got l={l}, n={n}")
    a, b = ordering.split(split_12(n))
    chains = tuple(_word(a[:2 * i]) | _word(b[i:l]) for i in range(l + 1))
    return ChainFamily(chains, {"l": l}, ordering)


def upper_chain_family_12(ordering: Ordering, k: int) -> ChainFamily:
    """Chains for the window [2k-n, k], k >= 2n/3, by complementing the l = n-k chains."""
    n = ordering.n
    if k > n or 3 * k < 2 * n:
        raise ValueError(f"k must satisfy 2n/3 <= k <= n, got k={k}, n={n}")
    lower = chain_family_12(ordering, n - k)
    chains = tuple(complement(c, n) for c in reversed(lower.chains))
    return ChainFamily(chains, {"k": k}, ordering)


def chain_family_pq(ordering: Ordering, p: int, q: int, k: int) -> ChainFamily:
    n = ordering.n
    if not 0 < p < q or gcd(p, q) != 1:
        raise ValueError(f"need coprime 0 < p < q, got {p}:{q}")
    if n % (p + q):
        raise ValueError(f"p+q={p + q} must divide n={n}")
    if not 0 <= k < q - p:
        raise ValueError(f"k must be in [0, {q - p - 1}], got {k}")
    m = n // (p + q)
    kp = (k - p * m) % (q - p)
    a, b = ordering.split(q * m)
    count = m + 1 if kp == 0 else m
    chains = tuple(_word(a[:q * i + kp]) | _word(b[p * i:p * m]) for i in range(count))
    return ChainFamily(chains, {"p": p, "q": q, "k": k, "k_prime": kp, "m": m}, ordering)


def check_chain_identity_12(cf: ChainFamily) -> bool:
    cs = cf.chains
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if (cs[j] & ~cs[i]).bit_count() != 2 * (cs[i] & ~cs[j]).bit_count():
                return False
    return True


def check_chain_identity_pq(cf: ChainFamily) -> bool:
    p, q = cf.params["p"], cf.params["q"]
    cs = cf.chains
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            if q * (cs[i] & ~cs[j]).bit_count() != p * (cs[j] & ~cs[i]).bit_count():
                return False
    return True


# -- Monte-Carlo estimates -----------------------------------------------------

@dataclass
class Estimate:
    mean: float
    stderr: float
    trials: int
    seed: int


def chain_words(perms: np.ndarray, l: int) -> np.ndarray:
    """Words of C_0..C_l for each row of ``perms`` (0-based element indices).

    Returns shape (rows, l+1); row r equals chain_family_12 on ordering r.
    """
    rows, n = perms.shape
    prefix = split_12(n)
    elem_bits = (np.uint64(1) << np.arange(n, dtype=np.uint64))[perms]
    a_cum = np.concatenate([np.zeros((rows, 1), np.uint64),
                            np.bitwise_or.accumulate(elem_bits[:, :prefix], axis=1)], axis=1)
    b_part = elem_bits[:, prefix:prefix + l]
    # b_tail[:, i] is the OR of b_(i+1)..b_l
    b_tail = np.zeros((rows, l + 1), np.uint64)
    for i in range(l - 1, -1, -1):
        b_tail[:, i] = b_tail[:, i + 1] | b_part[:, i]
    return np.stack([a_cum[:, 2 * i] | b_tail[:, i] for i in range(l + 1)], axis=1)


def _chain_words_batch(n: int, l: int, trials: int, seed: int):
    done = 0
    block_index = 0
    while done < trials:
        size = min(BLOCK, trials - done)
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, block_index])))
        perms = rng.permuted(np.tile(np.arange(n), (size, 1)), axis=1)
        yield chain_words(perms, l)
        done += size
        block_index += 1


def _binomial_stderr(hits: int, trials: int) -> float:
    p = hits / trials
    return sqrt(p * (1 - p) / trials)


def estimate_membership(n: int, l: int, b: int, trials: int, seed: int) -> Estimate:
    """Fraction of random orderings whose 1:2 chain family contains ``b``."""
    size = b.bit_count()
    if not l <= size <= 2 * l:
        raise ValueError(f"|B|={size} is outside [l, 2l] = [{l}, {2 * l}]")
    if 3 * l > n or trials < 1:
        raise ValueError("need l <= n/3 and trials >= 1")
    hits = 0
    for words in _chain_words_batch(n, l, trials, seed):
        hits += int(np.count_nonzero(words[:, size - l] == np.uint64(b)))
    return Estimate(hits / trials, _binomial_stderr(hits, trials), trials, seed)


def expected_hits(family: SetFamily, l: int, trials: int, seed: int) -> Estimate:
    """Sample mean of X = |family & C| over random 1:2 chain families."""
    n = family.n
    if 3 * l > n or l < 0 or trials < 1:
        raise ValueError("need 0 <= l <= n/3 and trials >= 1")
    members = np.array(sorted(family.members), dtype=np.uint64)
    total = 0
    total_sq = 0
    for words in _chain_words_batch(n, l, trials, seed):
        x = np.isin(words, members).sum(axis=1)
        total += int(x.sum())
        total_sq += int((x * x).sum())
    mean = total / trials
    var = max(total_sq / trials - mean * mean, 0.0)
    stderr = sqrt(var / trials) if trials > 1 else 0.0
    return Estimate(mean, stderr, trials, seed)


def lym_sum(family: SetFamily, levels) -> Fraction:
    """Exact sum of |F_j| / binom(n, j) over the given levels."""
    counts = [0] * (family.n + 1)
    for w in family.members:
        counts[w.bit_count()] += 1
    return sum((Fraction(counts[j], binomial(family.n, j)) for j in levels), Fraction(0))
