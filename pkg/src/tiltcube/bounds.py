"""Window (LYM-type) inequalities, the level LP, and the distance bounds.

A window W is a tuple of levels; a profile x satisfies it when
sum_{j in W} x_j / binom(n, j) <= 1.  Everything here is exact.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd
from typing import Optional, Sequence

from .core import LevelProfile, SetFamily, binomial, middle_binomial, profile_of
from .predicates import at_most_distance, exact_distance, verify_family
from .simplex import OPTIMAL, optimum_is_unique, simplex_max

FULL = "full"
JK_ONLY = "jk"

UNIQUE = "unique"
MULTIPLE = "multiple"
UNKNOWN = "unknown"


def window_sets_12(n: int) -> list[tuple]:
    if n < 1:
        raise ValueError("n must be positive")
    lower = [tuple(range(l, 2 * l + 1)) for l in range(n // 3 + 1)]
    upper = [tuple(range(2 * k - n, k + 1)) for k in range(-(-2 * n // 3), n + 1)]
    return lower + upper


def window_sets_pq(n: int, p: int, q: int) -> list[tuple]:
    """The residue classes J_0..J_(q-p-1) of [ceil(pn/(p+q)), floor(qn/(p+q))] mod q-p."""
    if not 0 < p < q or gcd(p, q) != 1:
        raise ValueError(f"need coprime 0 < p < q, got {p}:{q}")
    lo, hi = -(-p * n // (p + q)), q * n // (p + q)
    d = q - p
    return [tuple(l for l in range(lo, hi + 1) if l % d == k) for k in range(d)]


@dataclass
class WindowCheck:
    sums: list
    passed: bool

    @property
    def failures(self) -> list[int]:
        return [i for i, s in enumerate(self.sums) if s > 1]


def check_windows(profile: LevelProfile, windows: Sequence[Sequence[int]]) -> WindowCheck:
    n = profile.n
    sums = [sum((Fraction(profile[j]) / binomial(n, j) for j in w), Fraction(0)) for w in windows]
    return WindowCheck(sums, all(s <= 1 for s in sums))


# -- the level LP -----------------------------------------------------------------

@dataclass(frozen=True)
class LinearProgram:
    """max sum x_j  s.t.  window rows, 0 <= x_j <= upper_j."""

    n: int
    windows: tuple
    upper: tuple
    p: int = 1
    q: int = 2
    variant: str = FULL

    def rows(self) -> tuple[list, list]:
        """Dense constraint matrix and right-hand side (windows first, then boxes)."""
        n = self.n
        A, b = [], []
        for w in self.windows:
            A.append([Fraction(1, binomial(n, j)) if j in w else Fraction(0) for j in range(n + 1)])
            b.append(Fraction(1))
        for j in range(n + 1):
            A.append([Fraction(int(i == j)) for i in range(n + 1)])
            b.append(Fraction(self.upper[j]))
        return A, b


@dataclass
class LPSolution:
    optimum: Fraction
    profile: LevelProfile
    uniqueness: str
    dual: list = field(default_factory=list)

    @property
    def unique(self) -> bool:
        return self.uniqueness == UNIQUE


def build_lp(n: int, p: int = 1, q: int = 2, variant: str = FULL,
             upper: Optional[Sequence[int]] = None) -> LinearProgram:
    if variant == FULL:
        if (p, q) != (1, 2):
            raise ValueError("the full window family is only available for ratio 1:2")
        windows = window_sets_12(n)
    elif variant == JK_ONLY:
        windows = window_sets_pq(n, p, q)
    else:
        raise ValueError(f"unknown LP variant {variant!r}")
    if upper is None:
        upper = [binomial(n, j) for j in range(n + 1)]
    return LinearProgram(n, tuple(tuple(w) for w in windows), tuple(upper), p, q, variant)


def solve_lp_exact(lp: LinearProgram) -> LPSolution:
    # Work in y_j = x_j / binom(n, j): column scaling leaves the duals unchanged
    # and keeps the tableau integral-looking, which is much faster.
    n = lp.n
    scale = [binomial(n, j) for j in range(n + 1)]
    A, b = lp.rows()
    A_scaled = [[a * s for a, s in zip(row, scale)] for row in A]
    res = simplex_max(scale, A_scaled, b)
    if res.status != OPTIMAL:
        raise RuntimeError("level LP reported unbounded")
    x = [y * s for y, s in zip(res.x, scale)]
    uniqueness = UNIQUE if optimum_is_unique(res) else MULTIPLE
    return LPSolution(res.value, LevelProfile(x), uniqueness, list(res.dual))


def lp_objective(profile: LevelProfile) -> Fraction:
    return profile.total()


def is_feasible(lp: LinearProgram, profile: LevelProfile) -> bool:
    A, b = lp.rows()
    return all(sum((a * x for a, x in zip(row, profile)), Fraction(0)) <= rhs
               for row, rhs in zip(A, b))


def dual_certificate_ok(lp: LinearProgram, sol: LPSolution) -> bool:
    """y >= 0, A^T y >= 1 and b.y equals the optimum exactly."""
    A, b = lp.rows()
    y = sol.dual
    if len(y) != len(A) or any(v < 0 for v in y):
        return False
    for j in range(lp.n + 1):
        if sum((A[i][j] * y[i] for i in range(len(A))), Fraction(0)) < 1:
            return False
    return sum((bi * yi for bi, yi in zip(b, y)), Fraction(0)) == sol.optimum


def lp_closed_form_jk(n: int, p: int, q: int) -> Fraction:
    """Optimum of the J_k-only LP: the classes are disjoint, so each keeps its largest level."""
    classes = window_sets_pq(n, p, q)
    covered = {j for w in classes for j in w}
    total = sum(binomial(n, j) for j in range(n + 1) if j not in covered)
    total += sum(max((binomial(n, j) for j in w), default=0) for w in classes)
    return Fraction(total)


def windows_are_totally_unimodular(windows) -> bool:
    """Sufficient test: every window is a run of consecutive levels, or windows are disjoint."""
    if all(not w or list(w) == list(range(w[0], w[-1] + 1)) for w in windows):
        return True
    seen = set()
    for w in windows:
        if seen & set(w):
            return False
        seen |= set(w)
    return True


def enumerate_vertices(lp: LinearProgram) -> tuple[Fraction, list]:
    """Optimum and optimal profiles by enumerating 0/1 points in y_j = x_j / binom(n, j).

    Valid only for full-box LPs whose window matrix is totally unimodular,
    where every vertex is such a point.  Limited to at most 12 variables.
    """
    n = lp.n
    if n + 1 > 12:
        raise ValueError("vertex enumeration is limited to 12 variables")
    if list(lp.upper) != [binomial(n, j) for j in range(n + 1)]:
        raise ValueError("vertex enumeration needs the full box constraints")
    if not windows_are_totally_unimodular(lp.windows):
        raise ValueError("window matrix is not known to be totally unimodular")
    best, argbest = Fraction(-1), []
    for bits in product((0, 1), repeat=n + 1):
        if any(sum(bits[j] for j in w) > 1 for w in lp.windows):
            continue
        value = Fraction(sum(binomial(n, j) for j in range(n + 1) if bits[j]))
        prof = [binomial(n, j) * bits[j] for j in range(n + 1)]
        if value > best:
            best, argbest = value, [prof]
        elif value == best:
            argbest.append(prof)
    return best, argbest


# -- distance bounds ---------------------------------------------------------------

@dataclass
class LevelSlack:
    level: int
    lhs: int
    rhs: int

    @property
    def slack(self) -> int:
        return self.rhs - self.lhs

    @property
    def passed(self) -> bool:
        return self.lhs <= self.rhs


@dataclass
class Distance1Report:
    valid: bool
    violation: Optional[tuple] = None
    levels: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.valid and all(lv.passed for lv in self.levels)


def distance1_level_bound(family: SetFamily) -> Distance1Report:
    """(n - i) |F_i| <= binom(n, i+1) for each level i < n.

    Each (i+1)-set contains at most one member of level i when no two members
    are at distance exactly one, and every i-set lies in n - i of them.
    """
    report = verify_family(family, exact_distance(1), max_violations=1)
    if not report.valid:
        return Distance1Report(False, report.violations[0])
    n = family.n
    prof = profile_of(family)
    levels = [LevelSlack(i, (n - i) * int(prof[i]), binomial(n, i + 1)) for i in range(n)]
    return Distance1Report(True, None, levels)


@dataclass
class WeightReport:
    valid: bool
    weight: int = 0
    bound: int = 0
    violation: Optional[tuple] = None

    @property
    def passed(self) -> bool:
        return self.valid and self.weight <= self.bound


def atmostk_weight_bound(family: SetFamily, k: int) -> WeightReport:
    """sum over members of binom(|A|, k) <= binom(n, floor(n/2)).

    The left side counts the k-shadow exactly when members are pairwise more
    than k apart, and that shadow is an antichain.
    """
    report = verify_family(family, at_most_distance(k), max_violations=1)
    if not report.valid:
        return WeightReport(False, violation=report.violations[0])
    weight = sum(binomial(w.bit_count(), k) for w in family.members)
    return WeightReport(True, weight, middle_binomial(family.n))
