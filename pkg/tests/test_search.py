from math import comb

import pytest

from tiltcube.bounds import build_lp, solve_lp_exact
from tiltcube.constructions import b0_size
from tiltcube.core import SetFamily, SizeGuardError
from tiltcube.predicates import (at_most_distance, comparability, conflict_graph, exact_distance,
                                 ratio, verify_family)
from tiltcube.search import (LOWER_BOUND_ONLY, PROVED_OPTIMAL, SearchBudget, greedy_family,
                             max_family)


def brute_force_max(n, pred):
    """Largest independent set by scanning every subset of the universe."""
    g = conflict_graph(n, pred)
    V = len(g)
    best = 0
    for mask in range(1 << V):
        size = mask.bit_count()
        if size <= best:
            continue
        m, ok = mask, True
        while m and ok:
            low = m & -m
            ok = not g.adj[low.bit_length() - 1] & mask
            m ^= low
        if ok:
            best = size
    return best


def test_examples():
    res = max_family(2, ratio(1, 2))
    assert res.size == 4 and res.status == PROVED_OPTIMAL
    res = max_family(4, ratio(1, 2))
    assert res.size == 10 and res.status == PROVED_OPTIMAL
    assert max_family(3, exact_distance(1)).size == 2


@pytest.mark.parametrize("pred", [ratio(1, 2), ratio(1, 3), ratio(2, 3), exact_distance(1),
                                  exact_distance(2), at_most_distance(1), comparability()])
def test_matches_exhaustive_search(pred):
    for n in (1, 2, 3):
        assert max_family(n, pred).size == brute_force_max(n, pred)


def test_n4_ratio_matches_exhaustive_search():
    assert brute_force_max(4, ratio(1, 2)) == 10


def test_sperner_values():
    for n in range(1, 6):
        res = max_family(n, comparability())
        assert res.size == comb(n, n // 2) and res.status == PROVED_OPTIMAL


def test_sandwich():
    for n in (2, 4, 6):
        size = max_family(n, ratio(1, 2)).size
        assert b0_size(n) <= size <= solve_lp_exact(build_lp(n)).optimum


def test_witness_valid_and_deterministic():
    for pred in (ratio(1, 2), exact_distance(1), at_most_distance(1)):
        a = max_family(5, pred, SearchBudget(deterministic=True))
        b = max_family(5, pred, SearchBudget(deterministic=True))
        assert a.witness == b.witness and a.size == len(a.witness)
        assert verify_family(a.witness, pred).valid


def test_deterministic_witness_is_lexicographically_smallest():
    # enumerate all optimal independent sets on n = 3 and compare index vectors
    for pred in (ratio(1, 2), exact_distance(1), comparability()):
        g = conflict_graph(3, pred)
        V = len(g)
        opt = max_family(3, pred, SearchBudget(deterministic=True))
        best = []
        for mask in range(1 << V):
            if mask.bit_count() != opt.size:
                continue
            if all(not g.adj[i] & mask for i in range(V) if mask >> i & 1):
                best.append([i for i in range(V) if mask >> i & 1])
        idx = g.index()
        assert sorted(idx[w] for w in opt.witness) == min(best)


def test_budget_exhaustion_reports_lower_bound():
    res = max_family(8, exact_distance(1), SearchBudget(time_limit=0.01))
    assert res.status in (LOWER_BOUND_ONLY, PROVED_OPTIMAL)
    assert verify_family(res.witness, exact_distance(1)).valid
    with pytest.raises(SizeGuardError):
        max_family(6, ratio(1, 2), SearchBudget(max_universe=10))


def test_greedy_families():
    for n in range(1, 8):
        for pred in (ratio(1, 2), exact_distance(1), at_most_distance(2)):
            for seed in range(5):
                fam = greedy_family(n, pred, seed)
                assert verify_family(fam, pred).valid
                # maximality: no outside set can be added
                for w in range(1 << n):
                    if w not in fam:
                        assert not verify_family(SetFamily(n, list(fam) + [w]), pred).valid
    assert all(len(greedy_family(4, ratio(1, 2), s)) <= 10 for s in range(20))
    assert all(len(greedy_family(2, exact_distance(1), s)) <= 2 for s in range(20))
    assert greedy_family(6, ratio(1, 2), 3) == greedy_family(6, ratio(1, 2), 3)
