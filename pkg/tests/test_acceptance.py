"""Exit criteria, one test each.  Run with ``pytest tests/test_acceptance.py -v``;
a PASS/FAIL line per criterion is printed in the terminal summary."""
from contextlib import contextmanager
from math import comb, gcd

from conftest import ACCEPTANCE_RESULTS
from tiltcube.bounds import (FULL, JK_ONLY, UNIQUE, atmostk_weight_bound, build_lp, check_windows,
                             distance1_level_bound, lp_closed_form_jk, solve_lp_exact,
                             window_sets_12, window_sets_pq)
from tiltcube.chains import (chain_family_12, chain_family_pq, check_chain_identity_12,
                             check_chain_identity_pq, estimate_membership, expected_hits,
                             random_ordering)
from tiltcube.cli import table_rows
from tiltcube.constructions import (b0_size, build_B0, build_modular_family, build_power_sum_family,
                                    index_set_I)
from tiltcube.core import SetFamily, binomial, level_words, middle_binomial, profile_of
from tiltcube.predicates import (PAIRWISE, at_most_distance, exact_distance, level_conflict_ratio,
                                 ratio, verify_family)
from tiltcube.search import PROVED_OPTIMAL, greedy_family, max_family
from tiltcube.shadow import is_antichain, k_shadow

SEEDS = range(100)


@contextmanager
def criterion(name, note=""):
    try:
        yield
    except BaseException:
        ACCEPTANCE_RESULTS.append((name, False, note))
        raise
    ACCEPTANCE_RESULTS.append((name, True, note))


def test_c01_b0_validity():
    with criterion("C1 B0 validity"):
        for n in range(2, 13, 2):
            assert verify_family(build_B0(n), ratio(1, 2), PAIRWISE).valid, n
        for n in range(2, 257, 2):
            levels = index_set_I(n).levels
            assert not any(level_conflict_ratio(u, v, n, 1, 2) for u in levels for v in levels), n
        assert index_set_I(16).levels == (0, 1, 3, 8, 13, 15, 16)
        assert len(build_B0(16)) == 14024 == b0_size(16)


def test_c02_n4_counterexample():
    with criterion("C2 n=4 counterexample"):
        fam = SetFamily(4, (w for w in range(16) if w.bit_count() != 2))
        assert verify_family(fam, ratio(1, 2), PAIRWISE).valid
        assert len(fam) == 10 > len(build_B0(4)) == 8
        res = max_family(4, ratio(1, 2))
        assert res.size == 10 and res.status == PROVED_OPTIMAL


def test_c03_lp_exactness():
    with criterion("C3 LP exactness"):
        sol = solve_lp_exact(build_lp(4, 1, 2, FULL))
        assert sol.optimum == 10 and list(sol.profile) == [1, 4, 0, 4, 1] and sol.uniqueness == UNIQUE
        sol3 = solve_lp_exact(build_lp(3, 1, 2, FULL))
        res3 = max_family(3, ratio(1, 2))
        assert sol3.optimum == 5 == res3.size and res3.status == PROVED_OPTIMAL


def test_c04_sandwich():
    with criterion("C4 sandwich B0 <= max <= LP"):
        for n in (2, 4, 6):
            res = max_family(n, ratio(1, 2))
            lp = solve_lp_exact(build_lp(n, 1, 2, FULL)).optimum
            assert res.status == PROVED_OPTIMAL
            assert b0_size(n) <= res.size <= lp, n
            if n == 2:
                assert b0_size(2) == res.size == lp == 4


def test_c05_jk_lp_oracle():
    with criterion("C5 Jk LP = closed form"):
        pairs = [(p, q) for q in range(2, 6) for p in range(1, q) if gcd(p, q) == 1]
        for p, q in pairs:
            for n in range(1, 31):
                assert solve_lp_exact(build_lp(n, p, q, JK_ONLY)).optimum == lp_closed_form_jk(n, p, q), (n, p, q)
        assert lp_closed_form_jk(4, 1, 2) == 16
        assert lp_closed_form_jk(6, 1, 2) == 34
        assert lp_closed_form_jk(5, 1, 3) == 32


def test_c06_chain_identities():
    with criterion("C6 chain identities", "1000 orderings per n <= 30"):
        failures = 0
        pq_pairs = [(p, q) for q in range(2, 5) for p in range(1, q) if gcd(p, q) == 1]
        for n in range(1, 31):
            for seed in range(1000):
                ordering = random_ordering(n, seed)
                for l in range(n // 3 + 1):
                    failures += not check_chain_identity_12(chain_family_12(ordering, l))
                for p, q in pq_pairs:
                    if n % (p + q):
                        continue
                    windows = window_sets_pq(n, p, q)
                    for k in range(q - p):
                        cf = chain_family_pq(ordering, p, q, k)
                        failures += not check_chain_identity_pq(cf)
                        failures += any(c.bit_count() not in windows[k] for c in cf.chains)
        assert failures == 0


def test_c07_membership_probability():
    with criterion("C7 membership probability", "1e5 trials, 4 stderr"):
        for n, l in ((4, 1), (6, 2)):
            for size in range(l, 2 * l + 1):
                for b in level_words(n, size):
                    est = estimate_membership(n, l, b, 100_000, seed=1000 * n + b)
                    assert abs(est.mean - 1 / comb(n, size)) <= 4 * est.stderr, (n, l, b, est)
        families = [build_B0(n) for n in range(4, 13, 2)]
        families += [greedy_family(n, ratio(1, 2), s) for n in (4, 6, 8, 9) for s in range(10)]
        for fam in families:
            for l in range(1, fam.n // 3 + 1):
                est = expected_hits(fam, l, 20_000, seed=l)
                assert est.mean <= 1 + 4 * est.stderr


def test_c08_window_inequalities():
    with criterion("C8 window inequalities on greedy families"):
        for n in range(1, 11):
            windows = window_sets_12(n)
            for s in SEEDS:
                assert check_windows(profile_of(greedy_family(n, ratio(1, 2), s)), windows).passed
            for p, q in ((1, 3), (2, 3)):
                jk = window_sets_pq(n, p, q)
                for s in SEEDS:
                    assert check_windows(profile_of(greedy_family(n, ratio(p, q), s)), jk).passed


def test_c09_modular_family_bound():
    with criterion("C9 A* validity and size"):
        for n in range(1, 17):
            fam, _ = build_modular_family(n)
            assert verify_family(fam, exact_distance(1), PAIRWISE).valid
            assert n * len(fam) >= binomial(n, n // 2)


def test_c10_distance1_double_count():
    with criterion("C10 distance-1 double count"):
        for n in range(1, 13):
            for s in SEEDS:
                rep = distance1_level_bound(greedy_family(n, exact_distance(1), s))
                assert rep.valid and rep.passed, (n, s)
        res = max_family(3, exact_distance(1))
        assert res.size == 2 and res.status == PROVED_OPTIMAL


def test_c11_shadow_pipeline():
    with criterion("C11 shadow pipeline"):
        for n in range(1, 13):
            for k in (1, 2):
                for s in SEEDS:
                    fam = greedy_family(n, at_most_distance(k), s)
                    res = k_shadow(fam, k)
                    assert is_antichain(res.shadow)[0]
                    assert res.identity_holds
                    assert res.identity_sum == sum(binomial(w.bit_count(), k) for w in fam)
                    assert len(res.shadow) <= middle_binomial(n)
                    assert atmostk_weight_bound(fam, k).passed
        star = build_power_sum_family(5, 1)
        assert sorted(star.as_sets()) == [[1, 4], [2, 3]]
        assert len(k_shadow(star, 1).shadow) == 4


def test_c12_trend_table(capsys):
    rows = table_rows(1, 24, exact_max_n=6)
    with criterion("C12 trend table (reported)", "see printed table"):
        with capsys.disabled():
            print("\n n   |B0|      lp_full   exact  middle    B0/mid    lp/mid    lp vs B0")
            for r in rows:
                print(f"{r['n']:>2}  {r['b0']!s:>8}  {r['lp_full']!s:>8}  {r['exact_max']!s:>5}  "
                      f"{r['middle_binomial']:>8}  {r['b0_over_middle']:>8}  {r['lp_full_over_middle']:>8}  "
                      f"{r['lp_full_vs_b0']}")
        for r in rows:
            if r["n"] % 2 == 0:
                assert r["lp_full_vs_b0"] in ("equal", "lp_larger")
                assert r["b0"] >= r["middle_binomial"]
