import random
from itertools import combinations

from hypothesis import given, strategies as st

from tiltcube.core import SetFamily, binomial, from_elements, middle_binomial
from tiltcube.predicates import at_most_distance
from tiltcube.search import greedy_family
from tiltcube.shadow import is_antichain, k_shadow

S = from_elements


def shadow_oracle(family, k):
    out = set()
    for w in family.members:
        elems = [i for i in range(family.n) if w >> i & 1]
        for drop in combinations(elems, k):
            out.add(w & ~sum(1 << i for i in drop))
    return out


def antichain_oracle(family):
    return not any(a != b and a & b == a for a in family for b in family)


def test_shadow_examples():
    res = k_shadow(SetFamily.from_sets(3, [[1, 2, 3]]), 1)
    assert sorted(res.shadow.as_sets()) == [[1, 2], [1, 3], [2, 3]]
    fam = SetFamily.from_sets(4, [[1], [2, 3], []])
    assert k_shadow(fam, 0).shadow == fam
    res = k_shadow(SetFamily.from_sets(5, [[1, 4], [2, 3]]), 1)
    assert sorted(res.shadow.as_sets()) == [[1], [2], [3], [4]]
    assert res.identity_sum == 4 and res.identity_holds


def test_identity_fails_when_shadows_overlap():
    res = k_shadow(SetFamily.from_sets(3, [[1, 2], [1, 3]]), 1)
    assert res.identity_sum == 4 and len(res.shadow) == 3 and not res.identity_holds


@given(st.integers(1, 8).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.integers(0, (1 << n) - 1), max_size=30), st.integers(0, 3))))
def test_shadow_matches_oracle(arg):
    n, words, k = arg
    fam = SetFamily(n, words)
    assert set(k_shadow(fam, k).shadow) == shadow_oracle(fam, k)


@given(st.integers(1, 7).flatmap(lambda n: st.tuples(
    st.just(n), st.sets(st.integers(0, (1 << n) - 1), max_size=25))))
def test_is_antichain_matches_oracle(arg):
    n, words = arg
    fam = SetFamily(n, words)
    ok, witness = is_antichain(fam)
    assert ok == antichain_oracle(fam)
    if not ok:
        a, b = witness
        assert a != b and a & ~b == 0


def test_antichain_examples():
    assert is_antichain(SetFamily.from_sets(3, [[1], [2]])) == (True, None)
    assert is_antichain(SetFamily.from_sets(3, [[1], [1, 2]])) == (False, (S([1]), S([1, 2])))


def test_shadow_monotone():
    rng = random.Random(5)
    for _ in range(100):
        n = rng.randint(1, 8)
        words = rng.sample(range(1 << n), rng.randint(0, min(20, 1 << n)))
        sub = words[:len(words) // 2]
        k = rng.randint(0, 3)
        assert set(k_shadow(SetFamily(n, sub), k).shadow) <= set(k_shadow(SetFamily(n, words), k).shadow)


def test_shadow_pipeline_on_greedy_families():
    # (i)_k would double the count at k = 2; only binom(i, k) matches the shadow
    for n in range(2, 11):
        for k in (1, 2):
            for seed in range(10):
                fam = greedy_family(n, at_most_distance(k), seed)
                res = k_shadow(fam, k)
                assert res.identity_holds
                assert res.identity_sum == sum(binomial(w.bit_count(), k) for w in fam)
                assert is_antichain(res.shadow)[0]
                assert len(res.shadow) <= middle_binomial(n)
