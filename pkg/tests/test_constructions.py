import random
from itertools import combinations

import pytest

from setfam.constructions import (
    complement_pairing,
    d_family,
    d_family_diversity,
    d_family_size,
    g_base,
    g_closure_profile,
    lift_family,
    lift_profile,
    lifted_missing_counts,
    q_family,
    q_family_diversity,
    q_family_size,
    rebalance_pair,
    star,
    star_size,
    star_split,
    theorem3_certificate,
    threshold_pair,
    upward_closure,
)
from setfam.core import (
    DomainError,
    Family,
    PreconditionError,
    are_cross_intersecting,
    are_disjoint_families,
    binom,
    degree_profile,
    diversity,
    full_mask,
    is_intersecting,
)

from oracles import as_sets, k_subsets, naive_diversity


def fam(n, *sets):
    return Family.from_sets(n, sets)


class TestStar:
    def test_small(self):
        assert star(4, 2, 1) == fam(4, [1, 2], [1, 3], [1, 4])
        assert len(star(6, 3, 2)) == 10 == binom(5, 2)
        assert diversity(star(6, 3, 1)) == 0

    def test_domain(self):
        with pytest.raises(DomainError):
            star(4, 2, 5)

    def test_split(self):
        a, b = star_split(4, 2, 1)
        assert (len(a), len(b)) == (2, 1)
        a, b = star_split(6, 3, 1)
        assert (len(a), len(b)) == (5, 5)
        assert are_cross_intersecting(a, b) and are_disjoint_families(a, b)
        assert a.union(b) == star(6, 3, 1)


class TestThreshold:
    def test_6_3_2(self):
        tp = threshold_pair(6, 3, 2)
        assert (tp.a_size, tp.b_size) == (6, 7)
        assert (len(tp.a_family), len(tp.b_family)) == (6, 7)

    def test_8_3_2(self):
        tp = threshold_pair(8, 3, 2)
        assert (tp.a_size, tp.b_size) == (15, 11)
        assert tp.a_size + tp.b_size > binom(7, 2)

    def test_t_equals_k_minus_1(self):
        tp = threshold_pair(9, 4, 3)
        assert tp.a_size == binom(5, 3) + 5 == 15
        assert len(tp.a_family) == 15

    def test_membership_rule_oracle(self):
        n, k, t = 7, 3, 2
        tp = threshold_pair(n, k, t)
        win = set(range(1, t + 2))
        rest = win - {1}
        a = {s for s in k_subsets(n, k) if s & win in ({1}, rest)}
        b = {s for s in k_subsets(n, k) if 1 in s and s & rest}
        assert as_sets(tp.a_family) == a and as_sets(tp.b_family) == b

    def test_all_small_parameters(self):
        for n in range(3, 11):
            for k in range(2, n + 1):
                for t in range(2, k + 1):
                    if t + 1 > n:
                        continue
                    tp = threshold_pair(n, k, t)
                    assert len(tp.a_family) == tp.a_size and len(tp.b_family) == tp.b_size
                    assert are_disjoint_families(tp.a_family, tp.b_family)
                    assert are_cross_intersecting(tp.a_family, tp.b_family)
                    if binom(n - t - 1, k - t) > 0:
                        assert tp.a_size + tp.b_size > binom(n - 1, k - 1)

    def test_domain(self):
        with pytest.raises(DomainError):
            threshold_pair(6, 3, 1)
        with pytest.raises(DomainError):
            threshold_pair(6, 3, 4)


class TestRebalance:
    def test_demo(self):
        tp = threshold_pair(9, 4, 3)
        assert (len(tp.a_family), len(tp.b_family)) == (15, 46)
        a, b = rebalance_pair(tp.a_family, tp.b_family, 15)
        assert (len(a), len(b)) == (30, 31)
        assert are_disjoint_families(a, b) and are_cross_intersecting(a, b)
        assert 2 * min(len(a), len(b)) > binom(8, 3)

    def test_extremes(self):
        tp = threshold_pair(7, 3, 2)
        a, b = tp.a_family, tp.b_family
        assert rebalance_pair(a, b, 0) == (a, b)
        a2, b2 = rebalance_pair(a, b, len(b))
        assert a2 == a.union(b) and len(b2) == 0
        assert are_cross_intersecting(a2, b2)

    def test_non_intersecting_donor(self):
        with pytest.raises(PreconditionError):
            rebalance_pair(fam(4, [1, 2]), fam(4, [1, 3], [2, 4]), 1)


class TestComplementPairing:
    def test_k3(self):
        a, b = complement_pairing(3)
        assert len(a) == len(b) == 10 == binom(5, 2)

    def test_k2(self):
        a, b = complement_pairing(2)
        assert (len(a), len(b)) == (4, 2)

    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_properties(self, k):
        a, b = complement_pairing(k)
        assert are_cross_intersecting(a, b) and are_disjoint_families(a, b)
        assert min(len(a), len(b)) == 2 * (binom(2 * k - 1, k - 1) // 2)
        full = full_mask(2 * k)
        for f in (a, b):
            assert all(full ^ m in f for m in f)


class TestDAndQ:
    def test_d_6_3_1(self):
        f = d_family(6, 3, 1)
        assert len(f) == 10 and diversity(f) == 3

    def test_d_5_2_1(self):
        f = d_family(5, 2, 1)
        assert f == fam(5, [1, 2], [1, 3], [2, 3])
        assert diversity(f) == 1 == binom(2, 0)

    def test_d_7_3_2(self):
        f = d_family(7, 3, 2)
        assert as_sets(f) == {s for s in k_subsets(7, 3) if len(s & {1, 2, 3, 4, 5}) >= 3}
        assert is_intersecting(f)

    def test_d1_diversity_matches_binomial(self):
        for n in range(5, 13):
            for k in range(2, 6):
                if n >= 2 * k:
                    assert diversity(d_family(n, k, 1)) == binom(n - 3, k - 2)

    def test_d_closed_forms(self):
        for n in range(3, 13):
            for k in range(2, n + 1):
                for r in range(1, k):
                    if 2 * r + 1 > n:
                        continue
                    f = d_family(n, k, r)
                    assert len(f) == d_family_size(n, k, r)
                    assert diversity(f) == d_family_diversity(n, k, r)

    def test_q(self):
        f = q_family(2)
        assert len(f) == 16 and diversity(f) == 5 == binom(4, 3) + binom(4, 4)
        assert q_family(1) == fam(3, [1, 2], [1, 3], [2, 3], [1, 2, 3])
        assert diversity(q_family(1)) == 1
        for k in range(1, 6):
            f = q_family(k)
            assert is_intersecting(f)
            assert len(f) == q_family_size(k)
            assert diversity(f) == q_family_diversity(k)


class TestGFamily:
    def test_base(self):
        g = g_base()
        assert len(g) == 10 and is_intersecting(g)
        assert degree_profile(g) == {x: 5 for x in range(1, 7)}
        sets = [set(s) for s in g.to_lists()]
        for pair in combinations(range(1, 7), 2):
            assert sum(set(pair) <= s for s in sets) == 2

    def test_closure_profile(self):
        p = g_closure_profile()
        assert {i: c for i, c in p.n_counts.items() if c} == {3: 10, 4: 15, 5: 6, 6: 1}
        for x in range(1, 7):
            assert [p.n_counts_missing[i, x] for i in range(3, 7)] == [5, 5, 1, 0]
        for (i, x), c in p.n_counts_missing.items():
            assert 0 <= c <= p.n_counts[i] <= binom(6, i)

    def test_closure_small(self):
        assert upward_closure(fam(1, [1]), 3) == fam(3, [1], [1, 2], [1, 3], [1, 2, 3])

    def test_closure_maximal_on_6(self):
        h = upward_closure(g_base(), 6)
        assert is_intersecting(h) and len(h) == 32

    def test_lift_avoiding_last(self):
        h = upward_closure(g_base(), 6)
        f = lift_family(h, 6, 7, 4)
        assert sum(1 for m in f if not m >> 6 & 1) == 15

    def test_lift_of_point_is_star(self):
        for n, k in [(5, 2), (7, 3)]:
            assert lift_family(fam(1, [1]), 1, n, k) == star(n, k, 1)

    def test_lift_preserves_intersecting(self):
        rng = random.Random(2)
        subsets5 = list(range(1, 32))
        for _ in range(40):
            chosen = []
            for m in rng.sample(subsets5, len(subsets5)):
                if all(m & c for c in chosen):
                    chosen.append(m)
            h = Family.from_masks(5, chosen)
            assert is_intersecting(lift_family(h, 5, 9, 4))


class TestMissingCounts:
    def test_7_4(self):
        inside, outside = lifted_missing_counts(g_closure_profile(), 7, 4)
        assert outside == 15
        assert inside[1] == 10 == 5 * binom(1, 0) + 5 * binom(1, 1)

    def test_zero_profile(self):
        p = lift_profile(fam(3, [1, 2, 3]), 3)
        inside, _ = lifted_missing_counts(p, 6, 4)
        assert all(v == 0 for v in inside.values())

    def test_no_outside_when_n_equals_t(self):
        _, outside = lifted_missing_counts(g_closure_profile(), 6, 3)
        assert outside is None

    def test_against_enumeration(self):
        h = upward_closure(g_base(), 6)
        prof = g_closure_profile()
        for n in range(6, 13):
            for k in range(0, n + 1):
                f = lift_family(h, 6, n, k)
                deg = degree_profile(f)
                inside, outside = lifted_missing_counts(prof, n, k)
                for x in range(1, 7):
                    assert inside[x] == len(f) - deg[x]
                for x in range(7, n + 1):
                    assert outside == len(f) - deg[x]


class TestTheorem3Certificate:
    def test_beats_at_alpha_03(self):
        c = theorem3_certificate(300, 90)
        assert c.beats and c.target == binom(297, 88)

    def test_fails_at_alpha_01(self):
        assert not theorem3_certificate(300, 30).beats

    def test_small_equals_enumeration(self):
        for n, k in [(7, 4), (8, 3), (9, 4), (10, 3)]:
            f = lift_family(upward_closure(g_base(), 6), 6, n, k)
            c = theorem3_certificate(n, k)
            assert c.diversity_lb == diversity(f) == naive_diversity(as_sets(f), n)
