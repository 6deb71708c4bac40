import pytest

from setfam.constructions import complement_pairing
from setfam.core import (
    Family,
    ResourceError,
    are_cross_intersecting,
    are_disjoint_families,
    binom,
    degree_profile,
    diversity,
    full_mask,
    is_intersecting,
)
from setfam.search import (
    EXHAUSTED,
    VERIFIED,
    SearchBudget,
    check_conjecture_even,
    check_conjecture_odd,
    even_conjecture_value,
    exhaustive_max_min_disjoint_cross,
    max_diversity_nonuniform,
    max_diversity_uniform,
    max_intersecting_uniform,
    max_min_disjoint_cross,
    maximal_intersecting_families,
    maximal_intersecting_uniform,
    odd_conjecture_value,
)
from setfam.spectral import theorem2_bound

from oracles import as_sets, brute_max_diversity, brute_max_min_cross, brute_maximal_families


class TestMaximalFamilies:
    def test_n3(self):
        fams = maximal_intersecting_families(3)
        got = {frozenset(as_sets(f)) for f in fams}
        stars = {frozenset(s for s in as_sets(Family(3, tuple(range(8)))) if x in s) for x in (1, 2, 3)}
        triangle = frozenset(map(frozenset, [{1, 2}, {1, 3}, {2, 3}, {1, 2, 3}]))
        assert got == stars | {triangle}

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_brute_force(self, n):
        got = {tuple(frozenset(s) for s in f.to_lists()) for f in maximal_intersecting_families(n)}
        assert got == brute_maximal_families(n)

    @pytest.mark.parametrize("n,count", [(2, 2), (3, 4), (4, 12), (5, 81), (6, 2646)])
    def test_structure_and_counts(self, n, count):
        fams = maximal_intersecting_families(n)
        # counts for n = 5, 6 are regression fixtures from this scan
        assert len(fams) == count
        assert len(set(fams)) == len(fams)
        full = full_mask(n)
        for f in fams:
            assert len(f) == 2 ** (n - 1)
            assert is_intersecting(f)
            members = set(f.members)
            for m in f.members:
                assert (full ^ m) not in members
                assert all((m | (1 << b)) in members for b in range(n))

    def test_envelope(self):
        with pytest.raises(ResourceError):
            maximal_intersecting_families(7)


class TestNonuniformDiversity:
    @pytest.mark.parametrize("n,expected", [(2, 0), (3, 1), (4, 2), (5, 5), (6, 11)])
    def test_values(self, n, expected):
        rep = max_diversity_nonuniform(n)
        assert rep.status == VERIFIED and rep.optimum == expected
        assert rep.witnesses and all(diversity(w) == expected for w in rep.witnesses)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_reduction_matches_full_brute_force(self, n):
        assert max_diversity_nonuniform(n).optimum == brute_max_diversity(n)

    def test_budget_exhaustion(self):
        rep = max_diversity_nonuniform(6, SearchBudget(max_nodes=10))
        assert rep.status == EXHAUSTED and rep.optimum is None


class TestUniformDiversity:
    def test_6_3(self):
        rep = max_diversity_uniform(6, 3)
        assert rep.optimum == 5 == binom(5, 2) // 2
        (w,) = rep.witnesses
        assert len(w) == 10 and is_intersecting(w)
        assert set(degree_profile(w).values()) == {5}

    def test_4_2(self):
        rep = max_diversity_uniform(4, 2)
        assert rep.optimum == 1 == (binom(3, 1) - 1) // 2

    def test_5_2(self):
        rep = max_diversity_uniform(5, 2)
        assert rep.optimum == 1 == binom(2, 0)
        assert Family.from_sets(5, [[1, 2], [1, 3], [2, 3]]) in rep.witnesses

    def test_8_4_power_of_two(self):
        assert max_diversity_uniform(8, 4).optimum == (binom(7, 3) - 1) // 2

    def test_uniform_general_vs_pair_route(self):
        # at n = 2k the clique scan and the pair search must agree
        for n, k in [(4, 2), (6, 3)]:
            fams = maximal_intersecting_uniform(n, k)
            assert max(diversity(f) for f in fams) == max_diversity_uniform(n, k).optimum

    def test_envelope(self):
        with pytest.raises(ResourceError):
            max_diversity_uniform(8, 3)

    def test_ekr_sanity(self):
        for n, k in [(4, 2), (5, 2), (6, 3)]:
            assert max_intersecting_uniform(n, k) == binom(n - 1, k - 1)


class TestCrossPairs:
    def test_4_2_full_scan(self):
        assert exhaustive_max_min_disjoint_cross(4, 2).optimum == 2
        assert brute_max_min_cross(4, 2) == 2

    @pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (5, 3), (4, 1), (3, 2), (5, 1)])
    def test_pruned_matches_brute(self, n, k):
        assert max_min_disjoint_cross(n, k).optimum == brute_max_min_cross(n, k)

    def test_6_3(self):
        rep = max_min_disjoint_cross(6, 3)
        assert rep.status == VERIFIED and rep.optimum == 10 == binom(5, 2)
        a, b = rep.witnesses
        assert are_cross_intersecting(a, b) and are_disjoint_families(a, b)
        assert min(len(a), len(b)) == 10
        pa, pb = complement_pairing(3)
        assert min(len(pa), len(pb)) == rep.optimum

    def test_5_2_within_theorem2(self):
        rep = max_min_disjoint_cross(5, 2)
        assert rep.optimum <= int(theorem2_bound(5, 2).closed_form) == 3

    @pytest.mark.parametrize("n,k", [(4, 2), (5, 2), (6, 2), (6, 3)])
    def test_never_exceeds_theorem2(self, n, k):
        assert max_min_disjoint_cross(n, k).optimum <= int(theorem2_bound(n, k).closed_form)

    @pytest.mark.parametrize("n,k", [(5, 2), (6, 3)])
    def test_worker_independence(self, n, k):
        one = max_min_disjoint_cross(n, k, SearchBudget(worker_count=1))
        two = max_min_disjoint_cross(n, k, SearchBudget(worker_count=2))
        assert one == two

    def test_budget_exhaustion_reports_status(self):
        rep = max_min_disjoint_cross(6, 2, SearchBudget(max_nodes=5))
        assert rep.status == EXHAUSTED

    def test_envelope(self):
        with pytest.raises(ResourceError):
            max_min_disjoint_cross(7, 2)


class TestConjectures:
    def test_formulas(self):
        assert odd_conjecture_value(1) == 1 and odd_conjecture_value(2) == 5
        assert even_conjecture_value(1) == 0
        assert even_conjecture_value(2) == 2
        assert even_conjecture_value(3) == 11

    @pytest.mark.parametrize("k,value", [(1, 1), (2, 5)])
    def test_odd(self, k, value):
        rep = check_conjecture_odd(k)
        assert rep.status == VERIFIED and rep.optimum == rep.target == value

    @pytest.mark.parametrize("k,value", [(1, 0), (2, 2), (3, 11)])
    def test_even(self, k, value):
        rep = check_conjecture_even(k)
        assert rep.status == VERIFIED and rep.optimum == rep.target == value

    def test_envelopes(self):
        with pytest.raises(ResourceError):
            check_conjecture_odd(3)
        with pytest.raises(ResourceError):
            check_conjecture_even(4)
