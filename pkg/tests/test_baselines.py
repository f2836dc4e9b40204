import pytest

from maxcover.baselines import (
    SubsetCapError,
    brute_force_min_cover,
    brute_force_optimum,
    equal_size_pad,
    exact_greedy,
)


class TestExactGreedy:
    def test_picks_largest_gain_each_round(self):
        sets = [{1, 2, 3, 4}, {3, 4, 5, 6}, {5, 6}]
        sol = exact_greedy(sets, 2)
        assert sol.indices == (0, 1)
        assert sol.coverage == 6

    def test_earliest_index_on_ties(self):
        sol = exact_greedy([{1, 2}, {1, 2}, {3, 4}], 2)
        assert sol.indices == (0, 2)

    def test_greedy_can_be_suboptimal(self):
        # greedy takes the big middle set first and misses the partition
        sets = [{1, 2, 3, 4}, {1, 2, 5}, {3, 4, 6}]
        assert exact_greedy(sets, 2).coverage == 5
        assert brute_force_optimum(sets, 2).coverage == 6

    def test_k_validation(self):
        with pytest.raises(ValueError):
            exact_greedy([{1}], 2)


class TestBruteForceOptimum:
    def test_small_example(self):
        sets = [{1, 2}, {2, 3}, {3, 4}]
        sol = brute_force_optimum(sets, 2)
        assert sol.indices == (0, 2)
        assert sol.coverage == 4

    def test_lexicographic_tie_break(self):
        sol = brute_force_optimum([{1, 2}, {1, 2}, {1, 2}], 2)
        assert sol.indices == (0, 1)

    def test_cap(self):
        with pytest.raises(SubsetCapError):
            brute_force_optimum([{i} for i in range(40)], 20, cap=1000)


class TestBruteForceMinCover:
    def test_exact_size(self):
        sets = [{1, 2}, {3, 4}, {1, 2, 3}, {4}]
        assert brute_force_min_cover(sets) == 2

    def test_uncoverable_universe(self):
        assert brute_force_min_cover([{1}], universe={1, 2}) is None

    def test_single_set_cover(self):
        assert brute_force_min_cover([{1}, {1, 2, 3}]) == 1


class TestEqualSizePad:
    def test_set_cover_mode_example(self):
        padded = equal_size_pad([{1}, {1, 2}], mode="set-cover")
        assert padded == [frozenset({3, 4}), frozenset({1, 3}),
                          frozenset({1, 2})]
        assert all(len(s) == 2 for s in padded)

    def test_set_cover_mode_shifts_min_cover_by_one(self):
        sets = [{1, 2}, {2, 3}, {3}]
        padded = equal_size_pad(sets, mode="set-cover")
        assert brute_force_min_cover(padded) == brute_force_min_cover(sets) + 1

    def test_max_cover_mode(self):
        sets = [{1, 2, 3}, {2}, {4}]
        padded = equal_size_pad(sets, mode="max-cover")
        assert padded[0] == frozenset({1, 2, 3})
        assert all(len(s) == 3 for s in padded)
        assert padded[1] >= {2} and padded[2] >= {4}
        # filler comes from the first set only
        assert padded[1] - {2} <= {1, 2, 3}
        assert padded[2] - {4} <= {1, 2, 3}

    def test_max_cover_mode_requires_largest_first(self):
        with pytest.raises(ValueError):
            equal_size_pad([{1}, {1, 2}], mode="max-cover")

    def test_rejects_empty_sets_and_unknown_modes(self):
        with pytest.raises(ValueError):
            equal_size_pad([set(), {1}])
        with pytest.raises(ValueError):
            equal_size_pad([{1}], mode="bogus")
