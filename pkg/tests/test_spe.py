from fractions import Fraction

import pytest
from hypothesis import given

from extgames.conditions import check_no_relevant_ties
from extgames.equilibria import brute_force_spe_slots, one_deviation_check
from extgames.generators import gen_bargaining, gen_g_alpha, gen_ultimatum
from extgames.spe import (
    has_unique_spe,
    iter_spe_slots,
    spe_count,
    spe_count_map,
    spe_enumerate,
    spe_outcomes,
)
from extgames.tree import Strategy, restrict, slots_of, subgame

from games import game_trees, single_leaf, ultimatum_profile


def vectors(*pairs):
    return tuple(tuple(Fraction(x) for x in p) for p in pairs)


class TestOutcomes:
    def test_single_leaf(self):
        assert spe_outcomes(single_leaf(0, 0)) == vectors((0, 0))

    def test_ultimatum_grid_two(self):
        tree = gen_ultimatum(2, 2)
        assert spe_outcomes(tree) == vectors((1, 1), (2, 0))
        assert set(spe_outcomes(tree)) == {tree.index.outcome(s) for s in brute_force_spe_slots(tree)}

    def test_bargaining(self):
        assert spe_outcomes(gen_bargaining(4)) == vectors((50, 50))

    @given(game_trees(max_joint=4000))
    def test_matches_oracle(self, tree):
        oracle = {tree.index.outcome(s) for s in brute_force_spe_slots(tree)}
        assert set(spe_outcomes(tree)) == oracle
        assert list(spe_outcomes(tree)) == sorted(oracle)


class TestCount:
    def test_single_leaf(self):
        assert spe_count(single_leaf(5)) == 1

    def test_ultimatum_grid_two(self):
        tree = gen_ultimatum(2, 2)
        assert spe_count(tree) == 2 == len(brute_force_spe_slots(tree))

    @pytest.mark.parametrize("k", range(2, 9))
    def test_bargaining(self, k):
        assert spe_count(gen_bargaining(k)) == k - 1

    def test_big_grid_is_exact(self):
        assert spe_count(gen_ultimatum(100, 100)) == 2
        assert spe_count(gen_g_alpha(1, 8, 100)) > 0

    @given(game_trees(max_joint=4000))
    def test_matches_oracle(self, tree):
        oracle = brute_force_spe_slots(tree)
        assert spe_count(tree) == len(oracle)
        by_outcome = spe_count_map(tree)
        for outcome, count in by_outcome.items():
            assert count == sum(1 for s in oracle if tree.index.outcome(s) == outcome)

    @given(game_trees(max_joint=None, max_depth=4))
    def test_existence(self, tree):
        assert spe_count(tree) >= 1
        assert len(spe_outcomes(tree)) <= spe_count(tree)

    @given(game_trees(max_joint=None, max_depth=4))
    def test_no_relevant_ties_means_unique(self, tree):
        if check_no_relevant_ties(tree).holds:
            assert spe_count(tree) == 1


class TestEnumerate:
    def test_single_leaf(self):
        result = spe_enumerate(single_leaf(0, 0), cap=10)
        assert result.count == 1
        assert result.sample == [Strategy()]
        assert not result.truncated

    def test_ultimatum_grid_two(self):
        tree = gen_ultimatum(2, 2)
        result = spe_enumerate(tree, cap=10)
        assert result.count == 2 and not result.truncated
        assert result.sample == [
            ultimatum_profile(2, 1, lambda k: k < 2),
            ultimatum_profile(2, 2, lambda k: True),
        ]
        assert all(one_deviation_check(tree, s) is None for s in result.sample)

    def test_g_alpha_cap_zero(self):
        tree = gen_g_alpha(1, 4, 2)
        result = spe_enumerate(tree, cap=0)
        assert result.sample == []
        assert result.count == len(brute_force_spe_slots(tree)) > 0
        assert result.truncated

    def test_g_alpha_outcomes(self):
        tree = gen_g_alpha(1, 4, 2)
        oracle = brute_force_spe_slots(tree)
        assert set(spe_outcomes(tree)) == {tree.index.outcome(s) for s in oracle}

    def test_prefix_is_canonical(self):
        tree = gen_bargaining(6)
        assert spe_enumerate(tree, cap=3).sample == spe_enumerate(tree).sample[:3]

    @given(game_trees(max_joint=4000))
    def test_matches_oracle_in_order(self, tree):
        listed = list(iter_spe_slots(tree))
        assert listed == sorted(brute_force_spe_slots(tree))

    @given(game_trees(max_joint=None))
    def test_sample_is_consistent(self, tree):
        result = spe_enumerate(tree, cap=50)
        assert len(result.sample) == min(result.count, 50)
        assert len(set(result.sample)) == len(result.sample)
        for s in result.sample:
            assert one_deviation_check(tree, s) is None
        if not result.truncated:
            assert {tree.index.outcome(slots_of(tree, s)) for s in result.sample} == set(spe_outcomes(tree))

    @given(game_trees(max_joint=None))
    def test_restriction_to_children_stays_perfect(self, tree):
        idx = tree.index
        for s in spe_enumerate(tree, cap=20).sample:
            for c in idx.children[0]:
                u = idx.path[c]
                sub = subgame(tree, u)
                assert slots_of(sub, restrict(s, u)) in set(iter_spe_slots(sub))


class TestUnique:
    def test_ultimatum_grid_two(self):
        assert not has_unique_spe(gen_ultimatum(2, 2))

    def test_single_leaf(self):
        assert has_unique_spe(single_leaf(0))
