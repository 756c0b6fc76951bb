import pytest
from hypothesis import given

from extgames.equilibria import (
    DEFAULT_ORACLE_CAP,
    ORACLE_CAP_ENV,
    brute_force_nash_slots,
    brute_force_spe_slots,
    default_cap,
    is_best_response,
    is_nash,
    is_spe_by_definition,
    one_deviation_check,
)
from extgames.errors import OracleCapExceeded
from extgames.generators import gen_ultimatum
from extgames.tree import (
    GameTree,
    Strategy,
    decision,
    iter_slot_tuples,
    leaf,
    play_of,
    restrict,
    strategy_from_slots,
    subgame,
)

from games import game_trees, games_with_strategy, single_leaf, ultimatum_profile

accept_all = (lambda k: True)
reject_all = (lambda k: False)


@pytest.fixture(scope="module")
def ultimatum100():
    return gen_ultimatum(100, 100)


@pytest.fixture(scope="module")
def ultimatum2():
    return gen_ultimatum(2, 2)


class TestBestResponse:
    @pytest.mark.parametrize("player", [1, 2])
    def test_single_leaf(self, player):
        assert is_best_response(single_leaf(0, 0), Strategy(), player)

    def test_top_claim_accepted(self, ultimatum2):
        assert is_best_response(ultimatum2, ultimatum_profile(2, 2, accept_all), 1)

    def test_zero_claim_accepted(self, ultimatum2):
        assert not is_best_response(ultimatum2, ultimatum_profile(2, 0, accept_all), 1)

    @given(games_with_strategy(game_trees(max_joint=500)))
    def test_reduced_search_matches_full_product(self, case):
        tree, s = case
        for i in range(1, tree.players + 1):
            assert is_best_response(tree, s, i) == is_best_response(tree, s, i, exhaustive=True)


class TestNash:
    def test_top_claim_always_rejected(self, ultimatum100):
        assert is_nash(ultimatum100, ultimatum_profile(100, 100, reject_all))

    def test_half_claim_with_threshold(self, ultimatum100):
        assert is_nash(ultimatum100, ultimatum_profile(100, 50, lambda k: k <= 50))

    def test_zero_claim_accepted(self, ultimatum2):
        assert not is_nash(ultimatum2, ultimatum_profile(2, 0, accept_all))


class TestSpeByDefinition:
    def test_top_claim_accepted(self, ultimatum100):
        assert is_spe_by_definition(ultimatum100, ultimatum_profile(100, 100, accept_all))

    def test_top_claim_always_rejected(self, ultimatum100):
        assert not is_spe_by_definition(ultimatum100, ultimatum_profile(100, 100, reject_all))

    def test_rejecting_half_is_not_a_best_reply(self, ultimatum100):
        s = ultimatum_profile(100, 100, reject_all)
        assert not is_nash(subgame(ultimatum100, "50"), restrict(s, "50"))

    def test_single_leaf(self):
        assert is_spe_by_definition(single_leaf(1, 2, 3), Strategy())

    def test_full_product_search_agrees(self, ultimatum2):
        for slots in iter_slot_tuples(ultimatum2):
            s = strategy_from_slots(ultimatum2, slots)
            assert is_spe_by_definition(ultimatum2, s) == is_spe_by_definition(ultimatum2, s, exhaustive=True)


class TestOneDeviation:
    def test_top_claim_accepted(self, ultimatum100):
        assert one_deviation_check(ultimatum100, ultimatum_profile(100, 100, accept_all)) is None

    def test_threshold_profile_fails_at_51(self, ultimatum100):
        w = one_deviation_check(ultimatum100, ultimatum_profile(100, 50, lambda k: k <= 50))
        assert w is not None
        assert w.node == ("51",)
        assert w.mover == 2
        assert (w.chosen_child, w.payoff_at_choice) == ("R", 0)
        assert (w.deviating_child, w.payoff_at_deviation) == ("A", 49)

    def test_single_leaf(self):
        assert one_deviation_check(single_leaf(0, 0), Strategy()) is None

    @given(games_with_strategy(game_trees(max_joint=4000)))
    def test_agrees_with_definition(self, case):
        tree, s = case
        assert (one_deviation_check(tree, s) is None) == is_spe_by_definition(tree, s)

    @given(games_with_strategy())
    def test_spe_implies_nash(self, case):
        tree, s = case
        if one_deviation_check(tree, s) is None:
            assert is_nash(tree, s)

    @given(games_with_strategy(game_trees(max_joint=None)))
    def test_witness_is_strict_and_legal(self, case):
        tree, s = case
        w = one_deviation_check(tree, s)
        if w is None:
            return
        node = tree.node(w.node)
        assert w.payoff_at_deviation > w.payoff_at_choice
        assert w.deviating_child in node.labels and w.chosen_child == s[w.node]
        assert node.player == w.mover
        changed = dict(s)
        changed[w.node] = w.deviating_child
        sub, before, after = subgame(tree, w.node), restrict(s, w.node), restrict(Strategy(changed), w.node)
        assert play_of(sub, before).outcome[w.mover - 1] == w.payoff_at_choice
        assert play_of(sub, after).outcome[w.mover - 1] == w.payoff_at_deviation

    def test_first_witness_in_preorder(self):
        # player 2 should switch at both "a" and "b"
        tree = GameTree(2, decision(1, [
            ("a", decision(2, [("x", leaf(0, 0)), ("y", leaf(0, 5))])),
            ("b", decision(2, [("x", leaf(0, 0)), ("y", leaf(0, 5))])),
        ]))
        s = Strategy({"": "a", "a": "x", "b": "x"})
        assert one_deviation_check(tree, s).node == ("a",)


class TestOracles:
    @given(game_trees(max_joint=1000))
    def test_brute_force_spe_matches_definition(self, tree):
        by_definition = {slots for slots in iter_slot_tuples(tree)
                         if is_spe_by_definition(tree, strategy_from_slots(tree, slots))}
        assert brute_force_spe_slots(tree) == by_definition

    @given(game_trees(max_joint=1000))
    def test_brute_force_nash_matches_definition(self, tree):
        by_definition = {slots for slots in iter_slot_tuples(tree)
                         if is_nash(tree, strategy_from_slots(tree, slots), exhaustive=True)}
        assert brute_force_nash_slots(tree) == by_definition

    def test_cap_is_enforced(self, ultimatum2):
        with pytest.raises(OracleCapExceeded):
            brute_force_spe_slots(ultimatum2, cap=10)
        with pytest.raises(OracleCapExceeded):
            is_best_response(ultimatum2, ultimatum_profile(2, 0, accept_all), 2, cap=3, exhaustive=True)

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.delenv(ORACLE_CAP_ENV, raising=False)
        assert default_cap() == DEFAULT_ORACLE_CAP
        monkeypatch.setenv(ORACLE_CAP_ENV, "17")
        assert default_cap() == 17
        with pytest.raises(OracleCapExceeded):
            brute_force_spe_slots(gen_ultimatum(2, 2))
