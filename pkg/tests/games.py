"""Hypothesis strategies and small fixture games shared by the test modules."""

from __future__ import annotations

from hypothesis import assume
from hypothesis import strategies as st

from extgames.tree import GameTree, Strategy, decision, joint_strategy_count, leaf, strategy_from_slots

WIN_OR_LOSE = [(1, -1), (-1, 1)]
CHESS_LIKE = [(1, -1), (0, 0), (-1, 1)]


@st.composite
def game_trees(draw, players=None, max_depth=3, max_branching=3, values=st.integers(0, 3),
               vectors=None, max_joint=2000):
    """Random finite games built node by node so failures shrink well.

    ``vectors`` (a strategy of whole payoff vectors) overrides ``values``.
    """
    n = draw(st.integers(1, 3)) if players is None else players

    def payoff():
        if vectors is not None:
            return leaf(*draw(vectors))
        return leaf(*(draw(values) for _ in range(n)))

    def node(depth):
        if depth == max_depth or (depth > 0 and draw(st.booleans())):
            return payoff()
        width = draw(st.integers(1, max_branching))
        mover = draw(st.integers(1, n))
        return decision(mover, [(label, node(depth + 1)) for label in "abcde"[:width]])

    tree = GameTree(n, node(0))
    if max_joint is not None:
        assume(joint_strategy_count(tree) <= max_joint)
    return tree


def zero_sum_trees(outcomes=CHESS_LIKE, **kw):
    return game_trees(players=2, vectors=st.sampled_from(outcomes), **kw)


@st.composite
def games_with_strategy(draw, trees=None):
    tree = draw(trees if trees is not None else game_trees())
    idx = tree.index
    slots = [draw(st.integers(0, idx.arity(j) - 1)) for j in range(len(idx.internal))]
    return tree, strategy_from_slots(tree, slots)


def ultimatum_profile(grid: int, claim: int, accept) -> Strategy:
    """Proposer claims index ``claim``; the responder accepts claim ``k`` iff ``accept(k)``."""
    choices = {(): str(claim)}
    for k in range(grid + 1):
        choices[(str(k),)] = "A" if accept(k) else "R"
    return Strategy(choices)


def two_leaf_win_or_lose() -> GameTree:
    return GameTree(2, decision(1, [("L", leaf(1, -1)), ("R", leaf(-1, 1))]))


def single_leaf(*payoffs) -> GameTree:
    return GameTree(len(payoffs), leaf(*payoffs))
