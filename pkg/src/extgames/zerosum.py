"""Win-or-lose and chess-like games.

Both are two-player zero-sum games: win-or-lose games only have the
outcomes (1,-1) and (-1,1); chess-like games also allow the draw (0,0).

A strategy of player ``i`` *guarantees* a set of leaves if every play
consistent with it ends there, whatever the opponent does.  Winning
strategies guarantee the leaves where ``p_i = 1``; draw strategies guarantee
``p_i >= 0``.  The number of guaranteeing strategies is a product over the
tree, counted bottom-up:

* at a leaf: 1 if the leaf is good, else 0;
* at a node of the opponent: every child can be reached, so multiply the
  children's counts;
* at a node of ``i``: sum over the chosen child ``c`` of the count at ``c``
  times the number of all strategies of ``i`` inside each sibling subtree,
  since those choices are never exercised once ``c`` is fixed.

Draw sets are obtained as win sets of the two relabelled games in which
every draw becomes a loss for the opponent of the player of interest.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections.abc import Callable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction

from .equilibria import default_cap
from .errors import NotTwoPlayer, NotZeroSumShape, OracleCapExceeded
from .tree import GameTree, NodeId, Strategy, TreeIndex, map_payoffs, slots_of

WIN_1 = (Fraction(1), Fraction(-1))
DRAW = (Fraction(0), Fraction(0))
WIN_2 = (Fraction(-1), Fraction(1))


class NodeClass(enum.Enum):
    WIN_1 = "WIN_1"
    WIN_2 = "WIN_2"
    DRAW = "DRAW"

    def __str__(self) -> str:
        return self.value


def _require_two(tree: GameTree) -> None:
    if tree.players != 2:
        raise NotTwoPlayer(f"needs a two-player game, got {tree.players} players")


def check_win_or_lose(tree: GameTree) -> bool:
    _require_two(tree)
    return all(tree.index.payoff[k] in (WIN_1, WIN_2) for k in tree.index.leaves)


def check_chess_like(tree: GameTree) -> bool:
    _require_two(tree)
    return all(tree.index.payoff[k] in (WIN_1, DRAW, WIN_2) for k in tree.index.leaves)


def zero_sum_shape(tree: GameTree) -> str | None:
    """``"win-or-lose"``, ``"chess-like"`` or None; never raises."""
    if tree.players != 2:
        return None
    if check_win_or_lose(tree):
        return "win-or-lose"
    if check_chess_like(tree):
        return "chess-like"
    return None


def _require_shape(tree: GameTree) -> None:
    if zero_sum_shape(tree) is None:
        if tree.players != 2:
            raise NotTwoPlayer(f"needs a two-player game, got {tree.players} players")
        raise NotZeroSumShape("leaves must be (1,-1), (0,0) or (-1,1)")


def classify_nodes(tree: GameTree, levels=(1, 0, -1)) -> dict[NodeId, NodeClass]:
    """Zermelo classification of every node, bottom-up.

    ``levels`` are player 1's payoffs at a win, a draw and a loss; a leaf
    must be ``(v, -v)`` for one of them.  Any strictly decreasing triple
    gives the same classes as the default.
    """
    _require_two(tree)
    win, draw, loss = (Fraction(v) for v in levels)
    if not win > draw > loss:
        raise ValueError("levels must be strictly decreasing")
    by_leaf = {(win, -win): NodeClass.WIN_1, (draw, -draw): NodeClass.DRAW, (loss, -loss): NodeClass.WIN_2}
    idx = tree.index
    cls: list[NodeClass | None] = [None] * len(idx)
    for k in range(len(idx) - 1, -1, -1):
        if not idx.turn[k]:
            try:
                cls[k] = by_leaf[idx.payoff[k]]
            except KeyError:
                raise NotZeroSumShape(f"leaf {idx.path[k]!r} has payoff {idx.payoff[k]}") from None
            continue
        mine, theirs = (NodeClass.WIN_1, NodeClass.WIN_2) if idx.turn[k] == 1 else (NodeClass.WIN_2, NodeClass.WIN_1)
        kid_classes = {cls[c] for c in idx.children[k]}
        if mine in kid_classes:
            cls[k] = mine
        elif NodeClass.DRAW in kid_classes:
            cls[k] = NodeClass.DRAW
        else:
            cls[k] = theirs
    return {idx.path[k]: cls[k] for k in range(len(idx))}


def draw_as_loss_for(tree: GameTree, player: int) -> GameTree:
    """Replace every (0,0) leaf by a loss for ``player``'s opponent.

    ``player=2`` gives the game where draws become (-1,1), whose win set for
    player 2 is the draw set of player 2 in ``tree``; symmetrically for 1.
    """
    to = WIN_2 if player == 2 else WIN_1
    return map_payoffs(tree, lambda p: to if p == DRAW else p)


class _Guarantee:
    """Counts and lazily lists the strategies of ``player`` whose every
    reachable leaf satisfies ``good``."""

    def __init__(self, idx: TreeIndex, player: int, good: Callable[[tuple], bool]):
        self.idx, self.player = idx, player
        n = len(idx)
        self.ok = [0] * n
        self.free = [1] * n
        for k in range(n - 1, -1, -1):
            kids = idx.children[k]
            if not kids:
                self.ok[k] = int(good(idx.payoff[k]))
                continue
            self.free[k] = math.prod(self.free[c] for c in kids) * (len(kids) if idx.turn[k] == player else 1)
            if idx.turn[k] == player:
                self.ok[k] = sum(
                    self.ok[c] * math.prod(self.free[d] for d in kids if d != c) for c in kids
                )
            else:
                self.ok[k] = math.prod(self.ok[c] for c in kids)

    def count(self, k: int = 0) -> int:
        return self.ok[k]

    def iter_good(self, k: int = 0) -> Iterator[tuple[int, ...]]:
        """Player's choices at their own nodes of the subtree, preorder, lex order."""
        idx = self.idx
        kids = idx.children[k]
        if not kids:
            if self.ok[k]:
                yield ()
            return
        if idx.turn[k] == self.player:
            for pos, c in enumerate(kids):
                if self.ok[c]:
                    parts = [(lambda d=d: self.iter_good(d)) if d == c else (lambda d=d: self.iter_free(d))
                             for d in kids]
                    for rest in _lazy_product(parts):
                        yield (pos,) + rest
        else:
            yield from _lazy_product([lambda d=d: self.iter_good(d) for d in kids])

    def iter_free(self, k: int) -> Iterator[tuple[int, ...]]:
        idx = self.idx
        mine = [j for j in idx.slot_range(k) if idx.turn[idx.internal[j]] == self.player]
        return itertools.product(*(range(idx.arity(j)) for j in mine))


def _lazy_product(factories) -> Iterator[tuple]:
    if not factories:
        yield ()
        return
    first, rest = factories[0], factories[1:]
    for head in first():
        for tail in _lazy_product(rest):
            yield head + tail


def _player_strategy(idx: TreeIndex, player: int, choices: tuple[int, ...]) -> Strategy:
    mine = idx.slots_of_player(player)
    return Strategy(
        (idx.path[idx.internal[j]], idx.labels[idx.internal[j]][c]) for j, c in zip(mine, choices)
    )


def guarantees_exhaustive(tree: GameTree, strategy: Mapping[NodeId, str], player: int,
                          good: Callable[[tuple], bool], cap: int | None = None) -> bool:
    """Oracle: play ``strategy`` against every opponent strategy in the full product."""
    cap = default_cap() if cap is None else cap
    idx = tree.index
    theirs = [j for j in range(len(idx.internal)) if idx.turn[idx.internal[j]] != player]
    total = math.prod(idx.arity(j) for j in theirs)
    if total > cap:
        raise OracleCapExceeded(total, cap, "opponent strategies")
    work = [0] * len(idx.internal)
    for j in idx.slots_of_player(player):
        k = idx.internal[j]
        work[j] = idx.labels[k].index(strategy[idx.path[k]])
    for combo in itertools.product(*(range(idx.arity(j)) for j in theirs)):
        for j, c in zip(theirs, combo):
            work[j] = c
        if not good(idx.payoff[idx.leaf_of(work)]):
            return False
    return True


def _wins(player: int) -> Callable[[tuple], bool]:
    return lambda p: p[player - 1] == 1


def _not_losing(player: int) -> Callable[[tuple], bool]:
    return lambda p: p[player - 1] >= 0


@dataclass
class StrategyClassSets:
    """Exact sizes of ``win_i`` and ``draw_i`` with capped samples."""

    win: dict[int, int]
    draw: dict[int, int]
    win_sample: dict[int, list[Strategy]] = field(default_factory=dict)
    draw_sample: dict[int, list[Strategy]] = field(default_factory=dict)
    verified: bool = False


def strategy_class_sets(tree: GameTree, sample_cap: int = 10, verify_cap: int | None = None) -> StrategyClassSets:
    """Win and draw strategy sets of both players.

    Samples are checked against every opponent strategy when the opponent
    has at most ``verify_cap`` strategies; ``verified`` reports whether all
    of them were.
    """
    _require_shape(tree)
    verify_cap = default_cap() if verify_cap is None else verify_cap
    result = StrategyClassSets(win={}, draw={})
    verified = True
    for i in (1, 2):
        wins = _Guarantee(tree.index, i, _wins(i))
        relabelled = draw_as_loss_for(tree, i)
        draws = _Guarantee(relabelled.index, i, _wins(i))
        result.win[i] = wins.count()
        result.draw[i] = draws.count()
        result.win_sample[i] = [_player_strategy(tree.index, i, c)
                                for c in itertools.islice(wins.iter_good(), sample_cap)]
        result.draw_sample[i] = [_player_strategy(tree.index, i, c)
                                 for c in itertools.islice(draws.iter_good(), sample_cap)]
        for sample, good in ((result.win_sample[i], _wins(i)), (result.draw_sample[i], _not_losing(i))):
            for s in sample:
                try:
                    if not guarantees_exhaustive(tree, s, i, good, verify_cap):
                        raise RuntimeError(f"sampled strategy {s!r} of player {i} does not guarantee")
                except OracleCapExceeded:
                    verified = False
    result.verified = verified
    return result


def brute_force_class_counts(tree: GameTree, cap: int | None = None) -> StrategyClassSets:
    """``win_i``/``draw_i`` sizes by testing every strategy against every reply.

    Needs ``|S_1| * |S_2| <= cap``.
    """
    _require_shape(tree)
    cap = default_cap() if cap is None else cap
    idx = tree.index
    total = math.prod(idx.arity(j) for j in range(len(idx.internal)))
    if total > cap:
        raise OracleCapExceeded(total, cap, "joint strategies")
    result = StrategyClassSets(win={}, draw={}, verified=True)
    for i in (1, 2):
        mine = idx.slots_of_player(i)
        theirs = idx.slots_of_player(3 - i)
        replies = list(itertools.product(*(range(idx.arity(j)) for j in theirs)))
        wins = draws = 0
        work = [0] * len(idx.internal)
        for own in itertools.product(*(range(idx.arity(j)) for j in mine)):
            for j, c in zip(mine, own):
                work[j] = c
            worst = None
            for reply in replies:
                for j, c in zip(theirs, reply):
                    work[j] = c
                v = idx.payoff[idx.leaf_of(work)][i - 1]
                if worst is None or v < worst:
                    worst = v
                    if worst < 0:
                        break
            wins += worst == 1
            draws += worst >= 0
        result.win[i] = wins
        result.draw[i] = draws
    return result


@dataclass(frozen=True)
class NashClosedForm:
    """``win_i x S_-i`` (kind "win", ``player`` = i) or ``draw_1 x draw_2`` (kind "draw")."""

    kind: str
    player: int | None
    count: int

    def describe(self) -> str:
        if self.kind == "win":
            return f"NE = win_{self.player} x S_{3 - self.player}"
        return "NE = draw_1 x draw_2"


def ne_set_zerosum(tree: GameTree, sets: StrategyClassSets | None = None) -> NashClosedForm:
    _require_shape(tree)
    sets = sets or strategy_class_sets(tree, sample_cap=0)
    idx = tree.index
    size = {i: math.prod(idx.arity(j) for j in idx.slots_of_player(i)) for i in (1, 2)}
    for i in (1, 2):
        if sets.win[i]:
            return NashClosedForm("win", i, sets.win[i] * size[3 - i])
    return NashClosedForm("draw", None, sets.draw[1] * sets.draw[2])


def in_ne_closed_form(tree: GameTree, s: Mapping[NodeId, str], form: NashClosedForm) -> bool:
    """Membership of a joint strategy in ``win_i x S_-i`` or ``draw_1 x draw_2``."""
    idx = tree.index
    slots = slots_of(tree, s)
    if form.kind == "win":
        return _guarantee_flags(idx, slots, form.player, _wins(form.player))[0]
    return all(_guarantee_flags(idx, slots, i, _not_losing(i))[0] for i in (1, 2))


def _guarantee_flags(idx: TreeIndex, slots, player: int, good: Callable[[tuple], bool]) -> list[bool]:
    # does s_player restricted to each subgame guarantee `good` there?
    flags = [False] * len(idx)
    for k in range(len(idx) - 1, -1, -1):
        kids = idx.children[k]
        if not kids:
            flags[k] = good(idx.payoff[k])
        elif idx.turn[k] == player:
            flags[k] = flags[kids[slots[idx.slot[k]]]]
        else:
            flags[k] = all(flags[c] for c in kids)
    return flags


def spe_check_zerosum(tree: GameTree, s: Mapping[NodeId, str]) -> bool:
    """Subgame perfection through the per-subgame win/draw characterization.

    At a node classified as a win for ``i`` the restricted profile must give
    ``i`` a winning strategy there; at a draw node both players must hold
    draw strategies there.
    """
    _require_shape(tree)
    idx = tree.index
    slots = slots_of(tree, s)
    classes = classify_nodes(tree)
    win = {i: _guarantee_flags(idx, slots, i, _wins(i)) for i in (1, 2)}
    hold = {i: _guarantee_flags(idx, slots, i, _not_losing(i)) for i in (1, 2)}
    for k in idx.internal:
        c = classes[idx.path[k]]
        if c is NodeClass.WIN_1 and not win[1][k]:
            return False
        if c is NodeClass.WIN_2 and not win[2][k]:
            return False
        if c is NodeClass.DRAW and not (hold[1][k] and hold[2][k]):
            return False
    return True
