"""Nash and subgame perfect equilibria checked straight from their definitions.

Two independent ways of deciding whether a joint strategy is a subgame
perfect equilibrium live here:

* :func:`is_spe_by_definition` asks, for every subgame and every player,
  whether any alternative strategy of that player does better.  It is
  exponential and guarded by a cap.
* :func:`one_deviation_check` compares, at every decision node, the chosen
  child against each sibling, using the outcome the strategy induces in each
  child subgame.  One bottom-up pass; linear in the tree size.

They agree on every finite game, which the test-suite checks exhaustively on
random instances.  :func:`brute_force_spe` and :func:`brute_force_nash`
enumerate whole equilibrium sets for the solvers to be compared against.

Best-response search comes in two flavours.  The default walks every play a
deviating player can reach while the others stick to their strategies: two
strategies of the player that agree along the visited nodes give the same
play, so this covers all of ``S_i`` while counting each class once.
``exhaustive=True`` enumerates the full product ``S_i`` literally and is only
usable on small trees.
"""

from __future__ import annotations

import itertools
import math
import os
from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import OracleCapExceeded
from .tree import GameTree, NodeId, Strategy, TreeIndex, iter_slot_tuples, slots_of, strategy_from_slots

DEFAULT_ORACLE_CAP = 10**6
ORACLE_CAP_ENV = "EXTGAMES_ORACLE_CAP"


def default_cap() -> int:
    """The oracle cap, overridable through ``$EXTGAMES_ORACLE_CAP``."""
    raw = os.environ.get(ORACLE_CAP_ENV)
    return int(raw) if raw else DEFAULT_ORACLE_CAP


@dataclass(frozen=True)
class DeviationWitness:
    """A single-node deviation that strictly improves the mover's payoff."""

    node: NodeId
    chosen_child: str
    deviating_child: str
    mover: int
    payoff_at_choice: Fraction
    payoff_at_deviation: Fraction


def _best_deviation_value(idx: TreeIndex, slots, player: int, start: int, cap: int) -> Fraction:
    # every play reachable by `player` alone, the others' choices fixed
    best = None
    seen = 0
    stack = [start]
    turn, children, slot, payoff = idx.turn, idx.children, idx.slot, idx.payoff
    while stack:
        k = stack.pop()
        while turn[k] and turn[k] != player:
            k = children[k][slots[slot[k]]]
        if turn[k]:
            stack.extend(children[k])
            continue
        seen += 1
        if seen > cap:
            raise OracleCapExceeded(seen, cap, "deviation plays")
        v = payoff[k][player - 1]
        if best is None or v > best:
            best = v
    return best


def _best_deviation_value_exhaustive(idx: TreeIndex, slots, player: int, start: int, cap: int) -> Fraction:
    mine = idx.slots_of_player(player, start)
    total = math.prod(idx.arity(j) for j in mine)
    if total > cap:
        raise OracleCapExceeded(total, cap)
    work = list(slots)
    best = None
    for combo in itertools.product(*(range(idx.arity(j)) for j in mine)):
        for j, c in zip(mine, combo):
            work[j] = c
        v = idx.payoff[idx.leaf_of(work, start)][player - 1]
        if best is None or v > best:
            best = v
    return best


def _is_best_response(idx: TreeIndex, slots, player: int, start: int, cap: int, exhaustive: bool) -> bool:
    search = _best_deviation_value_exhaustive if exhaustive else _best_deviation_value
    current = idx.payoff[idx.leaf_of(slots, start)][player - 1]
    return current >= search(idx, slots, player, start, cap)


def is_best_response(tree: GameTree, s: Mapping[NodeId, str], player: int,
                     cap: int | None = None, exhaustive: bool = False) -> bool:
    """Whether no strategy of ``player`` beats ``s[player]`` against the others."""
    cap = default_cap() if cap is None else cap
    return _is_best_response(tree.index, slots_of(tree, s), player, 0, cap, exhaustive)


def is_nash(tree: GameTree, s: Mapping[NodeId, str], cap: int | None = None, exhaustive: bool = False) -> bool:
    cap = default_cap() if cap is None else cap
    slots = slots_of(tree, s)
    return all(_is_best_response(tree.index, slots, i, 0, cap, exhaustive)
               for i in range(1, tree.players + 1))


def is_spe_by_definition(tree: GameTree, s: Mapping[NodeId, str], cap: int | None = None,
                         exhaustive: bool = False) -> bool:
    """Whether ``s`` induces a Nash equilibrium in every subgame.

    Subgames are visited deepest first so that typical failures are found
    cheaply; the verdict does not depend on the order.
    """
    cap = default_cap() if cap is None else cap
    idx = tree.index
    slots = slots_of(tree, s)
    for k in reversed(idx.internal):
        for i in range(1, tree.players + 1):
            if not _is_best_response(idx, slots, i, k, cap, exhaustive):
                return False
    return True


def induced_outcomes(idx: TreeIndex, slots) -> list:
    """``p(leaf(s^w))`` for every node ``w``, computed bottom-up."""
    out = list(idx.payoff)
    for j in range(len(idx.internal) - 1, -1, -1):
        k = idx.internal[j]
        out[k] = out[idx.children[k][slots[j]]]
    return out


def one_deviation_check(tree: GameTree, s: Mapping[NodeId, str]) -> DeviationWitness | None:
    """``None`` if no single-node deviation pays, else the first one in preorder."""
    idx = tree.index
    slots = slots_of(tree, s)
    out = induced_outcomes(idx, slots)
    for j, k in enumerate(idx.internal):
        i = idx.turn[k]
        kids = idx.children[k]
        mine = out[kids[slots[j]]][i - 1]
        for pos, c in enumerate(kids):
            if out[c][i - 1] > mine:
                return DeviationWitness(
                    node=idx.path[k],
                    chosen_child=idx.labels[k][slots[j]],
                    deviating_child=idx.labels[k][pos],
                    mover=i,
                    payoff_at_choice=mine,
                    payoff_at_deviation=out[c][i - 1],
                )
    return None


def _nash_set_of_subgame(idx: TreeIndex, w: int) -> set[tuple[int, ...]]:
    """All Nash equilibria of the subgame at ``w``, as local slot tuples.

    Every joint strategy of the subgame is played out once; the best reply
    value of player ``i`` to each ``s_-i`` is the maximum over the group of
    profiles sharing that ``s_-i``.
    """
    rng = idx.slot_range(w)
    offset = rng.start
    movers = sorted({idx.turn[idx.internal[j]] for j in rng})
    others = {i: [j - offset for j in rng if idx.turn[idx.internal[j]] != i] for i in movers}
    profiles = []
    best: dict[int, dict[tuple, Fraction]] = {i: {} for i in movers}
    for local in itertools.product(*(range(idx.arity(j)) for j in rng)):
        p = idx.payoff[idx.leaf_of(local, w, offset)]
        profiles.append((local, p))
        for i in movers:
            key = tuple(local[j] for j in others[i])
            cur = best[i].get(key)
            if cur is None or p[i - 1] > cur:
                best[i][key] = p[i - 1]
    return {
        local for local, p in profiles
        if all(p[i - 1] >= best[i][tuple(local[j] for j in others[i])] for i in movers)
    }


def _check_size(tree: GameTree, cap: int) -> None:
    total = math.prod(tree.index.arity(j) for j in range(len(tree.index.internal)))
    if total > cap:
        raise OracleCapExceeded(total, cap, "joint strategies")


def brute_force_nash_slots(tree: GameTree, cap: int | None = None) -> set[tuple[int, ...]]:
    cap = default_cap() if cap is None else cap
    _check_size(tree, cap)
    return _nash_set_of_subgame(tree.index, 0)


def brute_force_spe_slots(tree: GameTree, cap: int | None = None) -> set[tuple[int, ...]]:
    """Subgame perfect equilibria by filtering all of ``S``.

    ``s`` is kept iff its restriction to every subgame is among that
    subgame's Nash equilibria.
    """
    cap = default_cap() if cap is None else cap
    _check_size(tree, cap)
    idx = tree.index
    checks = []
    for k in idx.internal:
        rng = idx.slot_range(k)
        checks.append((rng.start, rng.stop, _nash_set_of_subgame(idx, k)))
    return {s for s in iter_slot_tuples(tree) if all(s[a:b] in ne for a, b, ne in checks)}


def brute_force_nash(tree: GameTree, cap: int | None = None) -> set[Strategy]:
    return {strategy_from_slots(tree, s) for s in brute_force_nash_slots(tree, cap)}


def brute_force_spe(tree: GameTree, cap: int | None = None) -> set[Strategy]:
    return {strategy_from_slots(tree, s) for s in brute_force_spe_slots(tree, cap)}
