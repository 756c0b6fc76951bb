"""Structural conditions behind uniqueness and payoff equivalence of equilibria.

Strategies are total, so every leaf is ``leaf(s)`` for some joint strategy
``s``.  Conditions stated over pairs of joint strategies therefore reduce to
conditions over pairs of leaves; :func:`rochet_by_strategies` keeps the
unreduced form around so the reduction can be tested.

TDI reduces further.  With the opponents' strategies fixed, player ``i`` can
reach two leaves together iff the node where their paths split belongs to
``i`` (at an opponent's node the fixed strategy picks one branch, and below
the split the two paths share no nodes).  So TDI holds iff, at every node
of every player ``i``, leaves in different child subtrees that tie for ``i``
have equal payoff vectors.
"""

from __future__ import annotations

import enum
import itertools
import math
from dataclasses import dataclass

from .equilibria import default_cap
from .errors import NotTwoPlayer, OracleCapExceeded
from .spe import spe_outcomes
from .tree import GameTree, NodeId, iter_slot_tuples


class Condition(enum.Enum):
    NO_RELEVANT_TIES = "NO_RELEVANT_TIES"
    GENERIC = "GENERIC"
    ROCHET = "ROCHET"
    STRICTLY_COMPETITIVE = "STRICTLY_COMPETITIVE"
    TDI = "TDI"
    ZERO_SUM = "ZERO_SUM"


@dataclass(frozen=True)
class Witness:
    """Two leaves (in preorder) that violate a condition for ``player``.

    ``node`` is the decision node the violation is attached to, when the
    condition is local to one.
    """

    first: NodeId
    second: NodeId
    player: int | None = None
    node: NodeId | None = None


@dataclass(frozen=True)
class ConditionReport:
    condition: Condition
    holds: bool
    witness: Witness | None = None


def _leaf_pairs(tree: GameTree):
    idx = tree.index
    return itertools.combinations(idx.leaves, 2)


def check_generic(tree: GameTree) -> ConditionReport:
    idx = tree.index
    for a, b in _leaf_pairs(tree):
        for i in range(tree.players):
            if idx.payoff[a][i] == idx.payoff[b][i]:
                return ConditionReport(Condition.GENERIC, False, Witness(idx.path[a], idx.path[b], i + 1))
    return ConditionReport(Condition.GENERIC, True)


def check_no_relevant_ties(tree: GameTree) -> ConditionReport:
    """The mover's payoff is injective on the leaves below each decision node.

    The witness is the smallest leaf pair (in preorder) tied under some
    node; the reported node is the first such node in preorder.
    """
    idx = tree.index
    best = None
    for k in idx.internal:
        i = idx.turn[k] - 1
        seen: dict = {}
        for z in idx.leaves:
            if not k <= z < idx.end[k]:
                continue
            v = idx.payoff[z][i]
            if v in seen:
                cand = (seen[v], z, k)
                # pairs (first leaf with value v, z) suffice to find the minimum
                if best is None or cand[:2] < best[:2]:
                    best = cand
            else:
                seen[v] = z
    if best is None:
        return ConditionReport(Condition.NO_RELEVANT_TIES, True)
    a, b, k = best
    return ConditionReport(Condition.NO_RELEVANT_TIES, False,
                           Witness(idx.path[a], idx.path[b], idx.turn[k], idx.path[k]))


def check_rochet(tree: GameTree) -> ConditionReport:
    """Equal payoff for one player forces equal payoff vectors, over all leaf pairs."""
    idx = tree.index
    for a, b in _leaf_pairs(tree):
        pa, pb = idx.payoff[a], idx.payoff[b]
        if pa == pb:
            continue
        for i in range(tree.players):
            if pa[i] == pb[i]:
                return ConditionReport(Condition.ROCHET, False, Witness(idx.path[a], idx.path[b], i + 1))
    return ConditionReport(Condition.ROCHET, True)


def rochet_by_strategies(tree: GameTree, cap: int | None = None) -> bool:
    """The unreduced condition, over all pairs of joint strategies."""
    cap = default_cap() if cap is None else cap
    idx = tree.index
    total = math.prod(idx.arity(j) for j in range(len(idx.internal)))
    if total * total > cap:
        raise OracleCapExceeded(total * total, cap, "strategy pairs")
    outcomes = [idx.outcome(s) for s in iter_slot_tuples(tree)]
    return all(p == q or all(p[i] != q[i] for i in range(tree.players))
               for p in outcomes for q in outcomes)


def check_strictly_competitive(tree: GameTree) -> ConditionReport:
    if tree.players != 2:
        raise NotTwoPlayer(f"needs a two-player game, got {tree.players} players")
    idx = tree.index
    for a, b in _leaf_pairs(tree):
        pa, pb = idx.payoff[a], idx.payoff[b]
        # both orders of the pair; the i = 2 statement is the i = 1 one reversed
        if (pa[0] >= pb[0]) != (pa[1] <= pb[1]) or (pb[0] >= pa[0]) != (pb[1] <= pa[1]):
            return ConditionReport(Condition.STRICTLY_COMPETITIVE, False, Witness(idx.path[a], idx.path[b]))
    return ConditionReport(Condition.STRICTLY_COMPETITIVE, True)


def check_zero_sum(tree: GameTree) -> ConditionReport:
    idx = tree.index
    for z in idx.leaves:
        if sum(idx.payoff[z]) != 0:
            return ConditionReport(Condition.ZERO_SUM, False, Witness(idx.path[z], idx.path[z]))
    return ConditionReport(Condition.ZERO_SUM, True)


def _tdi_violations_by_split(tree: GameTree) -> set[tuple[int, int, int]]:
    idx = tree.index
    found = set()
    for k in idx.internal:
        i = idx.turn[k] - 1
        groups = [[z for z in idx.leaves if c <= z < idx.end[c]] for c in idx.children[k]]
        for g, h in itertools.combinations(groups, 2):
            for a in g:
                for b in h:
                    pa, pb = idx.payoff[a], idx.payoff[b]
                    if pa[i] == pb[i] and pa != pb:
                        found.add((a, b, i + 1))
    return found


def _tdi_violations_exhaustive(tree: GameTree) -> set[tuple[int, int, int]]:
    idx = tree.index
    found = set()
    for i in range(1, tree.players + 1):
        mine = idx.slots_of_player(i)
        theirs = [j for j in range(len(idx.internal)) if j not in set(mine)]
        work = [0] * len(idx.internal)
        for reply in itertools.product(*(range(idx.arity(j)) for j in theirs)):
            for j, c in zip(theirs, reply):
                work[j] = c
            reached = set()
            for own in itertools.product(*(range(idx.arity(j)) for j in mine)):
                for j, c in zip(mine, own):
                    work[j] = c
                reached.add(idx.leaf_of(work))
            for a, b in itertools.combinations(sorted(reached), 2):
                pa, pb = idx.payoff[a], idx.payoff[b]
                if pa[i - 1] == pb[i - 1] and pa != pb:
                    found.add((a, b, i))
    return found


def check_tdi(tree: GameTree, sample_budget: int | None = None, exhaustive: bool | None = None) -> ConditionReport:
    """Transference of decisionmaker indifference.

    Uses the full ``S_i x S_-i`` search when the game has at most
    ``sample_budget`` joint strategies (or when ``exhaustive`` is forced),
    else the split-node reduction.  Both report the same minimal witness.
    """
    budget = default_cap() if sample_budget is None else sample_budget
    if exhaustive is None:
        exhaustive = math.prod(tree.index.arity(j) for j in range(len(tree.index.internal))) <= budget
    found = _tdi_violations_exhaustive(tree) if exhaustive else _tdi_violations_by_split(tree)
    if not found:
        return ConditionReport(Condition.TDI, True)
    a, b, i = min(found)
    idx = tree.index
    return ConditionReport(Condition.TDI, False, Witness(idx.path[a], idx.path[b], i))


def check_spe_payoff_equivalence(tree: GameTree) -> bool:
    return len(spe_outcomes(tree)) == 1


def all_reports(tree: GameTree, tdi_budget: int | None = None) -> list[ConditionReport]:
    reports = [check_no_relevant_ties(tree), check_generic(tree), check_rochet(tree)]
    if tree.players == 2:
        reports.append(check_strictly_competitive(tree))
    reports.append(check_tdi(tree, tdi_budget))
    reports.append(check_zero_sum(tree))
    return reports
