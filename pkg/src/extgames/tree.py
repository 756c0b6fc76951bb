"""Finite extensive games with perfect information.

A game is a rooted tree.  Internal nodes carry the (1-based) index of the
player to move and an ordered list of labelled children; leaves carry an
exact payoff vector.  Nodes are addressed by the tuple of child labels on
the path from the root (the root is ``()``), rendered as ``"a/b/c"``.

The trees are immutable values.  Every algorithm in the package works on a
flattened preorder view of the tree (:class:`TreeIndex`), computed once per
tree and cached, so that joint strategies can be handled as plain tuples of
child positions ("slots") in preorder of the internal nodes.

Only finite trees are representable.  Games whose actions range over a
continuum (a claim in ``[0, 100]``, an unbounded first offer) are handled
by the generators as finite grids or truncations, and results on those
grids are discretizations that can differ from the continuum game.
"""

from __future__ import annotations

import itertools
import math
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Union

from .errors import (
    BadLabel,
    BadPayoffArity,
    BadTurnIndex,
    DuplicateLabel,
    EmptyChildren,
    InvalidStrategy,
    MalformedNode,
    NoSuchNode,
)

NodeId = tuple[str, ...]
PayoffVector = tuple[Fraction, ...]
RationalLike = Union[int, Fraction, str]

ROOT: NodeId = ()


def node_path(node: NodeId) -> str:
    return "/".join(node)


def parse_node_path(text: str) -> NodeId:
    text = text.strip()
    return tuple(text.split("/")) if text else ()


def to_fraction(value: RationalLike) -> Fraction:
    """Exact conversion of an int, Fraction or rational literal string.

    Floats are refused: payoffs must be decided exactly.
    """
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact payoff {value!r}")
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"not a rational: {value!r}")


def format_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_payoffs(p: PayoffVector) -> str:
    return "(" + ",".join(format_rational(x) for x in p) + ")"


@dataclass(frozen=True)
class Node:
    """A node of a game tree.

    Leaves have ``payoffs`` and no children; internal nodes have a
    ``player`` and a non-empty ``children`` tuple of ``(label, Node)``.
    """

    player: int | None = None
    children: tuple[tuple[str, Node], ...] = ()
    payoffs: PayoffVector | None = None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def child(self, label: str) -> Node:
        for lab, sub in self.children:
            if lab == label:
                return sub
        raise NoSuchNode(f"no child {label!r}")

    @property
    def labels(self) -> tuple[str, ...]:
        return tuple(lab for lab, _ in self.children)


def leaf(*payoffs: RationalLike) -> Node:
    return Node(payoffs=tuple(to_fraction(p) for p in payoffs))


def decision(player: int, children: Iterable[tuple[str, Node]]) -> Node:
    return Node(player=player, children=tuple((str(lab), sub) for lab, sub in children))


@dataclass(frozen=True)
class GameTree:
    players: int
    root: Node

    @cached_property
    def index(self) -> TreeIndex:
        return TreeIndex(self)

    def node(self, node_id: NodeId | str) -> Node:
        if isinstance(node_id, str):
            node_id = parse_node_path(node_id)
        cur = self.root
        for lab in node_id:
            if cur.is_leaf:
                raise NoSuchNode(f"no node {node_path(node_id)!r}")
            try:
                cur = cur.child(lab)
            except NoSuchNode:
                raise NoSuchNode(f"no node {node_path(node_id)!r}") from None
        return cur


class TreeIndex:
    """Flattened preorder view of a game tree.

    Node ``k`` is the k-th node in canonical preorder (children visited in
    stored order).  The subtree of ``k`` occupies ``range(k, end[k])``, and
    its internal nodes occupy the slot range ``slot_range(k)``.
    """

    def __init__(self, tree: GameTree):
        self.players = tree.players
        self.path: list[NodeId] = []
        self.parent: list[int] = []
        self.turn: list[int] = []
        self.payoff: list[PayoffVector | None] = []
        self.labels: list[tuple[str, ...]] = []
        self.children: list[tuple[int, ...]] = []
        self.end: list[int] = []
        self.slot: list[int] = []
        self.internal: list[int] = []
        self._slot_before: list[int] = []

        kids: list[list[int]] = []
        stack: list[tuple[Node, NodeId, int]] = [(tree.root, (), -1)]
        while stack:
            node, path, parent = stack.pop()
            k = len(self.path)
            self.path.append(path)
            self.parent.append(parent)
            self._slot_before.append(len(self.internal))
            kids.append([])
            if parent >= 0:
                kids[parent].append(k)
            if node.is_leaf:
                self.turn.append(0)
                self.payoff.append(node.payoffs)
                self.labels.append(())
                self.slot.append(-1)
            else:
                self.turn.append(node.player)
                self.payoff.append(None)
                self.labels.append(node.labels)
                self.slot.append(len(self.internal))
                self.internal.append(k)
                for lab, sub in reversed(node.children):
                    stack.append((sub, path + (lab,), k))
        self.children = [tuple(c) for c in kids]
        n = len(self.path)
        self.end = [0] * n
        for k in range(n - 1, -1, -1):
            self.end[k] = self.end[self.children[k][-1]] if self.children[k] else k + 1
        self.by_path = {p: k for k, p in enumerate(self.path)}
        self.leaves = [k for k in range(n) if not self.turn[k]]

    def __len__(self) -> int:
        return len(self.path)

    def slot_range(self, k: int) -> range:
        stop = self._slot_before[self.end[k]] if self.end[k] < len(self.path) else len(self.internal)
        return range(self._slot_before[k], stop)

    def slots_of_player(self, player: int, within: int = 0) -> list[int]:
        return [s for s in self.slot_range(within) if self.turn[self.internal[s]] == player]

    def leaf_of(self, slots: tuple[int, ...] | list[int], start: int = 0, offset: int = 0) -> int:
        """Follow the joint strategy ``slots`` from node ``start`` to a leaf.

        ``offset`` is subtracted from slot numbers, for strategies of a
        subgame stored as a slice of the full slot tuple.
        """
        k = start
        turn, children, slot = self.turn, self.children, self.slot
        while turn[k]:
            k = children[k][slots[slot[k] - offset]]
        return k

    def outcome(self, slots, start: int = 0) -> PayoffVector:
        return self.payoff[self.leaf_of(slots, start)]

    def arity(self, slot: int) -> int:
        return len(self.children[self.internal[slot]])

    def lookup(self, node_id: NodeId | str) -> int:
        if isinstance(node_id, str):
            node_id = parse_node_path(node_id)
        try:
            return self.by_path[tuple(node_id)]
        except KeyError:
            raise NoSuchNode(f"no node {node_path(tuple(node_id))!r}") from None


class Strategy(Mapping[NodeId, str]):
    """Immutable map from internal node to the label of the chosen child.

    A joint strategy covers every internal node of the tree, choices off
    the path of play included.  A strategy of a single player covers
    exactly the nodes where that player moves.
    """

    __slots__ = ("_choices", "_hash")

    def __init__(self, choices: Mapping[NodeId | str, str] | Iterable[tuple[NodeId | str, str]] = ()):
        items = choices.items() if isinstance(choices, Mapping) else choices
        self._choices: dict[NodeId, str] = {
            (parse_node_path(k) if isinstance(k, str) else tuple(k)): v for k, v in items
        }
        self._hash: int | None = None

    def __getitem__(self, key: NodeId | str) -> str:
        if isinstance(key, str):
            key = parse_node_path(key)
        return self._choices[key]

    def __iter__(self) -> Iterator[NodeId]:
        return iter(self._choices)

    def __len__(self) -> int:
        return len(self._choices)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._choices.items()))
        return self._hash

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Strategy):
            return self._choices == other._choices
        return NotImplemented

    def __repr__(self) -> str:
        body = ", ".join(f"{node_path(k)!r}: {v!r}" for k, v in sorted(self._choices.items()))
        return f"Strategy({{{body}}})"

    def merged(self, other: Mapping[NodeId, str]) -> Strategy:
        out = dict(self._choices)
        out.update(other)
        return Strategy(out)


JointStrategy = Strategy


@dataclass(frozen=True)
class Play:
    path: tuple[NodeId, ...]
    leaf: NodeId
    outcome: PayoffVector = field(compare=True)


_FORBIDDEN_LABEL_CHARS = set("/=\n\r")


def _check_label(path: NodeId, label: object) -> None:
    if not isinstance(label, str) or not label:
        raise BadLabel(path, f"label must be a non-empty string, got {label!r}")
    if _FORBIDDEN_LABEL_CHARS & set(label) or label != label.strip() or label.startswith("#"):
        raise BadLabel(path, f"label {label!r} contains '/', '=', a newline, "
                             "surrounding whitespace or a leading '#'")


def validate(tree: GameTree) -> None:
    """Raise the first structural violation in canonical preorder, if any."""
    n = tree.players
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise MalformedNode((), f"player count must be an integer >= 1, got {n!r}")
    stack: list[tuple[Node, NodeId]] = [(tree.root, ())]
    while stack:
        node, path = stack.pop()
        if not isinstance(node, Node):
            raise MalformedNode(path, f"not a Node: {node!r}")
        if node.children:
            if node.payoffs is not None:
                raise MalformedNode(path, "internal node carries payoffs")
            p = node.player
            if not isinstance(p, int) or isinstance(p, bool) or not 1 <= p <= n:
                raise BadTurnIndex(path, f"turn {p!r} not in 1..{n}")
            seen: set[str] = set()
            for lab, _ in node.children:
                _check_label(path, lab)
                if lab in seen:
                    raise DuplicateLabel(path, f"label {lab!r} used twice")
                seen.add(lab)
            for lab, sub in reversed(node.children):
                stack.append((sub, path + (lab,)))
        else:
            if node.player is not None or node.payoffs is None:
                raise EmptyChildren(path, "decision node without children")
            if len(node.payoffs) != n:
                raise BadPayoffArity(path, f"{len(node.payoffs)} payoffs for {n} players")
            if not all(isinstance(x, Fraction) for x in node.payoffs):
                raise MalformedNode(path, "payoffs must be Fractions")


def subgame(tree: GameTree, w: NodeId | str) -> GameTree:
    """The game rooted at ``w``; all players are kept, even if they never move."""
    return GameTree(tree.players, tree.node(w))


def rank(tree: GameTree) -> int:
    idx = tree.index
    r = [0] * len(idx)
    for k in range(len(idx) - 1, -1, -1):
        if idx.children[k]:
            r[k] = 1 + max(r[c] for c in idx.children[k])
    return r[0]


def joint_strategy_count(tree: GameTree) -> int:
    idx = tree.index
    return math.prod(len(idx.children[k]) for k in idx.internal)


def player_strategy_count(tree: GameTree, player: int, within: NodeId = ROOT) -> int:
    idx = tree.index
    w = idx.lookup(within)
    return math.prod(idx.arity(s) for s in idx.slots_of_player(player, w))


def slots_of(tree: GameTree, s: Mapping[NodeId, str]) -> tuple[int, ...]:
    """Positional form of a joint strategy, checking that it is total and legal."""
    idx = tree.index
    if len(s) != len(idx.internal):
        raise InvalidStrategy(f"strategy covers {len(s)} nodes, tree has {len(idx.internal)} internal nodes")
    out = []
    for k in idx.internal:
        path = idx.path[k]
        try:
            lab = s[path]
        except KeyError:
            raise InvalidStrategy(f"no choice at node {node_path(path)!r}") from None
        try:
            out.append(idx.labels[k].index(lab))
        except ValueError:
            raise InvalidStrategy(f"{lab!r} is not a child of {node_path(path)!r}") from None
    return tuple(out)


def strategy_from_slots(tree: GameTree, slots: Iterable[int], only: Iterable[int] | None = None) -> Strategy:
    """Inverse of :func:`slots_of`; ``only`` restricts to the given slot numbers."""
    idx = tree.index
    slots = list(slots)
    chosen = range(len(idx.internal)) if only is None else only
    return Strategy((idx.path[idx.internal[j]], idx.labels[idx.internal[j]][slots[j]]) for j in chosen)


def restrict(s: Mapping[NodeId, str], w: NodeId | str) -> Strategy:
    """The strategy ``s^w`` induced on the subgame rooted at ``w``."""
    if isinstance(w, str):
        w = parse_node_path(w)
    n = len(w)
    return Strategy((k[n:], v) for k, v in s.items() if k[:n] == w)


def player_part(tree: GameTree, s: Mapping[NodeId, str], player: int) -> Strategy:
    idx = tree.index
    return Strategy((p, v) for p, v in s.items() if idx.turn[idx.lookup(p)] == player)


def play_of(tree: GameTree, s: Mapping[NodeId, str]) -> Play:
    idx = tree.index
    slots = slots_of(tree, s)
    k, path = 0, [()]
    while idx.turn[k]:
        k = idx.children[k][slots[idx.slot[k]]]
        path.append(idx.path[k])
    return Play(tuple(path), idx.path[k], idx.payoff[k])


def iter_slot_tuples(tree: GameTree, within: int = 0) -> Iterator[tuple[int, ...]]:
    """All joint strategies of the subgame at preorder node ``within``, lexicographically."""
    idx = tree.index
    return itertools.product(*(range(idx.arity(j)) for j in idx.slot_range(within)))


def iter_joint_strategies(tree: GameTree) -> Iterator[Strategy]:
    for slots in iter_slot_tuples(tree):
        yield strategy_from_slots(tree, slots)


def leaf_paths(tree: GameTree) -> list[NodeId]:
    idx = tree.index
    return [idx.path[k] for k in idx.leaves]


def map_payoffs(tree: GameTree, fn) -> GameTree:
    """Copy of ``tree`` with every leaf payoff vector replaced by ``fn(vector)``."""
    memo: dict[int, Node] = {}

    def walk(node: Node) -> Node:
        key = id(node)
        if key not in memo:
            if node.is_leaf:
                memo[key] = Node(payoffs=tuple(to_fraction(x) for x in fn(node.payoffs)))
            else:
                memo[key] = Node(node.player, tuple((lab, walk(sub)) for lab, sub in node.children))
        return memo[key]

    return GameTree(tree.players, walk(tree.root))
