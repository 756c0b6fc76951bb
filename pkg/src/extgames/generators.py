"""Example game families and seeded random games.

The named families are finite stand-ins for games whose action sets are
infinite:

* :func:`gen_ultimatum` restricts the proposer's claim to the grid
  ``{0, total/grid_max, ..., total}``.  On any grid the responder is
  indifferent at the top claim, so there are two equilibria, whereas the
  continuum game has one.
* :func:`gen_bargaining` truncates the first offer to ``2..K``.
* :func:`gen_g_alpha` builds ``G(i, alpha)`` for natural ``alpha`` only, on a
  claim grid.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .errors import BadParameters
from .tree import GameTree, Node, RationalLike, decision, joint_strategy_count, leaf, to_fraction

MAX_DEPTH = 8
MAX_BRANCHING = 5
MAX_ALPHA = 20
_LABELS = "abcde"


def gen_ultimatum(grid_max: int, total: RationalLike = 100, proposer: int = 1) -> GameTree:
    """Proposer claims ``total * k / grid_max``; the responder accepts (A) or rejects (R)."""
    if not isinstance(grid_max, int) or grid_max < 1:
        raise BadParameters(f"grid_max must be a positive integer, got {grid_max!r}")
    total = to_fraction(total)
    if total <= 0:
        raise BadParameters(f"total must be positive, got {total}")
    if proposer not in (1, 2):
        raise BadParameters(f"proposer must be 1 or 2, got {proposer!r}")
    responder = 3 - proposer
    claims = []
    for k in range(grid_max + 1):
        x = total * k / grid_max
        accept = (x, total - x) if proposer == 1 else (total - x, x)
        claims.append((str(k), decision(responder, [("A", leaf(*accept)), ("R", leaf(0, 0))])))
    return GameTree(2, decision(proposer, claims))


def _bargaining_offer(k: int) -> Node:
    # player 2's node after player 1 has asked for 1 - 1/k
    if k == 2:
        return decision(2, [("A", leaf(50, 50)), ("R", leaf(0, 0))])
    better = decision(1, [(str(k - 1), _bargaining_offer(k - 1))])
    return decision(2, [("B", better), ("R", leaf(0, 0))])


def gen_bargaining(K: int) -> GameTree:
    """Bargaining with the first offer truncated to ``k in 2..K``."""
    if not isinstance(K, int) or K < 2:
        raise BadParameters(f"K must be an integer >= 2, got {K!r}")
    return GameTree(2, decision(1, [(str(k), _bargaining_offer(k)) for k in range(2, K + 1)]))


def gen_g_alpha(player: int, alpha: int, grid_max: int) -> GameTree:
    """``G(player, alpha)``: the root belongs to ``player`` and leads to ``G(-player, beta)``, ``2 <= beta < alpha``.

    ``G(i, 2)`` is the Ultimatum game over 100 with player ``i`` proposing.
    Children are labelled by ``beta`` in increasing order.
    """
    if player not in (1, 2):
        raise BadParameters(f"player must be 1 or 2, got {player!r}")
    if not isinstance(alpha, int) or not 2 <= alpha <= MAX_ALPHA:
        raise BadParameters(f"alpha must be an integer in 2..{MAX_ALPHA}, got {alpha!r}")
    memo: dict[tuple[int, int], Node] = {}

    def build(i: int, a: int) -> Node:
        if (i, a) not in memo:
            if a == 2:
                memo[i, a] = gen_ultimatum(grid_max, 100, proposer=i).root
            else:
                memo[i, a] = decision(i, [(str(b), build(3 - i, b)) for b in range(2, a)])
        return memo[i, a]

    return GameTree(2, build(player, alpha))


class Shape(enum.Enum):
    GENERIC = "generic"
    ZERO_SUM_2OUTCOME = "zero-sum-2"
    ZERO_SUM_3OUTCOME = "zero-sum-3"
    ZERO_SUM = "zero-sum"
    STRICTLY_COMPETITIVE = "strictly-competitive"
    ROCHET = "rochet"


_TWO_PLAYER_SHAPES = {Shape.ZERO_SUM_2OUTCOME, Shape.ZERO_SUM_3OUTCOME, Shape.ZERO_SUM,
                      Shape.STRICTLY_COMPETITIVE}


@dataclass(frozen=True)
class RandomSpec:
    players: int = 2
    max_depth: int = 4
    max_branching: int = 3
    min_branching: int = 1
    leaf_prob: float = 0.3
    payoff_min: int = 0
    payoff_max: int = 9
    shape: Shape | None = None
    seed: int = 0

    def check(self) -> None:
        if self.players < 1:
            raise BadParameters("players must be >= 1")
        if not 0 <= self.max_depth <= MAX_DEPTH:
            raise BadParameters(f"max_depth must be in 0..{MAX_DEPTH}")
        if not 1 <= self.min_branching <= self.max_branching <= MAX_BRANCHING:
            raise BadParameters(f"need 1 <= min_branching <= max_branching <= {MAX_BRANCHING}")
        if not 0.0 <= self.leaf_prob <= 1.0:
            raise BadParameters("leaf_prob must be in [0, 1]")
        if self.payoff_min > self.payoff_max:
            raise BadParameters("payoff_min > payoff_max")
        if self.shape in _TWO_PLAYER_SHAPES and self.players != 2:
            raise BadParameters(f"shape {self.shape.value} needs exactly 2 players")


def _palette(rng: random.Random, spec: RandomSpec) -> list[tuple[int, ...]]:
    values = range(spec.payoff_min, spec.payoff_max + 1)
    m = min(len(values), rng.randint(2, 4))
    if spec.shape is Shape.STRICTLY_COMPETITIVE:
        p1 = sorted(rng.sample(values, m))
        p2 = sorted(rng.sample(values, m), reverse=True)
        return list(zip(p1, p2))
    cols = [rng.sample(values, m) for _ in range(spec.players)]
    return list(zip(*cols))


def _payoffs(rng: random.Random, spec: RandomSpec, count: int) -> list[tuple[int, ...]]:
    lo, hi = spec.payoff_min, spec.payoff_max
    shape = spec.shape
    if shape is None:
        return [tuple(rng.randint(lo, hi) for _ in range(spec.players)) for _ in range(count)]
    if shape is Shape.GENERIC:
        # widen the range upwards when it has fewer values than leaves
        pool = range(lo, lo + max(hi - lo + 1, count))
        cols = [rng.sample(pool, count) for _ in range(spec.players)]
        return list(zip(*cols))
    if shape is Shape.ZERO_SUM_2OUTCOME:
        return [rng.choice(((1, -1), (-1, 1))) for _ in range(count)]
    if shape is Shape.ZERO_SUM_3OUTCOME:
        return [rng.choice(((1, -1), (0, 0), (-1, 1))) for _ in range(count)]
    if shape is Shape.ZERO_SUM:
        return [(a, -a) for a in (rng.randint(lo, hi) for _ in range(count))]
    palette = _palette(rng, spec)
    return [rng.choice(palette) for _ in range(count)]


def gen_random(spec: RandomSpec) -> GameTree:
    """Random tree, deterministic in ``spec.seed``.

    The root is a decision node unless ``max_depth`` is 0; below it each node
    becomes a leaf with probability ``leaf_prob`` (always at ``max_depth``).
    """
    spec.check()
    rng = random.Random(spec.seed)

    # shape first, payoffs second: leaves are numbered in preorder
    def grow(depth: int):
        if depth == spec.max_depth or (depth > 0 and rng.random() < spec.leaf_prob):
            return None
        player = rng.randint(1, spec.players)
        width = rng.randint(spec.min_branching, spec.max_branching)
        return player, [grow(depth + 1) for _ in range(width)]

    skeleton = grow(0)

    def count_leaves(sk) -> int:
        return 1 if sk is None else sum(count_leaves(c) for c in sk[1])

    payoffs = iter(_payoffs(rng, spec, count_leaves(skeleton)))

    def build(sk) -> Node:
        if sk is None:
            return leaf(*next(payoffs))
        player, kids = sk
        return decision(player, [(_LABELS[n], build(c)) for n, c in enumerate(kids)])

    return GameTree(spec.players, build(skeleton))


def random_games(count: int, max_joint: int | None = None, start_seed: int = 0, **params) -> list[GameTree]:
    """``count`` random games from consecutive seeds, skipping those with more
    than ``max_joint`` joint strategies."""
    games = []
    seed = start_seed
    while len(games) < count:
        tree = gen_random(RandomSpec(seed=seed, **params))
        seed += 1
        if max_joint is None or joint_strategy_count(tree) <= max_joint:
            games.append(tree)
    return games
