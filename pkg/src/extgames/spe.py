"""Subgame perfect equilibria computed compositionally from the children.

The equilibria of a game are exactly the pairs ``(choice at the root, tuple
of equilibria of the child subgames)`` in which the chosen child's outcome
is maximal for the mover among the outcomes the tuple produces.  Child
equilibria are chosen independently, which gives three exact recursions:

* outcome sets: an outcome ``o`` of child ``w`` survives iff the mover's
  payoff in ``o`` is at least, for every other child, the smallest payoff
  the mover can be held to there;
* counts: per node, a map from outcome to the number of equilibria
  realizing it, where an outcome of child ``w`` is multiplied by the number
  of equilibria of each sibling whose outcome does not beat it;
* enumeration: equilibria in lexicographic order of their choice tuples
  (preorder of decision nodes, child-list order), with pruning that never
  enters a branch without a completion.
"""

from __future__ import annotations

import bisect
import itertools
import math
from collections.abc import Iterator
from dataclasses import dataclass, field

from .tree import GameTree, PayoffVector, Strategy, TreeIndex, strategy_from_slots


@dataclass(frozen=True)
class SpeSet:
    count: int
    sample: list[Strategy] = field(default_factory=list)

    @property
    def truncated(self) -> bool:
        return len(self.sample) < self.count


def _outcome_sets(idx: TreeIndex) -> list[tuple[PayoffVector, ...]]:
    out: list[tuple[PayoffVector, ...]] = [()] * len(idx)
    for k in range(len(idx) - 1, -1, -1):
        if not idx.turn[k]:
            out[k] = (idx.payoff[k],)
            continue
        i = idx.turn[k] - 1
        kids = idx.children[k]
        floor = max(min(o[i] for o in out[c]) for c in kids)
        merged = {o for c in kids for o in out[c] if o[i] >= floor}
        if not merged:
            raise RuntimeError(f"empty argmax at {idx.path[k]!r}; impossible for finite games")
        out[k] = tuple(sorted(merged))
    return out


def spe_outcomes(tree: GameTree) -> tuple[PayoffVector, ...]:
    """Payoff vectors of all subgame perfect equilibria, sorted lexicographically."""
    return _outcome_sets(tree.index)[0]


def _count_maps(idx: TreeIndex) -> list[dict[PayoffVector, int]]:
    maps: list[dict[PayoffVector, int]] = [{}] * len(idx)
    for k in range(len(idx) - 1, -1, -1):
        if not idx.turn[k]:
            maps[k] = {idx.payoff[k]: 1}
            continue
        i = idx.turn[k] - 1
        kids = idx.children[k]
        # per child: sorted mover payoffs and prefix sums of counts
        cdf = []
        for c in kids:
            items = sorted((o[i], n) for o, n in maps[c].items())
            keys = [v for v, _ in items]
            sums = list(itertools.accumulate(n for _, n in items))
            cdf.append((keys, sums))

        def at_most(pos: int, value) -> int:
            keys, sums = cdf[pos]
            cut = bisect.bisect_right(keys, value)
            return sums[cut - 1] if cut else 0

        acc: dict[PayoffVector, int] = {}
        for pos, c in enumerate(kids):
            for o, n in maps[c].items():
                total = n * math.prod(at_most(q, o[i]) for q in range(len(kids)) if q != pos)
                if total:
                    acc[o] = acc.get(o, 0) + total
        maps[k] = acc
    return maps


def spe_count_map(tree: GameTree) -> dict[PayoffVector, int]:
    """Number of subgame perfect equilibria realizing each outcome."""
    return dict(sorted(_count_maps(tree.index)[0].items()))


def spe_count(tree: GameTree) -> int:
    return sum(_count_maps(tree.index)[0].values())


def has_unique_spe(tree: GameTree) -> bool:
    return spe_count(tree) == 1


class _Enumerator:
    def __init__(self, idx: TreeIndex):
        self.idx = idx
        self.out = _outcome_sets(idx)

    def spe(self, k: int, allowed: frozenset | None) -> Iterator[tuple[tuple[int, ...], PayoffVector]]:
        """Equilibria of the subgame at ``k`` with outcome in ``allowed``, in lex order."""
        idx = self.idx
        if not idx.turn[k]:
            yield (), idx.payoff[k]
            return
        i = idx.turn[k] - 1
        kids = idx.children[k]
        mins = [min(o[i] for o in self.out[c]) for c in kids]
        for j, cj in enumerate(kids):
            cand = [o for o in self.out[cj] if allowed is None or o in allowed]
            if not cand:
                continue
            top = max(o[i] for o in cand)
            if any(mins[x] > top for x in range(len(kids)) if x != j):
                continue
            for rest, o in self._tuples(kids, j, 0, None, None, i, frozenset(cand), top, mins):
                yield (j,) + rest, o

    def _tuples(self, kids, j, x, lo, theta, i, cand, top, mins):
        if x == len(kids):
            yield (), None
            return
        c = kids[x]
        later = max((mins[y] for y in range(x + 1, len(kids)) if y != j), default=None)
        if x < j:
            need = [v for v in (lo, later) if v is not None]
            ok = frozenset(o for o in self.out[c] if top >= max(need + [o[i]]))
            for t, o in self.spe(c, ok):
                lo2 = o[i] if lo is None else max(lo, o[i])
                for rest, res in self._tuples(kids, j, x + 1, lo2, theta, i, cand, top, mins):
                    yield t + rest, res
        elif x == j:
            need = [v for v in (lo, later) if v is not None]
            floor = max(need) if need else None
            ok = frozenset(o for o in cand if floor is None or o[i] >= floor)
            for t, o in self.spe(c, ok):
                for rest, _ in self._tuples(kids, j, x + 1, lo, o[i], i, cand, top, mins):
                    yield t + rest, o
        else:
            ok = frozenset(o for o in self.out[c] if o[i] <= theta)
            for t, _ in self.spe(c, ok):
                for rest, res in self._tuples(kids, j, x + 1, lo, theta, i, cand, top, mins):
                    yield t + rest, res


def iter_spe_slots(tree: GameTree) -> Iterator[tuple[int, ...]]:
    for slots, _ in _Enumerator(tree.index).spe(0, None):
        yield slots


def iter_spe(tree: GameTree) -> Iterator[Strategy]:
    """All subgame perfect equilibria, lazily, in canonical order."""
    for slots in iter_spe_slots(tree):
        yield strategy_from_slots(tree, slots)


def spe_enumerate(tree: GameTree, cap: int | None = None) -> SpeSet:
    """Exact count plus the first ``cap`` equilibria (all of them if ``cap`` is None)."""
    sample = list(itertools.islice(iter_spe(tree), cap))
    return SpeSet(count=spe_count(tree), sample=sample)
