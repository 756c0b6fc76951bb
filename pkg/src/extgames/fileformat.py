"""Game files (JSON) and strategy files (one ``path = label`` line per node).

A game file looks like::

    {
      "players": 2,
      "root": {
        "player": 1,
        "children": [
          {
            "label": "L",
            "node": {
              "payoffs": [1, "-1/2"]
            }
          }
        ]
      }
    }

Payoffs are rational literals: JSON integers, decimal numbers without an
exponent, or strings holding an integer, a fraction ``p/q`` or a decimal.
The canonical form written by :func:`serialize_game` uses two-space
indentation, integers as JSON numbers and other rationals as ``"p/q"``
strings in lowest terms.
"""

from __future__ import annotations

import json
import re
from collections.abc import Mapping
from fractions import Fraction

from .errors import ParseError
from .tree import GameTree, Node, NodeId, Strategy, format_payoffs, node_path, parse_node_path, validate

_RATIONAL = re.compile(r"[+-]?(\d+(/\d+)?|\d+\.\d*|\.\d+)")


class _Decimal(str):
    """A JSON number with a fraction part, kept verbatim for exact conversion."""


def _no_constants(name: str):
    raise ValueError(f"non-finite number {name} is not allowed")


def _pairs(pairs):
    seen = {}
    for key, value in pairs:
        if key in seen:
            raise ValueError(f"duplicate key {key!r}")
        seen[key] = value
    return seen


def _rational(value, where: str) -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational, got {json.dumps(value)}", location=where)
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL.fullmatch(text):
            raise ParseError(f"bad rational literal {value!r}", location=where)
        if "/" in text and int(text.split("/")[1]) == 0:
            raise ParseError(f"zero denominator in {value!r}", location=where)
        return Fraction(text)
    raise ParseError(f"expected a rational, got {type(value).__name__}", location=where)


def _node(obj, where: str) -> Node:
    if not isinstance(obj, dict):
        raise ParseError("node must be an object", location=where)
    keys = set(obj)
    if keys == {"payoffs"}:
        payoffs = obj["payoffs"]
        if not isinstance(payoffs, list):
            raise ParseError("payoffs must be an array", location=where + ".payoffs")
        return Node(payoffs=tuple(_rational(v, f"{where}.payoffs[{n}]") for n, v in enumerate(payoffs)))
    if keys == {"player", "children"}:
        player = obj["player"]
        if isinstance(player, bool) or not isinstance(player, int):
            raise ParseError("player must be an integer", location=where + ".player")
        children = obj["children"]
        if not isinstance(children, list):
            raise ParseError("children must be an array", location=where + ".children")
        out = []
        for n, entry in enumerate(children):
            at = f"{where}.children[{n}]"
            if not isinstance(entry, dict) or set(entry) != {"label", "node"}:
                raise ParseError('child must be an object with exactly "label" and "node"', location=at)
            if not isinstance(entry["label"], str):
                raise ParseError("label must be a string", location=at + ".label")
            out.append((entry["label"], _node(entry["node"], at + ".node")))
        return Node(player=player, children=tuple(out))
    raise ParseError('node must have either "payoffs" or both "player" and "children", '
                     f"got keys {sorted(keys)}", location=where)


def parse_game(text: str) -> GameTree:
    """Parse and validate a game file.

    Raises :class:`ParseError` for malformed text (with line and column for
    JSON syntax errors) and a :class:`ValidationError` subclass for a
    well-formed file describing an invalid tree.
    """
    try:
        doc = json.loads(text, object_pairs_hook=_pairs, parse_float=_Decimal,
                         parse_constant=_no_constants)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    except ValueError as exc:
        raise ParseError(str(exc)) from None
    if not isinstance(doc, dict) or set(doc) != {"players", "root"}:
        raise ParseError('top level must be an object with exactly "players" and "root"', location="$")
    players = doc["players"]
    if isinstance(players, bool) or not isinstance(players, int):
        raise ParseError("players must be an integer", location="$.players")
    tree = GameTree(players, _node(doc["root"], "$.root"))
    validate(tree)
    return tree


def _literal(x: Fraction):
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _node_doc(node: Node) -> dict:
    if node.is_leaf:
        return {"payoffs": [_literal(x) for x in node.payoffs]}
    return {
        "player": node.player,
        "children": [{"label": lab, "node": _node_doc(sub)} for lab, sub in node.children],
    }


def serialize_game(tree: GameTree) -> str:
    return json.dumps({"players": tree.players, "root": _node_doc(tree.root)}, indent=2) + "\n"


def serialize_strategy(tree: GameTree, s: Mapping[NodeId, str]) -> str:
    """One line per decision node in canonical preorder; the root's line is ``= label``."""
    idx = tree.index
    lines = []
    for k in idx.internal:
        path = idx.path[k]
        lines.append(f"{node_path(path)} = {s[path]}" if path else f"= {s[path]}")
    return "".join(line + "\n" for line in lines)


def parse_strategy(text: str) -> Strategy:
    """Read ``path = label`` lines; blank lines and ``#`` comments are skipped.

    Only the syntax is checked here; whether the strategy fits a tree is
    checked where it is used.
    """
    choices: dict[NodeId, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ParseError("expected 'node-path = label'", lineno, 1)
        left, _, right = line.partition("=")
        label = right.strip()
        if not label:
            raise ParseError("missing label after '='", lineno, len(raw))
        path = parse_node_path(left)
        if any(not part for part in path):
            raise ParseError(f"empty label in node path {left.strip()!r}", lineno, 1)
        if path in choices:
            raise ParseError(f"second choice for node {left.strip()!r}", lineno, 1)
        choices[path] = label
    return Strategy(choices)


def format_outcome_set(outcomes) -> str:
    return "{" + ",".join(format_payoffs(o) for o in outcomes) + "}"
