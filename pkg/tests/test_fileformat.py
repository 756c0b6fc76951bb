import json
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extgames.errors import BadPayoffArity, DuplicateLabel, ParseError
from extgames.fileformat import format_outcome_set, parse_game, parse_strategy, serialize_game, serialize_strategy
from extgames.generators import gen_bargaining, gen_ultimatum
from extgames.spe import iter_spe
from extgames.tree import GameTree, Strategy, decision, leaf

from games import game_trees, games_with_strategy

CANONICAL = """\
{
  "players": 2,
  "root": {
    "player": 1,
    "children": [
      {
        "label": "L",
        "node": {
          "payoffs": [
            1,
            "-1/2"
          ]
        }
      },
      {
        "label": "R",
        "node": {
          "payoffs": [
            0,
            0
          ]
        }
      }
    ]
  }
}
"""


def one_leaf(*payoffs, players=None):
    players = len(payoffs) if players is None else players
    return json.dumps({"players": players, "root": {"payoffs": list(payoffs)}})


class TestGameFiles:
    def test_canonical_round_trip(self):
        assert serialize_game(parse_game(CANONICAL)) == CANONICAL

    def test_parsed_values(self):
        tree = parse_game(CANONICAL)
        assert tree.node("L").payoffs == (1, Fraction(-1, 2))
        assert tree.root.labels == ("L", "R")

    @given(game_trees(max_joint=None, values=st.fractions(-5, 5, max_denominator=7)))
    def test_round_trip(self, tree):
        text = serialize_game(tree)
        assert parse_game(text) == tree
        assert serialize_game(parse_game(text)) == text

    def test_arity_is_validated(self):
        with pytest.raises(BadPayoffArity):
            parse_game(one_leaf(1, 2, 3, players=2))

    def test_duplicate_labels_are_validated(self):
        tree = GameTree(1, decision(1, [("a", leaf(0)), ("b", leaf(1))]))
        text = serialize_game(tree).replace('"b"', '"a"')
        with pytest.raises(DuplicateLabel):
            parse_game(text)

    @pytest.mark.parametrize("literal", [0.5, "0.5", "1/2", "2/4", ".5", "+0.50"])
    def test_rational_literals(self, literal):
        assert parse_game(one_leaf(literal)).root.payoffs == (Fraction(1, 2),)

    def test_decimal_is_exact(self):
        assert parse_game('{"players": 1, "root": {"payoffs": [0.1]}}').root.payoffs == (Fraction(1, 10),)

    def test_fraction_is_written_in_lowest_terms(self):
        assert '"1/2"' in serialize_game(parse_game(one_leaf("3/6")))
        assert '"payoffs": [\n      2\n' in serialize_game(parse_game(one_leaf("4/2")))

    @pytest.mark.parametrize("literal", ["1e3", "abc", "1/0", "", "1/-2", True, None, [1]])
    def test_bad_literals(self, literal):
        with pytest.raises(ParseError):
            parse_game(one_leaf(literal))

    def test_exponent_numbers_are_rejected(self):
        with pytest.raises(ParseError):
            parse_game('{"players": 1, "root": {"payoffs": [1e2]}}')

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_game('{\n  "players": 2,\n  "root": {"payoffs": [1, 2]\n}')
        assert exc.value.line == 4
        assert exc.value.column is not None

    def test_duplicate_keys(self):
        with pytest.raises(ParseError):
            parse_game('{"players": 1, "players": 1, "root": {"payoffs": [0]}}')

    @pytest.mark.parametrize("doc", [
        [],
        {"players": 1},
        {"players": "1", "root": {"payoffs": [0]}},
        {"players": 1, "root": {"payoffs": 0}},
        {"players": 1, "root": {"player": 1}},
        {"players": 1, "root": {"player": 1, "children": [{"label": "a"}]}},
        {"players": 1, "root": {"player": 1, "children": [{"label": 3, "node": {"payoffs": [0]}}]}},
    ])
    def test_schema_errors(self, doc):
        with pytest.raises(ParseError) as exc:
            parse_game(json.dumps(doc))
        assert exc.value.location and exc.value.location.startswith("$")

    def test_schema_error_points_at_node(self):
        doc = {"players": 1, "root": {"player": 1, "children": [
            {"label": "a", "node": {"payoffs": [0]}},
            {"label": "b", "node": {"payoffs": ["x"]}},
        ]}}
        with pytest.raises(ParseError) as exc:
            parse_game(json.dumps(doc))
        assert exc.value.location == "$.root.children[1].node.payoffs[0]"


class TestStrategyFiles:
    def test_layout(self):
        tree = gen_ultimatum(1, 2)
        s = Strategy({"": "1", "0": "A", "1": "R"})
        assert serialize_strategy(tree, s) == "= 1\n0 = A\n1 = R\n"

    @given(games_with_strategy(game_trees(max_joint=None)))
    def test_round_trip(self, case):
        tree, s = case
        assert parse_strategy(serialize_strategy(tree, s)) == s

    def test_comments_and_blank_lines(self):
        text = "# proposer\n= 1\n\n  0 = A  \n1=R\n"
        assert parse_strategy(text) == Strategy({"": "1", "0": "A", "1": "R"})

    def test_nested_paths(self):
        s = next(iter_spe(gen_bargaining(3)))
        text = serialize_strategy(gen_bargaining(3), s)
        assert "3/B/2 = A\n" in text
        assert parse_strategy(text) == s

    @pytest.mark.parametrize("text,line", [
        ("= a\nnonsense\n", 2),
        ("= a\nx =\n", 2),
        ("= a\n= b\n", 2),
        ("a//b = c\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(ParseError) as exc:
            parse_strategy(text)
        assert exc.value.line == line


def test_outcome_set_text():
    outcomes = ((Fraction(1), Fraction(1)), (Fraction(2), Fraction(-1, 3)))
    assert format_outcome_set(outcomes) == "{(1,1),(2,-1/3)}"
