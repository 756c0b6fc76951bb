"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 usage or parse error, 3 the
oracle cap was exceeded.  A game path of ``-`` (the default) reads stdin.
"""

from __future__ import annotations

import argparse
import itertools
import sys
from pathlib import Path

from . import conditions as cond
from . import zerosum
from .equilibria import (
    ORACLE_CAP_ENV,
    brute_force_nash_slots,
    brute_force_spe_slots,
    default_cap,
    is_best_response,
    is_nash,
    is_spe_by_definition,
    one_deviation_check,
)
from .errors import GameError, OracleCapExceeded
from .fileformat import format_outcome_set, parse_game, parse_strategy, serialize_game, serialize_strategy
from .generators import RandomSpec, Shape, gen_bargaining, gen_g_alpha, gen_random, gen_ultimatum
from .spe import iter_spe, iter_spe_slots, spe_count, spe_outcomes
from .tree import format_rational, iter_slot_tuples, joint_strategy_count, node_path, strategy_from_slots

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _where(path) -> str:
    return node_path(path) if path else "<root>"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load_game(path: str):
    return parse_game(_read(path))


def cmd_solve(args, out) -> int:
    tree = _load_game(args.game)
    if args.count:
        print(spe_count(tree), file=out)
    elif args.enumerate is not None:
        total = spe_count(tree)
        shown = 0
        for shown, s in enumerate(itertools.islice(iter_spe(tree), args.enumerate), 1):
            text = serialize_strategy(tree, s)
            print(f"# SPE {shown} of {total}", file=out)
            out.write(text)
            print(file=out)
            if args.output_dir:
                target = Path(args.output_dir)
                target.mkdir(parents=True, exist_ok=True)
                (target / f"spe-{shown:04d}.txt").write_text(text)
        if shown < total:
            print(f"# {shown} of {total} shown", file=out)
    else:
        print(format_outcome_set(spe_outcomes(tree)), file=out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    tree = _load_game(args.game)
    s = parse_strategy(_read(args.strategy))
    cap = args.oracle_cap
    if args.mode == "one-deviation":
        witness = one_deviation_check(tree, s)
        if witness is None:
            print("one-deviation: ok", file=out)
            return EXIT_OK
        print("one-deviation: violated", file=out)
    elif args.mode == "spe":
        if is_spe_by_definition(tree, s, cap):
            print("spe: yes", file=out)
            return EXIT_OK
        print("spe: no", file=out)
        witness = one_deviation_check(tree, s)
    else:
        if is_nash(tree, s, cap):
            print("nash: yes", file=out)
            return EXIT_OK
        print("nash: no", file=out)
        for i in range(1, tree.players + 1):
            if not is_best_response(tree, s, i, cap):
                print(f"player {i} has a profitable deviation", file=out)
        return EXIT_FAIL
    w = witness
    print(f"witness: node {_where(w.node)}: player {w.mover} chooses {w.chosen_child} "
          f"(payoff {format_rational(w.payoff_at_choice)}), deviation {w.deviating_child} "
          f"gives {format_rational(w.payoff_at_deviation)}", file=out)
    return EXIT_FAIL


def cmd_classify(args, out) -> int:
    tree = _load_game(args.game)
    shape = zerosum.zero_sum_shape(tree)
    print(f"shape: {shape or 'none'}", file=out)
    if shape is None:
        return EXIT_FAIL
    classes = zerosum.classify_nodes(tree)
    sets = zerosum.strategy_class_sets(tree, sample_cap=0)
    form = zerosum.ne_set_zerosum(tree, sets)
    print(f"root: {classes[()]}", file=out)
    for i in (1, 2):
        print(f"win_{i}: {sets.win[i]}", file=out)
    for i in (1, 2):
        print(f"draw_{i}: {sets.draw[i]}", file=out)
    print(f"closed form: {form.describe()}", file=out)
    print(f"ne count: {form.count}", file=out)
    return EXIT_OK


def _witness_text(w) -> str:
    if w is None:
        return ""
    if w.first == w.second:
        parts = [f"leaf {_where(w.first)}"]
    else:
        parts = [f"leaves {_where(w.first)}, {_where(w.second)}"]
    if w.player is not None:
        parts.append(f"player {w.player}")
    if w.node is not None:
        parts.append(f"node {_where(w.node)}")
    return "  " + "; ".join(parts)


def cmd_conditions(args, out) -> int:
    tree = _load_game(args.game)
    for report in cond.all_reports(tree, args.tdi_budget):
        verdict = "holds" if report.holds else "fails"
        print(f"{report.condition.value:<22}{verdict}{_witness_text(report.witness)}", file=out)
    equivalent = cond.check_spe_payoff_equivalence(tree)
    print(f"{'SPE_PAYOFF_EQUIVALENT':<22}{'holds' if equivalent else 'fails'}", file=out)
    return EXIT_OK


def cmd_gen(args, out) -> int:
    if args.family == "ultimatum":
        tree = gen_ultimatum(args.grid, args.total, args.proposer)
    elif args.family == "bargaining":
        tree = gen_bargaining(args.k)
    elif args.family == "g-alpha":
        tree = gen_g_alpha(args.player, args.alpha, args.grid)
    else:
        tree = gen_random(RandomSpec(
            players=args.players, max_depth=args.depth, max_branching=args.branching,
            min_branching=args.min_branching, leaf_prob=args.leaf_prob,
            payoff_min=args.payoff_min, payoff_max=args.payoff_max,
            shape=Shape(args.shape) if args.shape else None, seed=args.seed,
        ))
    text = serialize_game(tree)
    if args.output == "-":
        out.write(text)
    else:
        Path(args.output).write_text(text)
    return EXIT_OK


def cmd_verify(args, out) -> int:
    tree = _load_game(args.game)
    cap = args.oracle_cap
    total = joint_strategy_count(tree)
    if total > cap:
        raise OracleCapExceeded(total, cap, "joint strategies")
    results = []

    spe_slots = brute_force_spe_slots(tree, cap)
    one_dev = {s for s in iter_slot_tuples(tree)
               if one_deviation_check(tree, strategy_from_slots(tree, s)) is None}
    results.append(("one-deviation vs definition", one_dev == spe_slots, f"{total} joint strategies"))

    enumerated = list(iter_spe_slots(tree))
    ok = (set(enumerated) == spe_slots and len(enumerated) == len(spe_slots) == spe_count(tree)
          and set(spe_outcomes(tree)) == {tree.index.outcome(s) for s in spe_slots})
    results.append(("solver vs oracle", ok, f"{len(spe_slots)} equilibria"))

    if zerosum.zero_sum_shape(tree):
        sets = zerosum.strategy_class_sets(tree, sample_cap=0)
        form = zerosum.ne_set_zerosum(tree, sets)
        nash = brute_force_nash_slots(tree, cap)
        closed = {s for s in iter_slot_tuples(tree)
                  if zerosum.in_ne_closed_form(tree, strategy_from_slots(tree, s), form)}
        results.append(("closed-form NE vs oracle", closed == nash and form.count == len(nash),
                        f"{form.describe()}, {len(nash)} equilibria"))
        counted = zerosum.brute_force_class_counts(tree, cap)
        results.append(("win/draw counts vs oracle",
                        counted.win == sets.win and counted.draw == sets.draw, ""))
        spe_zs = {s for s in iter_slot_tuples(tree)
                  if zerosum.spe_check_zerosum(tree, strategy_from_slots(tree, s))}
        results.append(("zero-sum SPE characterization", spe_zs == spe_slots, ""))

    for name, passed, detail in results:
        print(f"{name}: {'pass' if passed else 'FAIL'}" + (f" ({detail})" if detail else ""), file=out)
    return EXIT_OK if all(passed for _, passed, _ in results) else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="extgames", description="Solve and verify finite extensive games "
                                     "with perfect information.")
    sub = parser.add_subparsers(dest="command", required=True)

    def cap_option(p):
        p.add_argument("--oracle-cap", type=int, default=None,
                       help=f"brute-force budget (default 10^6, or ${ORACLE_CAP_ENV})")

    p = sub.add_parser("solve", help="subgame perfect equilibria")
    p.add_argument("game", nargs="?", default="-")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--outcomes", action="store_true", help="print the outcome set (default)")
    mode.add_argument("--count", action="store_true", help="print the exact number of equilibria")
    mode.add_argument("--enumerate", type=int, metavar="N", help="print up to N equilibria as strategy files")
    p.add_argument("--output-dir", help="with --enumerate, also write spe-NNNN.txt files here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("check", help="check a joint strategy")
    p.add_argument("game", nargs="?", default="-")
    p.add_argument("--strategy", required=True)
    p.add_argument("--mode", choices=["spe", "nash", "one-deviation"], default="one-deviation")
    cap_option(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="win/draw analysis of a two-player zero-sum game")
    p.add_argument("game", nargs="?", default="-")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("conditions", help="structural conditions with witnesses")
    p.add_argument("game", nargs="?", default="-")
    p.add_argument("--tdi-budget", type=int, default=None,
                   help="joint-strategy count up to which TDI is checked exhaustively")
    p.set_defaults(func=cmd_conditions)

    p = sub.add_parser("gen", help="write a generated game file")
    families = p.add_subparsers(dest="family", required=True)
    f = families.add_parser("ultimatum")
    f.add_argument("--grid", type=int, default=100)
    f.add_argument("--total", default="100")
    f.add_argument("--proposer", type=int, default=1)
    f = families.add_parser("bargaining")
    f.add_argument("--k", type=int, required=True)
    f = families.add_parser("g-alpha")
    f.add_argument("--player", type=int, default=1)
    f.add_argument("--alpha", type=int, required=True)
    f.add_argument("--grid", type=int, default=100)
    f = families.add_parser("random")
    f.add_argument("--players", type=int, default=2)
    f.add_argument("--depth", type=int, default=4)
    f.add_argument("--branching", type=int, default=3)
    f.add_argument("--min-branching", type=int, default=1)
    f.add_argument("--leaf-prob", type=float, default=0.3)
    f.add_argument("--payoff-min", type=int, default=0)
    f.add_argument("--payoff-max", type=int, default=9)
    f.add_argument("--shape", choices=[s.value for s in Shape])
    f.add_argument("--seed", type=int, default=0)
    for f in families.choices.values():
        f.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify-properties", help="cross-check solvers against brute force")
    p.add_argument("game", nargs="?", default="-")
    cap_option(p)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "oracle_cap", 0) is None:
        args.oracle_cap = default_cap()
    try:
        return args.func(args, out)
    except OracleCapExceeded as exc:
        print(f"OracleCapExceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except GameError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
