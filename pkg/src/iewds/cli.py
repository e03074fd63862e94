"""Command line front end: generate, solve, check and cross-check games.

All output is deterministic for a fixed seed: reports are JSON with
insertion-ordered keys, rationals rendered as exact strings and no
wall-clock anywhere.  Exit codes: 0 success, 1 oracle divergence,
2 input/parse problem, 3 precondition failure, 4 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from . import classify as cls
from .elimination import (
    IntermediateEmptyError,
    NotDominatedError,
    iterate,
    trace_to_json,
    validate_sequence,
)
from .equilibrium import backward_induction, is_spe, spe_enumerate, spe_invariance
from .generators import FamilySpec, build, parse_gen_spec, random_game
from .solver import NotInvariantError, PreconditionError, solve_constructive
from .strategic import (
    DEFAULT_JOINT_CAP,
    CapExceededError,
    EmptyViewError,
    export_csv,
    full_view,
    is_trivial,
    to_strategic,
)
from .tree import (
    GameFormatError,
    GameTree,
    game_hash,
    parse_game,
    serialize_game,
    subgame,
)

EXIT_OK = 0
EXIT_DIVERGENCE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_CAP = 4

_CHECKS = ("tdi", "sc", "zero-sum", "generic", "wrt", "spe-invariant")


def _load_game(args) -> GameTree:
    if args.gen:
        return build(parse_gen_spec(args.gen))
    with open(args.file, encoding="utf-8") as handle:
        return parse_game(handle.read())


def _emit(payload: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2))
    else:
        for key, value in payload.items():
            print(f"{key}: {json.dumps(value)}")


def _profile_strings(base, profile) -> list[str]:
    return [base.render(p + 1, idx) for p, idx in enumerate(profile)]


def cmd_gen(args) -> int:
    game = build(parse_gen_spec(args.spec))
    sys.stdout.write(serialize_game(game))
    return EXIT_OK


def cmd_solve(args) -> int:
    game = _load_game(args)
    base = to_strategic(game, args.cap_joint)
    view = full_view(base)
    payload: dict = {"game_hash": game_hash(game), "mode": args.mode}
    if args.mode == "maximal":
        trace = iterate(view, None)
        final = trace.final
        trivial = not final.is_empty() and is_trivial(final)
        payload["rounds"] = trace.rounds
        payload["trivial"] = trivial
        payload["outcome"] = (
            [str(q) for q in final.payoff(next(final.joint_profiles()))]
            if trivial
            else None
        )
        payload["trace"] = trace_to_json(trace)
        final_view = final
    elif args.mode == "constructive":
        report = solve_constructive(game, cap=args.cap_joint)
        payload["report"] = report.to_json()
        final_view = report.final
    else:
        with open(args.seq, encoding="utf-8") as handle:
            named = json.load(handle)
        by_string = [
            {base.render(p + 1, k): k for k in range(len(base.strategies[p]))}
            for p in range(game.players)
        ]
        rho = []
        for step in named:
            if len(step) != game.players:
                raise GameFormatError(
                    f"sequence step has {len(step)} player sets, expected {game.players}"
                )
            sets = []
            for p, names in enumerate(step):
                try:
                    sets.append(tuple(by_string[p][s] for s in names))
                except KeyError as exc:
                    raise GameFormatError(f"unknown strategy string {exc.args[0]!r}")
            rho.append(tuple(sets))
        trace = validate_sequence(view, rho)
        payload["trace"] = trace_to_json(trace)
        final_view = trace.final
    if args.format == "csv":
        sys.stdout.write(export_csv(final_view))
    else:
        _emit(payload, args.format)
    return EXIT_OK


def cmd_check(args) -> int:
    game = _load_game(args)
    base = to_strategic(game, args.cap_joint)
    view = full_view(base)
    results: dict = {}
    for prop in args.properties:
        if prop == "tdi":
            ok, w = cls.is_tdi(view)
            witness = None
            if w:
                player, a, b, opp, pa, pb = w
                others = [p for p in range(1, game.players + 1) if p != player]
                witness = {
                    "player": player,
                    "strategy_a": base.render(player, a),
                    "strategy_b": base.render(player, b),
                    "opponents": [
                        base.render(p, idx) for p, idx in zip(others, opp)
                    ],
                    "outcome_a": [str(q) for q in pa],
                    "outcome_b": [str(q) for q in pb],
                }
        elif prop == "sc":
            ok, w = cls.is_strictly_competitive(view)
            witness = None
            if w:
                sa, sb, oa, ob = w
                witness = {
                    "profile_a": _profile_strings(base, sa),
                    "profile_b": _profile_strings(base, sb),
                    "outcome_a": [str(q) for q in oa],
                    "outcome_b": [str(q) for q in ob],
                }
        elif prop == "zero-sum":
            ok, w = cls.is_zero_sum(game)
            witness = {"leaf": w} if w else None
        elif prop == "generic":
            ok, w = cls.is_generic(game)
            witness = {"player": w[0], "leaf_a": w[1], "leaf_b": w[2]} if w else None
        elif prop == "wrt":
            ok, w = cls.is_without_relevant_ties(game)
            witness = {"node": w[0], "leaf_a": w[1], "leaf_b": w[2]} if w else None
        elif prop == "spe-invariant":
            summary = spe_invariance(game)
            ok = summary.invariant
            witness = (
                None if ok else {"non_invariant_nodes": summary.non_invariant_nodes()}
            )
        else:
            raise GameFormatError(f"unknown property {prop!r}")
        results[prop] = {"holds": ok, "witness": witness}
    _emit({"game_hash": game_hash(game), "checks": results}, args.format)
    return EXIT_OK


def _oracle_checks(game: GameTree, cap: int, oracle_cap: int) -> dict:
    base = to_strategic(game, cap)
    joint = base.joint_count()
    checks: dict = {"joint_strategies": joint}
    divergences = 0

    summary = spe_invariance(game)
    if joint <= oracle_cap:
        brute_invariant = True
        for w in game.preorder():
            sub = subgame(game, w).as_game()
            sub_spe = spe_enumerate(sub, cap)
            sub_base = to_strategic(sub, cap)
            payoffs = {sub_base.payoff(s) for s in sub_spe}
            if not sub_spe or len(payoffs) != 1:
                brute_invariant = False
                break
        agree = brute_invariant == summary.invariant
        checks["invariance_matches_oracle"] = agree
        divergences += 0 if agree else 1
    else:
        checks["invariance_matches_oracle"] = None

    bi = backward_induction(game)
    bi_ok = is_spe(game, bi, cap)
    checks["backward_induction_is_spe"] = bi_ok
    divergences += 0 if bi_ok else 1

    if summary.invariant:
        report = solve_constructive(game, cap=cap, oracle_cap=oracle_cap)
        trivial_ok = not report.final.is_empty() and is_trivial(report.final)
        checks["constructive_trivial"] = trivial_ok
        divergences += 0 if trivial_ok else 1
        checks["constructive_contains_spe"] = report.spe_containment
        if report.spe_containment is False:
            divergences += 1
    else:
        checks["constructive_trivial"] = None
        checks["constructive_contains_spe"] = None

    if game.players == 2:
        sc, _ = cls.is_strictly_competitive(full_view(base))
        if sc:
            view = full_view(base)
            m = len({view.payoff(p) for p in view.joint_profiles()})
            bounded = iterate(view, max(m - 1, 0)).final
            bound_ok = not bounded.is_empty() and is_trivial(bounded)
            checks["sc_round_bound"] = bound_ok
            divergences += 0 if bound_ok else 1
        else:
            checks["sc_round_bound"] = None
    else:
        checks["sc_round_bound"] = None

    checks["divergences"] = divergences
    return checks


def _oracle_for_spec(payload: tuple) -> dict:
    name, kwargs, cap, oracle_cap = payload
    spec = FamilySpec(name, **kwargs)
    game = random_game(spec)
    result = {"seed": spec.seed, "game_hash": game_hash(game)}
    result.update(_oracle_checks(game, cap, oracle_cap))
    return result


def cmd_oracle(args) -> int:
    if args.family:
        jobs = []
        for k in range(args.count):
            kwargs = dict(
                payoff_mode=args.family,
                depth=args.depth,
                branching=args.branching,
                seed=args.seed + k,
                max_joint=args.max_joint,
            )
            jobs.append(("random", kwargs, args.cap_joint, args.oracle_cap))
        if args.jobs > 1:
            with ProcessPoolExecutor(max_workers=args.jobs) as pool:
                results = list(pool.map(_oracle_for_spec, jobs))
        else:
            results = [_oracle_for_spec(j) for j in jobs]
        total = sum(r["divergences"] for r in results)
        payload = {
            "family": args.family,
            "count": args.count,
            "results": results,
            "divergences": total,
        }
    else:
        game = _load_game(args)
        checks = _oracle_checks(game, args.cap_joint, args.oracle_cap)
        total = checks["divergences"]
        payload = {"game_hash": game_hash(game), "checks": checks, "divergences": total}
    _emit(payload, args.format)
    return EXIT_OK if total == 0 else EXIT_DIVERGENCE


def _add_input_flags(parser, require=True):
    group = parser.add_mutually_exclusive_group(required=require)
    group.add_argument("--gen", help="generator spec, e.g. centipede:2 or fig1")
    group.add_argument("--file", help="path to an EGT game file")


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iewds",
        description="Iterated elimination of weakly dominated strategies on "
        "finite perfect-information games.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", help="emit a generated game as EGT text")
    p_gen.add_argument("spec", help="generator spec, e.g. centipede:2")
    p_gen.set_defaults(func=cmd_gen)

    p_solve = sub.add_parser("solve", help="run an elimination mode on a game")
    _add_input_flags(p_solve)
    p_solve.add_argument(
        "--mode",
        choices=("maximal", "constructive", "sequence"),
        default="maximal",
    )
    p_solve.add_argument("--seq", help="JSON file with per-player strategy-string sets")
    p_solve.add_argument("--cap-joint", type=int, default=DEFAULT_JOINT_CAP)
    p_solve.add_argument("--format", choices=("json", "text", "csv"), default="json")
    p_solve.add_argument("--seed", type=int, default=0)
    p_solve.set_defaults(func=cmd_solve)

    p_check = sub.add_parser("check", help="evaluate class predicates")
    _add_input_flags(p_check)
    p_check.add_argument("properties", nargs="+", choices=_CHECKS)
    p_check.add_argument("--cap-joint", type=int, default=DEFAULT_JOINT_CAP)
    p_check.add_argument("--format", choices=("json", "text"), default="json")
    p_check.add_argument("--seed", type=int, default=0)
    p_check.set_defaults(func=cmd_check)

    p_oracle = sub.add_parser("oracle", help="differential checks against brute force")
    _add_input_flags(p_oracle, require=False)
    p_oracle.add_argument("--family", choices=("zero_sum", "generic", "tdi_pool", "arbitrary"))
    p_oracle.add_argument("--count", type=int, default=20)
    p_oracle.add_argument("--depth", type=int, default=3)
    p_oracle.add_argument("--branching", type=int, default=2)
    p_oracle.add_argument("--max-joint", type=int, default=256)
    p_oracle.add_argument("--seed", type=int, default=0)
    p_oracle.add_argument("--jobs", type=int, default=1)
    p_oracle.add_argument("--cap-joint", type=int, default=DEFAULT_JOINT_CAP)
    p_oracle.add_argument("--oracle-cap", type=int, default=4096)
    p_oracle.add_argument("--format", choices=("json", "text"), default="json")
    p_oracle.set_defaults(func=cmd_oracle)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = make_parser()
    args = parser.parse_args(argv)
    if args.command == "solve" and args.mode == "sequence" and not args.seq:
        parser.error("--mode sequence requires --seq")
    if args.command == "oracle" and not (args.family or args.gen or args.file):
        parser.error("oracle needs --gen, --file or --family")
    try:
        return args.func(args)
    except (GameFormatError, FileNotFoundError, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (
        NotInvariantError,
        PreconditionError,
        NotDominatedError,
        IntermediateEmptyError,
        EmptyViewError,
    ) as exc:
        print(f"precondition: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except CapExceededError as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    raise SystemExit(main())
