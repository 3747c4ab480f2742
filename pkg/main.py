from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from typing import List, Optional

from axioms import (
    CheckBudget,
    CheckBudgetExceeded,
    ImplicationChainError,
    check_axiom,
    check_ejr,
    check_jr,
    implication_audit,
)
from bench import BenchSettings, run_table1, write_csv
from core import Committee, ElectionInstance, MembershipError, build_instance
from generators import GenParams, GenParamsError, generate
from output_format import (
    audit_record,
    bench_record,
    render,
    score_record,
    solve_record,
    verdict_record,
)
from pav import DEFAULT_ENUMERATION_BUDGET, EnumerationBudgetExceeded, pav_score
from profile_io import ProfileParseError, read_profile, serialize_profile, write_profile
from solvers import (
    MAX_SEED,
    RULES,
    SWAP_RULES,
    InitPolicy,
    greedy_av,
    max_swap_pav,
    seq_pav,
    solve,
)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2
EXIT_VIOLATED = 3


class UsageError(Exception):
    """Bad command-line input; maps to exit code 2."""


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if not raw:
        return default
    try:
        value = int(raw)
    except ValueError:
        value = 0
    if value < 1:
        logging.error("%s must be a positive integer, got %r; using default=%s", name, raw, default)
        return default
    return value


def _check_budget() -> CheckBudget:
    return CheckBudget(
        max_candidate_sets=_env_int("AXIOM_MAX_CANDIDATE_SETS", CheckBudget().max_candidate_sets),
        max_voter_subsets=_env_int("AXIOM_MAX_VOTER_SUBSETS", CheckBudget().max_voter_subsets),
    )


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}")
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"seed must lie in 0..{MAX_SEED}, got {value}")
    return value


def _probability(text: str) -> Fraction:
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"probability must be a number or fraction, got {text!r}")
    if not 0 <= value <= 1:
        raise argparse.ArgumentTypeError(f"probability must lie in [0, 1], got {text}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _int_list(text: str, what: str) -> List[int]:
    items = []
    for token in text.split(","):
        token = token.strip()
        if not (token.isascii() and token.isdigit()):
            raise UsageError(f"{what} must be comma-separated non-negative integers, got {text!r}")
        items.append(int(token))
    return items


def _parse_committee(text: str, instance: ElectionInstance) -> Committee:
    members = _int_list(text, "committee")
    if any(a >= b for a, b in zip(members, members[1:])):
        raise UsageError(f"committee must be strictly ascending without duplicates, got {text!r}")
    if len(members) != instance.k:
        raise UsageError(f"committee has {len(members)} members but k={instance.k}")
    if members[-1] >= instance.m:
        raise UsageError(f"committee member {members[-1]} is not below m={instance.m}")
    return Committee(tuple(members))


def _init_policy(args: argparse.Namespace, instance: ElectionInstance) -> InitPolicy:
    choice = args.init
    if choice is None or choice == "lex":
        return InitPolicy.lexicographic()
    if choice == "random":
        if args.seed is None:
            raise UsageError("--init random needs --seed")
        return InitPolicy.seeded(args.seed)
    if choice in ("greedyav", "seqpav"):
        return InitPolicy.from_rule(choice)
    if choice.startswith("explicit:"):
        return InitPolicy.explicit(_parse_committee(choice[len("explicit:"):], instance))
    raise UsageError(f"--init must be lex, random, explicit:LIST, greedyav or seqpav; got {choice!r}")


def _emit(text: str) -> None:
    sys.stdout.write(text)
    sys.stdout.flush()


def _describe(exc: BaseException) -> str:
    return str(exc) or type(exc).__name__


def _cmd_solve(args: argparse.Namespace) -> int:
    instance = read_profile(args.input)
    init = None
    if args.rule in SWAP_RULES:
        init = _init_policy(args, instance)
    elif args.init is not None:
        logging.warning("--init is ignored by rule=%s", args.rule)
    result = solve(
        args.rule,
        instance,
        init=init,
        enumeration_budget=_env_int("PAV_ENUMERATION_BUDGET", DEFAULT_ENUMERATION_BUDGET),
        debug=os.getenv("PAV_DEBUG_RECOMPUTE") == "1",
    )
    _emit(render(solve_record(result, trace=args.trace), as_json=args.json))
    return EXIT_OK


def _cmd_check(args: argparse.Namespace) -> int:
    instance = read_profile(args.input)
    committee = _parse_committee(args.committee, instance)
    budget = _check_budget()
    if args.axiom == "all":
        report = implication_audit(instance, committee, budget)
        _emit(render(audit_record(report), as_json=args.json))
        satisfied = all(verdict.satisfied for verdict in report.verdicts)
    else:
        verdict = check_axiom(args.axiom, instance, committee, budget)
        _emit(render(verdict_record(verdict), as_json=args.json))
        satisfied = verdict.satisfied
    return EXIT_OK if satisfied else EXIT_VIOLATED


def _cmd_score(args: argparse.Namespace) -> int:
    instance = read_profile(args.input)
    committee = _parse_committee(args.committee, instance)
    _emit(render(score_record(pav_score(instance, committee)), as_json=args.json))
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace) -> int:
    try:
        params = GenParams(
            model=args.model,
            n=args.n,
            m=args.m,
            k=args.k,
            seed=args.seed,
            p=float(getattr(args, "p", Fraction(1, 2))),
            party_sizes=tuple(_int_list(args.party_sizes, "--party-sizes")) if args.model == "party" else (),
            weights=(
                tuple(float(w) for w in _int_list(args.weights, "--weights"))
                if getattr(args, "weights", None)
                else None
            ),
        )
    except GenParamsError as exc:
        raise UsageError(str(exc)) from exc

    instance = generate(params)
    if args.out == "-":
        _emit(serialize_profile(instance))
    else:
        write_profile(args.out, instance)
    return EXIT_OK


def _cmd_bench(args: argparse.Namespace) -> int:
    if not 1 <= args.k <= args.m:
        raise UsageError(f"need 1 <= k <= m, got k={args.k} m={args.m}")
    settings = BenchSettings(
        n=args.n,
        m=args.m,
        k=args.k,
        trials=args.trials,
        seed=args.seed,
        p=float(args.p),
        with_pav=args.with_pav,
        check_budget=_check_budget(),
        enumeration_budget=_env_int("PAV_ENUMERATION_BUDGET", DEFAULT_ENUMERATION_BUDGET),
    )
    workers = args.workers or _env_int("BENCH_WORKERS", 1)
    report = run_table1(settings, workers=workers)
    if args.csv:
        write_csv(report, args.csv)
    _emit(render(bench_record(report), as_json=args.json))

    unmet = report.unmet_guarantees()
    if unmet:
        logging.error("Guaranteed rows below 100%%: %s", " ".join(unmet))
        return EXIT_RUNTIME
    return EXIT_OK


def _run_self_tests() -> int:
    """Replay the small worked instances end to end."""
    e1 = build_instance(4, 4, 2, [[0, 1], [0, 1], [2], [3]])
    e2 = build_instance(2, 4, 2, [[0, 1], [0, 1]])

    assert pav_score(e1, Committee((0, 1))) == 3
    assert pav_score(e2, Committee((0, 1))) == 3
    assert pav_score(e1, Committee((2, 3))) == 2

    result = max_swap_pav(e1, InitPolicy.explicit(Committee((2, 3))))
    assert result.committee == Committee((0, 3))
    assert [(s.out_candidate, s.in_candidate, s.diff) for s in result.swaps] == [(2, 0, 1)]

    result = max_swap_pav(e2, InitPolicy.explicit(Committee((2, 3))))
    assert result.committee == Committee((0, 1))
    assert [s.diff for s in result.swaps] == [2, 1]

    assert greedy_av(e1) == Committee((0, 2))
    assert seq_pav(e1) == Committee((0, 1))

    verdict = check_jr(e1, Committee((2, 3)))
    assert not verdict.satisfied and verdict.witness.voters == (0, 1)
    verdict = check_ejr(e2, Committee((0, 2)))
    assert verdict.witness is not None
    assert (verdict.witness.ell, verdict.witness.candidates, verdict.witness.voters) == (2, (0, 1), (0, 1))

    print("Self-tests passed for worked instances")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="main.py",
        description="Exact PAV scoring, MaxSwapPAV and JR/PJR/EJR checking for approval elections.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve_cmd = commands.add_parser("solve", help="compute a committee")
    solve_cmd.add_argument("--rule", required=True, choices=sorted(RULES))
    solve_cmd.add_argument("--input", required=True)
    solve_cmd.add_argument("--init", help="lex | random | explicit:LIST | greedyav | seqpav")
    solve_cmd.add_argument("--seed", type=_seed)
    solve_cmd.add_argument("--trace", action="store_true")
    solve_cmd.add_argument("--json", action="store_true")
    solve_cmd.set_defaults(handler=_cmd_solve)

    check_cmd = commands.add_parser("check", help="verify JR, PJR or EJR")
    check_cmd.add_argument("--axiom", required=True, choices=("jr", "pjr", "ejr", "all"))
    check_cmd.add_argument("--input", required=True)
    check_cmd.add_argument("--committee", required=True)
    check_cmd.add_argument("--json", action="store_true")
    check_cmd.set_defaults(handler=_cmd_check)

    score_cmd = commands.add_parser("score", help="PAV score of a committee")
    score_cmd.add_argument("--input", required=True)
    score_cmd.add_argument("--committee", required=True)
    score_cmd.add_argument("--json", action="store_true")
    score_cmd.set_defaults(handler=_cmd_score)

    gen_cmd = commands.add_parser("gen", help="generate a seeded profile")
    models = gen_cmd.add_subparsers(dest="model", required=True)
    for model in ("impartial", "party"):
        model_cmd = models.add_parser(model)
        model_cmd.add_argument("--n", required=True, type=_positive)
        model_cmd.add_argument("--m", required=True, type=_positive)
        model_cmd.add_argument("--k", required=True, type=_positive)
        model_cmd.add_argument("--seed", required=True, type=_seed)
        model_cmd.add_argument("--out", required=True, help="output file, or - for stdout")
        if model == "impartial":
            model_cmd.add_argument("--p", type=_probability, default=Fraction(1, 2))
        else:
            model_cmd.add_argument("--party-sizes", required=True, help="comma-separated group sizes")
            model_cmd.add_argument("--weights", help="comma-separated integer group weights")
        model_cmd.set_defaults(handler=_cmd_gen)

    bench_cmd = commands.add_parser("bench", help="rule versus axiom pass rates")
    tables = bench_cmd.add_subparsers(dest="table", required=True)
    table1 = tables.add_parser("table1")
    table1.add_argument("--n", required=True, type=_positive)
    table1.add_argument("--m", required=True, type=_positive)
    table1.add_argument("--k", required=True, type=_positive)
    table1.add_argument("--trials", required=True, type=_positive)
    table1.add_argument("--seed", required=True, type=_seed)
    table1.add_argument("--p", type=_probability, default=Fraction(1, 2))
    table1.add_argument("--with-pav", action="store_true")
    table1.add_argument("--csv")
    table1.add_argument("--workers", type=_positive)
    table1.add_argument("--json", action="store_true")
    table1.set_defaults(handler=_cmd_bench)

    selftest_cmd = commands.add_parser("selftest", help="replay worked instances")
    selftest_cmd.set_defaults(handler=lambda args: _run_self_tests())
    return parser


def cli_main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else EXIT_OK

    try:
        return args.handler(args)
    except (UsageError, MembershipError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (
        ProfileParseError,
        OSError,
        EnumerationBudgetExceeded,
        CheckBudgetExceeded,
        ImplicationChainError,
    ) as exc:
        print(f"error: {_describe(exc)}", file=sys.stderr)
        return EXIT_RUNTIME
    except Exception as exc:  # noqa: BLE001
        logging.exception("Unexpected failure command=%s", args.command, exc_info=exc)
        print(f"error: {_describe(exc)}", file=sys.stderr)
        return EXIT_RUNTIME


def main() -> None:
    raw_level = os.getenv("LOG_LEVEL", "WARNING").upper()
    level = logging.getLevelName(raw_level)
    logging.basicConfig(
        level=level if isinstance(level, int) else logging.WARNING,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )
    if not isinstance(level, int):
        logging.error("LOG_LEVEL=%r is not a logging level; using WARNING", raw_level)
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
