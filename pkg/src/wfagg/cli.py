"""Command-line interface.

Exit codes: 0 success, 1 input error (syntax, safety, unknown atom,
parameters), 2 aggregate outside the supported class, 3 oracle size guard
exceeded, 4 oracle disagreement or benchmark verdict mismatch.
"""
from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from . import answer_sets, attacks, oracle
from .analysis import UnsafeRuleError
from .answer_sets import SizeGuardError
from .evaluation import Interpretation, NonMonotoneAggregateError
from .grounder import STRATEGIES, GroundingError, ground
from .mae import CompilationError, compile_program
from .parser import ParseError, parse_atoms, parse_program
from .solve import render_atoms, render_model, solve_program
from .syntax import Program

EXIT_INPUT = 1
EXIT_UNSUPPORTED = 2
EXIT_ORACLE_SIZE = 3
EXIT_MISMATCH = 4


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_INPUT):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise CliError(f"cannot read {path}: {e.strerror}")


def _load(path: str) -> Program:
    return parse_program(_read(path))


def cmd_solve(args) -> int:
    program = _load(args.program)
    g = program if program.is_ground() else ground(program, args.grounding)
    result = solve_program(g)
    if args.oracle:
        expected = oracle.brute_wfm(g, result.base, cap=args.oracle_cap)
        if expected != result.model:
            print(f"oracle disagreement:\n  engine: {result.model}\n  oracle: {expected}", file=sys.stderr)
            return EXIT_MISMATCH
    sys.stdout.write(render_model(result.true, result.undefined))
    return 0


def cmd_ground(args) -> int:
    sys.stdout.write(str(ground(_load(args.program), args.grounding)))
    return 0


def cmd_check_as(args) -> int:
    program = _load(args.program)
    g = program if program.is_ground() else ground(program, args.grounding)
    listed = parse_atoms(_read(args.interpretation))
    signatures = program.predicates() | g.predicates()
    universe = program.universe() | g.universe()
    for a in listed:
        if not a.is_ground() or a.signature not in signatures or not set(a.args) <= universe:
            raise CliError(f"atom {a} is not in the Herbrand base of the program")
    base = g.atoms() | frozenset(listed)
    m = Interpretation.total(listed, base)
    report = answer_sets.answer_set_report(g, m, base)
    yes = {True: "yes", False: "no"}
    print(f"answer set: {yes[report.answer_set]}")
    print(f"model: {yes[report.model]}")
    print(f"unfounded-free: {yes[report.unfounded_free]}")
    print(f"greatest unfounded set equals false atoms: {yes[report.gus_matches]}")
    return 0


def cmd_compile_mae(args) -> int:
    sys.stdout.write(str(compile_program(_load(args.program))))
    return 0


def cmd_gen_attacks(args) -> int:
    if args.fixture:
        inst = attacks.example14()
    else:
        missing = [f for f in ("players", "attacks", "max") if getattr(args, f) is None]
        if missing:
            raise CliError("gen-attacks needs --fixture or " + ", ".join("--" + f for f in missing))
        try:
            inst = attacks.random_instance(args.players, args.attacks, args.max, args.seed)
        except ValueError as e:
            raise CliError(str(e))
    try:
        sys.stdout.write(attacks.program_text(inst, args.encoding))
    except ValueError as e:
        raise CliError(str(e))
    return 0


def cmd_bench(args) -> int:
    cfg = attacks.BenchConfig(
        players=args.players, attacks=args.attacks, maxes=args.max, encodings=args.encodings,
        instances=args.instances, seed=args.seed, timeout=args.timeout,
        memory_cap=args.memory_cap * 1024 * 1024 if args.memory_cap else None,
    )
    for p in cfg.players:
        for n in cfg.attacks:
            if not 1 <= n < p:
                raise CliError(f"need 1 <= n < p, got n={n}, p={p}")
    result = attacks.bench(cfg)
    text = result.csv()
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for cell in result.disagreements:
        print("verdict mismatch at p=%d n=%d m=%d seed=%d" % cell, file=sys.stderr)
    return EXIT_MISMATCH if result.disagreements else 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="wfagg", description="Well-founded models of logic programs with aggregates.")
    sub = ap.add_subparsers(dest="command", required=True)

    def grounding(p, default):
        p.add_argument("--grounding", choices=STRATEGIES, default=default,
                       help=f"instantiation strategy (default: {default})")

    p = sub.add_parser("solve", help="print the well-founded model")
    p.add_argument("program")
    p.add_argument("-wf", "--well-founded", action="store_true", help="accepted for compatibility; always on")
    p.add_argument("--oracle", action="store_true", help="cross-check against the exhaustive oracle")
    p.add_argument("--oracle-cap", type=int, default=oracle.MAX_ATOMS, help="oracle base size limit")
    grounding(p, "relevant")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("ground", help="print the instantiated program")
    p.add_argument("program")
    grounding(p, "naive")
    p.set_defaults(func=cmd_ground)

    p = sub.add_parser("check-as", help="check whether an interpretation is an answer set")
    p.add_argument("program")
    p.add_argument("interpretation", help="file listing the true atoms; all others are false")
    grounding(p, "relevant")
    p.set_defaults(func=cmd_check_as)

    p = sub.add_parser("compile-mae", help="rewrite #count/#sum/#times into plain rules")
    p.add_argument("program")
    p.set_defaults(func=cmd_compile_mae)

    p = sub.add_parser("gen-attacks", help="emit an Attacks instance with one encoding")
    p.add_argument("--players", "-p", type=int)
    p.add_argument("--attacks", "-n", type=int)
    p.add_argument("--max", "-m", type=int)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--encoding", choices=attacks.ENCODINGS, default="aggregate")
    p.add_argument("--fixture", choices=["example14"])
    p.set_defaults(func=cmd_gen_attacks)

    p = sub.add_parser("bench", help="time the Attacks encodings over a parameter grid (CSV)")
    p.add_argument("--players", "-p", type=int, nargs="*", default=[50])
    p.add_argument("--attacks", "-n", type=int, nargs="*", default=[2, 4])
    p.add_argument("--max", "-m", type=int, nargs="*", default=[1, 2])
    p.add_argument("--encodings", nargs="*", choices=attacks.ENCODINGS, default=list(attacks.ENCODINGS))
    p.add_argument("--instances", type=int, default=3, help="instances per cell (default: 3)")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--timeout", type=float, default=600.0, help="seconds per run (default: 600)")
    p.add_argument("--memory-cap", type=int, help="address-space limit per run, in MiB")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, UnsafeRuleError, GroundingError, SizeGuardError, CliError) as e:
        print(f"error: {e}", file=sys.stderr)
        return getattr(e, "code", EXIT_INPUT)
    except (NonMonotoneAggregateError, CompilationError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except oracle.OracleSizeError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ORACLE_SIZE


if __name__ == "__main__":
    sys.exit(main())
