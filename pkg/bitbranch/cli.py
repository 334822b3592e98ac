"""Command-line entry point: transform, check-rules, reach, soundness and cfa."""

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

from loguru import logger

from bitbranch.config import settings
from bitbranch.domain.machine import MachineConfig
from bitbranch.domain.rules import Rule, RuleKind
from bitbranch.domain.syntax import Program
from bitbranch.domain.verdicts import InclusionStatus, SafetyOutcome
from bitbranch.errors import BitbranchError, UnknownRuleError
from bitbranch.lang.json_ast import program_to_json
from bitbranch.lang.parser import parse_program
from bitbranch.lang.printer import pretty_print
from bitbranch.rules.catalog import catalog, rule_by_id
from bitbranch.rules.checker import check_rule_correctness
from bitbranch.rules.mutants import MUTANTS, mutated_catalog
from bitbranch.semantics.explorer import reachable
from bitbranch.soundness.inclusion import check_inclusion, fuzz_inclusion
from bitbranch.soundness.safety import certify_safety
from bitbranch.transform.cfa_builder import build_cfa
from bitbranch.transform.dot import cfa_to_dot
from bitbranch.transform.normalize import branch_normalize
from bitbranch.transform.options import TransformOptions
from bitbranch.transform.translator import transform_program

logger.configure(handlers=[{"sink": sys.stderr, "level": settings.log_level}])

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2

# rewrite rules are cheap enough to sweep one width further
REWRITE_EXTRA_WIDTH = 8


def _read_program(path: str) -> Program:
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_program(text)


def _rule_ids(value: str) -> frozenset[str]:
    return frozenset(part.strip() for part in value.split(",") if part.strip())


def _non_negative(value: str) -> int:
    number = int(value)
    if number < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return number


def _positive(value: str) -> int:
    number = int(value)
    if number < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return number


def _rules_for(args: argparse.Namespace) -> list[Rule]:
    return mutated_catalog(args.mutant) if getattr(args, "mutant", None) else catalog()


def _options(args: argparse.Namespace) -> TransformOptions:
    mutant = getattr(args, "mutant", None)
    return TransformOptions(
        enabled_rules=args.rules,
        max_nesting=getattr(args, "max_nesting", None),
        rules=tuple(mutated_catalog(mutant)) if mutant else None,
    )


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_transform(args: argparse.Namespace) -> int:
    p = _read_program(args.path)
    transformed = transform_program(p, _options(args))
    if args.emit == "json":
        _emit(program_to_json(transformed))
    else:
        _emit(pretty_print(transformed, annotate=args.annotate))
    if args.cfa_dot:
        Path(args.cfa_dot).write_text(cfa_to_dot(build_cfa(branch_normalize(transformed))))
        logger.info(f"Wrote CFA to {args.cfa_dot}")
    return EXIT_OK


def cmd_check_rules(args: argparse.Namespace) -> int:
    rules = _rules_for(args)
    if args.rules is not None:
        for rule_id in sorted(args.rules):
            rule_by_id(rule_id, rules)
        rules = [rule for rule in rules if rule.id in args.rules]
    sweeps: list[tuple[int, list[Rule]]] = [(w, rules) for w in args.width or settings.rule_check_widths]
    if not args.width:
        sweeps.append((REWRITE_EXTRA_WIDTH, [r for r in rules if r.kind is RuleKind.REWRITE]))

    failures = 0
    for width, selected in sweeps:
        cfg = MachineConfig(width=width)
        for rule in selected:
            verdict = check_rule_correctness(rule, cfg)
            line = f"{verdict.rule_id}\t{width}\t{'PASS' if verdict.passed else 'FAIL'}"
            if not verdict.passed:
                failures += 1
                line += f"\t{verdict.counterexample}"
            _emit(line)
    logger.info(f"Checked {sum(len(s) for _, s in sweeps)} rule/width pairs, {failures} failures")
    return EXIT_CHECK_FAILED if failures else EXIT_OK


def cmd_reach(args: argparse.Namespace) -> int:
    result = reachable(_read_program(args.path), MachineConfig(width=args.width), args.bound)
    _emit(json.dumps(result.summary(), indent=2))
    return EXIT_OK


def cmd_soundness(args: argparse.Namespace) -> int:
    cfg = MachineConfig(width=args.width)
    opts = _options(args)
    if args.path is None:
        report = fuzz_inclusion(
            count=args.count, seed=args.seed, cfg=cfg, step_bound=args.bound, opts=opts
        )
        _emit(report.model_dump_json(indent=2))
        failed = report.counterexamples or report.monotonicity_violations
        return EXIT_CHECK_FAILED if failed else EXIT_OK

    p = _read_program(args.path)
    if args.certify:
        safety = certify_safety(p, opts, cfg=cfg, step_bound=args.bound)
        _emit(safety.model_dump_json(indent=2))
        return EXIT_CHECK_FAILED if safety.outcome is SafetyOutcome.TRUE_ALARM else EXIT_OK
    verdict = check_inclusion(p, opts, cfg=cfg, step_bound=args.bound)
    _emit(verdict.model_dump_json(indent=2))
    return EXIT_CHECK_FAILED if verdict.status is InclusionStatus.FAILS else EXIT_OK


def cmd_cfa(args: argparse.Namespace) -> int:
    p = _read_program(args.path)
    if args.transform:
        p = transform_program(p, _options(args))
    _emit(cfa_to_dot(build_cfa(branch_normalize(p))))
    return EXIT_OK


def _width_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--width",
        type=int,
        choices=range(2, 17),
        metavar="W",
        default=settings.default_width,
        help="Machine bit width (2-16)",
    )


def _rules_argument(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--rules", type=_rule_ids, default=None, help="Comma-separated rule ids (default: all)"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bitbranch", description="Bitwise branching for bitvector programs"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    transform = commands.add_parser("transform", help="Print the transformed program")
    transform.add_argument("path", help="Program file, or - for stdin")
    _rules_argument(transform)
    transform.add_argument("--max-nesting", type=_non_negative, default=None, help="Rules folded per site")
    transform.add_argument("--emit", choices=["text", "json"], default="text")
    transform.add_argument(
        "--annotate", action="store_true", help="Append origin tags as comments"
    )
    transform.add_argument("--cfa-dot", type=str, default=None, help="Also write the CFA as DOT")
    transform.set_defaults(handler=cmd_transform)

    check_rules = commands.add_parser("check-rules", help="Exhaustively check catalog rules")
    check_rules.add_argument(
        "--width",
        type=int,
        action="append",
        choices=range(2, 9),
        metavar="W",
        help="Width to check at, repeatable (default: settings, plus 8 for rewrite rules)",
    )
    _rules_argument(check_rules)
    check_rules.add_argument("--mutant", choices=sorted(MUTANTS), default=None)
    check_rules.set_defaults(handler=cmd_check_rules)

    reach = commands.add_parser("reach", help="Explore the reachable states of a program")
    reach.add_argument("path", help="Program file, or - for stdin")
    _width_argument(reach)
    reach.add_argument("--bound", type=_positive, default=settings.default_step_bound)
    reach.set_defaults(handler=cmd_reach)

    soundness = commands.add_parser(
        "soundness", help="Check observation inclusion, or fuzz it without PATH"
    )
    soundness.add_argument("path", nargs="?", default=None, help="Program file, or - for stdin")
    _width_argument(soundness)
    soundness.add_argument("--bound", type=_positive, default=settings.default_step_bound)
    _rules_argument(soundness)
    soundness.add_argument("--mutant", choices=sorted(MUTANTS), default=None)
    soundness.add_argument(
        "--certify", action="store_true", help="Report safety instead of inclusion"
    )
    soundness.add_argument("--seed", type=int, default=settings.fuzz_seed)
    soundness.add_argument("--count", type=_non_negative, default=settings.fuzz_count)
    soundness.set_defaults(handler=cmd_soundness)

    cfa = commands.add_parser("cfa", help="Print the control-flow automaton as DOT")
    cfa.add_argument("path", help="Program file, or - for stdin")
    cfa.add_argument("--transform", action="store_true", help="Transform the program first")
    _rules_argument(cfa)
    cfa.add_argument("--max-nesting", type=_non_negative, default=None)
    cfa.set_defaults(handler=cmd_cfa)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit code.

    Exit codes: 0 success or pass, 1 check failure, 2 usage, parse, rule or I/O error.
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except UnknownRuleError as e:
        print(f"bitbranch: {e}", file=sys.stderr)
        return EXIT_USAGE
    except BitbranchError as e:
        location = getattr(args, "path", None) or "<input>"
        print(f"bitbranch: {location}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except UnicodeDecodeError as e:
        print(f"bitbranch: {args.path}: not valid UTF-8 text ({e.reason})", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"bitbranch: cannot access {e.filename}: {e.strerror}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
