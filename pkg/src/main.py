"""Command-line entry point of the composition-table workbench (``qct``)."""

import argparse
import sys
from pathlib import Path
from typing import Callable, List, Optional

from pydantic import ValidationError

from src import logger, settings
from src.calculi.domains import DomainSpec, domain_size
from src.data_manager import (
    diff_ct,
    load_network,
    load_table,
    save_network,
    save_table,
)
from src.errors import QctError
from src.generator.generation import GenOptions
from src.generator.sharding import generate_sharded, survey_domains
from src.generator.termination import (
    AllOf,
    MaxLoops,
    StallWindow,
    TargetTriads,
    TerminationCondition,
)
from src.oracle import enumerate_ct, oracle_budget
from src.reasoner.closure import algebraic_closure, weak_compose
from src.reasoner.indu_filter import indu_table_from_filter
from src.relations.schema import CalculusSchema, RelationSet
from src.relations.table import GenStats, composition_probabilities
from src.utils.formatters import (
    format_cell,
    format_diff,
    format_gen_stats,
    format_probabilities,
    format_survey,
    format_witnesses,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2


class UsageError(QctError):
    """Invalid combination of command-line arguments."""


def _stderr(text: str) -> None:
    print(text, file=sys.stderr)


def build_condition(args: argparse.Namespace) -> TerminationCondition:
    """
    Termination condition from --max-loops, --stall and --target.

    A value of 0 disables --max-loops or --stall.
    """
    parts: List[TerminationCondition] = []
    if args.max_loops:
        parts.append(MaxLoops(args.max_loops))
    if args.stall:
        parts.append(StallWindow(args.stall))
    if args.target:
        parts.append(TargetTriads(args.target))
    if not parts:
        raise UsageError("At least one of --max-loops, --stall or --target is required")
    return parts[0] if len(parts) == 1 else AllOf(tuple(parts))


def parse_relation_set(schema: CalculusSchema, text: str) -> RelationSet:
    """Comma-separated relation symbols of `schema`."""
    symbols = [s.strip() for s in text.split(",") if s.strip()]
    unknown = [s for s in symbols if not schema.has_symbol(s)]
    if not symbols or unknown:
        raise UsageError(f"Invalid relation {text!r} for calculus {schema.name!r}")
    return RelationSet.from_symbols(schema, symbols)


def cmd_generate(args: argparse.Namespace) -> int:
    spec = DomainSpec.parse(args.calculus, args.param)
    opts = GenOptions(
        use_converse_shortcut=not args.no_converse_shortcut,
        seed_identity=not args.no_seed_identity,
        record_hits=args.hits,
        record_witnesses=args.witnesses,
    )
    table, stats = generate_sharded(
        spec,
        build_condition(args),
        args.seed,
        opts,
        shards=args.shards,
        workers=args.workers,
    )
    save_table(table, args.out)
    if table.witnesses is not None:
        witness_path = Path(f"{args.out}.witnesses")
        witness_path.write_text(
            format_witnesses(table.schema, table.witnesses) + "\n", encoding="utf-8"
        )
        logger.info(f"Wrote {len(table.witnesses)} witnesses to {witness_path}")
    _stderr(format_gen_stats(stats))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    spec = DomainSpec.parse(args.calculus, args.param)
    table = enumerate_ct(spec, args.budget, workers=args.workers)
    table.provenance["budget"] = str(oracle_budget(args.budget))
    save_table(table, args.out)
    _stderr(format_gen_stats(GenStats(loop=domain_size(spec) ** 3, triad=table.triad_count(), last_found=None)))
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    a, b = load_table(args.a), load_table(args.b)
    result = diff_ct(a, b)
    print(format_diff(a.schema, result.missing, result.extra))
    return EXIT_OK if result.identical else EXIT_MISMATCH


def cmd_verify(args: argparse.Namespace) -> int:
    got, reference = load_table(args.got), load_table(args.against)
    result = diff_ct(got, reference)
    if result.identical:
        _stderr(f"OK: {got.triad_count()} triads match {args.against}")
        return EXIT_OK
    print(format_diff(got.schema, result.missing, result.extra))
    _stderr(f"MISMATCH: {len(result.missing)} missing, {len(result.extra)} extra")
    return EXIT_MISMATCH


def cmd_compose(args: argparse.Namespace) -> int:
    table = load_table(args.table)
    left = parse_relation_set(table.schema, args.left)
    right = parse_relation_set(table.schema, args.right)
    print(format_cell(weak_compose(table, left, right)))
    return EXIT_OK


def cmd_probabilities(args: argparse.Namespace) -> int:
    table = load_table(args.table)
    schema = table.schema
    for name, symbol in (("--left", args.left), ("--right", args.right)):
        if not schema.has_symbol(symbol):
            raise UsageError(f"{name}: unknown relation {symbol!r} for calculus {schema.name!r}")
    probabilities = composition_probabilities(table, schema.index(args.left), schema.index(args.right))
    print(format_probabilities(schema, probabilities))
    return EXIT_OK


def cmd_closure(args: argparse.Namespace) -> int:
    table = load_table(args.table)
    network = load_network(args.network, table.schema)
    result = algebraic_closure(network, table)
    if not result.consistent:
        print("INCONSISTENT")
        return EXIT_MISMATCH
    if args.out:
        save_network(result.network, args.out)
    else:
        print(repr(result.network))
    _stderr(f"CLOSED: {result.revisions} revisions")
    return EXIT_OK


def cmd_indu_filter(args: argparse.Namespace) -> int:
    table = indu_table_from_filter(load_table(args.ia), load_table(args.pa))
    save_table(table, args.out)
    _stderr(f"Triad={table.triad_count()}")
    return EXIT_OK


def cmd_survey(args: argparse.Namespace) -> int:
    param_sets = [DomainSpec.parse(args.calculus, [p]).params() for p in args.param]
    opts = GenOptions(seed_identity=not args.no_seed_identity)
    result = survey_domains(args.calculus, param_sets, build_condition(args), args.seed, opts, args.budget)
    print(format_survey(result.rows, result.plateau_from))
    return EXIT_OK


def _add_condition_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--max-loops",
        type=int,
        default=int(settings.get("DEFAULT_MAX_LOOPS", 1_000_000)),
        help="Run at most N loops (0 disables)",
    )
    parser.add_argument(
        "--stall",
        type=int,
        default=int(settings.get("DEFAULT_STALL_WINDOW", 100_000)),
        help="Stop after W loops without a new triad (0 disables)",
    )
    parser.add_argument("--target", type=int, default=None, help="Stop once N triads are recorded")


def _add_domain_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--calculus", required=True, help="Domain token, e.g. ia, rcc8-rect, opra2-polar")
    parser.add_argument(
        "--param",
        action="append",
        default=[],
        required=True,
        help="Subdomain parameters, e.g. M=8 or M1=4,M2=16",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qct", description="Generate, enumerate, verify and use weak composition tables."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="Master seed of the random stream")
    commands = parser.add_subparsers(dest="command", required=True)

    generate = commands.add_parser("generate", parents=[common], help="Sample a table from a subdomain")
    _add_domain_flags(generate)
    _add_condition_flags(generate)
    generate.add_argument("--out", required=True, help="Output .qct file")
    generate.add_argument("--no-converse-shortcut", action="store_true")
    generate.add_argument("--no-seed-identity", action="store_true")
    generate.add_argument("--hits", action="store_true", help="Record triad hit counts")
    generate.add_argument("--witnesses", action="store_true", help="Write <out>.witnesses")
    generate.add_argument("--shards", type=int, default=1, help="Independently seeded runs to merge")
    generate.add_argument("--workers", type=int, default=None, help="Processes for sharded runs")
    generate.set_defaults(handler=cmd_generate)

    enumerate_ = commands.add_parser("enumerate", parents=[common], help="Exhaustive table of a subdomain")
    _add_domain_flags(enumerate_)
    enumerate_.add_argument("--out", required=True)
    enumerate_.add_argument("--budget", type=int, default=None, help="Largest admissible |D|^3")
    enumerate_.add_argument("--workers", type=int, default=1)
    enumerate_.set_defaults(handler=cmd_enumerate)

    diff = commands.add_parser("diff", parents=[common], help="Compare two tables")
    diff.add_argument("a")
    diff.add_argument("b")
    diff.set_defaults(handler=cmd_diff)

    verify = commands.add_parser("verify", parents=[common], help="Check a table against a reference")
    verify.add_argument("got")
    verify.add_argument("--against", required=True)
    verify.set_defaults(handler=cmd_verify)

    compose = commands.add_parser("compose", parents=[common], help="Print a weak composition")
    compose.add_argument("table")
    compose.add_argument("--left", required=True, help="Relation symbol(s), comma separated")
    compose.add_argument("--right", required=True, help="Relation symbol(s), comma separated")
    compose.set_defaults(handler=cmd_compose)

    probabilities = commands.add_parser("probabilities", parents=[common], help="Empirical probabilities of a cell")
    probabilities.add_argument("table")
    probabilities.add_argument("--left", required=True)
    probabilities.add_argument("--right", required=True)
    probabilities.set_defaults(handler=cmd_probabilities)

    closure = commands.add_parser("closure", parents=[common], help="Algebraic closure of a constraint network")
    closure.add_argument("--table", required=True)
    closure.add_argument("--network", required=True)
    closure.add_argument("--out", default=None, help="Write the refined network here")
    closure.set_defaults(handler=cmd_closure)

    indu = commands.add_parser("indu-filter", parents=[common], help="Predict the INDU table from IA and PA tables")
    indu.add_argument("--ia", required=True)
    indu.add_argument("--pa", required=True)
    indu.add_argument("--out", required=True)
    indu.set_defaults(handler=cmd_indu_filter)

    survey = commands.add_parser("survey", parents=[common], help="Triad counts over increasing subdomains")
    _add_domain_flags(survey)
    _add_condition_flags(survey)
    survey.add_argument("--budget", type=int, default=None)
    survey.add_argument("--no-seed-identity", action="store_true")
    survey.set_defaults(handler=cmd_survey)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_ERROR

    handler: Callable[[argparse.Namespace], int] = args.handler
    try:
        return handler(args)
    except (QctError, ValidationError, OSError, ValueError) as e:
        logger.debug(f"{args.command} failed", exc_info=True)
        _stderr(f"error: {e}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
