"""`wreath` command line: one subcommand per operation, one result per line on stdout.

Exit codes: 0 success, 1 domain error, 2 usage or configuration error.
"""
from __future__ import annotations

import argparse
import sys
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from dotenv import load_dotenv
from loguru import logger

from core import analysis, catalog, decision
from core.calculus import act, expand, section
from core.config import Settings
from core.dsl import format_decomposition, serialize
from core.errors import ConfigError, WreathError
from core.logging import configure_logging, log_operation
from core.specs import RecursionSystem
from core.tree import format_vertex_word
from wreath_cli.utils import (
    format_counts,
    load_system,
    load_system_file,
    substitution_args,
    vertex_arg,
    word_arg,
    words_arg,
)

CONVENTION = "Words compose left to right: in g.h (or g*h) the automorphism g acts first."

CommandHandler = Callable[[argparse.Namespace, Settings], List[str]]
Configure = Callable[[argparse.ArgumentParser], None]
_command_registry: Dict[str, Tuple[CommandHandler, Configure, str]] = {}


def register_command(
    name: str, description: str, configure: Configure
) -> Callable[[CommandHandler], CommandHandler]:
    def decorator(func: CommandHandler) -> CommandHandler:
        _command_registry[name] = (func, configure, description)
        return func

    return decorator


def _source(parser: argparse.ArgumentParser, required: bool = True) -> None:
    group = parser.add_mutually_exclusive_group(required=required)
    group.add_argument("--catalog", metavar="NAME", help="built-in system name")
    group.add_argument("--system", metavar="PATH", help="path to a .wrs file")


def _system(args: argparse.Namespace) -> RecursionSystem:
    return load_system(args.catalog, args.system)


def _with_word(parser: argparse.ArgumentParser) -> None:
    _source(parser)
    parser.add_argument("-g", dest="word", required=True, metavar="WORD")


# ---------------------------------------------------------------------------
# commands


def _configure_parse(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("path", nargs="?", metavar="PATH")
    _source(parser, required=False)


@register_command("parse", "Validate a system and print its canonical form.", _configure_parse)
def parse_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    if args.path is not None:
        if args.catalog is not None or args.system is not None:
            raise ConfigError("give either PATH or one of --catalog/--system, not both")
        system = load_system_file(args.path)
    else:
        system = _system(args)
    return serialize(system).split("\n")


def _configure_act(parser: argparse.ArgumentParser) -> None:
    _with_word(parser)
    parser.add_argument("-w", dest="vertex", required=True, metavar="VWORD")


@register_command("act", "Image of a vertex word (digit string).", _configure_act)
def act_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    image = act(system, word_arg(system, args.word), vertex_arg(system, args.vertex))
    return [format_vertex_word(image)]


@register_command("expand", "Root permutation and sections of a word.", _with_word)
def expand_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    return [format_decomposition(expand(system, word_arg(system, args.word)))]


def _configure_section(parser: argparse.ArgumentParser) -> None:
    _with_word(parser)
    parser.add_argument("-v", dest="vertex", required=True, metavar="VWORD")


@register_command("section", "Section (renormalization) of a word at a vertex.", _configure_section)
def section_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    return [str(section(system, word_arg(system, args.word), vertex_arg(system, args.vertex)))]


def _configure_perm(parser: argparse.ArgumentParser) -> None:
    _with_word(parser)
    parser.add_argument("-n", dest="level", type=int, required=True, metavar="N")
    view = parser.add_mutually_exclusive_group()
    view.add_argument("--cycles", action="store_true", help="cycle lengths, descending")
    view.add_argument("--order", action="store_true", help="order of the permutation")


@register_command("perm", "Permutation induced on level n.", _configure_perm)
def perm_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    permutation = decision.level_permutation(
        system, word_arg(system, args.word), args.level, settings
    )
    if args.order:
        return [str(permutation.order())]
    if args.cycles:
        return [" ".join(str(length) for length in permutation.cycle_lengths())]
    return [" ".join(str(image) for image in permutation.images)]


def _proof_budget(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--max-set", type=int, default=None, metavar="S")
    parser.add_argument("--max-len", type=int, default=None, metavar="L")


def _budget_from(args: argparse.Namespace, settings: Settings) -> decision.ProofBudget:
    return decision.ProofBudget(
        args.max_set if args.max_set is not None else settings.max_closure_size,
        args.max_len if args.max_len is not None else settings.max_section_length,
    )


def _configure_prove(parser: argparse.ArgumentParser) -> None:
    _with_word(parser)
    _proof_budget(parser)


@register_command("prove-id", "Prove or refute that a word is the identity.", _configure_prove)
def prove_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    result = decision.prove_identity(
        system, word_arg(system, args.word), _budget_from(args, settings)
    )
    if isinstance(result, decision.IdentityCertificate):
        lines = [f"proved identity (certificate of {len(result.members)} words)"]
        return lines + [str(member) for member in result.members]
    if isinstance(result, decision.NonIdentityWitness):
        vertex = format_vertex_word(result.vertex) or "root"
        return [f"not identity: witness vertex={vertex} letter={result.letter}"]
    return [f"inconclusive: {result.reason}"]


def _configure_equal(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--help", action="help", help="show this help message and exit")
    _source(parser)
    parser.add_argument("-g", dest="left", required=True, metavar="U")
    parser.add_argument("-h", dest="right", required=True, metavar="V")
    mode = parser.add_mutually_exclusive_group()
    mode.add_argument("--level", type=int, default=None, metavar="N")
    mode.add_argument("--prove", action="store_true")
    _proof_budget(parser)


@register_command("equal", "Compare two words as tree automorphisms.", _configure_equal)
def equal_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    if args.prove:
        mode = decision.EqualityMode.prove(_budget_from(args, settings))
    else:
        level = args.level if args.level is not None else settings.default_equal_level
        mode = decision.EqualityMode.up_to_level(level)
    verdict = decision.equal(
        system, word_arg(system, args.left), word_arg(system, args.right), mode, settings
    )
    return [str(verdict)]


def _configure_odometer(parser: argparse.ArgumentParser) -> None:
    _with_word(parser)
    parser.add_argument("-n", dest="level", type=int, required=True, metavar="N")


@register_command("odometer", "Check the d^n-cycle criterion on levels 1..n.", _configure_odometer)
def odometer_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    report = analysis.odometer_check(system, word_arg(system, args.word), args.level, settings)
    return report.lines()


def _configure_lift(parser: argparse.ArgumentParser) -> None:
    _with_word(parser)
    parser.add_argument("--iters", type=int, default=1, metavar="K")
    parser.add_argument("--start", type=int, default=0, metavar="E")


@register_command("lift", "Iterated product of sections along the root cycle.", _configure_lift)
def lift_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    lifted = analysis.iterate_lift(system, word_arg(system, args.word), args.start, args.iters)
    return [str(lifted)]


def _configure_exponents(parser: argparse.ArgumentParser) -> None:
    _with_word(parser)
    parser.add_argument("--subst", action="append", default=[], metavar="NAME=WORD")


@register_command("exponents", "Signed exponent sums per symbol.", _configure_exponents)
def exponents_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    vector = analysis.exponent_vector(
        system, word_arg(system, args.word), substitution_args(system, args.subst)
    )
    counts = vector.as_dict()
    return format_counts([(name, counts[name]) for name in system.symbols if name in counts])


def _configure_schreier(parser: argparse.ArgumentParser) -> None:
    _source(parser)
    parser.add_argument("--gens", required=True, metavar="LIST")
    parser.add_argument("--from", dest="source", required=True, metavar="VWORD")
    parser.add_argument("--to", dest="target", required=True, metavar="VWORD")


@register_command("schreier", "Shortest word moving one vertex to another.", _configure_schreier)
def schreier_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    result = analysis.schreier_path(
        system,
        words_arg(system, args.gens),
        vertex_arg(system, args.source),
        vertex_arg(system, args.target),
        settings,
    )
    return [str(result)]


def _configure_levy(parser: argparse.ArgumentParser) -> None:
    _source(parser)
    parser.add_argument("--curves", required=True, metavar="U1,U2,...")
    parser.add_argument("--level", type=int, required=True, metavar="N")


@register_command("levy", "Algebraic necessary condition for a Levy cycle.", _configure_levy)
def levy_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    report = analysis.levy_necessary_condition(
        system, words_arg(system, args.curves), args.level, settings
    )
    return report.lines()


def _configure_catalog(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("name", nargs="?", metavar="NAME")


@register_command("catalog", "List built-in systems, or print one as DSL text.", _configure_catalog)
def catalog_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    if args.name is None:
        return catalog.list_entries()
    return serialize(catalog.get(args.name).system).split("\n")


def _configure_mating(parser: argparse.ArgumentParser) -> None:
    _source(parser)
    parser.add_argument("--gens", required=True, metavar="LIST")
    parser.add_argument("-n", dest="level", type=int, required=True, metavar="N")
    parser.add_argument("--max-elements", type=int, default=None, metavar="M")


@register_command(
    "mating", "Search the level-n group for an element acting as a d^n-cycle.", _configure_mating
)
def mating_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    search = analysis.find_level_odometer(
        system, words_arg(system, args.gens), args.level, args.max_elements, settings
    )
    return search.lines()


def _configure_profile(parser: argparse.ArgumentParser) -> None:
    _source(parser)
    parser.add_argument("--gens", required=True, metavar="LIST")
    parser.add_argument("--length", type=int, required=True, metavar="L")
    parser.add_argument("-n", dest="level", type=int, required=True, metavar="N")


@register_command(
    "profile", "Multiset of level-n orders over short words in the generators.", _configure_profile
)
def profile_command(args: argparse.Namespace, settings: Settings) -> List[str]:
    system = _system(args)
    profile = analysis.order_profile(
        system, words_arg(system, args.gens), args.length, args.level, settings
    )
    return [f"order {value}: {count}" for value, count in profile.items()]


# ---------------------------------------------------------------------------
# entry points


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wreath",
        description="Computations with self-similar groups given by wreath recursions.",
        epilog=CONVENTION,
    )
    parser.add_argument(
        "--log-level",
        default=None,
        choices=["trace", "debug", "info", "success", "warning", "error", "critical"],
    )
    parser.add_argument("--trace", default=None, metavar="PATH", help="JSON operation trace file")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (_, configure, description) in _command_registry.items():
        # `equal` takes -h as an operand and provides --help itself
        sub = subparsers.add_parser(
            name, help=description, description=description, add_help=name != "equal"
        )
        configure(sub)
    return parser


def _details(args: argparse.Namespace) -> Dict[str, Any]:
    return {
        key: value
        for key, value in vars(args).items()
        if key not in ("command", "log_level", "trace") and value not in (None, [], False)
    }


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2

    try:
        settings = Settings.load_from_env()
    except ConfigError as exc:
        print(f"wreath: {exc}", file=sys.stderr)
        return 2

    configure_logging(args.log_level or settings.log_level, args.trace)
    handler, _, _ = _command_registry[args.command]
    try:
        lines = handler(args, settings)
    except ConfigError as exc:
        log_operation(args.command, {**_details(args), "error": str(exc)}, status="usage")
        print(f"wreath {args.command}: {exc}", file=sys.stderr)
        return 2
    except WreathError as exc:
        log_operation(args.command, {**_details(args), "error": str(exc)}, status="error")
        print(f"wreath {args.command}: {exc}", file=sys.stderr)
        return 1

    for line in lines:
        print(line)
    log_operation(args.command, {**_details(args), "lines": len(lines)})
    logger.debug("{} finished with {} output lines", args.command, len(lines))
    return 0


def main() -> None:
    load_dotenv()
    sys.exit(run())
