"""``mlp``: command-line front end.

Exit codes: 0 success or passing verdict, 1 failing verdict, 2 usage, parse or
composition error, 3 enumeration cap exceeded. Nothing is written to stdout
until the complete result is available.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from .compose import OPERATOR_NAMES, operator_for
from .config import CAMPAIGN_MAX_ATOMS, DEFAULT_MAX_ATOMS, MAX_ATOMS_ENV, EnumerationLimits
from .core import Atom, AnswerSetCollection, ProgramModule, canonical_models, render_model, sort_atoms
from .depgraph import FIRST_LABEL, SECOND_LABEL, build_positive_graph, cross_module_cycle, to_dot
from .equivalence import modularly_equivalent, visibly_equivalent
from .errors import EnumerationCapExceeded, ModuleAlgebraError
from .harness import THEOREM_IDS, GeneratorConfig, check_theorem, random_module, random_pair, run_campaign
from .join import natural_join
from .parser import format_module, load_module
from .reports import encode_report, write_reports
from .semantics import stable_models_module

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERDICT_FAILED = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def _limits(args: argparse.Namespace, fallback: int = DEFAULT_MAX_ATOMS) -> EnumerationLimits:
    if args.max_atoms is None and not os.environ.get(MAX_ATOMS_ENV, "").strip():
        return EnumerationLimits(fallback)
    return EnumerationLimits.from_env(args.max_atoms)


def _load(args: argparse.Namespace, path: Path) -> ProgramModule:
    return load_module(path, allow_reserved=args.allow_reserved)


def _collection_payload(name: str, collection: AnswerSetCollection, visible_only: bool) -> dict:
    return {
        "module": name,
        "input": [str(atom) for atom in sort_atoms(collection.owner_input)],
        "output": [str(atom) for atom in sort_atoms(collection.owner_output)],
        "hidden": [str(atom) for atom in sort_atoms(collection.owner_hidden)],
        "models": [list(model) for model in _models_of(collection, visible_only)],
    }


def _models_of(collection: AnswerSetCollection, visible_only: bool) -> list[tuple[str, ...]]:
    if visible_only:
        return canonical_models(collection.restricted(collection.visible))
    return collection.canonical()


def _render_collection(name: str, collection: AnswerSetCollection, visible_only: bool) -> list[str]:
    rendered = _models_of(collection, visible_only)
    lines = [f"% {name}: {len(rendered)} answer set(s)"]
    lines.extend(render_model(model) for model in rendered)
    return lines


def _emit_collections(
    args: argparse.Namespace, named: list[tuple[str, AnswerSetCollection]]
) -> list[str]:
    if getattr(args, "count", False):
        if len(named) == 1:
            return [str(len(named[0][1]))]
        return [f"{name}: {len(collection)}" for name, collection in named]
    if args.json:
        payloads = [_collection_payload(name, c, args.visible_only) for name, c in named]
        return [json.dumps(payloads[0] if len(payloads) == 1 else payloads, ensure_ascii=False)]
    lines: list[str] = []
    for name, collection in named:
        lines.extend(_render_collection(name, collection, args.visible_only))
    return lines


def cmd_solve(args: argparse.Namespace) -> tuple[int, list[str]]:
    limits = _limits(args)
    named = []
    for path in args.paths:
        module = _load(args, path)
        named.append((module.name, stable_models_module(module, limits=limits)))
    return EXIT_OK, _emit_collections(args, named)


def cmd_compose(args: argparse.Namespace) -> tuple[int, list[str]]:
    p1, p2 = (_load(args, path) for path in args.paths)
    operator = operator_for(args.op, rename_all_outputs=args.rename_all_outputs)
    composed = operator(p1, p2)
    lines: list[str] = []
    if args.emit_module or not args.solve:
        lines.extend(format_module(composed).rstrip("\n").splitlines())
    if args.solve:
        collection = stable_models_module(composed, limits=_limits(args))
        lines.extend(_emit_collections(args, [(composed.name, collection)]))
    return EXIT_OK, lines


def cmd_join(args: argparse.Namespace) -> tuple[int, list[str]]:
    limits = _limits(args)
    p1, p2 = (_load(args, path) for path in args.paths)
    joined = natural_join(stable_models_module(p1, limits=limits), stable_models_module(p2, limits=limits))
    return EXIT_OK, _emit_collections(args, [(f"{p1.name}_join_{p2.name}", joined)])


def _generator_config(args: argparse.Namespace) -> GeneratorConfig:
    return GeneratorConfig(
        atom_budget=args.atom_budget,
        rule_budget=args.rule_budget,
        forbid_cross_positive_cycles=not args.allow_cross_cycles,
        seed=args.seed,
    )


def cmd_check(args: argparse.Namespace) -> tuple[int, list[str]]:
    limits = _limits(args, CAMPAIGN_MAX_ATOMS)
    if args.random:
        if args.paths:
            raise ValueError("--random generates its own modules; do not pass module files")
        reports = run_campaign(args.theorem, _generator_config(args), args.trials, limits=limits)
    else:
        modules = tuple(_load(args, path) for path in args.paths)
        scope = None
        if args.scope is not None:
            scope = [Atom.parse(text) for text in args.scope.split(",") if text.strip()]
        reports = [check_theorem(args.theorem, modules, scope=scope, limits=limits)]

    if args.report is not None:
        write_reports(args.report, reports)
    if args.json:
        lines = [json.dumps(encode_report(report), ensure_ascii=False) for report in reports]
    else:
        lines = [report.summary() for report in reports]
        failed = sum(not report.passed for report in reports)
        lines.append(f"{len(reports) - failed}/{len(reports)} passed")
    status = EXIT_OK if all(report.passed for report in reports) else EXIT_VERDICT_FAILED
    return status, lines


def cmd_equiv(args: argparse.Namespace) -> tuple[int, list[str]]:
    p, q = (_load(args, path) for path in args.paths)
    check = modularly_equivalent if args.mode == "modular" else visibly_equivalent
    result = check(p, q, limits=_limits(args))
    verdict = "equivalent" if result.equivalent else "not equivalent"
    lines = [f"{p.name} and {q.name} are {verdict} ({args.mode})", *result.diagnostics]
    return (EXIT_OK if result.equivalent else EXIT_VERDICT_FAILED), lines


def cmd_random(args: argparse.Namespace) -> tuple[int, list[str]]:
    cfg = _generator_config(args)
    modules = random_pair(cfg) if args.pair else (random_module(cfg),)
    lines: list[str] = []
    for module in modules:
        lines.extend(format_module(module).rstrip("\n").splitlines())
        lines.append("")
    return EXIT_OK, lines[:-1]


def cmd_depgraph(args: argparse.Namespace) -> tuple[int, list[str]]:
    labels = (FIRST_LABEL, SECOND_LABEL)
    modules = [(labels[i], _load(args, path)) for i, path in enumerate(args.paths)]
    graph = build_positive_graph(modules)
    cycle = cross_module_cycle(graph)
    if cycle is not None:
        logger.warning("cross-module positive cycle: %s", " → ".join(map(str, cycle)))
    source = to_dot(graph, highlight=cycle).source
    if args.output is not None:
        args.output.write_text(source, encoding="utf-8")
        return EXIT_OK, []
    return EXIT_OK, source.rstrip("\n").splitlines()


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug")
    common.add_argument(
        "--max-atoms",
        type=int,
        default=None,
        help=f"enumeration cap (default {DEFAULT_MAX_ATOMS}, or ${MAX_ATOMS_ENV})",
    )
    common.add_argument(
        "--allow-reserved",
        action="store_true",
        help="accept atoms using the reserved '__' namespace (printed composites)",
    )
    return common


def _add_generator_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--atom-budget", type=int, default=6)
    parser.add_argument("--rule-budget", type=int, default=5)
    parser.add_argument(
        "--allow-cross-cycles",
        action="store_true",
        help="do not force generated pairs to be mutually independent",
    )


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="mlp",
        description="Compose answer-set program modules and check the module theorems.",
    )
    verbs = parser.add_subparsers(dest="verb", required=True)

    solve = verbs.add_parser("solve", parents=[common], help="print the answer sets of modules")
    solve.add_argument("paths", nargs="+", type=Path)
    solve.add_argument("--visible-only", action="store_true")
    solve.add_argument("--count", action="store_true")
    solve.add_argument("--json", action="store_true")
    solve.set_defaults(handler=cmd_solve)

    compose = verbs.add_parser("compose", parents=[common], help="compose two modules")
    compose.add_argument("paths", nargs=2, type=Path)
    compose.add_argument("--op", choices=OPERATOR_NAMES, required=True)
    compose.add_argument("--rename-all-outputs", action="store_true")
    compose.add_argument("--emit-module", action="store_true")
    compose.add_argument("--solve", action="store_true")
    compose.add_argument("--visible-only", action="store_true")
    compose.add_argument("--json", action="store_true")
    compose.set_defaults(handler=cmd_compose)

    join = verbs.add_parser("join", parents=[common], help="natural join of two modules' answer sets")
    join.add_argument("paths", nargs=2, type=Path)
    join.add_argument("--visible-only", action="store_true")
    join.add_argument("--json", action="store_true")
    join.set_defaults(handler=cmd_join)

    check = verbs.add_parser("check", parents=[common], help="check a theorem on modules or random pairs")
    check.add_argument("theorem", choices=THEOREM_IDS)
    check.add_argument("paths", nargs="*", type=Path)
    check.add_argument("--random", action="store_true")
    check.add_argument("--trials", type=int, default=100)
    check.add_argument("--scope", default=None, help="comma-separated atoms for hide-project / rename-recovery")
    check.add_argument("--report", type=Path, default=None, help="write JSON-lines reports here")
    check.add_argument("--json", action="store_true")
    _add_generator_options(check)
    check.set_defaults(handler=cmd_check)

    equiv = verbs.add_parser("equiv", parents=[common], help="visible or modular equivalence")
    equiv.add_argument("paths", nargs=2, type=Path)
    equiv.add_argument("--mode", choices=("visible", "modular"), default="modular")
    equiv.set_defaults(handler=cmd_equiv)

    generate = verbs.add_parser("random", parents=[common], help="print a random module or pair")
    generate.add_argument("--pair", action="store_true")
    _add_generator_options(generate)
    generate.set_defaults(handler=cmd_random)

    depgraph = verbs.add_parser("depgraph", parents=[common], help="DOT source of the positive dependency graph")
    depgraph.add_argument("paths", nargs="+", type=Path)
    depgraph.add_argument("--output", type=Path, default=None)
    depgraph.set_defaults(handler=cmd_depgraph)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    if args.verb == "depgraph" and len(args.paths) > 2:
        parser.error("depgraph takes one or two module files")

    try:
        status, lines = args.handler(args)
    except EnumerationCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ModuleAlgebraError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE

    if lines:
        sys.stdout.write("\n".join(lines) + "\n")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
