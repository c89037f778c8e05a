"""The composition algebra over program modules.

Operators never mutate their arguments. Precondition failures raise a
:class:`~asp_module_algebra.errors.CompositionError` subclass naming the
offending atoms (or the witness cycle for mutual dependence).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

from .core import Atom, Program, ProgramModule, Rule, fresh_atom, sort_atoms
from .depgraph import FIRST_LABEL, SECOND_LABEL, build_positive_graph, cross_module_cycle
from .errors import (
    CoverageMismatch,
    FreshCollision,
    HiddenLeak,
    MutualDependence,
    OldNotOutput,
    OutputsOverlap,
)

logger = logging.getLogger(__name__)

PRIMED_TAG = "r1"
DOUBLE_PRIMED_TAG = "r2"


@dataclass(frozen=True, slots=True)
class RenameMap:
    """Pairs ``(old, fresh)``, kept sorted by the old atom."""

    pairs: tuple[tuple[Atom, Atom], ...] = ()

    def __post_init__(self) -> None:
        pairs = tuple(sorted(self.pairs, key=lambda pair: str(pair[0])))
        object.__setattr__(self, "pairs", pairs)
        olds = [old for old, _ in pairs]
        freshes = [fresh for _, fresh in pairs]
        if len(set(olds)) != len(olds):
            raise ValueError("RenameMap renames the same atom twice")
        if len(set(freshes)) != len(freshes):
            raise ValueError("RenameMap maps two atoms to the same fresh atom")
        if set(olds) & set(freshes):
            raise ValueError("RenameMap fresh atoms must differ from renamed atoms")

    @classmethod
    def from_mapping(cls, mapping: Mapping[Atom, Atom]) -> RenameMap:
        return cls(tuple(mapping.items()))

    @classmethod
    def fresh(cls, olds: Iterable[Atom], tag: str, taken: Iterable[Atom]) -> RenameMap:
        """Map each atom to ``<predicate>__<tag>``, avoiding ``taken`` and each other."""

        used = set(taken)
        pairs: list[tuple[Atom, Atom]] = []
        for old in sort_atoms(olds):
            new = fresh_atom(old, tag, used)
            used.add(new)
            pairs.append((old, new))
        return cls(tuple(pairs))

    @property
    def olds(self) -> frozenset[Atom]:
        return frozenset(old for old, _ in self.pairs)

    @property
    def freshes(self) -> frozenset[Atom]:
        return frozenset(fresh for _, fresh in self.pairs)

    def as_dict(self) -> dict[Atom, Atom]:
        return dict(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[Atom, Atom]]:
        return iter(self.pairs)


def _composite_name(p1: ProgramModule, p2: ProgramModule, tag: str) -> str:
    if p1.name and p2.name:
        return f"{p1.name}_{tag}_{p2.name}"
    return p1.name or p2.name


def _check_hidden(p1: ProgramModule, p2: ProgramModule) -> None:
    leak = (p1.hidden & p2.all_atoms) | (p2.hidden & p1.all_atoms)
    if leak:
        raise HiddenLeak(leak)


def compose_plus(p1: ProgramModule, p2: ProgramModule) -> ProgramModule:
    overlap = p1.outputs & p2.outputs
    if overlap:
        raise OutputsOverlap(overlap)
    _check_hidden(p1, p2)
    return ProgramModule(
        p1.rules.union(p2.rules),
        (p1.inputs - p2.outputs) | (p2.inputs - p1.outputs),
        p1.outputs | p2.outputs,
        p1.hidden | p2.hidden,
        name=_composite_name(p1, p2, "plus"),
    )


def compose_sqcup(p1: ProgramModule, p2: ProgramModule) -> ProgramModule:
    composite = compose_plus(p1, p2)
    cycle = cross_module_cycle(build_positive_graph([(FIRST_LABEL, p1), (SECOND_LABEL, p2)]))
    if cycle is not None:
        raise MutualDependence(cycle)
    return composite.renamed(_composite_name(p1, p2, "sqcup"))


def compose_relaxed(p1: ProgramModule, p2: ProgramModule) -> ProgramModule:
    # A module shares its hidden atoms with itself, so m ⊎ m is m.
    if p1 != p2:
        _check_hidden(p1, p2)
    outputs = p1.outputs | p2.outputs
    return ProgramModule(
        p1.rules.union(p2.rules),
        (p1.inputs | p2.inputs) - outputs,
        outputs,
        p1.hidden | p2.hidden,
        name=_composite_name(p1, p2, "relaxed"),
    )


def rename_output(module: ProgramModule, mapping: RenameMap) -> ProgramModule:
    """Move each old output to the inputs and let its rules define the fresh atom."""

    not_outputs = mapping.olds - module.outputs
    if not_outputs:
        raise OldNotOutput(not_outputs)
    clash = mapping.freshes & module.all_atoms
    if clash:
        raise FreshCollision(clash)
    if not mapping.pairs:
        return module

    table = mapping.as_dict()
    rules = [rule.rename_heads(table) for rule in module.rules]
    rules.extend(Rule.constraint({fresh}, {old}) for old, fresh in mapping)
    return ProgramModule(
        Program(tuple(rules)),
        module.inputs | mapping.olds,
        (module.outputs - mapping.olds) | mapping.freshes,
        module.hidden,
        name=module.name,
    )


def _free_choices(items: Iterable[Atom]) -> list[Rule]:
    return [Rule.choice({atom}) for atom in sort_atoms(items)]


def hide(module: ProgramModule, scope: Iterable[Atom]) -> ProgramModule:
    hidden_scope = frozenset(scope)
    return ProgramModule(
        module.rules.extend(_free_choices(module.inputs & hidden_scope)),
        module.inputs - hidden_scope,
        module.outputs - hidden_scope,
        module.hidden | (module.visible & hidden_scope),
        name=module.name,
    )


def project(module: ProgramModule, scope: Iterable[Atom]) -> ProgramModule:
    kept = frozenset(scope)
    return ProgramModule(
        module.rules.extend(_free_choices(module.inputs - kept)),
        module.inputs & kept,
        module.outputs & kept,
        module.hidden | (module.visible - kept),
        name=module.name,
    )


def _check_coverage(common: frozenset[Atom], mapping: RenameMap) -> None:
    mismatch = common ^ mapping.olds
    if mismatch:
        raise CoverageMismatch(mismatch, "renaming must cover exactly the common outputs")


def build_union_module(
    common: Iterable[Atom], primed: RenameMap, double_primed: RenameMap
) -> ProgramModule:
    common_atoms = frozenset(common)
    _check_coverage(common_atoms, primed)
    _check_coverage(common_atoms, double_primed)
    first, second = primed.as_dict(), double_primed.as_dict()
    rules: list[Rule] = []
    for atom in sort_atoms(common_atoms):
        rules.append(Rule.normal(atom, {first[atom]}))
        rules.append(Rule.normal(atom, {second[atom]}))
    return ProgramModule(
        Program(tuple(rules)),
        primed.freshes | double_primed.freshes,
        common_atoms,
        frozenset(),
        name="union",
    )


def build_filter_module(primed: RenameMap, double_primed: RenameMap) -> ProgramModule:
    _check_coverage(primed.olds, double_primed)
    second = double_primed.as_dict()
    rules: list[Rule] = []
    for atom, first in primed:
        rules.append(Rule.constraint({first}, {second[atom]}))
        rules.append(Rule.constraint({second[atom]}, {first}))
    return ProgramModule(
        Program(tuple(rules)),
        primed.freshes | double_primed.freshes,
        frozenset(),
        frozenset(),
        name="filter",
    )


def common_outputs(
    p1: ProgramModule, p2: ProgramModule, *, rename_all_outputs: bool = False
) -> frozenset[Atom]:
    """Outputs renamed by ⊎^RT and ⊗.

    By default only the shared outputs. With ``rename_all_outputs`` every output
    of either module that is not an input of either module.
    """

    if not rename_all_outputs:
        return p1.outputs & p2.outputs
    return (p1.outputs | p2.outputs) - (p1.inputs | p2.inputs)


def _widen(module: ProgramModule, scope: frozenset[Atom]) -> ProgramModule:
    extra = scope - module.atoms
    if not extra:
        return module
    return ProgramModule(
        module.rules, module.inputs, module.outputs | extra, module.hidden, name=module.name
    )


@dataclass(frozen=True, slots=True)
class Bridge:
    """The renamed operands of ⊎^RT / ⊗ and the maps that produced them."""

    first: ProgramModule
    second: ProgramModule
    common: frozenset[Atom]
    primed: RenameMap
    double_primed: RenameMap

    @property
    def renamed_atoms(self) -> frozenset[Atom]:
        return self.primed.freshes | self.double_primed.freshes


def build_bridge(
    p1: ProgramModule, p2: ProgramModule, *, rename_all_outputs: bool = False
) -> Bridge:
    _check_hidden(p1, p2)
    common = common_outputs(p1, p2, rename_all_outputs=rename_all_outputs)
    if rename_all_outputs:
        p1, p2 = _widen(p1, common), _widen(p2, common)

    taken = set(p1.all_atoms | p2.all_atoms)
    primed = RenameMap.fresh(common, PRIMED_TAG, taken)
    taken |= primed.freshes
    double_primed = RenameMap.fresh(common, DOUBLE_PRIMED_TAG, taken)
    return Bridge(
        rename_output(p1, primed),
        rename_output(p2, double_primed),
        common,
        primed,
        double_primed,
    )


def compose_relaxed_rt(
    p1: ProgramModule, p2: ProgramModule, *, rename_all_outputs: bool = False
) -> ProgramModule:
    bridge = build_bridge(p1, p2, rename_all_outputs=rename_all_outputs)
    union = build_union_module(bridge.common, bridge.primed, bridge.double_primed)
    composite = compose_sqcup(compose_sqcup(bridge.first, bridge.second), union)
    logger.debug("⊎^RT renamed %d common output(s)", len(bridge.common))
    result = hide(composite, bridge.renamed_atoms)
    return result.renamed(_composite_name(p1, p2, "rt"))


def compose_conservative(
    p1: ProgramModule, p2: ProgramModule, *, rename_all_outputs: bool = False
) -> ProgramModule:
    bridge = build_bridge(p1, p2, rename_all_outputs=rename_all_outputs)
    union = build_union_module(bridge.common, bridge.primed, bridge.double_primed)
    agreement = build_filter_module(bridge.primed, bridge.double_primed)
    composite = compose_sqcup(compose_sqcup(compose_sqcup(bridge.first, bridge.second), union), agreement)
    logger.debug("⊗ renamed %d common output(s)", len(bridge.common))
    result = hide(composite, bridge.renamed_atoms)
    return result.renamed(_composite_name(p1, p2, "conservative"))


Operator = Callable[[ProgramModule, ProgramModule], ProgramModule]


def operator_for(name: str, *, rename_all_outputs: bool = False) -> Operator:
    """Look up a binary operator by its CLI name."""

    if name == "relaxed-rt":
        return lambda p1, p2: compose_relaxed_rt(p1, p2, rename_all_outputs=rename_all_outputs)
    if name == "conservative":
        return lambda p1, p2: compose_conservative(p1, p2, rename_all_outputs=rename_all_outputs)
    try:
        return OPERATORS[name]
    except KeyError as exc:
        raise ValueError(f"Unknown operator {name!r}; expected one of {sorted(OPERATOR_NAMES)}") from exc


OPERATORS: dict[str, Operator] = {
    "plus": compose_plus,
    "sqcup": compose_sqcup,
    "relaxed": compose_relaxed,
}
OPERATOR_NAMES = (*OPERATORS, "relaxed-rt", "conservative")
