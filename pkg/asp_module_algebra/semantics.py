"""Stable-model semantics for ground programs and program modules.

Enumeration is exact and exponential. Interpretations are handled internally as
integer bitmasks over a sorted atom universe; the public functions accept and
return atom sets.

A candidate model only influences the reduct through the atoms that occur in
the negative body of some non-constraint rule, so the search guesses that part
of the model and derives the rest with the least-model fixpoint. A guess that
reproduces itself and violates no constraint is a stable model, and every
stable model is found by exactly one guess.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from itertools import chain, combinations
from typing import Iterable, Iterator

from .config import EnumerationLimits
from .core import (
    AnswerSetCollection,
    Atom,
    Interpretation,
    Program,
    ProgramModule,
    RESERVED_INFIX,
    Rule,
    RuleKind,
    sort_atoms,
)
from .errors import EnumerationCapExceeded, FreshAtomCollision

logger = logging.getLogger(__name__)

AUX_TAG = "aux"


class Inconsistency(Enum):
    INCONSISTENT = "inconsistent"


INCONSISTENT = Inconsistency.INCONSISTENT


@dataclass(frozen=True, slots=True)
class PositiveProgram:
    rules: tuple[Rule, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "rules", tuple(dict.fromkeys(self.rules)))
        for rule in self.rules:
            if rule.kind is RuleKind.CHOICE:
                raise ValueError(f"Positive programs cannot contain choice rules: {rule}")
            if rule.body_neg:
                raise ValueError(f"Positive programs cannot contain negative literals: {rule}")

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def atoms(self) -> frozenset[Atom]:
        return frozenset(chain.from_iterable(rule.atoms for rule in self.rules))


def auxiliary_atom(atom: Atom) -> Atom:
    return atom.with_predicate(f"{atom.predicate}{RESERVED_INFIX}{AUX_TAG}")


def translate_choice(program: Program, hidden_sink: set[Atom] | None = None) -> Program:
    """Replace every choice rule by a pair of normal rules per head atom.

    ``{a} :- B.`` becomes ``a :- B, not a__aux.`` plus ``a__aux :- not a.``.
    Auxiliary atoms are added to ``hidden_sink``.
    """

    if not program.has_choice:
        return program

    sink = hidden_sink if hidden_sink is not None else set()
    existing = program.atoms
    rules: list[Rule] = []
    for rule in program:
        if rule.kind is not RuleKind.CHOICE:
            rules.append(rule)
            continue
        for atom in sort_atoms(rule.head):
            aux = auxiliary_atom(atom)
            if aux in existing:
                raise FreshAtomCollision(
                    f"auxiliary atom {aux} for choice over {atom} already occurs in the program"
                )
            rules.append(Rule.normal(atom, rule.body_pos, rule.body_neg | {aux}))
            rules.append(Rule.normal(aux, (), {atom}))
            sink.add(aux)
    return Program(tuple(rules))


def reduct(program: Program, model: Iterable[Atom]) -> PositiveProgram:
    if program.has_choice:
        raise ValueError("reduct expects a choice-free program; apply translate_choice first")
    assumed = frozenset(model)
    kept: list[Rule] = []
    for rule in program:
        if rule.body_neg & assumed:
            continue
        if rule.kind is RuleKind.CONSTRAINT:
            kept.append(Rule.constraint(rule.body_pos))
        else:
            kept.append(Rule.normal(rule.head_atom, rule.body_pos))
    return PositiveProgram(tuple(kept))


def least_model(program: PositiveProgram) -> Interpretation | Inconsistency:
    model: set[Atom] = set()
    changed = True
    while changed:
        changed = False
        for rule in program.rules:
            if not rule.body_pos <= model:
                continue
            if rule.kind is RuleKind.CONSTRAINT:
                return INCONSISTENT
            head = rule.head_atom
            if head not in model:
                model.add(head)
                changed = True
    return frozenset(model)


@dataclass(frozen=True, slots=True)
class _CompiledProgram:
    atoms: tuple[Atom, ...]
    index: dict[Atom, int]
    # (head bit, positive body mask, negative body mask)
    rules: tuple[tuple[int, int, int], ...]
    # (positive body mask, negative body mask)
    constraints: tuple[tuple[int, int], ...]
    # atoms under negation in some non-constraint rule; constraints never shape the reduct
    negated: int

    def encode(self, items: Iterable[Atom]) -> int:
        mask = 0
        for atom in items:
            position = self.index.get(atom)
            if position is not None:
                mask |= 1 << position
        return mask

    def decode(self, mask: int) -> Interpretation:
        return frozenset(atom for position, atom in enumerate(self.atoms) if mask >> position & 1)


@lru_cache(maxsize=512)
def _compile(program: Program, universe: frozenset[Atom]) -> _CompiledProgram:
    ordered = tuple(sort_atoms(universe | program.atoms))
    index = {atom: position for position, atom in enumerate(ordered)}

    def mask_of(items: Iterable[Atom]) -> int:
        mask = 0
        for atom in items:
            mask |= 1 << index[atom]
        return mask

    rules: list[tuple[int, int, int]] = []
    constraints: list[tuple[int, int]] = []
    negated = 0
    for rule in program:
        pos, neg = mask_of(rule.body_pos), mask_of(rule.body_neg)
        if rule.kind is RuleKind.CONSTRAINT:
            constraints.append((pos, neg))
            continue
        negated |= neg
        rules.append((mask_of(rule.head), pos, neg))
    return _CompiledProgram(ordered, index, tuple(rules), tuple(constraints), negated)


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def _fixpoint(rules: tuple[tuple[int, int, int], ...], facts: int, assumed: int) -> int:
    active = [(head, pos) for head, pos, neg in rules if not neg & assumed]
    model = facts
    changed = True
    while changed:
        changed = False
        for head, pos in active:
            if pos & ~model or model & head:
                continue
            model |= head
            changed = True
    return model


def _violates(constraints: tuple[tuple[int, int], ...], model: int) -> bool:
    return any(not pos & ~model and not neg & model for pos, neg in constraints)


def _enumerate(compiled: _CompiledProgram, input_mask: int) -> Iterator[int]:
    guess_space = compiled.negated & ~input_mask
    for chosen_inputs in _submasks(input_mask):
        fixed = chosen_inputs & compiled.negated
        for guess in _submasks(guess_space):
            assumed = guess | fixed
            model = _fixpoint(compiled.rules, chosen_inputs, assumed)
            if model & compiled.negated != assumed:
                continue
            if model & input_mask != chosen_inputs:
                continue
            if _violates(compiled.constraints, model):
                continue
            yield model


def _check_cap(atom_count: int, limits: EnumerationLimits) -> None:
    if atom_count > limits.max_atoms:
        raise EnumerationCapExceeded(atom_count, limits.max_atoms)


def stable_models_program(
    program: Program, *, limits: EnumerationLimits | None = None
) -> frozenset[Interpretation]:
    """Stable models over the choice-translated program, auxiliary atoms included."""

    limits = limits or EnumerationLimits()
    translated = translate_choice(program)
    compiled = _compile(translated, frozenset())
    _check_cap(len(compiled.atoms), limits)
    return frozenset(compiled.decode(mask) for mask in _enumerate(compiled, 0))


def stable_models_module(
    module: ProgramModule, *, limits: EnumerationLimits | None = None
) -> AnswerSetCollection:
    limits = limits or EnumerationLimits()
    aux: set[Atom] = set()
    translated = translate_choice(module.rules, aux)
    compiled = _compile(translated, module.atoms)
    _check_cap(len(compiled.atoms), limits)

    keep = ~compiled.encode(aux)
    input_mask = compiled.encode(module.inputs)
    models = frozenset(compiled.decode(mask & keep) for mask in _enumerate(compiled, input_mask))
    logger.debug(
        "module %s: %d stable model(s) over %d atom(s)",
        module.name or "<anonymous>",
        len(models),
        len(compiled.atoms),
    )
    return AnswerSetCollection.for_module(module, models)


def _choice_reduct(module: ProgramModule, candidate: frozenset[Atom]) -> PositiveProgram:
    kept: list[Rule] = [Rule.fact(atom) for atom in candidate & module.inputs]
    for rule in module.rules:
        if rule.body_neg & candidate:
            continue
        if rule.kind is RuleKind.CONSTRAINT:
            kept.append(Rule.constraint(rule.body_pos))
        elif rule.kind is RuleKind.NORMAL:
            kept.append(Rule.normal(rule.head_atom, rule.body_pos))
        else:
            kept.extend(Rule.normal(atom, rule.body_pos) for atom in rule.head & candidate)
    return PositiveProgram(tuple(kept))


def is_stable_model(module: ProgramModule, candidate: Iterable[Atom]) -> bool:
    """Check the module stable-model definition directly, choice rules included."""

    model = frozenset(candidate)
    if not model <= module.all_atoms:
        return False
    return least_model(_choice_reduct(module, model)) == model


def naive_stable_models_module(
    module: ProgramModule, *, limits: EnumerationLimits | None = None
) -> AnswerSetCollection:
    """Test every subset of the module's atoms against :func:`is_stable_model`."""

    limits = limits or EnumerationLimits()
    universe = sort_atoms(module.all_atoms)
    _check_cap(len(universe), limits)
    subsets = chain.from_iterable(combinations(universe, size) for size in range(len(universe) + 1))
    models = [frozenset(subset) for subset in subsets if is_stable_model(module, subset)]
    return AnswerSetCollection.for_module(module, models)
