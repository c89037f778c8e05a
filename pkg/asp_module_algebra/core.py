"""Atoms, rules, programs and program modules.

Every value here is immutable. Sets of atoms are ``frozenset`` instances and
ordering for output is always by canonical atom string, so rendering is stable
across runs regardless of hash seeds.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Container, Iterable, Iterator, Mapping

RESERVED_INFIX = "__"

IDENTIFIER_PATTERN = r"[a-z][A-Za-z0-9_]*"
_IDENTIFIER = re.compile(rf"^{IDENTIFIER_PATTERN}$")
_ATOM_TEXT = re.compile(
    rf"^({IDENTIFIER_PATTERN})(?:\(({IDENTIFIER_PATTERN}(?:,{IDENTIFIER_PATTERN})*)\))?$"
)


@dataclass(frozen=True, slots=True)
class Atom:
    """A ground atom, ``predicate`` or ``predicate(c1,...,cn)``."""

    predicate: str
    arguments: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arguments", tuple(self.arguments))
        for part in (self.predicate, *self.arguments):
            if not _IDENTIFIER.match(part):
                raise ValueError(f"Invalid identifier in atom: {part!r}")

    @classmethod
    def parse(cls, text: str) -> Atom:
        compact = re.sub(r"\s+", "", text)
        match = _ATOM_TEXT.match(compact)
        if not match:
            raise ValueError(f"Not a ground atom: {text!r}")
        predicate, args = match.groups()
        return cls(predicate, tuple(args.split(",")) if args else ())

    @property
    def name(self) -> str:
        if not self.arguments:
            return self.predicate
        return f"{self.predicate}({','.join(self.arguments)})"

    @property
    def is_reserved(self) -> bool:
        return any(RESERVED_INFIX in part for part in (self.predicate, *self.arguments))

    def with_predicate(self, predicate: str) -> Atom:
        return Atom(predicate, self.arguments)

    def __str__(self) -> str:
        return self.name


def atoms(*texts: str) -> frozenset[Atom]:
    """Shorthand used by fixtures and tests: ``atoms("a", "exp(c2)")``."""

    return frozenset(Atom.parse(text) for text in texts)


def sort_atoms(items: Iterable[Atom]) -> list[Atom]:
    return sorted(items, key=str)


def fresh_atom(atom: Atom, tag: str, taken: Container[Atom]) -> Atom:
    """Return ``<predicate>__<tag>`` over the same arguments, bumped until unused."""

    base = f"{atom.predicate}{RESERVED_INFIX}{tag}"
    candidate = atom.with_predicate(base)
    bump = 2
    while candidate in taken:
        candidate = atom.with_predicate(f"{base}_{bump}")
        bump += 1
    return candidate


class RuleKind(str, Enum):
    NORMAL = "normal"
    CONSTRAINT = "constraint"
    CHOICE = "choice"


def _literals(body_pos: Iterable[Atom], body_neg: Iterable[Atom]) -> list[str]:
    return [str(atom) for atom in sort_atoms(body_pos)] + [
        f"not {atom}" for atom in sort_atoms(body_neg)
    ]


@dataclass(frozen=True, slots=True)
class Rule:
    kind: RuleKind
    head: frozenset[Atom] = frozenset()
    body_pos: frozenset[Atom] = frozenset()
    body_neg: frozenset[Atom] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", RuleKind(self.kind))
        for name in ("head", "body_pos", "body_neg"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))

        if self.kind is RuleKind.NORMAL and len(self.head) != 1:
            raise ValueError(f"Normal rule needs exactly one head atom, got {len(self.head)}")
        if self.kind is RuleKind.CONSTRAINT and self.head:
            raise ValueError("Constraint must have an empty head")
        if self.kind is RuleKind.CHOICE and not self.head:
            raise ValueError("Choice rule needs at least one head atom")

    @classmethod
    def normal(cls, head: Atom, pos: Iterable[Atom] = (), neg: Iterable[Atom] = ()) -> Rule:
        return cls(RuleKind.NORMAL, frozenset({head}), frozenset(pos), frozenset(neg))

    @classmethod
    def fact(cls, head: Atom) -> Rule:
        return cls.normal(head)

    @classmethod
    def constraint(cls, pos: Iterable[Atom] = (), neg: Iterable[Atom] = ()) -> Rule:
        return cls(RuleKind.CONSTRAINT, frozenset(), frozenset(pos), frozenset(neg))

    @classmethod
    def choice(cls, heads: Iterable[Atom], pos: Iterable[Atom] = (), neg: Iterable[Atom] = ()) -> Rule:
        return cls(RuleKind.CHOICE, frozenset(heads), frozenset(pos), frozenset(neg))

    @property
    def atoms(self) -> frozenset[Atom]:
        return self.head | self.body_pos | self.body_neg

    @property
    def head_atom(self) -> Atom:
        if self.kind is not RuleKind.NORMAL:
            raise ValueError(f"{self.kind.value} rule has no single head atom")
        return next(iter(self.head))

    def rename_heads(self, mapping: Mapping[Atom, Atom]) -> Rule:
        if self.head.isdisjoint(mapping):
            return self
        head = frozenset(mapping.get(atom, atom) for atom in self.head)
        return replace(self, head=head)

    def __str__(self) -> str:
        body = _literals(self.body_pos, self.body_neg)
        if self.kind is RuleKind.CONSTRAINT:
            return f":- {', '.join(body)}." if body else ":- ."
        if self.kind is RuleKind.CHOICE:
            head = "{" + ", ".join(str(atom) for atom in sort_atoms(self.head)) + "}"
        else:
            head = str(self.head_atom)
        if not body:
            return f"{head}."
        return f"{head} :- {', '.join(body)}."


@dataclass(frozen=True, slots=True, eq=False)
class Program:
    """Rules in first-occurrence order; equality ignores order and duplicates."""

    rules: tuple[Rule, ...] = ()
    _rule_set: frozenset[Rule] = field(init=False, repr=False, default=frozenset())

    def __post_init__(self) -> None:
        unique = tuple(dict.fromkeys(self.rules))
        object.__setattr__(self, "rules", unique)
        object.__setattr__(self, "_rule_set", frozenset(unique))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Program):
            return NotImplemented
        return self._rule_set == other._rule_set

    def __hash__(self) -> int:
        return hash(self._rule_set)

    def __iter__(self) -> Iterator[Rule]:
        return iter(self.rules)

    def __len__(self) -> int:
        return len(self.rules)

    @property
    def atoms(self) -> frozenset[Atom]:
        collected: set[Atom] = set()
        for rule in self.rules:
            collected |= rule.atoms
        return frozenset(collected)

    @property
    def head_atoms(self) -> frozenset[Atom]:
        collected: set[Atom] = set()
        for rule in self.rules:
            collected |= rule.head
        return frozenset(collected)

    @property
    def has_choice(self) -> bool:
        return any(rule.kind is RuleKind.CHOICE for rule in self.rules)

    def extend(self, rules: Iterable[Rule]) -> Program:
        return Program(self.rules + tuple(rules))

    def union(self, other: Program) -> Program:
        return self.extend(other.rules)


@dataclass(frozen=True, slots=True)
class ProgramModule:
    """A program module ⟨R, I, O, H⟩.

    Construction does not enforce the interface invariants so that
    :func:`asp_module_algebra.validation.validate_module` can diagnose
    malformed modules. ``name`` is a label only and takes no part in equality.
    """

    rules: Program = field(default_factory=Program)
    inputs: frozenset[Atom] = frozenset()
    outputs: frozenset[Atom] = frozenset()
    hidden: frozenset[Atom] = frozenset()
    name: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.rules, Program):
            object.__setattr__(self, "rules", Program(tuple(self.rules)))
        for attr in ("inputs", "outputs", "hidden"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))

    @classmethod
    def empty(cls, name: str = "empty") -> ProgramModule:
        return cls(name=name)

    @property
    def atoms(self) -> frozenset[Atom]:
        return self.inputs | self.outputs | self.hidden

    @property
    def visible(self) -> frozenset[Atom]:
        return self.inputs | self.outputs

    @property
    def all_atoms(self) -> frozenset[Atom]:
        """The signature plus every atom the rules mention."""

        return self.atoms | self.rules.atoms

    def renamed(self, name: str) -> ProgramModule:
        return replace(self, name=name)


def visible_atoms(module: ProgramModule) -> frozenset[Atom]:
    return module.inputs | module.outputs


Interpretation = frozenset[Atom]


def canonical_model(model: Iterable[Atom]) -> tuple[str, ...]:
    return tuple(sorted(str(atom) for atom in model))


def canonical_models(models: Iterable[Iterable[Atom]]) -> list[tuple[str, ...]]:
    return sorted(canonical_model(model) for model in models)


def render_model(model: Iterable[Atom]) -> str:
    return "{" + ", ".join(canonical_model(model)) + "}"


@dataclass(frozen=True, slots=True)
class AnswerSetCollection:
    owner_input: frozenset[Atom]
    owner_output: frozenset[Atom]
    owner_hidden: frozenset[Atom]
    models: frozenset[Interpretation]

    def __post_init__(self) -> None:
        for attr in ("owner_input", "owner_output", "owner_hidden"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        object.__setattr__(self, "models", frozenset(frozenset(m) for m in self.models))
        owned = self.atoms
        for model in self.models:
            stray = model - owned
            if stray:
                raise ValueError(
                    f"Model contains atoms outside its owner's signature: {sorted(map(str, stray))}"
                )

    @classmethod
    def for_module(cls, module: ProgramModule, models: Iterable[Interpretation]) -> AnswerSetCollection:
        return cls(module.inputs, module.outputs, module.hidden, frozenset(models))

    @property
    def atoms(self) -> frozenset[Atom]:
        return self.owner_input | self.owner_output | self.owner_hidden

    @property
    def visible(self) -> frozenset[Atom]:
        return self.owner_input | self.owner_output

    def __len__(self) -> int:
        return len(self.models)

    def __iter__(self) -> Iterator[Interpretation]:
        return iter(self.models)

    def __contains__(self, model: object) -> bool:
        return model in self.models

    def canonical(self) -> list[tuple[str, ...]]:
        return canonical_models(self.models)

    def restricted(self, scope: Iterable[Atom]) -> frozenset[Interpretation]:
        keep = frozenset(scope)
        return frozenset(model & keep for model in self.models)

    def visible_projections(self) -> Counter[Interpretation]:
        visible = self.visible
        return Counter(model & visible for model in self.models)
