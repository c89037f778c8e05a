"""Text format for program modules: parsing, grounding and printing.

A module file looks like::

    module pa
    input: safe(c1), exp(c1)
    output: buy(c1)
    hidden: car(c1)
    rules:
    buy(X) :- car(X), safe(X), not exp(X).
    car(c1).

``%`` starts a comment and ``-`` stands for an empty interface section.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from itertools import product
from pathlib import Path
from typing import Iterable, Mapping

from .config import MODULE_SUFFIX
from .core import Atom, Program, ProgramModule, RESERVED_INFIX, Rule, RuleKind, sort_atoms
from .errors import GroundingError, ModuleAlgebraError, ModuleParseError
from .validation import validate_module

logger = logging.getLogger(__name__)

SECTIONS = ("input", "output", "hidden", "rules")

_TOKEN = re.compile(
    r"""
    (?P<space>[ \t\r]+)
    |(?P<comment>%[^\n]*)
    |(?P<newline>\n)
    |(?P<if>:-)
    |(?P<colon>:)
    |(?P<lparen>\()
    |(?P<rparen>\))
    |(?P<lbrace>\{)
    |(?P<rbrace>\})
    |(?P<comma>,)
    |(?P<dot>\.)
    |(?P<dash>-)
    |(?P<ident>[A-Za-z_][A-Za-z0-9_]*)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True, slots=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, offset = 1, 0, 0
    while offset < len(text):
        match = _TOKEN.match(text, offset)
        if not match:
            raise ModuleParseError(f"unexpected character {text[offset]!r}", line, offset - line_start + 1)
        kind = match.lastgroup or ""
        if kind not in {"space", "comment"}:
            tokens.append(Token(kind, match.group(), line, offset - line_start + 1, offset))
        offset = match.end()
        if kind == "newline":
            line += 1
            line_start = offset
    tokens.append(Token("eof", "", line, offset - line_start + 1, offset))
    return tokens


def _is_variable(term: str) -> bool:
    return term[:1].isupper()


@dataclass(frozen=True, slots=True)
class AtomPattern:
    predicate: str
    arguments: tuple[str, ...] = ()

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(term for term in self.arguments if _is_variable(term))

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(term for term in self.arguments if not _is_variable(term))

    def substitute(self, binding: Mapping[str, str]) -> Atom:
        return Atom(self.predicate, tuple(binding.get(term, term) for term in self.arguments))

    def __str__(self) -> str:
        if not self.arguments:
            return self.predicate
        return f"{self.predicate}({','.join(self.arguments)})"


@dataclass(frozen=True, slots=True)
class RuleSource:
    kind: RuleKind
    head: tuple[AtomPattern, ...]
    body_pos: tuple[AtomPattern, ...]
    body_neg: tuple[AtomPattern, ...]
    line: int
    text: str

    @property
    def patterns(self) -> tuple[AtomPattern, ...]:
        return self.head + self.body_pos + self.body_neg

    @property
    def variables(self) -> tuple[str, ...]:
        ordered: dict[str, None] = {}
        for pattern in self.patterns:
            for variable in pattern.variables:
                ordered.setdefault(variable)
        return tuple(ordered)

    def instantiate(self, binding: Mapping[str, str]) -> Rule:
        return Rule(
            self.kind,
            frozenset(pattern.substitute(binding) for pattern in self.head),
            frozenset(pattern.substitute(binding) for pattern in self.body_pos),
            frozenset(pattern.substitute(binding) for pattern in self.body_neg),
        )


@dataclass(frozen=True, slots=True)
class ModuleSource:
    name: str
    input_decl: tuple[str, ...] = ()
    output_decl: tuple[str, ...] = ()
    hidden_decl: tuple[str, ...] = ()
    rules: tuple[RuleSource, ...] = ()

    @property
    def rule_texts(self) -> tuple[str, ...]:
        return tuple(rule.text for rule in self.rules)

    @property
    def constants(self) -> frozenset[str]:
        found: set[str] = set()
        for declared in (*self.input_decl, *self.output_decl, *self.hidden_decl):
            found.update(Atom.parse(declared).arguments)
        for rule in self.rules:
            for pattern in rule.patterns:
                found.update(pattern.constants)
        return frozenset(found)


class _Parser:
    def __init__(self, text: str, allow_reserved: bool):
        self.text = text
        self.tokens = tokenize(text)
        self.position = 0
        self.allow_reserved = allow_reserved

    @property
    def current(self) -> Token:
        return self.tokens[self.position]

    def _error(self, message: str, token: Token | None = None) -> ModuleParseError:
        token = token or self.current
        return ModuleParseError(message, token.line, token.column)

    def _advance(self) -> Token:
        token = self.current
        self.position += 1
        return token

    def _expect(self, kind: str, what: str) -> Token:
        if self.current.kind != kind:
            found = self.current.text or "end of input"
            raise self._error(f"expected {what}, found {found!r}")
        return self._advance()

    def _skip_newlines(self) -> None:
        while self.current.kind == "newline":
            self._advance()

    def _end_of_line(self) -> None:
        if self.current.kind not in {"newline", "eof"}:
            raise self._error(f"unexpected {self.current.text!r} at end of line")
        self._skip_newlines()

    def _identifier(self, token: Token, role: str) -> str:
        name = token.text
        if not name[:1].islower():
            raise self._error(f"{role} must start with a lowercase letter: {name!r}", token)
        if RESERVED_INFIX in name and not self.allow_reserved:
            raise self._error(f"{name!r} uses the reserved '{RESERVED_INFIX}' namespace", token)
        return name

    def parse(self) -> ModuleSource:
        self._skip_newlines()
        keyword = self._expect("ident", "'module'")
        if keyword.text != "module":
            raise self._error("a module file must start with 'module <name>'", keyword)
        name = self._expect("ident", "module name").text
        self._end_of_line()

        declarations: dict[str, tuple[str, ...]] = {}
        owner: dict[str, str] = {}
        rules: tuple[RuleSource, ...] = ()
        while self.current.kind != "eof":
            section_token = self._expect("ident", "a section name")
            section = section_token.text
            if section not in SECTIONS:
                raise self._error(f"unknown section {section!r}", section_token)
            if section in declarations or (section == "rules" and rules):
                raise self._error(f"duplicate section {section!r}", section_token)
            self._expect("colon", "':'")
            if section == "rules":
                rules = self._rules()
                declarations["rules"] = ()
                break
            declared = self._declaration()
            for atom_text, token in declared:
                if atom_text in owner:
                    raise self._error(
                        f"atom {atom_text} declared in both {owner[atom_text]} and {section}", token
                    )
                owner[atom_text] = section
            declarations[section] = tuple(atom_text for atom_text, _ in declared)
            self._end_of_line()

        return ModuleSource(
            name=name,
            input_decl=declarations.get("input", ()),
            output_decl=declarations.get("output", ()),
            hidden_decl=declarations.get("hidden", ()),
            rules=rules,
        )

    def _declaration(self) -> list[tuple[str, Token]]:
        if self.current.kind == "dash":
            self._advance()
            return []
        declared: list[tuple[str, Token]] = []
        while True:
            token = self.current
            pattern = self._atom()
            if pattern.variables:
                raise self._error(f"interface atom {pattern} must be ground", token)
            declared.append((str(pattern), token))
            if self.current.kind != "comma":
                return declared
            self._advance()

    def _atom(self) -> AtomPattern:
        token = self._expect("ident", "an atom")
        predicate = self._identifier(token, "predicate")
        if self.current.kind != "lparen":
            return AtomPattern(predicate)
        self._advance()
        terms: list[str] = []
        while True:
            term = self._expect("ident", "a term")
            if _is_variable(term.text):
                terms.append(term.text)
            else:
                terms.append(self._identifier(term, "constant"))
            if self.current.kind == "rparen":
                self._advance()
                return AtomPattern(predicate, tuple(terms))
            self._expect("comma", "',' or ')'")

    def _rules(self) -> tuple[RuleSource, ...]:
        parsed: list[RuleSource] = []
        while True:
            self._skip_newlines()
            if self.current.kind == "eof":
                return tuple(parsed)
            parsed.append(self._rule())

    def _rule(self) -> RuleSource:
        start = self.current
        head: tuple[AtomPattern, ...] = ()
        if self.current.kind == "if":
            kind = RuleKind.CONSTRAINT
        elif self.current.kind == "lbrace":
            kind = RuleKind.CHOICE
            head = self._choice_head()
        else:
            kind = RuleKind.NORMAL
            head = (self._atom(),)

        body_pos: list[AtomPattern] = []
        body_neg: list[AtomPattern] = []
        if self.current.kind == "if":
            self._advance()
            self._skip_newlines()
            if self.current.kind != "dot":
                self._body(body_pos, body_neg)
        end = self._expect("dot", "'.' at the end of the rule")
        text = " ".join(self.text[start.offset : end.offset + 1].split())
        return RuleSource(kind, head, tuple(body_pos), tuple(body_neg), start.line, text)

    def _choice_head(self) -> tuple[AtomPattern, ...]:
        brace = self._advance()
        if self.current.kind == "rbrace":
            raise self._error("choice rule needs at least one head atom", brace)
        atoms = [self._atom()]
        while self.current.kind == "comma":
            self._advance()
            atoms.append(self._atom())
        self._expect("rbrace", "'}'")
        return tuple(atoms)

    def _body(self, body_pos: list[AtomPattern], body_neg: list[AtomPattern]) -> None:
        while True:
            self._skip_newlines()
            negated = (
                self.current.text == "not"
                and self.tokens[self.position + 1].kind == "ident"
            )
            if negated:
                self._advance()
            (body_neg if negated else body_pos).append(self._atom())
            self._skip_newlines()
            if self.current.kind != "comma":
                return
            self._advance()


def parse_module(text: str, *, allow_reserved: bool = False) -> ModuleSource:
    """Parse module text into a :class:`ModuleSource` without grounding it."""

    return _Parser(text, allow_reserved).parse()


def ground(source: ModuleSource) -> ProgramModule:
    """Instantiate every rule over the module's own constants."""

    inputs = frozenset(Atom.parse(text) for text in source.input_decl)
    outputs = frozenset(Atom.parse(text) for text in source.output_decl)
    hidden = frozenset(Atom.parse(text) for text in source.hidden_decl)
    declared = inputs | outputs | hidden
    constants = sorted(source.constants)

    rules: list[Rule] = []
    for rule_source in source.rules:
        variables = rule_source.variables
        for values in product(constants, repeat=len(variables)):
            rule = rule_source.instantiate(dict(zip(variables, values)))
            headed_inputs = rule.head & inputs
            if headed_inputs:
                names = ", ".join(map(str, sort_atoms(headed_inputs)))
                raise GroundingError(
                    f"line {rule_source.line}: grounding `{rule}` puts input atom(s) {names} in a head"
                )
            stray = rule.atoms - declared
            if stray:
                names = ", ".join(map(str, sort_atoms(stray)))
                raise GroundingError(
                    f"line {rule_source.line}: grounded atom(s) {names} of `{rule}` are not declared"
                )
            rules.append(rule)

    module = ProgramModule(Program(tuple(rules)), inputs, outputs, hidden, name=source.name)
    result = validate_module(module)
    if result.has_errors:
        details = "; ".join(issue.message for issue in result.errors)
        raise GroundingError(f"module {source.name} is not well formed: {details}")
    return module


def load_module(path: Path, *, allow_reserved: bool = False) -> ProgramModule:
    text = Path(path).read_text(encoding="utf-8")
    return ground(parse_module(text, allow_reserved=allow_reserved))


def _interface_line(section: str, members: Iterable[Atom]) -> str:
    rendered = ", ".join(str(atom) for atom in sort_atoms(members))
    return f"{section}: {rendered or '-'}"


def format_module(module: ProgramModule, name: str | None = None) -> str:
    """Render ``module`` in the text format; :func:`parse_module` reads it back."""

    lines = [
        f"module {name or module.name or 'anonymous'}",
        _interface_line("input", module.inputs),
        _interface_line("output", module.outputs),
        _interface_line("hidden", module.hidden),
        "rules:",
    ]
    lines.extend(str(rule) for rule in module.rules)
    return "\n".join(lines) + "\n"


@dataclass
class LoadReport:
    modules: dict[str, ProgramModule]
    warnings: list[str] = field(default_factory=list)
    errors: list[str] = field(default_factory=list)

    @property
    def has_errors(self) -> bool:
        return bool(self.errors)


class ModuleLoader:
    """Load every module file of a directory, keyed by module name."""

    SUPPORTED_EXTENSIONS = {MODULE_SUFFIX}

    def __init__(self, module_dir: Path, *, allow_reserved: bool = False):
        self.module_dir = Path(module_dir)
        self.allow_reserved = allow_reserved

    def load(self) -> LoadReport:
        modules: dict[str, ProgramModule] = {}
        warnings: list[str] = []
        errors: list[str] = []

        for path in sorted(self.module_dir.glob("*")):
            if path.suffix.lower() not in self.SUPPORTED_EXTENSIONS:
                message = f"Ignoring unsupported file: {path.name}"
                warnings.append(message)
                logger.warning(message)
                continue

            try:
                module = load_module(path, allow_reserved=self.allow_reserved)
            except (ModuleAlgebraError, UnicodeDecodeError) as exc:
                message = f"Failed to load {path.name}: {exc}"
                errors.append(message)
                logger.error(message)
                continue

            if module.name in modules:
                message = f"Duplicate module name {module.name} in {path.name}; keeping first occurrence"
                warnings.append(message)
                logger.warning(message)
                continue
            modules[module.name] = module

        return LoadReport(modules=modules, warnings=warnings, errors=errors)
