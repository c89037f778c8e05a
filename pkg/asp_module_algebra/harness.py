"""Shipped example fixtures, random module generation and theorem campaigns."""

from __future__ import annotations

import logging
import random
import time
from collections import Counter
from dataclasses import dataclass, field, replace
from functools import cache
from typing import Callable, Iterable

from .compose import (
    PRIMED_TAG,
    RenameMap,
    build_bridge,
    build_union_module,
    compose_conservative,
    compose_relaxed,
    compose_relaxed_rt,
    compose_sqcup,
    hide,
    project,
    rename_output,
)
from .config import (
    CAMPAIGN_MAX_ATOMS,
    DEFAULT_MAX_ATOMS,
    FIXTURE_DIR,
    MAX_GENERATION_ATTEMPTS,
    MODULE_SUFFIX,
    EnumerationLimits,
)
from .core import Atom, Interpretation, Program, ProgramModule, Rule, atoms, canonical_model, sort_atoms
from .depgraph import mutually_independent
from .equivalence import modularly_equivalent
from .errors import CompositionError, GenerationError
from .join import MODULE_THEOREM, check_module_theorem, natural_join
from .parser import load_module
from .reports import (
    TheoremReport,
    Verdict,
    compare_models,
    compare_multisets,
    differs_on,
    not_applicable,
)
from .semantics import naive_stable_models_module, stable_models_module

logger = logging.getLogger(__name__)

RELAXED_RT = "relaxed-rt"
CONSERVATIVE = "conservative"
HIDE_PROJECT = "hide-project"
RENAME_RECOVERY = "rename-recovery"
LEMMA2_DEMO = "lemma2-demo"
SEMANTICS_ORACLE = "semantics-oracle"

THEOREM_IDS = (
    MODULE_THEOREM,
    RELAXED_RT,
    CONSERVATIVE,
    HIDE_PROJECT,
    RENAME_RECOVERY,
    LEMMA2_DEMO,
    SEMANTICS_ORACLE,
)
PAIR_THEOREMS = frozenset({MODULE_THEOREM, RELAXED_RT, CONSERVATIVE})
SINGLE_THEOREMS = frozenset({HIDE_PROJECT, RENAME_RECOVERY, SEMANTICS_ORACLE})


# -- fixtures -----------------------------------------------------------------


@cache
def fixture_module(name: str) -> ProgramModule:
    """Load ``fixtures/<name>.mlp`` from the package."""

    return load_module(FIXTURE_DIR / f"{name}{MODULE_SUFFIX}")


def models(*members: Iterable[str]) -> frozenset[Interpretation]:
    """``models(["a"], ["a", "b"])`` is ``{{a}, {a, b}}``."""

    return frozenset(atoms(*member) for member in members)


@dataclass(frozen=True, slots=True, eq=False)
class Fixture:
    name: str
    modules: dict[str, ProgramModule]
    expected_models: dict[str, frozenset[Interpretation]] = field(default_factory=dict)
    expected_counts: dict[str, int] = field(default_factory=dict)
    expected_joins: dict[tuple[str, str], frozenset[Interpretation]] = field(default_factory=dict)
    expected_join_counts: dict[tuple[str, str], int] = field(default_factory=dict)
    max_atoms: int = DEFAULT_MAX_ATOMS

    @property
    def limits(self) -> EnumerationLimits:
        return EnumerationLimits(self.max_atoms)


def _example3() -> list[Fixture]:
    pa, pb, pc = fixture_module("pa"), fixture_module("pb"), fixture_module("pc")
    mg1, mg2 = fixture_module("mg1"), fixture_module("mg2")
    cars = ["car(c1)", "car(c2)", "car(c3)"]
    return [
        Fixture("example3-pa", {"pa": pa}, expected_counts={"pa": 64}),
        Fixture("example3-pb", {"pb": pb}, expected_models={"pb": models(["exp(c2)"])}),
        Fixture("example3-pc", {"pc": pc}, expected_models={"pc": models(["exp(c3)"])}),
        Fixture("example3-mg1", {"mg1": mg1}, expected_models={"mg1": models(["safe(c1)"])}),
        Fixture(
            "example3-mg2",
            {"mg2": mg2},
            expected_models={
                "mg2": models(
                    ["safe(c1)", *cars, "airbag(c1)"],
                    ["safe(c1)", "safe(c3)", *cars, "airbag(c1)", "airbag(c3)"],
                )
            },
        ),
    ]


def _worked_q() -> Fixture:
    pa, mg1, pb = fixture_module("pa"), fixture_module("mg1"), fixture_module("pb")
    first = compose_sqcup(pa, mg1)
    q = compose_sqcup(first, pb)
    cars = ["car(c1)", "car(c2)", "car(c3)"]
    return Fixture(
        "worked-Q",
        {"pa": pa, "mg1": mg1, "pb": pb, "pa_mg1": first, "Q": q},
        expected_models={
            "Q": models(
                ["safe(c1)", "exp(c1)", "exp(c2)", *cars],
                ["buy(c1)", "safe(c1)", "exp(c2)", *cars],
            )
        },
        expected_join_counts={("pa", "mg1"): 8},
    )


def _common_outputs() -> Fixture:
    pb, pc = fixture_module("pb"), fixture_module("pc")
    return Fixture(
        "common-outputs",
        {"pb": pb, "pc": pc, "pb_pc": compose_relaxed(pb, pc)},
        expected_models={"pb_pc": models(["exp(c2)", "exp(c3)"])},
        expected_joins={("pb", "pc"): frozenset()},
    )


def _cyclic_dependencies() -> Fixture:
    loop1, loop2 = fixture_module("loop1"), fixture_module("loop2")
    both = models([], ["airbag", "safe"])
    return Fixture(
        "cyclic-dependencies",
        {"loop1": loop1, "loop2": loop2, "union": compose_relaxed(loop1, loop2)},
        expected_models={"loop1": both, "loop2": both, "union": models([])},
        expected_joins={("loop1", "loop2"): both},
    )


def _minimization_counter() -> Fixture:
    p1, p2 = fixture_module("min_p1"), fixture_module("min_p2")
    return Fixture(
        "minimization-counter",
        {"p1": p1, "p2": p2, "union": compose_relaxed(p1, p2)},
        expected_models={"p1": models(["a", "b"]), "p2": models([], ["a", "b"]), "union": frozenset()},
        expected_joins={("p1", "p2"): models(["a", "b"])},
    )


def _lemma2() -> Fixture:
    p1, q1, p2 = fixture_module("lemma_p1"), fixture_module("lemma_q1"), fixture_module("lemma_p2")
    return Fixture(
        "lemma2",
        {
            "p1": p1,
            "q1": q1,
            "p2": p2,
            "p1_p2": compose_relaxed(p1, p2),
            "q1_p2": compose_relaxed(q1, p2),
        },
        expected_models={
            "p1": models(["a"]),
            "q1": models(["a"]),
            "p2": models(["b"]),
            "p1_p2": models(["a", "b"]),
            "q1_p2": frozenset(),
        },
    )


def _renaming_transformed() -> Fixture:
    p1, q1, p2 = fixture_module("lemma_p1"), fixture_module("lemma_q1"), fixture_module("lemma_p2")
    bridge = build_bridge(p1, p2, rename_all_outputs=True)
    q_bridge = build_bridge(q1, p2, rename_all_outputs=True)
    union = build_union_module(bridge.common, bridge.primed, bridge.double_primed)
    return Fixture(
        "renaming-transformed",
        {"rho_p1": bridge.first, "rho_p2": bridge.second, "union": union, "rho_q1": q_bridge.first},
        expected_models={
            "rho_p1": models(["a", "a__r1"], ["a", "b", "a__r1"]),
            "rho_p2": models(["b", "b__r2"], ["a", "b", "b__r2"]),
            "rho_q1": models(["a", "a__r1"]),
        },
        expected_counts={"union": 16},
        expected_joins={
            ("rho_p1", "rho_p2"): models(["a", "b", "a__r1", "b__r2"]),
            ("rho_q1", "rho_p2"): frozenset(),
        },
    )


def _output_renaming() -> Fixture:
    pa = fixture_module("pa")
    rho_pa = rename_output(pa, RenameMap.fresh(pa.outputs, PRIMED_TAG, pa.all_atoms))
    # Per car: 8 input combinations minus "safe, not expensive, not bought".
    return Fixture("output-renaming", {"pa": pa, "rho_pa": rho_pa}, expected_counts={"rho_pa": 7**3})


def _shared_choice() -> Fixture:
    """A choice over a common output: ⊎^RT keeps the visible set but not the count."""

    left, right = fixture_module("shared_choice"), fixture_module("shared_fact")
    return Fixture(
        "shared-choice",
        {
            "left": left,
            "right": right,
            "relaxed": compose_relaxed(left, right),
            "rt": compose_relaxed_rt(left, right),
        },
        expected_models={
            "relaxed": models(["o"]),
            "rt": models(["o", "o__r2"], ["o", "o__r1", "o__r2"]),
        },
    )


def _conservative_mg() -> Fixture:
    mg1, mg2 = fixture_module("mg1"), fixture_module("mg2")
    return Fixture(
        "conservative-mg",
        {"mg1": mg1, "mg2": mg2, "mg1_mg2": compose_conservative(mg1, mg2)},
        expected_models={
            "mg1_mg2": models(
                [
                    "safe(c1)",
                    "safe__r1(c1)",
                    "safe__r2(c1)",
                    "airbag(c1)",
                    "car(c1)",
                    "car(c2)",
                    "car(c3)",
                ]
            )
        },
    )


def _alice_scenario() -> Fixture:
    pa, pb, pc = fixture_module("pa"), fixture_module("pb"), fixture_module("pc")
    mg1, mg2 = fixture_module("mg1"), fixture_module("mg2_renamed")
    expensive = compose_relaxed(pb, pc)
    safety = compose_conservative(mg1, mg2)
    alice = compose_sqcup(compose_sqcup(expensive, safety), pa)
    return Fixture(
        "alice-scenario",
        {"expensive": expensive, "safety": safety, "alice": alice},
        expected_models={
            "alice": models(
                [
                    "buy(c1)",
                    "exp(c2)",
                    "exp(c3)",
                    "safe(c1)",
                    "safe__r1(c1)",
                    "safe__r2(c1)",
                    "airbag(c1)",
                    "car(c1)",
                    "car(c2)",
                    "car(c3)",
                    "mcar(c1)",
                    "mcar(c2)",
                    "mcar(c3)",
                ]
            )
        },
        max_atoms=CAMPAIGN_MAX_ATOMS,
    )


def fixtures() -> list[Fixture]:
    return [
        *_example3(),
        _worked_q(),
        _common_outputs(),
        _cyclic_dependencies(),
        _minimization_counter(),
        _lemma2(),
        _renaming_transformed(),
        _output_renaming(),
        _shared_choice(),
        _conservative_mg(),
        _alice_scenario(),
    ]


def verify_fixture(fixture: Fixture) -> list[str]:
    """Compare every documented expectation; an empty list means all hold."""

    limits = fixture.limits
    problems: list[str] = []
    solved = {
        key: stable_models_module(fixture.modules[key], limits=limits).models
        for key in sorted({*fixture.expected_models, *fixture.expected_counts})
    }
    for key, expected in fixture.expected_models.items():
        if solved[key] != expected:
            problems.append(f"{fixture.name}: AS({key}) has {len(solved[key])} model(s), expected {len(expected)}")
    for key, count in fixture.expected_counts.items():
        if len(solved[key]) != count:
            problems.append(f"{fixture.name}: |AS({key})| = {len(solved[key])}, expected {count}")

    for left, right in sorted({*fixture.expected_joins, *fixture.expected_join_counts}):
        joined = natural_join(
            stable_models_module(fixture.modules[left], limits=limits),
            stable_models_module(fixture.modules[right], limits=limits),
        ).models
        expected_set = fixture.expected_joins.get((left, right))
        if expected_set is not None and joined != expected_set:
            problems.append(f"{fixture.name}: AS({left}) ⋈ AS({right}) differs from the expected set")
        expected_count = fixture.expected_join_counts.get((left, right))
        if expected_count is not None and len(joined) != expected_count:
            problems.append(
                f"{fixture.name}: |AS({left}) ⋈ AS({right})| = {len(joined)}, expected {expected_count}"
            )
    return problems


# -- random generation --------------------------------------------------------


@dataclass(frozen=True, slots=True)
class GeneratorConfig:
    atom_budget: int = 6
    rule_budget: int = 5
    input_fraction: float = 0.3
    output_fraction: float = 0.5
    choice_probability: float = 0.15
    negation_probability: float = 0.3
    constraint_probability: float = 0.1
    forbid_cross_positive_cycles: bool = True
    acyclic: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.atom_budget <= DEFAULT_MAX_ATOMS:
            raise ValueError(f"atom_budget must be within 0..{DEFAULT_MAX_ATOMS}, got {self.atom_budget}")
        if self.rule_budget < 0:
            raise ValueError(f"rule_budget must be non-negative, got {self.rule_budget}")
        for name in (
            "input_fraction",
            "output_fraction",
            "choice_probability",
            "negation_probability",
            "constraint_probability",
        ):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value}")
        if self.choice_probability + self.constraint_probability > 1.0:
            raise ValueError("choice_probability + constraint_probability must not exceed 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError(f"seed must be a 64-bit unsigned integer, got {self.seed}")


PositiveFilter = Callable[[Atom, Atom], bool]


def _any_positive(head: Atom, body_atom: Atom) -> bool:
    return True


def _ranked(rng: random.Random, universe: list[Atom]) -> PositiveFilter:
    order = list(universe)
    rng.shuffle(order)
    rank = {atom: position for position, atom in enumerate(order)}
    return lambda head, body_atom: rank[body_atom] < rank[head]


def _body(
    rng: random.Random,
    cfg: GeneratorConfig,
    positives: list[Atom],
    pool: list[Atom],
    low: int,
    high: int,
) -> tuple[set[Atom], set[Atom]]:
    pos: set[Atom] = set()
    neg: set[Atom] = set()
    for _ in range(rng.randint(low, high)):
        if pool and (not positives or rng.random() < cfg.negation_probability):
            neg.add(rng.choice(pool))
        elif positives:
            pos.add(rng.choice(positives))
    return pos, neg - pos


def _random_rules(
    rng: random.Random,
    cfg: GeneratorConfig,
    heads: list[Atom],
    choice_heads: list[Atom],
    pool: list[Atom],
    allows: PositiveFilter,
) -> list[Rule]:
    rules: list[Rule] = []
    for _ in range(cfg.rule_budget):
        roll = rng.random()
        if roll < cfg.constraint_probability and pool:
            pos, neg = _body(rng, cfg, pool, pool, 1, 2)
            rules.append(Rule.constraint(pos, neg))
            continue
        if roll < cfg.constraint_probability + cfg.choice_probability and choice_heads:
            size = min(len(choice_heads), rng.randint(1, 2))
            head = sort_atoms(rng.sample(choice_heads, size))
            positives = [atom for atom in pool if all(allows(h, atom) for h in head)]
            pos, neg = _body(rng, cfg, positives, pool, 0, 2)
            rules.append(Rule.choice(head, pos, neg))
            continue
        head_atom = rng.choice(heads)
        positives = [atom for atom in pool if allows(head_atom, atom)]
        pos, neg = _body(rng, cfg, positives, pool, 0, 3)
        rules.append(Rule.normal(head_atom, pos, neg))
    return rules


def _universe(cfg: GeneratorConfig) -> list[Atom]:
    return [Atom(f"p{index}") for index in range(cfg.atom_budget)]


def random_module(cfg: GeneratorConfig, rng: random.Random | None = None) -> ProgramModule:
    """A well-formed module over propositional atoms ``p0 .. p<n-1>``.

    Without ``rng`` the module depends on ``cfg.seed`` only.
    """

    rng = rng or random.Random(cfg.seed)
    universe = _universe(cfg)
    shuffled = list(universe)
    rng.shuffle(shuffled)
    input_count = round(len(shuffled) * cfg.input_fraction)
    output_count = min(len(shuffled) - input_count, round(len(shuffled) * cfg.output_fraction))
    inputs = shuffled[:input_count]
    outputs = shuffled[input_count : input_count + output_count]
    hidden = shuffled[input_count + output_count :]

    heads = sort_atoms(outputs + hidden)
    if cfg.rule_budget and not heads:
        raise GenerationError(
            f"rule_budget {cfg.rule_budget} needs head atoms but every atom is an input"
        )
    allows = _ranked(rng, universe) if cfg.acyclic else _any_positive
    rules = _random_rules(rng, cfg, heads, heads, sort_atoms(universe), allows)
    return ProgramModule(Program(tuple(rules)), inputs, outputs, hidden, name=f"random_{cfg.seed}")


@dataclass(frozen=True, slots=True)
class _PairRoles:
    external: list[Atom]
    outputs: tuple[list[Atom], list[Atom]]
    common: list[Atom]
    hidden: tuple[list[Atom], list[Atom]]


def _assign_roles(rng: random.Random, cfg: GeneratorConfig, shared_outputs: bool) -> _PairRoles:
    external: list[Atom] = []
    outputs: tuple[list[Atom], list[Atom]] = ([], [])
    common: list[Atom] = []
    hidden: tuple[list[Atom], list[Atom]] = ([], [])
    for atom in _universe(cfg):
        if rng.random() < cfg.input_fraction:
            external.append(atom)
        elif rng.random() < cfg.output_fraction:
            owner = rng.randrange(3 if shared_outputs else 2)
            (common if owner == 2 else outputs[owner]).append(atom)
        else:
            hidden[rng.randrange(2)].append(atom)
    return _PairRoles(external, outputs, common, hidden)


def _draw_pair(
    rng: random.Random,
    cfg: GeneratorConfig,
    shared_outputs: bool,
    choice_on_shared: bool,
) -> tuple[ProgramModule, ProgramModule]:
    roles = _assign_roles(rng, cfg, shared_outputs)
    ranked = _ranked(rng, _universe(cfg)) if cfg.acyclic else None
    upstream = rng.randrange(2)
    drawn: list[ProgramModule] = []
    for side, name in enumerate(("left", "right")):
        other = 1 - side
        own_outputs = roles.outputs[side] + roles.common
        own = own_outputs + roles.hidden[side]
        foreign = roles.external + roles.outputs[other]
        pool = sort_atoms(own + foreign)

        if ranked is not None:
            allows = ranked
        elif cfg.forbid_cross_positive_cycles and side != upstream:
            upstream_only = frozenset(roles.outputs[upstream])
            allows = lambda head, body_atom, blocked=upstream_only: body_atom not in blocked
        else:
            allows = _any_positive

        heads = sort_atoms(own)
        choice_heads = heads if choice_on_shared else [a for a in heads if a not in roles.common]
        rules = _random_rules(rng, cfg, heads, choice_heads, pool, allows) if heads else []
        program = Program(tuple(rules))
        extras = [atom for atom in sort_atoms(foreign) if rng.random() < cfg.input_fraction]
        inputs = (program.atoms - frozenset(own)) | frozenset(extras)
        drawn.append(ProgramModule(program, inputs, own_outputs, roles.hidden[side], name=name))
    return drawn[0], drawn[1]


def random_pair(
    cfg: GeneratorConfig,
    rng: random.Random | None = None,
    *,
    shared_outputs: bool = False,
    choice_on_shared: bool = True,
) -> tuple[ProgramModule, ProgramModule]:
    """Two modules over one atom universe with private hidden atoms.

    Without ``shared_outputs`` the output signatures are disjoint. With
    ``forbid_cross_positive_cycles`` the pair is mutually independent.
    """

    rng = rng or random.Random(cfg.seed)
    for attempt in range(1, MAX_GENERATION_ATTEMPTS + 1):
        p1, p2 = _draw_pair(rng, cfg, shared_outputs, choice_on_shared)
        if not cfg.forbid_cross_positive_cycles or mutually_independent(p1, p2):
            return p1, p2
        logger.debug("pair draw %d has a cross-module positive cycle; retrying", attempt)
    raise GenerationError(
        f"no mutually independent pair within {MAX_GENERATION_ATTEMPTS} attempts (seed {cfg.seed})"
    )


# -- theorem checks -------------------------------------------------------------


def check_relaxed_rt(
    p1: ProgramModule, p2: ProgramModule, *, limits: EnumerationLimits | None = None
) -> TheoremReport:
    """``P1 ⊎ P2 ≡_m P1 ⊎^RT P2``, reported over visible projections."""

    try:
        relaxed = compose_relaxed(p1, p2)
        transformed = compose_relaxed_rt(p1, p2)
    except CompositionError as exc:
        return not_applicable(RELAXED_RT, str(exc))

    verdict = modularly_equivalent(relaxed, transformed, limits=limits)
    if relaxed.inputs != transformed.inputs or relaxed.visible != transformed.visible:
        signature = (relaxed.visible ^ transformed.visible) | (relaxed.inputs ^ transformed.inputs)
        return differs_on(RELAXED_RT, (), (), signature, "signature", notes=verdict.diagnostics)

    lhs = stable_models_module(relaxed, limits=limits)
    rhs = stable_models_module(transformed, limits=limits)
    return compare_multisets(
        RELAXED_RT,
        (model & relaxed.visible for model in lhs),
        (model & transformed.visible for model in rhs),
        notes=verdict.diagnostics,
    )


def check_conservative(
    p1: ProgramModule, p2: ProgramModule, *, limits: EnumerationLimits | None = None
) -> TheoremReport:
    """``M ∈ AS(P1 ⊗ P2)`` iff ``M ∩ (At(P1) ∪ At(P2)) ∈ AS(P1) ⋈ AS(P2)``.

    Also checks that restriction is injective and that every model holds all
    or none of ``o``, ``o__r1`` and ``o__r2``.
    """

    try:
        bridge = build_bridge(p1, p2)
        composite = compose_conservative(p1, p2)
    except CompositionError as exc:
        return not_applicable(CONSERVATIVE, str(exc))

    joined = natural_join(stable_models_module(p1, limits=limits), stable_models_module(p2, limits=limits))
    composed = stable_models_module(composite, limits=limits)
    scope = p1.all_atoms | p2.all_atoms
    restricted = [model & scope for model in composed]

    primed, double_primed = bridge.primed.as_dict(), bridge.double_primed.as_dict()
    for model in sorted(composed, key=canonical_model):
        for atom in sort_atoms(bridge.common):
            present = {atom in model, primed[atom] in model, double_primed[atom] in model}
            if len(present) != 1:
                return differs_on(
                    CONSERVATIVE,
                    restricted,
                    joined,
                    model,
                    "lhs",
                    notes=(f"{atom} and its renamed copies disagree",),
                )

    preimages = Counter(restricted)
    shared = sorted((m for m, count in preimages.items() if count > 1), key=canonical_model)
    if shared:
        return differs_on(
            CONSERVATIVE, restricted, joined, shared[0], "lhs", notes=("restriction is not injective",)
        )
    return compare_models(CONSERVATIVE, restricted, joined)


def check_hide_project(
    module: ProgramModule, scope: Iterable[Atom], *, limits: EnumerationLimits | None = None
) -> TheoremReport:
    scope = frozenset(scope)
    hidden = hide(module, scope)
    projected = project(module, scope)
    drift = (hidden.visible ^ (module.visible - scope)) | (projected.visible ^ (module.visible & scope))
    base = stable_models_module(module, limits=limits)
    if drift:
        return differs_on(HIDE_PROJECT, base, (), drift, "signature", notes=("visible signature drift",))

    report = compare_models(HIDE_PROJECT, base, stable_models_module(hidden, limits=limits), notes=("hide",))
    if report.verdict is Verdict.DIFFERS:
        return report
    return compare_models(
        HIDE_PROJECT, base, stable_models_module(projected, limits=limits), notes=("hide", "project")
    )


def check_rename_recovery(
    module: ProgramModule, olds: Iterable[Atom], *, limits: EnumerationLimits | None = None
) -> TheoremReport:
    """Models of ``ρ(P)`` where each fresh atom agrees with its original give back ``AS(P)``."""

    mapping = RenameMap.fresh(olds, PRIMED_TAG, module.all_atoms)
    try:
        renamed = rename_output(module, mapping)
    except CompositionError as exc:
        return not_applicable(RENAME_RECOVERY, str(exc))

    original = stable_models_module(module, limits=limits)
    candidates = stable_models_module(renamed, limits=limits)
    for model in sorted(candidates, key=canonical_model):
        if any(fresh in model and old not in model for old, fresh in mapping):
            return differs_on(
                RENAME_RECOVERY, candidates, original, model, "lhs", notes=("fresh atom without its original",)
            )
    recovered = [
        model - mapping.freshes
        for model in candidates
        if all((old in model) == (fresh in model) for old, fresh in mapping)
    ]
    return compare_multisets(RENAME_RECOVERY, recovered, original)


def check_semantics_oracle(
    module: ProgramModule, *, limits: EnumerationLimits | None = None
) -> TheoremReport:
    return compare_models(
        SEMANTICS_ORACLE,
        stable_models_module(module, limits=limits),
        naive_stable_models_module(module, limits=limits),
    )


def check_lemma2_demo(*, limits: EnumerationLimits | None = None) -> TheoremReport:
    """Equal component model sets, different relaxed compositions."""

    p1, q1, p2 = fixture_module("lemma_p1"), fixture_module("lemma_q1"), fixture_module("lemma_p2")
    q2 = p2
    for left, right in ((p1, q1), (p2, q2)):
        components = compare_models(
            LEMMA2_DEMO,
            stable_models_module(left, limits=limits),
            stable_models_module(right, limits=limits),
            notes=(f"component model sets of {left.name} and {right.name} must coincide",),
        )
        if components.verdict is not Verdict.EQUAL:
            return components
    return compare_models(
        LEMMA2_DEMO,
        stable_models_module(compose_relaxed(p1, p2), limits=limits),
        stable_models_module(compose_relaxed(q1, q2), limits=limits),
        expected=Verdict.DIFFERS,
        notes=("no join of component models can tell the two compositions apart",),
    )


def check_theorem(
    theorem: str,
    modules: tuple[ProgramModule, ...] = (),
    *,
    scope: Iterable[Atom] | None = None,
    limits: EnumerationLimits | None = None,
) -> TheoremReport:
    """Run one check on explicit modules; ``scope`` defaults to the module's outputs."""

    limits = limits or EnumerationLimits(CAMPAIGN_MAX_ATOMS)
    expected_count = 2 if theorem in PAIR_THEOREMS else 1 if theorem in SINGLE_THEOREMS else 0
    if theorem not in THEOREM_IDS:
        raise ValueError(f"Unknown theorem {theorem!r}; expected one of {list(THEOREM_IDS)}")
    if len(modules) != expected_count:
        raise ValueError(f"{theorem} takes {expected_count} module(s), got {len(modules)}")

    if theorem == MODULE_THEOREM:
        return check_module_theorem(*modules, limits=limits)
    if theorem == RELAXED_RT:
        return check_relaxed_rt(*modules, limits=limits)
    if theorem == CONSERVATIVE:
        return check_conservative(*modules, limits=limits)
    if theorem == LEMMA2_DEMO:
        return check_lemma2_demo(limits=limits)
    (module,) = modules
    chosen = module.outputs if scope is None else frozenset(scope)
    if theorem == HIDE_PROJECT:
        return check_hide_project(module, chosen, limits=limits)
    if theorem == RENAME_RECOVERY:
        return check_rename_recovery(module, chosen, limits=limits)
    return check_semantics_oracle(module, limits=limits)


# -- campaigns ----------------------------------------------------------------


def trial_rng(theorem: str, seed: int, trial: int) -> random.Random:
    return random.Random(f"{theorem}:{seed}:{trial}")


def _random_subset(rng: random.Random, items: Iterable[Atom]) -> frozenset[Atom]:
    return frozenset(atom for atom in sort_atoms(items) if rng.random() < 0.5)


def _run_trial(
    theorem: str, cfg: GeneratorConfig, rng: random.Random, limits: EnumerationLimits
) -> TheoremReport:
    if theorem == MODULE_THEOREM:
        return check_module_theorem(*random_pair(cfg, rng), limits=limits)
    if theorem == RELAXED_RT:
        pair = random_pair(replace(cfg, acyclic=True), rng, shared_outputs=True, choice_on_shared=False)
        return check_relaxed_rt(*pair, limits=limits)
    if theorem == CONSERVATIVE:
        pair = random_pair(replace(cfg, acyclic=True), rng, shared_outputs=True)
        return check_conservative(*pair, limits=limits)
    if theorem == HIDE_PROJECT:
        module = random_module(cfg, rng)
        scope = _random_subset(rng, module.atoms) | {Atom(f"p{cfg.atom_budget}")}
        return check_hide_project(module, scope, limits=limits)
    if theorem == RENAME_RECOVERY:
        module = random_module(replace(cfg, acyclic=True), rng)
        return check_rename_recovery(module, _random_subset(rng, module.outputs), limits=limits)
    if theorem == SEMANTICS_ORACLE:
        return check_semantics_oracle(random_module(cfg, rng), limits=limits)
    return check_lemma2_demo(limits=limits)


def _applicable_trial(
    theorem: str, cfg: GeneratorConfig, rng: random.Random, limits: EnumerationLimits
) -> TheoremReport:
    """Redraw until the generated instance meets the theorem's preconditions."""

    for attempt in range(1, MAX_GENERATION_ATTEMPTS + 1):
        report = _run_trial(theorem, cfg, rng, limits)
        if report.applicable:
            return report
        logger.debug("%s draw %d not applicable: %s", theorem, attempt, report.failed_precondition)
    raise GenerationError(
        f"no {theorem} instance meeting the preconditions within "
        f"{MAX_GENERATION_ATTEMPTS} attempts (seed {cfg.seed})"
    )


def run_campaign(
    theorem: str,
    cfg: GeneratorConfig,
    trials: int,
    *,
    limits: EnumerationLimits | None = None,
) -> list[TheoremReport]:
    """One applicable report per trial; ``lemma2-demo`` is deterministic and runs once.

    Every trial checks an instance that meets the theorem's preconditions, so a
    campaign never passes on vacuous trials.
    """

    if theorem not in THEOREM_IDS:
        raise ValueError(f"Unknown theorem {theorem!r}; expected one of {list(THEOREM_IDS)}")
    if trials < 0:
        raise ValueError(f"trials must be non-negative, got {trials}")
    if theorem == MODULE_THEOREM and not cfg.forbid_cross_positive_cycles:
        raise GenerationError(
            "module campaigns need mutually independent pairs; cross-module cycles are not allowed"
        )
    limits = limits or EnumerationLimits(CAMPAIGN_MAX_ATOMS)
    if theorem == LEMMA2_DEMO:
        trials = min(trials, 1)

    reports: list[TheoremReport] = []
    for trial in range(trials):
        started = time.perf_counter()
        report = _applicable_trial(theorem, cfg, trial_rng(theorem, cfg.seed, trial), limits)
        report = report.with_run(trial=trial, seed=cfg.seed, elapsed=time.perf_counter() - started)
        logger.debug("%s", report.summary())
        reports.append(report)

    failures = sum(not report.passed for report in reports)
    logger.info("campaign %s: %d trial(s), %d failure(s)", theorem, len(reports), failures)
    return reports
