from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from asp_module_algebra import (
    Atom,
    GeneratorConfig,
    Program,
    ProgramModule,
    Rule,
    atoms,
    modularly_equivalent,
    random_module,
    stable_models_module,
    visibly_equivalent,
)
from asp_module_algebra.config import FIXTURE_DIR
from asp_module_algebra.parser import load_module


def _fixture(name):
    return load_module(FIXTURE_DIR / f"{name}.mlp")


def test_lemma_modules_are_equivalent():
    p1, q1 = _fixture("lemma_p1"), _fixture("lemma_q1")

    assert visibly_equivalent(p1, q1)
    result = modularly_equivalent(p1, q1)
    assert result.equivalent
    assert result.diagnostics == ()


def test_different_visible_signatures_are_reported():
    result = visibly_equivalent(_fixture("pb"), _fixture("pc"))

    assert not result
    assert result.diagnostics[0].startswith("visible atoms differ")


def test_hidden_multiplicity_breaks_equivalence():
    a, h = Atom("a"), Atom("h")
    twice = ProgramModule(Program((Rule.fact(a), Rule.choice({h}))), outputs={a}, hidden={h})
    once = ProgramModule(Program((Rule.fact(a),)), outputs={a}, hidden={h})

    result = visibly_equivalent(twice, once)

    assert not result
    assert result.diagnostics == ("visible projection {a} occurs 2 time(s) vs 1 time(s)",)


def test_modular_equivalence_compares_inputs():
    a, b = Atom("a"), Atom("b")
    reads_b = ProgramModule(Program((Rule.normal(a, {b}),)), inputs={b}, outputs={a})
    defines_b = ProgramModule(Program((Rule.fact(b), Rule.normal(a, {b}))), outputs={a, b})

    assert not modularly_equivalent(reads_b, defines_b)
    assert modularly_equivalent(reads_b, defines_b).diagnostics[0].startswith("input atoms differ")


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), atom_budget=st.integers(min_value=1, max_value=6))
def test_determined_hidden_atom_keeps_equivalence(seed, atom_budget):
    module = random_module(GeneratorConfig(atom_budget=atom_budget, seed=seed))
    extra = Atom("extra")
    determined = ProgramModule(
        module.rules.extend((Rule.fact(extra),)),
        module.inputs,
        module.outputs,
        module.hidden | {extra},
    )
    free = ProgramModule(
        module.rules.extend((Rule.choice({extra}),)),
        module.inputs,
        module.outputs,
        module.hidden | {extra},
    )

    assert modularly_equivalent(module, determined)
    has_models = len(stable_models_module(module)) > 0
    assert bool(modularly_equivalent(module, free)) is not has_models


def test_example_module_equals_itself_with_renamed_hidden_domain():
    assert modularly_equivalent(_fixture("mg2"), _fixture("mg2_renamed"))
    assert stable_models_module(_fixture("mg2_renamed")).restricted(atoms("safe(c1)", "safe(c3)")) == {
        atoms("safe(c1)"),
        atoms("safe(c1)", "safe(c3)"),
    }


I, A, B, H1, H2 = (Atom(name) for name in ("i", "a", "b", "h1", "h2"))

CANDIDATE_RULES = (
    Rule.fact(A),
    Rule.normal(A, {I}),
    Rule.normal(B, neg={A}),
    Rule.normal(B, {H1}),
    Rule.normal(A, {H2}, {B}),
    Rule.normal(H2, neg={B}),
    Rule.choice({H1}),
    Rule.choice({H2}, {A}),
    Rule.choice({A, H1}, neg={I}),
    Rule.constraint({A, H2}),
    Rule.constraint({B}, {I}),
)


def _candidate_module(rules):
    return ProgramModule(Program(tuple(rules)), inputs={I}, outputs={A, B}, hidden={H1, H2})


def _bijection_exists(left, right, visible):
    """Backtracking search for a bijection that preserves visible parts."""

    left, right = list(left), list(right)
    if len(left) != len(right):
        return False
    used = [False] * len(right)

    def extend(index):
        if index == len(left):
            return True
        for position, candidate in enumerate(right):
            if not used[position] and candidate & visible == left[index] & visible:
                used[position] = True
                if extend(index + 1):
                    return True
                used[position] = False
        return False

    return extend(0)


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.filter_too_much])
@given(
    left_rules=st.sets(st.sampled_from(CANDIDATE_RULES), max_size=6),
    right_rules=st.sets(st.sampled_from(CANDIDATE_RULES), max_size=6),
)
def test_modular_equivalence_matches_bijection_search(left_rules, right_rules):
    p, q = _candidate_module(left_rules), _candidate_module(right_rules)
    left, right = stable_models_module(p), stable_models_module(q)
    assume(len(left) <= 8 and len(right) <= 8)

    assert bool(modularly_equivalent(p, q)) is _bijection_exists(left, right, p.visible)


def test_bijection_search_needs_matching_multiplicities():
    determined = _candidate_module({Rule.fact(A)})
    free_hidden = _candidate_module({Rule.fact(A), Rule.choice({H1})})

    left, right = stable_models_module(determined), stable_models_module(free_hidden)

    assert not _bijection_exists(left, right, determined.visible)
    assert not modularly_equivalent(determined, free_hidden)
    assert _bijection_exists(left, left, determined.visible)
