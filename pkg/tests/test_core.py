import pytest

from asp_module_algebra import (
    AnswerSetCollection,
    Atom,
    Program,
    ProgramModule,
    Rule,
    RuleKind,
    atoms,
    canonical_models,
    render_model,
    validate_module,
    visible_atoms,
)
from asp_module_algebra.core import fresh_atom


def test_atom_parse_and_canonical_rendering():
    atom = Atom.parse("exp( c2 )")

    assert atom == Atom("exp", ("c2",))
    assert str(atom) == "exp(c2)"
    assert Atom.parse("a").arguments == ()
    assert not atom.is_reserved
    assert Atom("safe__r1", ("c1",)).is_reserved


@pytest.mark.parametrize("text", ["Exp(c1)", "exp(X)", "exp(c1,)", "9a", ""])
def test_atom_parse_rejects_non_ground_text(text):
    with pytest.raises(ValueError):
        Atom.parse(text)


def test_fresh_atom_bumps_past_taken_names():
    a = Atom("a", ("c1",))
    taken = {Atom("a__r1", ("c1",)), Atom("a__r1_2", ("c1",))}

    assert fresh_atom(a, "r1", set()) == Atom("a__r1", ("c1",))
    assert fresh_atom(a, "r1", taken) == Atom("a__r1_3", ("c1",))


def test_rule_shapes_are_enforced():
    a, b = Atom("a"), Atom("b")

    with pytest.raises(ValueError):
        Rule(RuleKind.NORMAL, frozenset({a, b}))
    with pytest.raises(ValueError):
        Rule(RuleKind.CONSTRAINT, frozenset({a}))
    with pytest.raises(ValueError):
        Rule(RuleKind.CHOICE)

    rule = Rule.normal(a, {b}, {b})
    assert rule.atoms == {a, b}
    assert str(Rule.choice({b, a}, neg={b})) == "{a, b} :- not b."
    assert str(Rule.constraint()) == ":- ."


def test_program_equality_ignores_order_and_duplicates():
    a, b = Atom("a"), Atom("b")
    first = Program((Rule.fact(a), Rule.normal(b, {a}), Rule.fact(a)))
    second = Program((Rule.normal(b, {a}), Rule.fact(a)))

    assert first == second
    assert len(first) == 2
    assert first.atoms == {a, b}
    assert first.head_atoms == {a, b}
    assert not first.has_choice


def test_module_equality_ignores_name():
    module = ProgramModule(Program((Rule.fact(Atom("a")),)), outputs=atoms("a"), name="left")

    assert module == module.renamed("right")
    assert visible_atoms(module) == atoms("a")


def test_validation_reports_every_interface_violation():
    a, b, h = Atom("a"), Atom("b"), Atom("h")
    module = ProgramModule(
        Program((Rule.normal(a, {b}), Rule.fact(b), Rule.constraint({h}, {h}))),
        inputs={a, b},
        outputs={a},
        hidden=set(),
    )

    result = validate_module(module)

    messages = [issue.message for issue in result.errors]
    assert "I ∩ O ≠ ∅" in messages
    assert "rule atoms not covered by I ∪ O ∪ H" in messages
    assert any("head atom b is an input" in message for message in messages)
    assert len(result.warnings) == 1
    assert "can never apply" in result.warnings[0].message
    assert result.summary().startswith(f"{len(result.errors)} error(s)")


def test_well_formed_module_validates_cleanly():
    module = ProgramModule(
        Program((Rule.normal(Atom("a"), {Atom("b")}),)), inputs=atoms("b"), outputs=atoms("a")
    )

    assert validate_module(module).ok


def test_answer_set_collection_checks_signature():
    with pytest.raises(ValueError):
        AnswerSetCollection(atoms("a"), frozenset(), frozenset(), frozenset({atoms("a", "z")}))


def test_visible_projections_count_multiplicities():
    collection = AnswerSetCollection(
        frozenset(),
        atoms("a"),
        atoms("h", "k"),
        frozenset({atoms("a", "h"), atoms("a", "k"), atoms("h")}),
    )

    projections = collection.visible_projections()

    assert projections[atoms("a")] == 2
    assert projections[frozenset()] == 1
    assert canonical_models(collection.restricted(atoms("a"))) == [(), ("a",)]
    assert render_model(atoms("b", "a")) == "{a, b}"
