import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from asp_module_algebra import (
    Atom,
    CompositionError,
    CoverageMismatch,
    FreshCollision,
    GeneratorConfig,
    HiddenLeak,
    MutualDependence,
    OldNotOutput,
    OutputsOverlap,
    RenameMap,
    Rule,
    atoms,
    build_bridge,
    build_filter_module,
    build_union_module,
    common_outputs,
    compose_plus,
    compose_conservative,
    compose_relaxed,
    compose_relaxed_rt,
    compose_sqcup,
    ground,
    hide,
    operator_for,
    parse_module,
    project,
    random_module,
    random_pair,
    rename_output,
    stable_models_module,
    validate_module,
    visibly_equivalent,
)
from asp_module_algebra.config import FIXTURE_DIR
from asp_module_algebra.parser import load_module


def _fixture(name):
    return load_module(FIXTURE_DIR / f"{name}.mlp")


def test_plus_rejects_shared_outputs():
    with pytest.raises(OutputsOverlap) as excinfo:
        compose_plus(_fixture("pb"), _fixture("pc"))

    assert excinfo.value.atoms == ("exp(c2)", "exp(c3)")
    assert str(excinfo.value) == "OutputsOverlap: {exp(c2), exp(c3)}"


def test_plus_rejects_hidden_leak():
    with pytest.raises(HiddenLeak) as excinfo:
        compose_plus(_fixture("mg2"), _fixture("pa"))

    assert excinfo.value.atoms == ("car(c1)", "car(c2)", "car(c3)")


def test_sqcup_rejects_positive_cycle():
    with pytest.raises(MutualDependence) as excinfo:
        compose_sqcup(_fixture("loop1"), _fixture("loop2"))

    assert set(excinfo.value.cycle) == {"airbag", "safe"}
    assert str(excinfo.value).startswith("MutualDependence{")


def test_sqcup_interface_of_example_pair():
    pa, mg1 = _fixture("pa"), _fixture("mg1")

    composite = compose_sqcup(pa, mg1)

    assert composite.inputs == atoms("exp(c1)", "exp(c2)", "exp(c3)")
    assert composite.outputs == pa.outputs | mg1.outputs
    assert composite.hidden == pa.hidden
    assert composite.name == "pa_sqcup_mg1"


def test_sqcup_is_not_reflexive_for_modules_with_outputs():
    pb = _fixture("pb")

    with pytest.raises(OutputsOverlap):
        compose_sqcup(pb, pb)
    assert compose_sqcup(_fixture("empty"), _fixture("empty")) == _fixture("empty")


def test_relaxed_union_of_common_outputs():
    composite = compose_relaxed(_fixture("pb"), _fixture("pc"))

    assert composite.outputs == atoms("exp(c1)", "exp(c2)", "exp(c3)")
    assert composite.inputs == frozenset()
    assert stable_models_module(composite).models == {atoms("exp(c2)", "exp(c3)")}


def test_relaxed_is_commutative_and_associative_on_examples():
    pb, pc, mg1 = _fixture("pb"), _fixture("pc"), _fixture("mg1")

    assert compose_relaxed(pb, pc) == compose_relaxed(pc, pb)
    assert compose_relaxed(compose_relaxed(pb, pc), mg1) == compose_relaxed(pb, compose_relaxed(pc, mg1))
    assert compose_relaxed(pb, _fixture("empty")) == pb


@pytest.mark.parametrize("name", ["pa", "mg2", "pb", "empty"])
def test_relaxed_composition_is_reflexive_on_examples(name):
    module = _fixture(name)

    assert compose_relaxed(module, module) == module


def test_relaxed_composition_still_rejects_foreign_hidden_atoms():
    with pytest.raises(HiddenLeak):
        compose_relaxed(_fixture("mg2"), _fixture("pa"))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), atom_budget=st.integers(min_value=1, max_value=8))
def test_relaxed_composition_is_reflexive(seed, atom_budget):
    module = random_module(GeneratorConfig(atom_budget=atom_budget, seed=seed))

    assert compose_relaxed(module, module) == module
    assert stable_models_module(compose_relaxed(module, module)).models == stable_models_module(module).models


def test_rename_output_moves_old_atom_to_inputs():
    pb = _fixture("pb")
    old, fresh = Atom("exp", ("c2",)), Atom("exp__r1", ("c2",))

    renamed = rename_output(pb, RenameMap(((old, fresh),)))

    assert old in renamed.inputs
    assert fresh in renamed.outputs
    assert Rule.fact(fresh) in renamed.rules.rules
    assert Rule.constraint({fresh}, {old}) in renamed.rules.rules
    assert stable_models_module(renamed).models == {atoms("exp(c2)", "exp__r1(c2)")}


RENAMED_ALICE = """
module pa
input: buy(c1), buy(c2), buy(c3), safe(c1), safe(c2), safe(c3), exp(c1), exp(c2), exp(c3)
output: buy__r1(c1), buy__r1(c2), buy__r1(c3)
hidden: car(c1), car(c2), car(c3)
rules:
buy__r1(X) :- car(X), safe(X), not exp(X).
car(c1). car(c2). car(c3).
:- buy__r1(X), not buy(X).
"""


def test_rename_output_of_alice_module():
    pa = _fixture("pa")
    mapping = RenameMap.fresh(pa.outputs, "r1", pa.all_atoms)

    renamed = rename_output(pa, mapping)

    assert renamed == ground(parse_module(RENAMED_ALICE, allow_reserved=True))
    assert validate_module(renamed).ok
    assert len(stable_models_module(renamed)) == 343


def test_rename_output_preconditions():
    pa = _fixture("pa")
    safe = Atom("safe", ("c1",))
    buy = Atom("buy", ("c1",))

    with pytest.raises(OldNotOutput):
        rename_output(pa, RenameMap(((safe, Atom("safe__r1", ("c1",))),)))
    with pytest.raises(FreshCollision):
        rename_output(pa, RenameMap(((buy, Atom("car", ("c1",))),)))
    assert rename_output(pa, RenameMap()) is pa


def test_rename_map_validation():
    a, b = Atom("a"), Atom("b")

    with pytest.raises(ValueError):
        RenameMap(((a, b), (a, Atom("c"))))
    with pytest.raises(ValueError):
        RenameMap(((a, b), (Atom("c"), b)))
    with pytest.raises(ValueError):
        RenameMap(((a, b), (b, Atom("c"))))

    fresh = RenameMap.fresh({b, a}, "r1", {Atom("a__r1")})
    assert fresh.as_dict() == {a: Atom("a__r1_2"), b: Atom("b__r1")}
    assert len(fresh) == 2


def test_hide_turns_hidden_inputs_into_free_choices():
    pa = _fixture("pa")
    safe = Atom("safe", ("c1",))
    buy = Atom("buy", ("c1",))

    hidden = hide(pa, {safe, buy, Atom("unrelated")})

    assert safe not in hidden.inputs and buy not in hidden.outputs
    assert {safe, buy} <= hidden.hidden
    assert Atom("unrelated") not in hidden.atoms
    assert Rule.choice({safe}) in hidden.rules.rules
    assert hidden.visible == pa.visible - {safe, buy}
    assert stable_models_module(hidden).models == stable_models_module(pa).models


def test_project_keeps_only_scope_visible():
    pa = _fixture("pa")
    scope = atoms("buy(c1)", "safe(c1)")

    projected = project(pa, scope)

    assert projected.visible == scope
    assert projected.inputs == atoms("safe(c1)")
    assert stable_models_module(projected).models == stable_models_module(pa).models


def test_union_and_filter_modules():
    common = atoms("o")
    primed = RenameMap(((Atom("o"), Atom("o__r1")),))
    double_primed = RenameMap(((Atom("o"), Atom("o__r2")),))

    union = build_union_module(common, primed, double_primed)
    agreement = build_filter_module(primed, double_primed)

    assert union.name == "union" and agreement.name == "filter"
    assert stable_models_module(union).models == {
        frozenset(),
        atoms("o", "o__r1"),
        atoms("o", "o__r2"),
        atoms("o", "o__r1", "o__r2"),
    }
    assert stable_models_module(agreement).models == {frozenset(), atoms("o__r1", "o__r2")}

    with pytest.raises(CoverageMismatch):
        build_union_module(atoms("o", "p"), primed, double_primed)


def test_common_outputs_scope():
    p1, p2 = _fixture("lemma_p1"), _fixture("lemma_p2")

    assert common_outputs(p1, p2) == atoms("b")
    assert common_outputs(p1, p2, rename_all_outputs=True) == atoms("a", "b")
    assert common_outputs(_fixture("pa"), _fixture("mg1"), rename_all_outputs=True) == _fixture("pa").outputs


def test_bridge_renames_each_side_apart():
    bridge = build_bridge(_fixture("lemma_p1"), _fixture("lemma_p2"))

    assert bridge.common == atoms("b")
    assert bridge.renamed_atoms == atoms("b__r1", "b__r2")
    assert bridge.first.inputs == atoms("b")
    assert bridge.second.outputs == atoms("b__r2")


def test_relaxed_rt_matches_relaxed_on_lemma_pairs():
    p1, q1, p2 = _fixture("lemma_p1"), _fixture("lemma_q1"), _fixture("lemma_p2")

    for left in (p1, q1):
        relaxed = compose_relaxed(left, p2)
        transformed = compose_relaxed_rt(left, p2)
        assert transformed.visible == relaxed.visible
        assert visibly_equivalent(relaxed, transformed)
    assert compose_relaxed_rt(p1, p2).name == "lemma_p1_rt_lemma_p2"


def _visible_models(module):
    return stable_models_module(module).restricted(module.visible)


@pytest.mark.parametrize("operator", [compose_relaxed_rt, compose_conservative])
@pytest.mark.parametrize(
    "names", [("lemma_p1", "lemma_p2"), ("lemma_q1", "lemma_p2"), ("pb", "pc"), ("mg1", "mg2")]
)
def test_renaming_scope_keeps_visible_models(operator, names):
    p1, p2 = (_fixture(name) for name in names)

    shared_only = operator(p1, p2)
    every_output = operator(p1, p2, rename_all_outputs=True)

    assert shared_only.visible == every_output.visible
    assert _visible_models(shared_only) == _visible_models(every_output)


def _compositions(p1, p2):
    operators = [
        compose_plus,
        compose_sqcup,
        compose_relaxed,
        compose_relaxed_rt,
        compose_conservative,
        lambda a, b: compose_relaxed_rt(a, b, rename_all_outputs=True),
        lambda a, b: compose_conservative(a, b, rename_all_outputs=True),
    ]
    for operator in operators:
        try:
            yield operator(p1, p2)
        except CompositionError:
            continue
    yield hide(p1, p2.outputs)
    yield project(p1, p2.visible)
    yield rename_output(p1, RenameMap.fresh(p1.outputs, "r1", p1.all_atoms))


@pytest.mark.parametrize("names", [("pa", "mg1"), ("pb", "pc"), ("mg1", "mg2"), ("loop1", "loop2")])
def test_compositions_of_examples_are_well_formed(names):
    p1, p2 = (_fixture(name) for name in names)

    for composite in _compositions(p1, p2):
        assert validate_module(composite).ok, validate_module(composite).summary()


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32), shared=st.booleans(), acyclic=st.booleans())
def test_compositions_of_random_pairs_are_well_formed(seed, shared, acyclic):
    cfg = GeneratorConfig(atom_budget=8, forbid_cross_positive_cycles=False, acyclic=acyclic, seed=seed)
    p1, p2 = random_pair(cfg, shared_outputs=shared)

    for composite in _compositions(p1, p2):
        assert validate_module(composite).ok, validate_module(composite).summary()


def test_operator_lookup():
    pb, mg1 = _fixture("pb"), _fixture("mg1")

    assert operator_for("plus")(pb, mg1) == compose_plus(pb, mg1)
    assert operator_for("relaxed-rt", rename_all_outputs=True)(pb, mg1).outputs == pb.outputs | mg1.outputs
    with pytest.raises(ValueError, match="Unknown operator"):
        operator_for("bogus")
