import pytest

from asp_module_algebra import (
    THEOREM_IDS,
    Atom,
    GeneratorConfig,
    GenerationError,
    RuleKind,
    Verdict,
    check_theorem,
    encode_report,
    fixtures,
    random_module,
    random_pair,
    run_campaign,
    stable_models_module,
    validate_module,
    verify_fixture,
)
from asp_module_algebra import harness
from asp_module_algebra.harness import (
    check_conservative,
    check_hide_project,
    check_lemma2_demo,
    check_relaxed_rt,
    check_rename_recovery,
    fixture_module,
    trial_rng,
)
from asp_module_algebra.reports import not_applicable

FIXTURES = fixtures()


@pytest.mark.parametrize("fixture", FIXTURES, ids=[fixture.name for fixture in FIXTURES])
def test_fixture_expectations_hold(fixture):
    assert verify_fixture(fixture) == []


def test_fixture_names_are_unique():
    names = [fixture.name for fixture in FIXTURES]

    assert len(names) == len(set(names))
    assert "alice-scenario" in names


def test_alice_buys_c1():
    (alice,) = [fixture for fixture in FIXTURES if fixture.name == "alice-scenario"]

    (model,) = stable_models_module(alice.modules["alice"], limits=alice.limits)

    buys = {str(atom) for atom in model if atom.predicate == "buy"}
    assert buys == {"buy(c1)"}


def test_lemma2_demo_finds_expected_difference():
    report = check_lemma2_demo()

    assert report.expected is Verdict.DIFFERS
    assert report.verdict is Verdict.DIFFERS
    assert report.witness == ("a", "b")
    assert report.passed


def test_conservative_check_on_magazines():
    report = check_conservative(fixture_module("mg1"), fixture_module("mg2"))

    assert report.applicable
    assert report.verdict is Verdict.EQUAL
    assert report.lhs_models == (("airbag(c1)", "car(c1)", "car(c2)", "car(c3)", "safe(c1)"),)


def test_relaxed_rt_check_on_common_outputs():
    report = check_relaxed_rt(fixture_module("pb"), fixture_module("pc"))

    assert report.verdict is Verdict.EQUAL
    assert report.lhs_models == (("exp(c2)", "exp(c3)"),)


def test_relaxed_rt_counts_differ_for_choice_on_common_output():
    report = check_relaxed_rt(fixture_module("shared_choice"), fixture_module("shared_fact"))

    assert report.applicable
    assert report.verdict is Verdict.DIFFERS
    assert not report.passed
    assert report.lhs_models == (("o",),)
    assert report.rhs_models == (("o",), ("o",))
    assert (report.witness, report.witness_side) == (("o",), "rhs")
    assert set(report.lhs_models) == set(report.rhs_models)


def test_relaxed_rt_pairs_keep_choices_off_common_outputs():
    cfg = GeneratorConfig(atom_budget=10, rule_budget=8, choice_probability=0.5, acyclic=True)

    for trial in range(20):
        p1, p2 = random_pair(cfg, trial_rng("relaxed-rt", 0, trial), shared_outputs=True, choice_on_shared=False)
        common = p1.outputs & p2.outputs
        for rule in (*p1.rules, *p2.rules):
            assert rule.kind is not RuleKind.CHOICE or not rule.head & common


def test_relaxed_rt_not_applicable_on_hidden_clash():
    report = check_relaxed_rt(fixture_module("mg2"), fixture_module("pa"))

    assert not report.applicable
    assert report.failed_precondition.startswith("HiddenLeak")


def test_hide_project_and_rename_recovery_on_example():
    pa = fixture_module("pa")

    assert check_hide_project(pa, {Atom("buy", ("c1",)), Atom("safe", ("c2",))}).passed
    assert check_rename_recovery(pa, pa.outputs).verdict is Verdict.EQUAL
    assert not check_rename_recovery(pa, pa.inputs).applicable


@pytest.mark.parametrize(
    "theorem, names",
    [
        ("module", ("pa", "mg1")),
        ("relaxed-rt", ("lemma_p1", "lemma_p2")),
        ("conservative", ("pb", "pc")),
        ("hide-project", ("mg2",)),
        ("rename-recovery", ("mg1",)),
        ("semantics-oracle", ("mg2",)),
        ("lemma2-demo", ()),
    ],
)
def test_check_theorem_on_fixtures(theorem, names):
    report = check_theorem(theorem, tuple(fixture_module(name) for name in names))

    assert report.theorem == theorem
    assert report.passed, report.summary()


def test_check_theorem_validates_arguments():
    with pytest.raises(ValueError, match="Unknown theorem"):
        check_theorem("bogus")
    with pytest.raises(ValueError, match="takes 2 module"):
        check_theorem("module", (fixture_module("pa"),))


def test_generator_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(atom_budget=21)
    with pytest.raises(ValueError):
        GeneratorConfig(negation_probability=1.5)
    with pytest.raises(ValueError):
        GeneratorConfig(choice_probability=0.6, constraint_probability=0.6)
    with pytest.raises(ValueError):
        GeneratorConfig(seed=-1)


def test_random_module_is_seeded_and_well_formed():
    cfg = GeneratorConfig(atom_budget=8, rule_budget=7, seed=11)

    first, second = random_module(cfg), random_module(cfg)

    assert first == second
    assert first.name == "random_11"
    assert validate_module(first).ok
    assert first.atoms <= {Atom(f"p{index}") for index in range(8)}


def test_random_module_needs_head_atoms():
    with pytest.raises(GenerationError):
        random_module(GeneratorConfig(atom_budget=0, rule_budget=1))
    assert len(random_module(GeneratorConfig(atom_budget=0, rule_budget=0)).rules) == 0


def test_random_pair_with_shared_outputs():
    rng = trial_rng("relaxed-rt", 5, 0)

    p1, p2 = random_pair(GeneratorConfig(atom_budget=8, acyclic=True), rng, shared_outputs=True)

    assert (p1.name, p2.name) == ("left", "right")
    assert validate_module(p1).ok and validate_module(p2).ok
    assert not p1.hidden & p2.hidden


@pytest.mark.parametrize("theorem", THEOREM_IDS)
def test_campaigns_pass(theorem):
    reports = run_campaign(theorem, GeneratorConfig(seed=2024), trials=8)

    expected = 1 if theorem == "lemma2-demo" else 8
    assert len(reports) == expected
    failures = [report.summary() for report in reports if not report.passed]
    assert failures == []
    assert all(report.applicable for report in reports)
    assert [report.trial for report in reports] == list(range(expected))
    assert all(report.seed == 2024 and report.elapsed is not None for report in reports)


@pytest.mark.slow
@pytest.mark.parametrize("theorem", ["module", "relaxed-rt", "conservative", "hide-project", "rename-recovery"])
def test_full_size_campaigns_find_no_counterexample(theorem):
    reports = run_campaign(theorem, GeneratorConfig(atom_budget=10, seed=0), trials=500)

    assert len(reports) == 500
    assert all(report.applicable for report in reports)
    assert [report.summary() for report in reports if not report.passed] == []


def test_module_campaign_requires_independent_pairs():
    cfg = GeneratorConfig(atom_budget=8, forbid_cross_positive_cycles=False, seed=1)

    with pytest.raises(GenerationError, match="mutually independent"):
        run_campaign("module", cfg, trials=10)


def test_campaign_redraws_until_preconditions_hold(monkeypatch):
    draws = iter([not_applicable("module", "MutualDependence"), not_applicable("module", "HiddenLeak")])
    real_trial = harness._run_trial

    def flaky_trial(theorem, cfg, rng, limits):
        return next(draws, None) or real_trial(theorem, cfg, rng, limits)

    monkeypatch.setattr(harness, "_run_trial", flaky_trial)

    (report,) = run_campaign("module", GeneratorConfig(seed=3), trials=1)

    assert report.applicable
    assert report.passed


def test_campaign_gives_up_when_preconditions_never_hold(monkeypatch):
    monkeypatch.setattr(harness, "_run_trial", lambda *args: not_applicable("relaxed-rt", "HiddenLeak"))

    with pytest.raises(GenerationError, match="meeting the preconditions"):
        run_campaign("relaxed-rt", GeneratorConfig(), trials=1)


def test_campaigns_are_reproducible():
    cfg = GeneratorConfig(seed=9)

    first = run_campaign("conservative", cfg, trials=4)
    second = run_campaign("conservative", cfg, trials=4)

    assert [encode_report(report) for report in first] == [encode_report(report) for report in second]


def test_campaign_rejects_unknown_theorem():
    with pytest.raises(ValueError):
        run_campaign("bogus", GeneratorConfig(), trials=1)
    with pytest.raises(ValueError):
        run_campaign("module", GeneratorConfig(), trials=-1)
