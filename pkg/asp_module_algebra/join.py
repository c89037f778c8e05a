"""Natural join of answer-set collections and the module theorem check."""

from __future__ import annotations

import logging
from collections import defaultdict

from .compose import compose_relaxed, compose_sqcup
from .config import EnumerationLimits
from .core import AnswerSetCollection, Interpretation, ProgramModule
from .errors import CompositionError
from .reports import TheoremReport, Verdict, compare_models
from .semantics import stable_models_module

logger = logging.getLogger(__name__)

MODULE_THEOREM = "module"


def natural_join(a1: AnswerSetCollection, a2: AnswerSetCollection) -> AnswerSetCollection:
    """``{M1 ∪ M2 | M1 ∩ At_v(P2) = M2 ∩ At_v(P1)}``, hashed on the agreement key."""

    visible1, visible2 = a1.visible, a2.visible
    buckets: dict[Interpretation, list[Interpretation]] = defaultdict(list)
    for m2 in a2:
        buckets[m2 & visible1].append(m2)

    joined: set[Interpretation] = set()
    for m1 in a1:
        for m2 in buckets.get(m1 & visible2, ()):
            joined.add(m1 | m2)

    outputs = a1.owner_output | a2.owner_output
    return AnswerSetCollection(
        (a1.owner_input | a2.owner_input) - outputs,
        outputs,
        a1.owner_hidden | a2.owner_hidden,
        frozenset(joined),
    )


def check_module_theorem(
    p1: ProgramModule, p2: ProgramModule, *, limits: EnumerationLimits | None = None
) -> TheoremReport:
    """Compare ``AS(P1 ⊔ P2)`` with ``AS(P1) ⋈ AS(P2)``.

    When ⊔ is undefined the report is not applicable; the relaxed union of the
    pair is then solved instead so the mismatch can still be shown.
    """

    joined = natural_join(
        stable_models_module(p1, limits=limits), stable_models_module(p2, limits=limits)
    )
    try:
        composite = compose_sqcup(p1, p2)
    except CompositionError as exc:
        logger.info("module theorem not applicable: %s", exc)
        return _forced_union_report(p1, p2, joined, str(exc), limits)

    lhs = stable_models_module(composite, limits=limits)
    return compare_models(MODULE_THEOREM, lhs, joined)


def _forced_union_report(
    p1: ProgramModule,
    p2: ProgramModule,
    joined: AnswerSetCollection,
    reason: str,
    limits: EnumerationLimits | None,
) -> TheoremReport:
    try:
        forced = compose_relaxed(p1, p2)
    except CompositionError as exc:
        return TheoremReport(
            theorem=MODULE_THEOREM,
            applicable=False,
            failed_precondition=reason,
            verdict=Verdict.UNDEFINED,
            rhs_models=tuple(joined.canonical()),
            notes=(f"forced union undefined: {exc}",),
        )
    report = compare_models(
        MODULE_THEOREM,
        stable_models_module(forced, limits=limits),
        joined,
        notes=("lhs is the relaxed union of the pair",),
    )
    return TheoremReport(
        theorem=report.theorem,
        applicable=False,
        failed_precondition=reason,
        verdict=report.verdict,
        lhs_models=report.lhs_models,
        rhs_models=report.rhs_models,
        witness=report.witness,
        witness_side=report.witness_side,
        notes=report.notes,
    )
