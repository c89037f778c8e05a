"""Theorem-check reports and their line-delimited JSON encoding."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from pathlib import Path
from typing import Iterable

from .core import Interpretation, canonical_model, canonical_models

REPORT_VERSION = 1

CanonicalModel = tuple[str, ...]


class Verdict(str, Enum):
    EQUAL = "equal"
    DIFFERS = "differs"
    UNDEFINED = "undefined"


@dataclass(frozen=True, slots=True)
class TheoremReport:
    theorem: str
    applicable: bool
    verdict: Verdict
    expected: Verdict = Verdict.EQUAL
    failed_precondition: str | None = None
    lhs_models: tuple[CanonicalModel, ...] = ()
    rhs_models: tuple[CanonicalModel, ...] = ()
    witness: CanonicalModel | None = None
    witness_side: str | None = None
    trial: int | None = None
    seed: int | None = None
    notes: tuple[str, ...] = ()
    elapsed: float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "verdict", Verdict(self.verdict))
        object.__setattr__(self, "expected", Verdict(self.expected))
        object.__setattr__(self, "lhs_models", tuple(tuple(m) for m in self.lhs_models))
        object.__setattr__(self, "rhs_models", tuple(tuple(m) for m in self.rhs_models))
        object.__setattr__(self, "notes", tuple(self.notes))
        if self.witness is not None:
            object.__setattr__(self, "witness", tuple(self.witness))
        if (self.witness is not None) != (self.verdict is Verdict.DIFFERS):
            raise ValueError("A witness is present exactly when the verdict is 'differs'")
        if self.applicable and self.failed_precondition is not None:
            raise ValueError("An applicable report cannot name a failed precondition")

    @property
    def passed(self) -> bool:
        return not self.applicable or self.verdict is self.expected

    def with_run(self, *, trial: int | None, seed: int | None, elapsed: float | None) -> TheoremReport:
        return replace(self, trial=trial, seed=seed, elapsed=elapsed)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        parts = [f"{status} {self.theorem}"]
        if self.trial is not None:
            parts.append(f"trial={self.trial}")
        if not self.applicable:
            parts.append(f"not applicable: {self.failed_precondition}")
        parts.append(f"verdict={self.verdict.value} (expected {self.expected.value})")
        parts.append(f"lhs={len(self.lhs_models)} rhs={len(self.rhs_models)}")
        if self.witness is not None:
            parts.append(f"witness on {self.witness_side}: {{{', '.join(self.witness)}}}")
        return " ".join(parts)


def compare_models(
    theorem: str,
    lhs: Iterable[Interpretation],
    rhs: Iterable[Interpretation],
    *,
    expected: Verdict = Verdict.EQUAL,
    notes: Iterable[str] = (),
) -> TheoremReport:
    """Compare two model sets; the witness is the first canonical model on one side only."""

    left = canonical_models(set(map(frozenset, lhs)))
    right = canonical_models(set(map(frozenset, rhs)))
    only_left = sorted(set(left) - set(right))
    only_right = sorted(set(right) - set(left))
    witness: CanonicalModel | None = None
    side: str | None = None
    if only_left:
        witness, side = only_left[0], "lhs"
    elif only_right:
        witness, side = only_right[0], "rhs"
    return TheoremReport(
        theorem=theorem,
        applicable=True,
        verdict=Verdict.DIFFERS if witness is not None else Verdict.EQUAL,
        expected=expected,
        lhs_models=tuple(left),
        rhs_models=tuple(right),
        witness=witness,
        witness_side=side,
        notes=tuple(notes),
    )


def compare_multisets(
    theorem: str,
    lhs: Iterable[Interpretation],
    rhs: Iterable[Interpretation],
    *,
    expected: Verdict = Verdict.EQUAL,
    notes: Iterable[str] = (),
) -> TheoremReport:
    """Like :func:`compare_models` but multiplicities count."""

    left = Counter(canonical_model(model) for model in lhs)
    right = Counter(canonical_model(model) for model in rhs)
    mismatched = sorted(model for model in set(left) | set(right) if left[model] != right[model])
    witness = mismatched[0] if mismatched else None
    side = None
    if witness is not None:
        side = "lhs" if left[witness] > right[witness] else "rhs"
    return TheoremReport(
        theorem=theorem,
        applicable=True,
        verdict=Verdict.DIFFERS if witness is not None else Verdict.EQUAL,
        expected=expected,
        lhs_models=tuple(sorted(left.elements())),
        rhs_models=tuple(sorted(right.elements())),
        witness=witness,
        witness_side=side,
        notes=tuple(notes),
    )


def differs_on(
    theorem: str,
    lhs: Iterable[Interpretation],
    rhs: Iterable[Interpretation],
    witness: Iterable[object],
    side: str,
    *,
    notes: Iterable[str] = (),
) -> TheoremReport:
    """A ``differs`` report whose witness is not a plain set difference."""

    return TheoremReport(
        theorem=theorem,
        applicable=True,
        verdict=Verdict.DIFFERS,
        lhs_models=tuple(canonical_models(lhs)),
        rhs_models=tuple(canonical_models(rhs)),
        witness=tuple(sorted(str(item) for item in witness)),
        witness_side=side,
        notes=tuple(notes),
    )


def not_applicable(theorem: str, reason: str, *, expected: Verdict = Verdict.EQUAL) -> TheoremReport:
    return TheoremReport(
        theorem=theorem,
        applicable=False,
        failed_precondition=reason,
        verdict=Verdict.UNDEFINED,
        expected=expected,
    )


def encode_report(report: TheoremReport, *, include_timings: bool = False) -> dict:
    payload: dict = {
        "version": REPORT_VERSION,
        "theorem": report.theorem,
        "applicable": report.applicable,
        "failed_precondition": report.failed_precondition,
        "verdict": report.verdict.value,
        "expected": report.expected.value,
        "passed": report.passed,
        "lhs_models": [list(model) for model in report.lhs_models],
        "rhs_models": [list(model) for model in report.rhs_models],
        "witness": list(report.witness) if report.witness is not None else None,
        "witness_side": report.witness_side,
        "trial": report.trial,
        "seed": report.seed,
        "notes": list(report.notes),
    }
    if include_timings:
        payload["elapsed"] = report.elapsed
    return payload


def _models(value: object) -> tuple[CanonicalModel, ...] | None:
    if not isinstance(value, list):
        return None
    models: list[CanonicalModel] = []
    for item in value:
        if not isinstance(item, list) or not all(isinstance(atom, str) for atom in item):
            return None
        models.append(tuple(item))
    return tuple(models)


def decode_report(payload: object) -> TheoremReport | None:
    """Rebuild a report; malformed payloads or unknown versions return ``None``."""

    if not isinstance(payload, dict):
        return None
    if payload.get("version") != REPORT_VERSION:
        return None

    lhs = _models(payload.get("lhs_models"))
    rhs = _models(payload.get("rhs_models"))
    if lhs is None or rhs is None:
        return None
    witness = payload.get("witness")
    if witness is not None and not isinstance(witness, list):
        return None
    try:
        return TheoremReport(
            theorem=str(payload["theorem"]),
            applicable=bool(payload["applicable"]),
            verdict=Verdict(payload["verdict"]),
            expected=Verdict(payload.get("expected", Verdict.EQUAL.value)),
            failed_precondition=payload.get("failed_precondition"),
            lhs_models=lhs,
            rhs_models=rhs,
            witness=tuple(witness) if witness is not None else None,
            witness_side=payload.get("witness_side"),
            trial=payload.get("trial"),
            seed=payload.get("seed"),
            notes=tuple(payload.get("notes") or ()),
            elapsed=payload.get("elapsed"),
        )
    except (KeyError, ValueError):
        return None


def write_reports(path: Path, reports: Iterable[TheoremReport], *, include_timings: bool = False) -> int:
    lines = [
        json.dumps(encode_report(report, include_timings=include_timings), ensure_ascii=False)
        for report in reports
    ]
    path.write_text("".join(f"{line}\n" for line in lines), encoding="utf-8")
    return len(lines)


def read_reports(path: Path) -> list[TheoremReport | None]:
    """One entry per non-blank line; undecodable lines come back as ``None``."""

    decoded: list[TheoremReport | None] = []
    for line in path.read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError:
            decoded.append(None)
            continue
        decoded.append(decode_report(payload))
    return decoded
