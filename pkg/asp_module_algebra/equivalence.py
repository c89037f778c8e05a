"""Visible and modular equivalence, decided by exhaustive enumeration."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .config import EnumerationLimits
from .core import Interpretation, ProgramModule, render_model, sort_atoms
from .semantics import stable_models_module


@dataclass(frozen=True, slots=True)
class EquivalenceResult:
    equivalent: bool
    diagnostics: tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.equivalent


def _render_atoms(items) -> str:
    return "{" + ", ".join(str(atom) for atom in sort_atoms(items)) + "}"


def _multiplicity_mismatch(
    left: Counter[Interpretation], right: Counter[Interpretation]
) -> list[str]:
    diagnostics: list[str] = []
    for projection in sorted(set(left) | set(right), key=render_model):
        if left[projection] != right[projection]:
            diagnostics.append(
                f"visible projection {render_model(projection)} occurs "
                f"{left[projection]} time(s) vs {right[projection]} time(s)"
            )
    return diagnostics


def visibly_equivalent(
    p: ProgramModule, q: ProgramModule, *, limits: EnumerationLimits | None = None
) -> EquivalenceResult:
    if p.visible != q.visible:
        return EquivalenceResult(
            False,
            (f"visible atoms differ: {_render_atoms(p.visible)} vs {_render_atoms(q.visible)}",),
        )
    left = stable_models_module(p, limits=limits).visible_projections()
    right = stable_models_module(q, limits=limits).visible_projections()
    diagnostics = _multiplicity_mismatch(left, right)
    return EquivalenceResult(not diagnostics, tuple(diagnostics))


def modularly_equivalent(
    p: ProgramModule, q: ProgramModule, *, limits: EnumerationLimits | None = None
) -> EquivalenceResult:
    if p.inputs != q.inputs:
        return EquivalenceResult(
            False,
            (f"input atoms differ: {_render_atoms(p.inputs)} vs {_render_atoms(q.inputs)}",),
        )
    return visibly_equivalent(p, q, limits=limits)
