"""Exception hierarchy for parsing, solving and composing program modules."""

from __future__ import annotations

from typing import Iterable


def _render(atoms: Iterable[object]) -> str:
    return ", ".join(sorted(str(atom) for atom in atoms))


class ModuleAlgebraError(ValueError):
    """Root of every error raised by this package."""


class ModuleParseError(ModuleAlgebraError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class GroundingError(ModuleAlgebraError):
    pass


class EnumerationCapExceeded(ModuleAlgebraError):
    def __init__(self, atom_count: int, cap: int):
        super().__init__(
            f"enumeration over {atom_count} atoms exceeds the cap of {cap}; refusing to enumerate"
        )
        self.atom_count = atom_count
        self.cap = cap


class FreshAtomCollision(ModuleAlgebraError):
    pass


class GenerationError(ModuleAlgebraError):
    pass


class CompositionError(ModuleAlgebraError):
    """A composition or renaming precondition failed for the listed atoms."""

    label = "composition error"

    def __init__(self, atoms: Iterable[object], detail: str | None = None):
        self.atoms = tuple(sorted(str(atom) for atom in atoms))
        message = f"{self.label}: {{{_render(self.atoms)}}}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class OutputsOverlap(CompositionError):
    label = "OutputsOverlap"


class HiddenLeak(CompositionError):
    label = "HiddenLeak"


class OldNotOutput(CompositionError):
    label = "OldNotOutput"


class FreshCollision(CompositionError):
    label = "FreshCollision"


class CoverageMismatch(CompositionError):
    label = "CoverageMismatch"


class MutualDependence(CompositionError):
    label = "MutualDependence"

    def __init__(self, cycle: Iterable[object]):
        self.cycle = tuple(str(atom) for atom in cycle)
        ModuleAlgebraError.__init__(self, f"{self.label}{{{'→'.join(self.cycle)}}}")
        self.atoms = tuple(sorted(set(self.cycle)))
