from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

PACKAGE_DIR = Path(__file__).resolve().parent
FIXTURE_DIR = PACKAGE_DIR / "fixtures"

MODULE_SUFFIX = ".mlp"

DEFAULT_MAX_ATOMS = 20
MAX_ATOMS_ENV = "MLP_MAX_ATOMS"

# Composites built by the harness carry renamed copies of every common output.
CAMPAIGN_MAX_ATOMS = 48
MAX_GENERATION_ATTEMPTS = 64


@dataclass(frozen=True, slots=True)
class EnumerationLimits:
    """Upper bound on the candidate space of one stable-model enumeration."""

    max_atoms: int = DEFAULT_MAX_ATOMS

    def __post_init__(self) -> None:
        if self.max_atoms < 0:
            raise ValueError(f"max_atoms must be non-negative, got {self.max_atoms}")

    @classmethod
    def from_env(cls, override: int | None = None) -> EnumerationLimits:
        if override is not None:
            return cls(max_atoms=override)
        raw = os.environ.get(MAX_ATOMS_ENV)
        if raw is None or not raw.strip():
            return cls()
        try:
            value = int(raw)
        except ValueError as exc:
            raise ValueError(f"{MAX_ATOMS_ENV} must be an integer, got {raw!r}") from exc
        return cls(max_atoms=value)
