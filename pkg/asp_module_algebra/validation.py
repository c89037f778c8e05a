from __future__ import annotations

from dataclasses import dataclass, field

from .core import ProgramModule, RuleKind, sort_atoms


@dataclass
class ValidationIssue:
    message: str
    atoms: list[str] = field(default_factory=list)


@dataclass
class ValidationResult:
    errors: list[ValidationIssue] = field(default_factory=list)
    warnings: list[ValidationIssue] = field(default_factory=list)

    @property
    def has_errors(self) -> bool:
        return bool(self.errors)

    @property
    def ok(self) -> bool:
        return not self.errors

    def summary(self) -> str:
        error_count = len(self.errors)
        warning_count = len(self.warnings)
        return f"{error_count} error(s), {warning_count} warning(s)"


class ModuleValidator:
    def __init__(self, module: ProgramModule):
        self.module = module

    def validate(self) -> ValidationResult:
        result = ValidationResult()
        self._check_disjoint_signatures(result)
        self._check_stray_atoms(result)
        self._check_input_heads(result)
        self._check_inapplicable_rules(result)
        return result

    def _check_disjoint_signatures(self, result: ValidationResult) -> None:
        module = self.module
        pairs = (
            ("I", module.inputs, "O", module.outputs),
            ("I", module.inputs, "H", module.hidden),
            ("O", module.outputs, "H", module.hidden),
        )
        for left_name, left, right_name, right in pairs:
            overlap = left & right
            if overlap:
                result.errors.append(
                    ValidationIssue(
                        message=f"{left_name} ∩ {right_name} ≠ ∅",
                        atoms=[str(atom) for atom in sort_atoms(overlap)],
                    )
                )

    def _check_stray_atoms(self, result: ValidationResult) -> None:
        stray = self.module.rules.atoms - self.module.atoms
        if stray:
            result.errors.append(
                ValidationIssue(
                    message="rule atoms not covered by I ∪ O ∪ H",
                    atoms=[str(atom) for atom in sort_atoms(stray)],
                )
            )

    def _check_input_heads(self, result: ValidationResult) -> None:
        headed_inputs = self.module.rules.head_atoms & self.module.inputs
        for atom in sort_atoms(headed_inputs):
            result.errors.append(
                ValidationIssue(message=f"head atom {atom} is an input", atoms=[str(atom)])
            )

    def _check_inapplicable_rules(self, result: ValidationResult) -> None:
        for rule in self.module.rules:
            clash = rule.body_pos & rule.body_neg
            if clash:
                kind = "constraint" if rule.kind is RuleKind.CONSTRAINT else "rule"
                result.warnings.append(
                    ValidationIssue(
                        message=f"{kind} `{rule}` can never apply",
                        atoms=[str(atom) for atom in sort_atoms(clash)],
                    )
                )


def validate_module(module: ProgramModule) -> ValidationResult:
    return ModuleValidator(module).validate()
