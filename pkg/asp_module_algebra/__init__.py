"""Module algebra for answer-set programs."""

from .compose import (
    Bridge,
    RenameMap,
    build_bridge,
    build_filter_module,
    build_union_module,
    common_outputs,
    compose_conservative,
    compose_plus,
    compose_relaxed,
    compose_relaxed_rt,
    compose_sqcup,
    hide,
    operator_for,
    project,
    rename_output,
)
from .config import EnumerationLimits
from .core import (
    AnswerSetCollection,
    Atom,
    Program,
    ProgramModule,
    Rule,
    RuleKind,
    atoms,
    canonical_models,
    render_model,
    visible_atoms,
)
from .depgraph import (
    DependencyEdge,
    DependencyGraph,
    build_positive_graph,
    cross_module_cycle,
    mutually_independent,
    to_dot,
)
from .equivalence import EquivalenceResult, modularly_equivalent, visibly_equivalent
from .errors import (
    CompositionError,
    CoverageMismatch,
    EnumerationCapExceeded,
    FreshAtomCollision,
    FreshCollision,
    GenerationError,
    GroundingError,
    HiddenLeak,
    ModuleAlgebraError,
    ModuleParseError,
    MutualDependence,
    OldNotOutput,
    OutputsOverlap,
)
from .harness import (
    THEOREM_IDS,
    Fixture,
    GeneratorConfig,
    check_theorem,
    fixtures,
    random_module,
    random_pair,
    run_campaign,
    verify_fixture,
)
from .join import check_module_theorem, natural_join
from .parser import (
    LoadReport,
    ModuleLoader,
    ModuleSource,
    format_module,
    ground,
    load_module,
    parse_module,
)
from .reports import TheoremReport, Verdict, decode_report, encode_report, read_reports, write_reports
from .semantics import (
    PositiveProgram,
    is_stable_model,
    least_model,
    naive_stable_models_module,
    reduct,
    stable_models_module,
    stable_models_program,
    translate_choice,
)
from .validation import ModuleValidator, ValidationIssue, ValidationResult, validate_module

__all__ = [
    "Atom",
    "Rule",
    "RuleKind",
    "Program",
    "ProgramModule",
    "AnswerSetCollection",
    "atoms",
    "visible_atoms",
    "canonical_models",
    "render_model",
    "EnumerationLimits",
    "ModuleValidator",
    "ValidationIssue",
    "ValidationResult",
    "validate_module",
    "ModuleSource",
    "parse_module",
    "ground",
    "load_module",
    "format_module",
    "ModuleLoader",
    "LoadReport",
    "PositiveProgram",
    "translate_choice",
    "reduct",
    "least_model",
    "stable_models_program",
    "stable_models_module",
    "is_stable_model",
    "naive_stable_models_module",
    "DependencyEdge",
    "DependencyGraph",
    "build_positive_graph",
    "cross_module_cycle",
    "mutually_independent",
    "to_dot",
    "RenameMap",
    "Bridge",
    "build_bridge",
    "common_outputs",
    "compose_plus",
    "compose_sqcup",
    "compose_relaxed",
    "rename_output",
    "hide",
    "project",
    "build_union_module",
    "build_filter_module",
    "compose_relaxed_rt",
    "compose_conservative",
    "operator_for",
    "natural_join",
    "check_module_theorem",
    "EquivalenceResult",
    "visibly_equivalent",
    "modularly_equivalent",
    "TheoremReport",
    "Verdict",
    "encode_report",
    "decode_report",
    "write_reports",
    "read_reports",
    "THEOREM_IDS",
    "Fixture",
    "fixtures",
    "verify_fixture",
    "GeneratorConfig",
    "random_module",
    "random_pair",
    "check_theorem",
    "run_campaign",
    "ModuleAlgebraError",
    "ModuleParseError",
    "GroundingError",
    "EnumerationCapExceeded",
    "FreshAtomCollision",
    "GenerationError",
    "CompositionError",
    "OutputsOverlap",
    "HiddenLeak",
    "MutualDependence",
    "OldNotOutput",
    "FreshCollision",
    "CoverageMismatch",
]
