"""Deterministic simulator of cross-situational word learning and novel
word generalization over a four-level feature taxonomy, with per-group
memory decay and attention to novelty."""

from .config import (
    DEFAULT_TAXONOMY_SPEC,
    ConfigError,
    RunConfig,
    load_config,
    parse_config,
    serialize_config,
)
from .experiment import (
    Ablation,
    AblationFindings,
    Condition,
    ExperimentError,
    Presentation,
    ReversalReport,
    check_reversal,
    condition_from_name,
    run_condition,
    run_grid,
    train_condition,
)
from .generalization import (
    DEFAULT_TEST_COUNTS,
    GeneralizationError,
    GenResult,
    MatchLevel,
    TestObject,
    build_test_set,
    object_prob,
    p_gen,
)
from .learner import (
    DEFAULT_D,
    DEFAULT_GAMMA0,
    DEFAULT_K,
    AlignmentRecord,
    AssociationLedger,
    LearnerError,
    LearnerState,
    Params,
    alignment,
    association,
    decay_exponent,
    gamma_t,
    meaning_prob,
    novelty,
    process_input,
)
from .report import build_figure, emit_csv, emit_svg, render_csv
from .taxonomy import (
    Feature,
    GroupLevel,
    ObjectStimulus,
    Taxonomy,
    TaxonomyError,
    build_taxonomy,
    make_instance,
)

__version__ = "0.1.0"

__all__ = [
    "Ablation",
    "AblationFindings",
    "AlignmentRecord",
    "AssociationLedger",
    "Condition",
    "ConfigError",
    "DEFAULT_D",
    "DEFAULT_GAMMA0",
    "DEFAULT_K",
    "DEFAULT_TAXONOMY_SPEC",
    "DEFAULT_TEST_COUNTS",
    "ExperimentError",
    "Feature",
    "GeneralizationError",
    "GenResult",
    "GroupLevel",
    "LearnerError",
    "LearnerState",
    "MatchLevel",
    "ObjectStimulus",
    "Params",
    "Presentation",
    "ReversalReport",
    "RunConfig",
    "Taxonomy",
    "TaxonomyError",
    "TestObject",
    "alignment",
    "association",
    "build_figure",
    "build_taxonomy",
    "build_test_set",
    "check_reversal",
    "condition_from_name",
    "decay_exponent",
    "emit_csv",
    "emit_svg",
    "gamma_t",
    "load_config",
    "make_instance",
    "meaning_prob",
    "novelty",
    "object_prob",
    "p_gen",
    "parse_config",
    "process_input",
    "render_csv",
    "run_condition",
    "run_grid",
    "serialize_config",
    "train_condition",
]
