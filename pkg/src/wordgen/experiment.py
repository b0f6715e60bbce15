"""Training schedules, ablations, and the effect/reversal check.

The standard grid crosses two training conditions (one exemplar vs. three
same-subordinate exemplars) with two presentation modes. Simultaneous
presentation merges all exemplars into a single timestep at t=1 and tests
one step later; sequential presentation feeds one exemplar per timestep at
t=1..3 and tests at t=5. With one exemplar the two modes coincide.

Each cell runs on a fresh learner and a private taxonomy copy, so cells
are independent and may execute concurrently.
"""
from __future__ import annotations

import copy
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .generalization import (
    DEFAULT_TEST_COUNTS,
    GenResult,
    MatchLevel,
    build_test_set,
    p_gen,
)
from .learner import LearnerState, Params, process_input
from .taxonomy import Feature, GroupLevel, ObjectStimulus, Taxonomy, make_instance

NOVEL_WORD = "fep"

DEFAULT_SIM_TEST_OFFSET = 1
DEFAULT_SEQ_TEST_OFFSET = 4


class ExperimentError(ValueError):
    """Raised for invalid conditions or grids."""


class Presentation(Enum):
    SIMULTANEOUS = "simultaneous"
    SEQUENTIAL = "sequential"


class Ablation(Enum):
    """Which mechanisms are active: decay, novelty, both, or neither."""

    FULL = "full"
    DECAY_ONLY = "decay-only"
    ATTENTION_ONLY = "attention-only"
    BASELINE = "baseline"

    @property
    def decay_enabled(self) -> bool:
        return self in (Ablation.FULL, Ablation.DECAY_ONLY)

    @property
    def novelty_enabled(self) -> bool:
        return self in (Ablation.FULL, Ablation.ATTENTION_ONLY)


@dataclass(frozen=True)
class Condition:
    """One training condition.

    ``shared_level`` is the deepest taxonomy level all exemplars share:
    subordinate for the standard multi-exemplar condition (exemplars differ
    only in their instance), basic or superordinate for the wider-spread
    variants (exemplars differ one level below the shared one). The test
    times are absolute: training starts at t=1 and the test happens at
    1 + the relevant offset (sequential schedules keep a gap after the last
    exemplar).
    """

    name: str
    n_exemplars: int
    presentation: Presentation
    training_subordinate: str
    shared_level: GroupLevel = GroupLevel.SUBORDINATE
    sim_test_offset: int = DEFAULT_SIM_TEST_OFFSET
    seq_test_offset: int = DEFAULT_SEQ_TEST_OFFSET

    def __post_init__(self) -> None:
        if self.n_exemplars not in (1, 3):
            raise ExperimentError(f"n_exemplars must be 1 or 3, got {self.n_exemplars}")
        if self.shared_level is GroupLevel.INSTANCE:
            raise ExperimentError("exemplars cannot share the instance level")

    @property
    def is_sequential(self) -> bool:
        """One exemplar has a single schedule; modes differ only for several."""
        return self.presentation is Presentation.SEQUENTIAL and self.n_exemplars > 1

    @property
    def test_time(self) -> int:
        offset = self.seq_test_offset if self.is_sequential else self.sim_test_offset
        return 1 + offset


CONDITION_NAMES = {
    "1-example": (1, GroupLevel.SUBORDINATE),
    "3-subordinate": (3, GroupLevel.SUBORDINATE),
    "3-basic": (3, GroupLevel.BASIC),
    "3-superordinate": (3, GroupLevel.SUPERORDINATE),
}

STANDARD_CONDITIONS = ("1-example", "3-subordinate")


def condition_from_name(
    name: str,
    presentation: Presentation,
    training_subordinate: str,
    sim_test_offset: int = DEFAULT_SIM_TEST_OFFSET,
    seq_test_offset: int = DEFAULT_SEQ_TEST_OFFSET,
) -> Condition:
    try:
        n_exemplars, shared = CONDITION_NAMES[name]
    except KeyError:
        raise ExperimentError(
            f"unknown condition {name!r}; expected one of {sorted(CONDITION_NAMES)}"
        ) from None
    return Condition(
        name=name,
        n_exemplars=n_exemplars,
        presentation=presentation,
        training_subordinate=training_subordinate,
        shared_level=shared,
        sim_test_offset=sim_test_offset,
        seq_test_offset=seq_test_offset,
    )


@dataclass(frozen=True)
class ReversalReport:
    """Basic-level deltas (3 exemplars minus 1) per presentation mode."""

    delta_basic_simultaneous: float
    delta_basic_sequential: float
    effect_present: bool
    reversal_present: bool


@dataclass(frozen=True)
class AblationFindings:
    """Mechanism attribution checks over the ablated grids."""

    decay_only_sign_consistent: bool
    attention_only_seq_below_full: bool
    baseline_schedule_invariant: bool | None = None


def _training_exemplars(tax: Taxonomy, cond: Condition) -> list[ObjectStimulus]:
    sub = tax.feature(cond.training_subordinate)
    if sub.group is not GroupLevel.SUBORDINATE:
        raise ExperimentError(
            f"training feature {sub.name!r} is at level {sub.group.value}, "
            "expected subordinate"
        )
    if cond.shared_level is GroupLevel.SUBORDINATE:
        subs = [sub] * cond.n_exemplars
    elif cond.shared_level is GroupLevel.BASIC:
        basic = tax.parent(sub)
        pool = [sub] + [s for s in tax.children(basic) if s != sub]
        if len(pool) < cond.n_exemplars:
            raise ExperimentError(
                f"{cond.n_exemplars} exemplars sharing {basic.name!r} requested "
                f"but only {len(pool)} subordinates exist"
            )
        subs = pool[: cond.n_exemplars]
    else:  # superordinate spread: one exemplar per basic category
        basic = tax.parent(sub)
        superordinate = tax.parent(basic)
        basics = [basic] + [b for b in tax.children(superordinate) if b != basic]
        if len(basics) < cond.n_exemplars:
            raise ExperimentError(
                f"{cond.n_exemplars} exemplars sharing {superordinate.name!r} "
                f"requested but only {len(basics)} basic categories exist"
            )
        subs = [sub] + [tax.children(b)[0] for b in basics[1 : cond.n_exemplars]]
    return [make_instance(tax, s) for s in subs]


def train_condition(
    params: Params, tax: Taxonomy, cond: Condition, ablation: Ablation
) -> tuple[LearnerState, Taxonomy, Feature]:
    """Run one cell's training on a fresh learner and a private taxonomy
    copy. Returns the trained state, the copy (with minted instances), and
    the training subordinate feature; the caller evaluates at
    ``cond.test_time``."""
    tax = copy.deepcopy(tax)
    state = LearnerState(
        params=params.with_mechanisms(ablation.decay_enabled, ablation.novelty_enabled)
    )
    exemplars = _training_exemplars(tax, cond)
    if cond.is_sequential:
        for step, exemplar in enumerate(exemplars, start=1):
            process_input(state, [NOVEL_WORD], list(exemplar.features), step)
    else:
        merged = [feature for exemplar in exemplars for feature in exemplar.features]
        process_input(state, [NOVEL_WORD], merged, 1)
    return state, tax, tax.feature(cond.training_subordinate)


def run_condition(
    params: Params,
    tax: Taxonomy,
    cond: Condition,
    ablation: Ablation,
    test_counts: Mapping[MatchLevel, int] | None = None,
) -> GenResult:
    """Train one cell, build its test set, and score generalization at the
    condition's test time."""
    state, tax_copy, training_sub = train_condition(params, tax, cond, ablation)
    test_set = build_test_set(tax_copy, training_sub, test_counts or DEFAULT_TEST_COUNTS)
    result = p_gen(state, test_set, NOVEL_WORD, cond.test_time)
    result.condition = cond.name
    result.presentation = cond.presentation.value
    result.ablation = ablation.value
    return result


GridKey = tuple[str, str]  # (condition name, presentation value)


def run_grid(
    params: Params,
    tax: Taxonomy,
    ablation: Ablation,
    training_subordinate: str | None = None,
    test_counts: Mapping[MatchLevel, int] | None = None,
    conditions: tuple[str, ...] = STANDARD_CONDITIONS,
    presentations: tuple[Presentation, ...] = (
        Presentation.SIMULTANEOUS,
        Presentation.SEQUENTIAL,
    ),
    sim_test_offset: int = DEFAULT_SIM_TEST_OFFSET,
    seq_test_offset: int = DEFAULT_SEQ_TEST_OFFSET,
) -> dict[GridKey, GenResult]:
    """Run conditions x presentations under one ablation, in declaration
    order, each cell on a fresh learner."""
    if training_subordinate is None:
        training_subordinate = _first_subordinate(tax).name
    grid: dict[GridKey, GenResult] = {}
    for name in conditions:
        for presentation in presentations:
            cond = condition_from_name(
                name, presentation, training_subordinate, sim_test_offset, seq_test_offset
            )
            grid[(name, presentation.value)] = run_condition(
                params, tax, cond, ablation, test_counts
            )
    return grid


def _first_subordinate(tax: Taxonomy) -> Feature:
    for root in tax.roots():
        for basic in tax.children(root):
            for sub in tax.children(basic):
                if sub.group is GroupLevel.SUBORDINATE:
                    return sub
    raise ExperimentError("taxonomy has no subordinate features")


def _basic_delta(grid: Mapping[GridKey, GenResult], presentation: Presentation) -> float:
    mode = presentation.value
    try:
        three = grid[("3-subordinate", mode)].p_gen[MatchLevel.BASIC]
        one = grid[("1-example", mode)].p_gen[MatchLevel.BASIC]
    except KeyError as missing:
        raise ExperimentError(f"grid is missing cell {missing}") from None
    return three - one


def check_reversal(
    grid_full: Mapping[GridKey, GenResult],
    grid_decay_only: Mapping[GridKey, GenResult],
    grid_attention_only: Mapping[GridKey, GenResult],
    grid_baseline: Mapping[GridKey, GenResult] | None = None,
) -> tuple[ReversalReport, AblationFindings]:
    """Compute the effect/reversal report from the full grid and attribute
    the pattern to its mechanisms via the ablated grids.

    The full model should lower basic-level generalization for three
    simultaneous exemplars (effect) and raise it for sequential ones
    (reversal). Decay alone must not flip the delta's sign between modes;
    attention alone must leave the sequential basic value below the full
    model's; the baseline (if given) must be blind to presentation mode.
    """
    delta_sim = _basic_delta(grid_full, Presentation.SIMULTANEOUS)
    delta_seq = _basic_delta(grid_full, Presentation.SEQUENTIAL)
    report = ReversalReport(
        delta_basic_simultaneous=delta_sim,
        delta_basic_sequential=delta_seq,
        effect_present=delta_sim < 0,
        reversal_present=delta_seq > 0,
    )

    decay_sim = _basic_delta(grid_decay_only, Presentation.SIMULTANEOUS)
    decay_seq = _basic_delta(grid_decay_only, Presentation.SEQUENTIAL)
    sign_consistent = not (decay_sim < 0 < decay_seq or decay_seq < 0 < decay_sim)

    attention_seq = grid_attention_only[("3-subordinate", "sequential")].p_gen[
        MatchLevel.BASIC
    ]
    full_seq = grid_full[("3-subordinate", "sequential")].p_gen[MatchLevel.BASIC]

    invariant: bool | None = None
    if grid_baseline is not None:
        invariant = all(
            grid_baseline[(name, "simultaneous")].same_values(
                grid_baseline[(name, "sequential")]
            )
            for name in ("1-example", "3-subordinate")
        )

    findings = AblationFindings(
        decay_only_sign_consistent=sign_consistent,
        attention_only_seq_below_full=attention_seq < full_seq,
        baseline_schedule_invariant=invariant,
    )
    return report, findings
