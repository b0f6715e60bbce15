"""Test-object construction and the scaled generalization preference.

A test object matches the training items at exactly one level: same
subordinate category, same basic category (different subordinate), or same
superordinate category (different basic). Every test object carries a
fresh instance feature never seen in training.

The generalization preference for a match level is the mean probability of
that level's test objects divided by the mean for the subordinate matches,
so the subordinate level always scores exactly 1.0 and the fresh-instance
factor common to all objects cancels.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .learner import LearnerState, Word, meaning_prob
from .taxonomy import Feature, GroupLevel, ObjectStimulus, Taxonomy, make_instance


class GeneralizationError(ValueError):
    """Raised for invalid test-set requests or degenerate preference queries."""


class MatchLevel(Enum):
    """How a test object relates to the training items."""

    SUBORDINATE = "subordinate"
    BASIC = "basic"
    SUPERORDINATE = "superordinate"


DEFAULT_TEST_COUNTS: Mapping[MatchLevel, int] = {
    MatchLevel.SUBORDINATE: 2,
    MatchLevel.BASIC: 2,
    MatchLevel.SUPERORDINATE: 4,
}


@dataclass(frozen=True)
class TestObject:
    stimulus: ObjectStimulus
    match: MatchLevel


@dataclass
class GenResult:
    """Scaled generalization preferences for one experimental cell.

    p_gen maps each match level to its preference (subordinate is 1.0 by
    construction); raw_means holds the unscaled mean object probabilities.
    """

    p_gen: dict[MatchLevel, float]
    raw_means: dict[MatchLevel, float]
    condition: str = ""
    presentation: str = ""
    ablation: str = ""

    def same_values(self, other: "GenResult") -> bool:
        """Exact numeric equality, ignoring cell metadata."""
        return self.p_gen == other.p_gen and self.raw_means == other.raw_means


def build_test_set(
    tax: Taxonomy,
    training_subordinate: Feature,
    counts: Mapping[MatchLevel, int] | None = None,
) -> list[TestObject]:
    """Construct test objects for each match level, deterministically.

    Subordinate matches reuse the training subordinate; basic matches take
    sibling subordinates in declaration order; superordinate matches take
    (basic, first-unused-subordinate) pairs from the other basic categories
    in declaration order. Every object gets a freshly minted instance.
    """
    if counts is None:
        counts = DEFAULT_TEST_COUNTS
    counts = {level: int(counts.get(level, 0)) for level in MatchLevel}
    if any(n < 0 for n in counts.values()):
        raise GeneralizationError("test-set counts must be non-negative")
    if all(n == 0 for n in counts.values()):
        raise GeneralizationError("test-set counts are all zero")

    if training_subordinate.group is not GroupLevel.SUBORDINATE:
        raise GeneralizationError(
            f"training feature {training_subordinate.name!r} is at level "
            f"{training_subordinate.group.value}, expected subordinate"
        )
    basic = tax.parent(training_subordinate)
    superordinate = tax.parent(basic)

    siblings = [s for s in tax.children(basic) if s != training_subordinate]
    if counts[MatchLevel.BASIC] > len(siblings):
        raise GeneralizationError(
            f"{counts[MatchLevel.BASIC]} basic matches requested but only "
            f"{len(siblings)} sibling subordinates exist under {basic.name!r}"
        )
    other_pairs = [
        (other_basic, sub)
        for other_basic in tax.children(superordinate)
        if other_basic != basic
        for sub in tax.children(other_basic)
        if sub.group is GroupLevel.SUBORDINATE
    ]
    if counts[MatchLevel.SUPERORDINATE] > len(other_pairs):
        raise GeneralizationError(
            f"{counts[MatchLevel.SUPERORDINATE]} superordinate matches requested "
            f"but only {len(other_pairs)} subordinates exist outside {basic.name!r}"
        )

    test_set: list[TestObject] = []
    for _ in range(counts[MatchLevel.SUBORDINATE]):
        stim = make_instance(tax, training_subordinate)
        test_set.append(TestObject(stim, MatchLevel.SUBORDINATE))
    for sub in siblings[: counts[MatchLevel.BASIC]]:
        stim = make_instance(tax, sub)
        test_set.append(TestObject(stim, MatchLevel.BASIC))
    for _, sub in other_pairs[: counts[MatchLevel.SUPERORDINATE]]:
        stim = make_instance(tax, sub)
        test_set.append(TestObject(stim, MatchLevel.SUPERORDINATE))
    return test_set


def object_prob(state: LearnerState, y: TestObject, w: Word, t: int) -> float:
    """Probability of a test object given the word: the product of the
    meaning probabilities of its four features (one per group)."""
    prob = 1.0
    for feature in y.stimulus.features:
        prob *= meaning_prob(state, feature, w, t)
    return prob


def p_gen(
    state: LearnerState, test_set: list[TestObject], w: Word, t: int
) -> GenResult:
    """Mean object probability per match level, scaled by the subordinate
    mean. Requires at least one subordinate match (the scale reference)."""
    if not test_set:
        raise GeneralizationError("test set is empty")
    sums: dict[MatchLevel, float] = {}
    ns: dict[MatchLevel, int] = {}
    for obj in test_set:
        sums[obj.match] = sums.get(obj.match, 0.0) + object_prob(state, obj, w, t)
        ns[obj.match] = ns.get(obj.match, 0) + 1
    if MatchLevel.SUBORDINATE not in sums:
        raise GeneralizationError("test set has no subordinate matches to scale by")
    raw_means = {level: sums[level] / ns[level] for level in MatchLevel if level in sums}
    reference = raw_means[MatchLevel.SUBORDINATE]
    scaled = {level: raw_means[level] / reference for level in raw_means}
    return GenResult(p_gen=scaled, raw_means=raw_means)
