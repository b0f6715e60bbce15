"""Randomized invariant checks shared by the property and acceptance suites.

Each check_* function runs one seeded case; suites loop them over many
seeds. Cases are built through the public API (process_input on random
scenes), never by poking ledger internals, so the invariants are exercised
end to end.
"""
from __future__ import annotations

import random

from wordgen import (
    Feature,
    GroupLevel,
    LearnerState,
    Params,
    association,
    gamma_t,
    meaning_prob,
    novelty,
    process_input,
)

GROUPS = list(GroupLevel)
WORDS = ("wa", "wb", "wc")


def random_params(rng: random.Random, decay=None, novelty_on=None) -> Params:
    return Params(
        gamma0={g: rng.uniform(0.05, 3.0) for g in GROUPS},
        k={g: rng.uniform(8.0, 200.0) for g in GROUPS},
        d={g: rng.uniform(0.01, 2.0) for g in GROUPS},
        gamma_growth_exponent=rng.choice([0.0, 0.5, 1.0, 2.0]),
        decay_enabled=rng.random() < 0.5 if decay is None else decay,
        novelty_enabled=rng.random() < 0.5 if novelty_on is None else novelty_on,
    )


def feature_pool(rng: random.Random) -> dict[GroupLevel, list[Feature]]:
    return {
        g: [Feature(f"{g.value}_{i}", g) for i in range(rng.randint(2, 4))]
        for g in GROUPS
    }


def random_history(
    rng: random.Random,
    params: Params,
    max_steps: int = 4,
    single_word: bool = False,
) -> tuple[LearnerState, dict[GroupLevel, list[Feature]]]:
    state = LearnerState(params=params)
    pool = feature_pool(rng)
    everything = [f for feats in pool.values() for f in feats]
    t = 0
    for _ in range(rng.randint(1, max_steps)):
        t += rng.randint(1, 3)
        if single_word:
            words = [rng.choice(WORDS)]
        else:
            words = rng.sample(WORDS, rng.randint(1, len(WORDS)))
        chosen = rng.sample(everything, rng.randint(1, min(5, len(everything))))
        scene = {f: rng.randint(1, 3) for f in chosen}
        process_input(state, words, scene, t)
    return state, pool


def check_group_normalization(seed: int) -> None:
    """Observed-feature probabilities plus (k - n) copies of the unseen value
    sum to exactly 1 within each group, for any word at any legal time."""
    rng = random.Random(f"normalization-{seed}")
    state, pool = random_history(rng, random_params(rng))
    word = rng.choice(WORDS)
    group = rng.choice(GROUPS)
    t = state.ledger.clock + rng.randint(0, 3)
    observed = state.ledger.features_seen_with(word, group)
    k = state.params.k[group]
    assert len(observed) <= k
    probe = Feature(f"{group.value}_probe", group)
    total = sum(meaning_prob(state, f, word, t) for f in observed)
    unseen = meaning_prob(state, probe, word, t)
    identity = total + (k - len(observed)) * unseen
    assert abs(identity - 1.0) < 1e-9, f"group mass {identity} != 1"


def check_decay_monotonicity(seed: int) -> None:
    """With decay on and no new co-occurrences, association strictly falls."""
    rng = random.Random(f"monotone-{seed}")
    params = random_params(rng, decay=True)
    state, _ = random_history(rng, params, single_word=True)
    pairs = list(state.ledger.records)
    word, feature = rng.choice(pairs)
    values = [
        association(state, feature, word, t)
        for t in range(state.ledger.clock, state.ledger.clock + 8)
    ]
    assert all(v > 0 for v in values)
    assert all(a > b for a, b in zip(values, values[1:])), values


def check_decay_ordering(seed: int) -> None:
    """For identical histories, decay ordered by depth keeps associations
    ordered: superordinate >= basic >= subordinate >= instance."""
    rng = random.Random(f"ordering-{seed}")
    draws = sorted(rng.uniform(0.01, 2.0) for _ in GROUPS)
    params = Params(
        gamma0={g: rng.uniform(0.05, 3.0) for g in GROUPS},
        k={g: rng.uniform(8.0, 200.0) for g in GROUPS},
        d=dict(zip(GROUPS, draws)),  # increasing with depth
        decay_enabled=True,
        novelty_enabled=rng.random() < 0.5,
    )
    state = LearnerState(params=params)
    features = [Feature(f"{g.value}_0", g) for g in GROUPS]
    t = 0
    for _ in range(rng.randint(1, 4)):
        t += rng.randint(1, 3)
        multiplicity = rng.randint(1, 3)
        process_input(state, ["wa"], {f: multiplicity for f in features}, t)
    query = t + rng.randint(0, 5)
    values = [association(state, f, "wa", query) for f in features]
    assert all(a >= b for a, b in zip(values, values[1:])), values


def check_novelty_bounds(seed: int) -> None:
    """Novelty lies in (0, 1] and equals 1 exactly at a pair's first time."""
    rng = random.Random(f"novelty-{seed}")
    state, _ = random_history(rng, random_params(rng))
    for (word, feature), records in state.ledger.records.items():
        first_time = records[0].time
        for record in records:
            value = novelty(state, feature, word, record.time)
            assert 0.0 < value <= 1.0
            assert (value == 1.0) == (record.time == first_time)


def check_single_word_alignment(seed: int) -> None:
    """With one-word utterances the stored alignment is exactly the novelty."""
    rng = random.Random(f"singleword-{seed}")
    params = random_params(rng, novelty_on=True)
    state, _ = random_history(rng, params, single_word=True)
    for (word, feature), records in state.ledger.records.items():
        for record in records:
            assert record.strength == novelty(state, feature, word, record.time)


class PlainAccumulator:
    """Independent count-and-normalize learner: alignments from the meaning
    probabilities of the previous step, summed without decay or novelty."""

    def __init__(self, params: Params) -> None:
        self.gamma0 = params.gamma0
        self.k = params.k
        self.exponent = params.gamma_growth_exponent
        self.assoc: dict[tuple[str, Feature], float] = {}
        self.types: dict[GroupLevel, dict[Feature, None]] = {g: {} for g in GROUPS}
        self.seen_with: dict[tuple[str, GroupLevel], dict[Feature, None]] = {}

    def gamma(self, group: GroupLevel) -> float:
        return self.gamma0[group] * max(1, len(self.types[group])) ** self.exponent

    def prob(self, feature: Feature, word: str) -> float:
        gamma = self.gamma(feature.group)
        group_sum = 0.0
        for seen in self.seen_with.get((word, feature.group), {}):
            group_sum += self.assoc[(word, seen)]
        return (self.assoc.get((word, feature), 0.0) + gamma) / (
            group_sum + self.k[feature.group] * gamma
        )

    def process(self, words: list[str], scene: dict[Feature, int]) -> None:
        for feature in scene:
            self.types[feature.group].setdefault(feature)
        strengths = {}
        for feature in scene:
            for word in words:
                denom = 0.0
                for other in words:
                    denom += self.prob(feature, other)
                strengths[(word, feature)] = self.prob(feature, word) / denom
        for feature in scene:
            for word in words:
                self.seen_with.setdefault((word, feature.group), {}).setdefault(feature)
                self.assoc[(word, feature)] = (
                    self.assoc.get((word, feature), 0.0)
                    + scene[feature] * strengths[(word, feature)]
                )


def check_baseline_reduction(seed: int) -> None:
    """With decay and novelty off, associations and probabilities equal the
    plain accumulation exactly, and associations are time-independent."""
    rng = random.Random(f"baseline-{seed}")
    params = random_params(rng, decay=False, novelty_on=False)
    state = LearnerState(params=params)
    oracle = PlainAccumulator(params)
    pool = feature_pool(rng)
    everything = [f for feats in pool.values() for f in feats]
    t = 0
    for _ in range(rng.randint(1, 4)):
        t += rng.randint(1, 3)
        words = rng.sample(WORDS, rng.randint(1, len(WORDS)))
        chosen = rng.sample(everything, rng.randint(1, min(5, len(everything))))
        scene = {f: rng.randint(1, 3) for f in chosen}
        process_input(state, words, scene, t)
        oracle.process(list(words), scene)

    clock = state.ledger.clock
    probes = everything + [Feature(f"{g.value}_probe", g) for g in GROUPS]
    for word in WORDS:
        for feature in probes:
            expected = oracle.assoc.get((word, feature), 0.0)
            assert association(state, feature, word, clock) == expected
            assert association(state, feature, word, clock + 5) == expected
            assert meaning_prob(state, feature, word, clock) == oracle.prob(feature, word)
    for group in GROUPS:
        assert gamma_t(state, group) == oracle.gamma(group)


CHECKS = {
    "group normalization identity": check_group_normalization,
    "decay monotonicity": check_decay_monotonicity,
    "decay ordering across groups": check_decay_ordering,
    "novelty bounds and first-exposure unity": check_novelty_bounds,
    "single-word alignment equals novelty": check_single_word_alignment,
    "plain accumulation reduction": check_baseline_reduction,
}
