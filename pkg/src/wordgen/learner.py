"""Incremental cross-situational learner with decay and novelty weighting.

The learner consumes a stream of (utterance, scene) pairs, one per integer
timestep. Processing a pair is a two-step bootstrap:

1. Alignment: every co-occurring (feature, word) pair gets an alignment
   strength, the word-competition ratio of pre-update meaning probabilities
   scaled by a novelty factor. The novelty factor is the ratio of the
   pair's token count at the current time to its lifetime token count, so
   a first-ever pairing is undiminished (factor 1) and repetitions are
   attenuated.

2. Accumulation: each alignment is stored as a timestamped record. The
   association score of a pair at time t sums its records, each divided by
   (t - record_time + 1) ** (d_group / strength), i.e. a power-law decay
   whose exponent is the group's decay constant divided by the alignment
   strength (weak alignments are forgotten faster). With decay disabled the
   records are summed as-is.

Meaning probabilities normalize association scores within a feature group:

    P_t(f | w) = (assoc_t(f, w) + gamma) / (sum_assoc(group, w) + k * gamma)

where k is the group's expected feature count and gamma grows with the
number of feature types ever observed in the group:
gamma = gamma0 * max(1, n_types) ** gamma_growth_exponent.

Both mechanisms can be switched off independently (Params.decay_enabled,
Params.novelty_enabled); with both off the learner reduces to plain
count-and-normalize cross-situational learning.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .taxonomy import Feature, GroupLevel

Word = str
Pair = tuple[Word, Feature]

DEFAULT_GAMMA0: Mapping[GroupLevel, float] = {
    GroupLevel.SUPERORDINATE: 0.2,
    GroupLevel.BASIC: 0.5,
    GroupLevel.SUBORDINATE: 1.0,
    GroupLevel.INSTANCE: 1.2,
}
DEFAULT_K: Mapping[GroupLevel, float] = {level: 100.0 for level in GroupLevel}
DEFAULT_D: Mapping[GroupLevel, float] = {
    GroupLevel.SUPERORDINATE: 0.01,
    GroupLevel.BASIC: 0.05,
    GroupLevel.SUBORDINATE: 0.5,
    GroupLevel.INSTANCE: 0.8,
}


class LearnerError(ValueError):
    """Raised for precondition violations in learner operations."""


@dataclass(frozen=True)
class Params:
    """All tunable constants of the learner.

    gamma0, k and d map each feature group to a strictly positive real:
    the a-priori smoothing weight, the expected number of features in the
    group, and the decay constant. The adult defaults order gamma0 and d
    strictly increasing with taxonomy depth (deeper groups are more open
    to generalization and forgotten faster).
    """

    gamma0: Mapping[GroupLevel, float] = field(default_factory=lambda: dict(DEFAULT_GAMMA0))
    k: Mapping[GroupLevel, float] = field(default_factory=lambda: dict(DEFAULT_K))
    d: Mapping[GroupLevel, float] = field(default_factory=lambda: dict(DEFAULT_D))
    gamma_growth_exponent: float = 1.0
    decay_enabled: bool = True
    novelty_enabled: bool = True

    def __post_init__(self) -> None:
        for name, mapping in (("gamma0", self.gamma0), ("k", self.k), ("d", self.d)):
            for level in GroupLevel:
                value = mapping.get(level)
                if value is None:
                    raise LearnerError(f"params.{name} missing group {level.value}")
                if not value > 0:
                    raise LearnerError(
                        f"params.{name}.{level.value} must be > 0, got {value!r}"
                    )
        if self.gamma_growth_exponent < 0:
            raise LearnerError("params.gamma_growth_exponent must be >= 0")

    def with_mechanisms(self, decay: bool, novelty: bool) -> "Params":
        return Params(
            gamma0=dict(self.gamma0),
            k=dict(self.k),
            d=dict(self.d),
            gamma_growth_exponent=self.gamma_growth_exponent,
            decay_enabled=decay,
            novelty_enabled=novelty,
        )


@dataclass(frozen=True)
class AlignmentRecord:
    """One stored alignment: when it happened, how strong, how many tokens."""

    time: int
    strength: float
    tokens: int

    def __post_init__(self) -> None:
        if not self.strength > 0:
            raise LearnerError(f"alignment strength must be > 0, got {self.strength!r}")
        if self.tokens < 1:
            raise LearnerError(f"token count must be >= 1, got {self.tokens!r}")


class AssociationLedger:
    """Full co-occurrence history: per-pair alignment records plus the set of
    feature types ever observed per group.

    Within one timestep the ledger is driven in two phases: stage_tokens
    tallies the step's token counts and registers new types (so novelty can
    see the current step), then commit_alignments appends one record per
    pair and advances the clock. All iteration orders are insertion orders,
    so identical input sequences produce identical float accumulation.
    """

    def __init__(self) -> None:
        self.records: dict[Pair, list[AlignmentRecord]] = {}
        self._observed_types: dict[GroupLevel, dict[Feature, None]] = {
            level: {} for level in GroupLevel
        }
        self.clock = 0
        self._pending: dict[Pair, int] = {}
        self._pending_time: int | None = None

    # -- observed types ------------------------------------------------

    def observed_types(self, group: GroupLevel) -> tuple[Feature, ...]:
        return tuple(self._observed_types[group])

    def n_observed_types(self, group: GroupLevel) -> int:
        return len(self._observed_types[group])

    # -- staging (phase 1 of a timestep) --------------------------------

    def stage_tokens(self, t: int, tallies: Mapping[Pair, int]) -> None:
        if t <= self.clock:
            raise LearnerError(
                f"time must increase monotonically: got t={t} with clock={self.clock}"
            )
        if self._pending_time is not None:
            raise LearnerError("a timestep is already staged and uncommitted")
        if any(count < 1 for count in tallies.values()):
            raise LearnerError("staged token counts must be >= 1")
        self._pending = dict(tallies)
        self._pending_time = t
        for (_, feature) in tallies:
            self._observed_types[feature.group].setdefault(feature)

    # -- committing (phase 3 of a timestep) ------------------------------

    def commit_alignments(self, strengths: Mapping[Pair, float]) -> None:
        if self._pending_time is None:
            raise LearnerError("no staged timestep to commit")
        t = self._pending_time
        for pair, tokens in self._pending.items():
            record = AlignmentRecord(time=t, strength=strengths[pair], tokens=tokens)
            self.records.setdefault(pair, []).append(record)
        self._pending = {}
        self._pending_time = None
        self.clock = t

    # -- queries ---------------------------------------------------------

    def records_for(self, word: Word, feature: Feature) -> tuple[AlignmentRecord, ...]:
        return tuple(self.records.get((word, feature), ()))

    def tokens_at(self, word: Word, feature: Feature, t: int) -> int:
        """Token count of the pair at exactly time t, staged or committed."""
        if self._pending_time == t:
            return self._pending.get((word, feature), 0)
        return sum(r.tokens for r in self.records.get((word, feature), ()) if r.time == t)

    def tokens_through(self, word: Word, feature: Feature, t: int) -> int:
        """Lifetime token count of the pair up to and including time t."""
        total = sum(r.tokens for r in self.records.get((word, feature), ()) if r.time <= t)
        if self._pending_time is not None and self._pending_time <= t:
            total += self._pending.get((word, feature), 0)
        return total

    def features_seen_with(self, word: Word, group: GroupLevel) -> tuple[Feature, ...]:
        """Features of ``group`` with committed records for ``word``, in first
        co-occurrence order."""
        return tuple(
            f for (w, f) in self.records if w == word and f.group is group
        )

    def to_json_dict(self) -> dict:
        """Diagnostic dump: word -> feature name -> list of record dicts."""
        out: dict[str, dict[str, list[dict]]] = {}
        for (word, feature), recs in self.records.items():
            out.setdefault(word, {})[feature.name] = [
                {"time": r.time, "strength": r.strength, "tokens": r.tokens} for r in recs
            ]
        return out


@dataclass
class LearnerState:
    """A learner: its parameters, its full history, and its vocabulary.

    Deterministic by construction; the state is a pure function of the
    parameters and the processed input sequence. Single writer: calls to
    process_input on one state must be serialized. All query operations
    are pure reads.
    """

    params: Params = field(default_factory=Params)
    ledger: AssociationLedger = field(default_factory=AssociationLedger)
    vocabulary: dict[Word, None] = field(default_factory=dict)


def gamma_t(state: LearnerState, group: GroupLevel) -> float:
    """Smoothing weight for ``group``: gamma0 scaled by observed type count."""
    n = state.ledger.n_observed_types(group)
    return state.params.gamma0[group] * max(1, n) ** state.params.gamma_growth_exponent


def decay_exponent(params: Params, group: GroupLevel, strength: float) -> float:
    """Decay exponent for one record: the group decay constant over the
    alignment strength, so weaker alignments decay faster. Uncapped; a tiny
    strength yields a huge exponent and the record is forgotten immediately."""
    if not strength > 0:
        raise LearnerError(f"alignment strength must be > 0, got {strength!r}")
    return params.d[group] / strength


def association(state: LearnerState, f: Feature, w: Word, t: int) -> float:
    """Association score of (f, w) at time t: the decayed sum of the pair's
    alignment records (plain sum when decay is disabled)."""
    records = state.ledger.records.get((w, f), ())
    total = 0.0
    for r in records:
        if r.time > t:
            raise LearnerError(
                f"association queried at t={t}, before the record at t={r.time}"
            )
        if state.params.decay_enabled:
            elapsed = t - r.time + 1
            total += r.tokens * r.strength / elapsed ** decay_exponent(
                state.params, f.group, r.strength
            )
        else:
            total += r.tokens * r.strength
    return total


def meaning_prob(state: LearnerState, f: Feature, w: Word, t: int) -> float:
    """Meaning probability P_t(f | w), normalized within f's feature group.

    Features never observed with w contribute zero association, so the
    group sum runs only over the features actually seen with w; an unseen
    feature gets the smoothing-only value gamma / (sum_assoc + k * gamma).
    """
    if not isinstance(f, Feature) or f.group not in state.params.gamma0:
        raise LearnerError(f"unknown feature: {f!r}")
    group = f.group
    gamma = gamma_t(state, group)
    group_sum = 0.0
    for observed in state.ledger.features_seen_with(w, group):
        group_sum += association(state, observed, w, t)
    numer = association(state, f, w, t) + gamma
    denom = group_sum + state.params.k[group] * gamma
    return numer / denom


def novelty(state: LearnerState, f: Feature, w: Word, t: int) -> float:
    """Novelty of the (f, w) pairing at time t: its token count at t over
    its lifetime token count through t. Equals 1 exactly when every token
    of the pair occurred at t."""
    now = state.ledger.tokens_at(w, f, t)
    if now == 0:
        raise LearnerError(f"({f.name!r}, {w!r}) has no tokens at t={t}")
    return now / state.ledger.tokens_through(w, f, t)


def alignment(
    state: LearnerState, f: Feature, w: Word, utterance: Iterable[Word], t: int
) -> float:
    """Alignment strength of (f, w) at time t: the pre-update meaning
    probability of f given w, relative to f's probability under every word
    in the utterance, scaled by the pair's novelty (or by 1 when novelty is
    disabled). Valid while time t's tokens are staged or committed."""
    words = _normalize_words(utterance)
    if not words:
        raise LearnerError("utterance is empty")
    if w not in words:
        raise LearnerError(f"word {w!r} is not in the utterance")
    competition_denom = 0.0
    for other in words:
        competition_denom += meaning_prob(state, f, other, t - 1)
    strength = meaning_prob(state, f, w, t - 1) / competition_denom
    if state.params.novelty_enabled:
        strength *= novelty(state, f, w, t)
    return strength


def process_input(
    state: LearnerState,
    utterance: Iterable[Word],
    scene: Iterable[Feature] | Mapping[Feature, int],
    t: int,
) -> LearnerState:
    """Consume one (utterance, scene) pair at time t, updating the state.

    The scene is a multiset: repeated features (or an explicit feature ->
    count mapping) raise the token multiplicity of that feature at t; a
    simultaneous presentation of several exemplars is the merged multiset
    of their features in a single call. Every distinct (feature, word) pair
    gets exactly one record carrying its multiplicity, with its alignment
    computed from the probabilities of the previous timestep.
    """
    words = _normalize_words(utterance)
    counts = _normalize_scene(scene)
    if not words:
        raise LearnerError("utterance is empty")
    if not counts:
        raise LearnerError("scene is empty")

    ledger = state.ledger
    ledger.stage_tokens(t, {(w, f): counts[f] for f in counts for w in words})
    strengths = {
        (w, f): alignment(state, f, w, words, t) for f in counts for w in words
    }
    ledger.commit_alignments(strengths)
    for w in words:
        state.vocabulary.setdefault(w)
    return state


def _normalize_words(utterance: Iterable[Word]) -> tuple[Word, ...]:
    if isinstance(utterance, (set, frozenset)):
        return tuple(sorted(utterance))
    return tuple(dict.fromkeys(utterance))


def _normalize_scene(scene: Iterable[Feature] | Mapping[Feature, int]) -> dict[Feature, int]:
    if isinstance(scene, Mapping):
        counts = dict(scene)
    else:
        counts = dict(Counter(scene))
    for feature, n in counts.items():
        if not isinstance(feature, Feature):
            raise LearnerError(f"scene entries must be Features, got {feature!r}")
        if n < 1:
            raise LearnerError(f"scene multiplicity must be >= 1, got {n} for {feature.name!r}")
    return counts
