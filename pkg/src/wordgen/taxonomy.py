"""Four-level feature taxonomy and object stimuli.

Semantic features are symbolic and live in exactly one of four feature
groups, ordered from most abstract to most specific: superordinate,
basic, subordinate, instance. A taxonomy is a strict tree over those
features; an object stimulus is one root-to-leaf path through it, i.e.
a bundle of four features, one per group.

Instance features are minted on demand (training and test stimuli use
fresh instances), so a taxonomy config only has to declare the three
category levels; pre-declared instances are allowed but not required.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping


class TaxonomyError(ValueError):
    """Raised for malformed taxonomy specs or invalid feature lookups."""


class GroupLevel(Enum):
    """The four feature groups, in depth order (most abstract first)."""

    SUPERORDINATE = "superordinate"
    BASIC = "basic"
    SUBORDINATE = "subordinate"
    INSTANCE = "instance"

    @property
    def depth(self) -> int:
        return _DEPTHS[self]

    @property
    def parent_level(self) -> "GroupLevel | None":
        return None if self.depth == 0 else _LEVELS[self.depth - 1]

    @property
    def child_level(self) -> "GroupLevel | None":
        return None if self.depth == len(_LEVELS) - 1 else _LEVELS[self.depth + 1]


_LEVELS = list(GroupLevel)
_DEPTHS = {level: i for i, level in enumerate(_LEVELS)}


@dataclass(frozen=True)
class Feature:
    """An atomic semantic symbol bound to one feature group."""

    name: str
    group: GroupLevel


@dataclass(frozen=True)
class ObjectStimulus:
    """One exemplar: a bundle of four features forming a taxonomy path."""

    superordinate: Feature
    basic: Feature
    subordinate: Feature
    instance: Feature

    def __post_init__(self) -> None:
        for level in _LEVELS:
            feat = getattr(self, level.value)
            if feat.group is not level:
                raise TaxonomyError(
                    f"feature {feat.name!r} is in group {feat.group.value}, "
                    f"expected {level.value}"
                )

    @property
    def features(self) -> tuple[Feature, Feature, Feature, Feature]:
        return (self.superordinate, self.basic, self.subordinate, self.instance)


class Taxonomy:
    """A strict tree of features, one level per feature group.

    Immutable after construction except for instance registration via
    :func:`make_instance`, which must be externally serialized. Children
    keep declaration order so downstream selection is deterministic.
    """

    def __init__(self) -> None:
        self._features: dict[str, Feature] = {}
        self._parent: dict[Feature, Feature] = {}
        self._children: dict[Feature, list[Feature]] = {}
        self._roots: list[Feature] = []
        self._instance_counter = 0

    # -- construction ------------------------------------------------

    def _add(self, name: str, level: GroupLevel, parent: Feature | None) -> Feature:
        if not isinstance(name, str) or not name:
            raise TaxonomyError(f"feature names must be non-empty strings, got {name!r}")
        if name in self._features:
            raise TaxonomyError(f"duplicate feature name {name!r}")
        feat = Feature(name, level)
        self._features[name] = feat
        self._children[feat] = []
        if parent is None:
            self._roots.append(feat)
        else:
            self._parent[feat] = parent
            self._children[parent].append(feat)
        return feat

    # -- lookups -----------------------------------------------------

    def feature(self, name: str) -> Feature:
        try:
            return self._features[name]
        except KeyError:
            raise TaxonomyError(f"unknown feature {name!r}") from None

    def __contains__(self, feature: Feature) -> bool:
        return self._features.get(feature.name) == feature

    def parent(self, feature: Feature) -> Feature | None:
        self._require(feature)
        return self._parent.get(feature)

    def children(self, feature: Feature) -> tuple[Feature, ...]:
        self._require(feature)
        return tuple(self._children[feature])

    def roots(self) -> tuple[Feature, ...]:
        return tuple(self._roots)

    def at_level(self, level: GroupLevel) -> tuple[Feature, ...]:
        return tuple(f for f in self._features.values() if f.group is level)

    def path_to_root(self, feature: Feature) -> tuple[Feature, ...]:
        """Walk parent links from ``feature`` up to its superordinate."""
        self._require(feature)
        path = [feature]
        while (up := self._parent.get(path[-1])) is not None:
            path.append(up)
        return tuple(path)

    def _require(self, feature: Feature) -> None:
        if feature not in self:
            raise TaxonomyError(f"feature {feature.name!r} is not in this taxonomy")

    # -- instances ---------------------------------------------------

    def fresh_instance_name(self) -> str:
        while True:
            self._instance_counter += 1
            name = f"instance_{self._instance_counter}"
            if name not in self._features:
                return name

    def register_instance(self, subordinate: Feature, instance_id: str) -> Feature:
        if subordinate.group is not GroupLevel.SUBORDINATE:
            raise TaxonomyError(
                f"{subordinate.name!r} is at level {subordinate.group.value}, "
                "instances attach to subordinates"
            )
        self._require(subordinate)
        existing = self._features.get(instance_id)
        if existing is not None:
            if existing.group is not GroupLevel.INSTANCE or self._parent[existing] != subordinate:
                raise TaxonomyError(
                    f"{instance_id!r} already exists and is not an instance of "
                    f"{subordinate.name!r}"
                )
            return existing
        return self._add(instance_id, GroupLevel.INSTANCE, subordinate)

    # -- serialization -----------------------------------------------

    def to_spec(self) -> dict:
        """Nested name -> children mapping, the same shape build_taxonomy reads."""

        def branch(feature: Feature) -> dict:
            return {child.name: branch(child) for child in self._children[feature]}

        return {root.name: branch(root) for root in self._roots}

    def __iter__(self) -> Iterator[Feature]:
        return iter(self._features.values())


def build_taxonomy(spec: Mapping[str, Mapping]) -> Taxonomy:
    """Build and validate a taxonomy from a nested name -> children mapping.

    Top-level keys are superordinates, then basics, then subordinates,
    then (optionally) instances. Every path must reach the subordinate
    level; nothing may hang below an instance.
    """
    if not isinstance(spec, Mapping) or not spec:
        raise TaxonomyError("taxonomy spec must be a non-empty mapping of superordinates")
    tax = Taxonomy()
    for super_name, basics in spec.items():
        sup = tax._add(super_name, GroupLevel.SUPERORDINATE, None)
        if not isinstance(basics, Mapping) or not basics:
            raise TaxonomyError(
                f"superordinate {super_name!r} must map to at least one basic category"
            )
        for basic_name, subs in basics.items():
            bas = tax._add(basic_name, GroupLevel.BASIC, sup)
            if not isinstance(subs, Mapping) or not subs:
                raise TaxonomyError(
                    f"basic category {basic_name!r} must map to at least one subordinate"
                )
            for sub_name, instances in subs.items():
                sub = tax._add(sub_name, GroupLevel.SUBORDINATE, bas)
                if not isinstance(instances, Mapping):
                    raise TaxonomyError(
                        f"subordinate {sub_name!r} must map to a (possibly empty) "
                        "mapping of instances"
                    )
                for inst_name, below in instances.items():
                    tax._add(inst_name, GroupLevel.INSTANCE, sub)
                    if below:
                        raise TaxonomyError(
                            f"instance {inst_name!r} cannot have children "
                            "(tree too deep)"
                        )
    return tax


def make_instance(
    tax: Taxonomy, subordinate: Feature, instance_id: str | None = None
) -> ObjectStimulus:
    """Mint (or reuse) an instance under ``subordinate`` and return the full
    four-feature bundle for it.

    ``instance_id`` may be omitted to auto-mint a fresh name; an existing id
    is accepted only if it is already an instance of the same subordinate.
    """
    if instance_id is None:
        instance_id = tax.fresh_instance_name()
    inst = tax.register_instance(subordinate, instance_id)
    basic = tax.parent(subordinate)
    sup = tax.parent(basic) if basic is not None else None
    assert basic is not None and sup is not None  # guaranteed by build validation
    return ObjectStimulus(superordinate=sup, basic=basic, subordinate=subordinate, instance=inst)
