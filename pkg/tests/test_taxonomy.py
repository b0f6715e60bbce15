"""Taxonomy construction, instance minting, and serialization round-trips."""
import pytest

from wordgen import (
    Feature,
    GroupLevel,
    ObjectStimulus,
    TaxonomyError,
    build_taxonomy,
    make_instance,
)

MINIMAL = {"animal": {"dog": {"dalmatian": {"instance_1": {}}}}}


def test_group_levels_are_depth_ordered():
    levels = list(GroupLevel)
    assert [lv.value for lv in levels] == [
        "superordinate", "basic", "subordinate", "instance",
    ]
    assert [lv.depth for lv in levels] == [0, 1, 2, 3]
    assert GroupLevel.SUPERORDINATE.parent_level is None
    assert GroupLevel.INSTANCE.child_level is None
    assert GroupLevel.BASIC.parent_level is GroupLevel.SUPERORDINATE
    assert GroupLevel.SUBORDINATE.child_level is GroupLevel.INSTANCE


def test_build_default_taxonomy(tax):
    animal = tax.feature("animal")
    assert animal.group is GroupLevel.SUPERORDINATE
    assert [b.name for b in tax.children(animal)] == ["dog", "bird", "cat"]
    dog = tax.feature("dog")
    assert [s.name for s in tax.children(dog)] == ["dalmatian", "poodle", "terrier"]
    assert tax.parent(tax.feature("dalmatian")) == dog


def test_build_minimal_single_path():
    tax = build_taxonomy(MINIMAL)
    inst = tax.feature("instance_1")
    assert inst.group is GroupLevel.INSTANCE
    assert [f.name for f in tax.path_to_root(inst)] == [
        "instance_1", "dalmatian", "dog", "animal",
    ]


def test_build_accepts_subordinates_without_declared_instances():
    tax = build_taxonomy({"animal": {"dog": {"dalmatian": {}}}})
    assert tax.at_level(GroupLevel.INSTANCE) == ()


@pytest.mark.parametrize(
    "spec,fragment",
    [
        ({}, "non-empty"),
        ({"animal": {}}, "at least one basic"),
        ({"animal": {"dog": {}}}, "at least one subordinate"),
        ({"animal": {"dog": {"dalmatian": {"i1": {"deeper": {}}}}}}, "too deep"),
        ({"animal": {"dog": {"dalmatian": {}, "animal": {}}}}, "duplicate"),
        ({"animal": {"dog": "dalmatian"}}, "at least one subordinate"),
    ],
)
def test_build_rejects_malformed_specs(spec, fragment):
    with pytest.raises(TaxonomyError, match=fragment):
        build_taxonomy(spec)


def test_make_instance_returns_full_bundle(tax):
    stim = make_instance(tax, tax.feature("dalmatian"), "instance_1")
    assert [f.name for f in stim.features] == ["animal", "dog", "dalmatian", "instance_1"]
    assert stim.instance.group is GroupLevel.INSTANCE


def test_make_instance_under_other_branch(tax):
    stim = make_instance(tax, tax.feature("toucan"), "instance_6")
    assert [f.name for f in stim.features] == ["animal", "bird", "toucan", "instance_6"]


def test_make_instance_rejects_non_subordinate(tax):
    with pytest.raises(TaxonomyError, match="basic"):
        make_instance(tax, tax.feature("dog"), "instance_7")


def test_make_instance_rejects_unknown_subordinate(tax):
    ghost = Feature("wolfhound", GroupLevel.SUBORDINATE)
    with pytest.raises(TaxonomyError, match="not in this taxonomy"):
        make_instance(tax, ghost, "instance_1")


def test_make_instance_rejects_id_attached_elsewhere(tax):
    make_instance(tax, tax.feature("dalmatian"), "instance_1")
    with pytest.raises(TaxonomyError, match="instance_1"):
        make_instance(tax, tax.feature("poodle"), "instance_1")


def test_make_instance_is_idempotent_for_same_subordinate(tax):
    first = make_instance(tax, tax.feature("dalmatian"), "instance_1")
    second = make_instance(tax, tax.feature("dalmatian"), "instance_1")
    assert first == second
    assert len(tax.at_level(GroupLevel.INSTANCE)) == 1


def test_auto_minted_ids_are_fresh(tax):
    a = make_instance(tax, tax.feature("dalmatian"))
    b = make_instance(tax, tax.feature("poodle"))
    assert a.instance.name == "instance_1"
    assert b.instance.name == "instance_2"


def test_auto_mint_skips_declared_names():
    tax = build_taxonomy({"animal": {"dog": {"dalmatian": {"instance_1": {}}}}})
    stim = make_instance(tax, tax.feature("dalmatian"))
    assert stim.instance.name == "instance_2"


def test_parent_walk_reproduces_bundle(tax):
    for sub in tax.at_level(GroupLevel.SUBORDINATE):
        stim = make_instance(tax, sub)
        assert tax.path_to_root(stim.instance) == (
            stim.instance, stim.subordinate, stim.basic, stim.superordinate,
        )


def test_spec_round_trip(tax):
    make_instance(tax, tax.feature("tabby"), "instance_1")
    spec = tax.to_spec()
    rebuilt = build_taxonomy(spec)
    assert rebuilt.to_spec() == spec
    assert rebuilt.feature("instance_1").group is GroupLevel.INSTANCE


def test_object_stimulus_validates_groups(tax):
    dog = tax.feature("dog")
    with pytest.raises(TaxonomyError, match="group"):
        ObjectStimulus(
            superordinate=tax.feature("animal"),
            basic=dog,
            subordinate=dog,  # wrong level
            instance=Feature("i", GroupLevel.INSTANCE),
        )
