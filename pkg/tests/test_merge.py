import dataclasses

import pytest

from datadesc import (
    DataDescDocument,
    InvalidDocumentError,
    MergePolicy,
    SoftwareInfo,
    emit_document,
    merge,
    parse_document,
)


def test_split_fixture_merges_back_to_full_document(
    fine_document, info_half_document, components_half_document
):
    report = merge([info_half_document, components_half_document])
    assert report.conflicts == ()
    assert report.merged == fine_document


def test_merge_with_identical_info_twin_is_identity(fine_document):
    twin = DataDescDocument(
        info=fine_document.info, openapi_version=fine_document.openapi_version
    )
    report = merge([fine_document, twin])
    assert report.conflicts == ()
    assert report.merged == fine_document


def test_version_conflict_is_reported_exactly_once(fine_document):
    other_info = dataclasses.replace(fine_document.info, version="2.2.3")
    other = dataclasses.replace(fine_document, info=other_info)
    report = merge([fine_document, other])
    assert report.merged is None
    assert len(report.conflicts) == 1
    conflict = report.conflicts[0]
    assert conflict.path == "info/version"
    assert conflict.code == "merge-conflict"
    assert conflict.severity == "error"


def test_prefer_first_and_prefer_last(fine_document):
    other_info = dataclasses.replace(fine_document.info, version="2.2.3")
    other = dataclasses.replace(fine_document, info=other_info)

    first = merge([fine_document, other], MergePolicy("prefer_first"))
    assert first.merged.info.version == "2.2.2"
    last = merge([fine_document, other], MergePolicy("prefer_last"))
    assert last.merged.info.version == "2.2.3"
    for report in (first, last):
        assert [c.severity for c in report.conflicts] == ["warning"]


def test_conflict_completeness_counts_each_leaf(fine_document):
    changed_info = dataclasses.replace(
        fine_document.info, version="9.9.9", programming_language="Rust"
    )
    esm = fine_document.components["EnergySystemModel"]
    steps = esm.properties["numberOfTimeSteps"]
    changed_steps = dataclasses.replace(steps, default_value=24)
    changed_esm = dataclasses.replace(
        esm, properties={**esm.properties, "numberOfTimeSteps": changed_steps}
    )
    other = dataclasses.replace(
        fine_document,
        info=changed_info,
        components={**fine_document.components, "EnergySystemModel": changed_esm},
    )
    report = merge([fine_document, other])
    assert report.merged is None
    assert len(report.conflicts) == 3
    assert sorted(c.path for c in report.conflicts) == [
        "components/schemas/EnergySystemModel/properties/numberOfTimeSteps/x-DefaultValue",
        "info/version",
        "info/x-programming-lang",
    ]


def test_key_disjoint_merge_is_order_independent(info_half_document):
    a_text = (
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\n"
        "components:\n  A:\n    properties:\n      x: {type: integer}\n"
    )
    b_text = (
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\n"
        "components:\n  B:\n    properties:\n      y: {type: string}\n"
    )
    a, _ = parse_document(a_text)
    b, _ = parse_document(b_text)
    ab = merge([a, b])
    ba = merge([b, a])
    assert ab.conflicts == () and ba.conflicts == ()
    assert ab.merged == ba.merged
    assert emit_document(ab.merged) == emit_document(ba.merged)
    # associativity with a third disjoint input
    c, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\n"
        "components:\n  C:\n    properties:\n      z: {type: boolean}\n"
    )
    left = merge([merge([a, b]).merged, c]).merged
    right = merge([a, merge([b, c]).merged]).merged
    assert left == right
    assert emit_document(left) == emit_document(right)


def test_list_leaves_union_in_first_occurrence_order():
    a, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\n"
        "components:\n  A:\n    properties:\n      x:\n        x-ValueSet: [b, a]\n"
    )
    b, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\n"
        "components:\n  A:\n    properties:\n      x:\n        x-ValueSet: [a, c]\n"
    )
    report = merge([a, b])
    assert report.conflicts == ()
    assert report.merged.components["A"].properties["x"].value_set == ("b", "a", "c")


def test_required_lists_union():
    a, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\n"
        "components:\n  A:\n    properties:\n      x: {}\n      y: {}\n    required: [x]\n"
    )
    b, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\n"
        "components:\n  A:\n    properties:\n      x: {}\n      y: {}\n    required: [y]\n"
    )
    merged = merge([a, b]).merged
    assert merged.components["A"].properties["x"].required
    assert merged.components["A"].properties["y"].required


def test_unknown_extension_subtrees_deep_union():
    a, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\nx-extra: {left: 1}\n"
    )
    b, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\nx-extra: {right: 2}\n"
    )
    merged = merge([a, b]).merged
    assert merged.unknown_extensions["x-extra"] == {"left": 1, "right": 2}


def test_invalid_input_is_rejected():
    bad = DataDescDocument(info=SoftwareInfo(title="", version="1"))
    good = DataDescDocument(info=SoftwareInfo(title="t", version="1"))
    with pytest.raises(InvalidDocumentError):
        merge([good, bad])


def test_merging_nothing_is_rejected():
    with pytest.raises(InvalidDocumentError):
        merge([])


def test_scalar_against_mapping_is_a_conflict():
    a, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\nx-extra: 1\n"
    )
    b, _ = parse_document(
        "openapi: 3.0.0\ninfo: {title: t, version: '1'}\nx-extra: {nested: 2}\n"
    )
    report = merge([a, b])
    assert report.merged is None
    assert [c.path for c in report.conflicts] == ["x-extra"]
