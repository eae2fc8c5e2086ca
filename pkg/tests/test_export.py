import hashlib
import json
import pathlib
import re

import pytest

from datadesc import (
    DataDescDocument,
    InvalidDocumentError,
    SoftwareInfo,
    build_registry_payload,
    export_codemeta,
    info_to_codemeta,
    render_docs,
    write_fileset,
)

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

MINIMAL = DataDescDocument(info=SoftwareInfo(title="t", version="1"))


def decode(fileset):
    return {path: content.decode("utf-8") for path, content in fileset.items()}


def test_fixture_docs_cover_all_names_and_literals(fine_document):
    for fmt in ("docs_markdown", "docs_html"):
        text = "\n".join(decode(render_docs(fine_document, fmt)).values())
        for class_name, cls in fine_document.components.items():
            assert class_name in text
            for prop in cls.properties:
                assert prop in text
            for fn_name, fn in cls.functions.items():
                assert fn_name in text
                for parameter in fn.parameters:
                    assert parameter in text
        for literal in ("8760", "averaging", "ItemMinimumValue", "NetCDF", "2.2.2"):
            assert literal in text


def test_docs_match_golden_digests(fine_document):
    golden = json.loads((FIXTURES / "docs_golden.json").read_text())
    for fmt, expected in golden.items():
        fileset = render_docs(fine_document, fmt)
        digests = {
            path: hashlib.sha256(content).hexdigest()
            for path, content in fileset.items()
        }
        assert digests == expected


def test_rendering_twice_is_byte_identical(fine_document):
    assert render_docs(fine_document, "docs_markdown") == render_docs(
        fine_document, "docs_markdown"
    )
    assert render_docs(fine_document, "docs_html") == render_docs(
        fine_document, "docs_html"
    )


def test_markdown_links_resolve_within_fileset(fine_document):
    fileset = decode(render_docs(fine_document, "docs_markdown"))
    for text in fileset.values():
        for target in re.findall(r"\]\(([^)]+)\)", text):
            assert target in fileset, target


def test_html_links_resolve_and_pages_are_self_contained(fine_document):
    fileset = decode(render_docs(fine_document, "docs_html"))
    for text in fileset.values():
        assert "<style>" in text
        assert "http" not in re.sub(r">https?://[^<]*<", "><", text) or not re.search(
            r'(src|href)="https?://', text
        )
        for target in re.findall(r'href="([^"]+)"', text):
            assert target in fileset, target


def test_minimal_document_renders_index_only():
    fileset = render_docs(MINIMAL, "docs_markdown")
    assert sorted(fileset) == ["index.md"]
    assert "(no classes)" in fileset["index.md"].decode()


def test_docs_refuse_invalid_documents():
    bad = DataDescDocument(info=SoftwareInfo(title="", version=""))
    with pytest.raises(InvalidDocumentError):
        render_docs(bad)


def test_codemeta_export_matches_crosswalk(fine_document):
    fileset = export_codemeta(fine_document)
    assert sorted(fileset) == ["codemeta.json"]
    record = json.loads(fileset["codemeta.json"].decode())
    direct, _ = info_to_codemeta(fine_document.info)
    assert record == direct
    assert record["name"].startswith("FINE")
    assert record["version"] == "2.2.2"
    assert record["dateCreated"] == "2018-11-12"
    assert record["programmingLanguage"] == "Python"


def test_codemeta_export_minimal():
    record = json.loads(export_codemeta(MINIMAL)["codemeta.json"].decode())
    assert {k for k in record if not k.startswith("@")} == {"name", "version"}


def test_package_stub_fields(fine_document):
    fileset = build_registry_payload(fine_document, "package_metadata")
    stub = fileset["pyproject.toml"].decode()
    assert '"FINE - A Framework for Integrated Energy System Assessment"' in stub
    assert 'version = "2.2.2"' in stub
    assert stub.startswith("[project]\n")


def test_registry_record_lists_functions(fine_document):
    fileset = build_registry_payload(fine_document, "registry_record")
    record = json.loads(fileset["registry.json"].decode())
    functions = [
        t["value"] for t in record["triples"] if t["property"] == "hasFunction"
    ]
    assert functions == [
        "aggregateTemporally",
        "readNetCDFtoEnergySystemModel",
        "removeComponent",
    ]
    parameters = [
        t["value"] for t in record["triples"] if t["property"] == "hasParameter"
    ]
    assert "clusterMethod" in parameters and "filePath" in parameters


def test_registry_record_of_empty_components():
    record = json.loads(
        build_registry_payload(MINIMAL, "registry_record")["registry.json"].decode()
    )
    assert [t for t in record["triples"] if t["property"] == "hasFunction"] == []
    assert record["subject"] == "t"


def test_exports_are_deterministic(fine_document):
    for build in (
        lambda: export_codemeta(fine_document),
        lambda: build_registry_payload(fine_document, "package_metadata"),
        lambda: build_registry_payload(fine_document, "registry_record"),
    ):
        assert build() == build()


def test_write_fileset(tmp_path, fine_document):
    fileset = render_docs(fine_document, "docs_markdown")
    written = write_fileset(fileset, tmp_path)
    assert sorted(p.name for p in written) == sorted(fileset)
    for path in written:
        assert path.read_bytes() == fileset[path.name]
