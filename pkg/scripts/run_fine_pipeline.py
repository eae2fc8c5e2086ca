#!/usr/bin/env python3
"""End-to-end demonstration on the bundled energy-framework fixtures.

Extracts an exchange file from the annotated source, merges it with the
hand-written interface description, validates a sample parameter record,
and writes every publication export.  Everything lands in ./out/.

    python scripts/run_fine_pipeline.py
"""

import json
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from datadesc import (  # noqa: E402
    MergePolicy,
    build_registry_payload,
    emit_document,
    export_codemeta,
    merge,
    parse_document,
    render_docs,
    validate_record,
    write_fileset,
)
from datadesc.extract import extract_from_paths  # noqa: E402

FIXTURES = ROOT / "tests" / "fixtures"
OUT = ROOT / "out"


def main() -> int:
    OUT.mkdir(exist_ok=True)

    info_doc, _ = parse_document((FIXTURES / "fine_info_half.yaml").read_bytes())
    extracted, diagnostics = extract_from_paths(
        [FIXTURES / "fine_source.py"], info_doc.info
    )
    for diagnostic in diagnostics:
        print(f"extract: {diagnostic}")
    extracted_path = OUT / "extracted.yaml"
    extracted_path.write_text(emit_document(extracted), encoding="utf-8")
    print(f"extracted interface description -> {extracted_path}")

    reference, _ = parse_document((FIXTURES / "fine_interface.yaml").read_bytes())
    report = merge([reference, extracted], MergePolicy("prefer_first"))
    for conflict in report.conflicts:
        print(f"merge: {conflict}")
    merged = report.merged
    merged_path = OUT / "merged.yaml"
    merged_path.write_text(emit_document(merged), encoding="utf-8")
    print(f"merged description -> {merged_path}")

    esm = merged.components["EnergySystemModel"]
    sample = {"numberOfTimeSteps": 8760}
    result = validate_record(sample, esm, document=merged)
    print(f"sample record {json.dumps(sample)} valid: {result.valid}")
    for diagnostic in result.diagnostics:
        print(f"validate: {diagnostic}")

    write_fileset(render_docs(merged, "docs_markdown"), OUT / "docs-md")
    write_fileset(render_docs(merged, "docs_html"), OUT / "docs-html")
    write_fileset(export_codemeta(merged), OUT / "codemeta")
    write_fileset(build_registry_payload(merged, "package_metadata"), OUT / "package")
    write_fileset(build_registry_payload(merged, "registry_record"), OUT / "registry")
    print(f"exports -> {OUT}/docs-md, docs-html, codemeta, package, registry")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
