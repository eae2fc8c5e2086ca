#!/usr/bin/env python3
"""Regenerate the golden digests for documentation rendering.

Run after an intentional change to the docs renderer:

    python scripts/refresh_goldens.py
"""

import hashlib
import json
import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from datadesc import parse_document, render_docs  # noqa: E402

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURE = ROOT / "tests" / "fixtures" / "fine_interface.yaml"
GOLDEN = ROOT / "tests" / "fixtures" / "docs_golden.json"


def main() -> int:
    document, diagnostics = parse_document(FIXTURE.read_text(encoding="utf-8"))
    if document is None:
        for diagnostic in diagnostics:
            print(diagnostic, file=sys.stderr)
        return 1
    digests = {}
    for fmt in ("docs_markdown", "docs_html"):
        fileset = render_docs(document, fmt)
        digests[fmt] = {
            path: hashlib.sha256(content).hexdigest()
            for path, content in sorted(fileset.items())
        }
    GOLDEN.write_text(json.dumps(digests, indent=2, sort_keys=True) + "\n")
    print(f"wrote {GOLDEN}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
