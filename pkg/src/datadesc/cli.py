"""Command line interface.

Subcommands:
  extract        build an exchange file from annotated source files
  merge          deep-union several exchange files into one
  validate-data  check concrete values against a described target
  export         generate documentation / metadata payloads
  check          report a document's diagnostics
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import yaml

from . import export as export_mod
from .exchange import emit_document, parse_document
from .extract import extract_from_paths
from .merge import MergePolicy, merge
from .model import DataDescDocument, DataDescError, Diagnostic, has_errors
from .validation import (
    data_value_from_raw,
    validate_record,
    validate_value,
)


def _print_diagnostics(diagnostics, stream=None) -> None:
    stream = stream or sys.stdout
    for diagnostic in diagnostics:
        print(str(diagnostic), file=stream)


def _load_document(path: str) -> tuple[DataDescDocument | None, list[Diagnostic]]:
    return parse_document(Path(path).read_bytes())


def _require_document(path: str) -> DataDescDocument:
    document, diagnostics = _load_document(path)
    if document is None or has_errors(diagnostics):
        _print_diagnostics(diagnostics, sys.stderr)
        raise SystemExit(2)
    return document


def _cmd_extract(args: argparse.Namespace) -> int:
    info_document = _require_document(args.info)
    document, diagnostics = extract_from_paths(args.paths, info_document.info)
    _print_diagnostics(diagnostics, sys.stderr)
    if document is None or has_errors(diagnostics):
        return 2
    Path(args.out).write_text(emit_document(document), encoding="utf-8")
    print(f"wrote {args.out}")
    return 0


def _cmd_merge(args: argparse.Namespace) -> int:
    documents = [_require_document(path) for path in args.paths]
    policy = MergePolicy(
        {"error": "error", "first": "prefer_first", "last": "prefer_last"}[
            args.on_conflict
        ]
    )
    report = merge(documents, policy)
    _print_diagnostics(report.conflicts, sys.stderr)
    if report.merged is None:
        return 1
    Path(args.out).write_text(emit_document(report.merged), encoding="utf-8")
    print(f"wrote {args.out}")
    return 1 if has_errors(list(report.conflicts)) else 0


def _cmd_validate_data(args: argparse.Namespace) -> int:
    document = _require_document(args.doc)
    data_text = Path(args.data).read_text(encoding="utf-8")
    if args.data.endswith(".json"):
        raw = json.loads(data_text)
    else:
        raw = yaml.safe_load(data_text)
    value = data_value_from_raw(raw)

    segments = args.target.split(".")
    cls = document.components.get(segments[0])
    if cls is None:
        print(f"error unknown-target . class {segments[0]!r} not found", file=sys.stderr)
        return 2
    if len(segments) == 1:
        result = validate_record(value, cls, document=document, with_defaults=args.use_defaults)
    elif len(segments) == 2:
        function = cls.functions.get(segments[1])
        if function is not None:
            result = _validate_call(value, function, document, args.use_defaults)
        elif segments[1] in cls.properties:
            result = validate_value(value, cls.properties[segments[1]], document=document)
        else:
            print(
                f"error unknown-target . {args.target!r} names no function or property",
                file=sys.stderr,
            )
            return 2
    elif len(segments) == 3:
        function = cls.functions.get(segments[1])
        parameter = function.parameters.get(segments[2]) if function else None
        if parameter is None:
            print(f"error unknown-target . {args.target!r} not found", file=sys.stderr)
            return 2
        result = validate_value(value, parameter, document=document)
    else:
        print("error unknown-target . too many target segments", file=sys.stderr)
        return 2

    _print_diagnostics(result.diagnostics)
    return 0 if result.valid else 1


def _validate_call(value, function, document, use_defaults):
    # a function call is validated like a record of its parameters
    from .model import ClassDescription

    shim = ClassDescription(
        name=function.name,
        properties=function.parameters,
        unmatched_required=function.unmatched_required,
    )
    return validate_record(
        value, shim, document=document, with_defaults=use_defaults
    )


_EXPORT_TARGETS = {
    "docs-md": export_mod.DOCS_MARKDOWN,
    "docs-html": export_mod.DOCS_HTML,
    "codemeta": export_mod.CODEMETA_JSON,
    "package": export_mod.PACKAGE_METADATA,
    "registry": export_mod.REGISTRY_RECORD,
}


def _cmd_export(args: argparse.Namespace) -> int:
    document = _require_document(args.doc)
    target = _EXPORT_TARGETS[args.target]
    if target in (export_mod.DOCS_MARKDOWN, export_mod.DOCS_HTML):
        fileset = export_mod.render_docs(document, target)
    elif target == export_mod.CODEMETA_JSON:
        fileset = export_mod.export_codemeta(document)
    else:
        fileset = export_mod.build_registry_payload(document, target)
    written = export_mod.write_fileset(fileset, args.out)
    for path in written:
        print(f"wrote {path}")
    return 0


def _cmd_check(args: argparse.Namespace) -> int:
    document, diagnostics = _load_document(args.doc)
    _print_diagnostics(diagnostics)
    if document is None or has_errors(diagnostics):
        return 1
    print("ok")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="datadesc",
        description="Toolchain for machine-actionable software interface metadata.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_extract = sub.add_parser("extract", help="extract an exchange file from source")
    p_extract.add_argument("paths", nargs="+", help="annotated source files")
    p_extract.add_argument("--info", required=True, help="exchange file providing the info section")
    p_extract.add_argument("--out", required=True, help="output exchange file")
    p_extract.set_defaults(func=_cmd_extract)

    p_merge = sub.add_parser("merge", help="merge exchange files")
    p_merge.add_argument("paths", nargs="+", help="input exchange files")
    p_merge.add_argument(
        "--on-conflict", choices=("error", "first", "last"), default="error"
    )
    p_merge.add_argument("--out", required=True, help="output exchange file")
    p_merge.set_defaults(func=_cmd_merge)

    p_validate = sub.add_parser("validate-data", help="validate values against a target")
    p_validate.add_argument("doc", help="exchange file")
    p_validate.add_argument(
        "--target", required=True, help="Class, Class.function or Class.function.param"
    )
    p_validate.add_argument("--data", required=True, help="values file (.json or .yaml)")
    p_validate.add_argument(
        "--use-defaults", action="store_true", help="apply declared defaults first"
    )
    p_validate.set_defaults(func=_cmd_validate_data)

    p_export = sub.add_parser("export", help="generate publication payloads")
    p_export.add_argument("doc", help="exchange file")
    p_export.add_argument("--target", required=True, choices=sorted(_EXPORT_TARGETS))
    p_export.add_argument("--out", required=True, help="output directory")
    p_export.set_defaults(func=_cmd_export)

    p_check = sub.add_parser("check", help="print a document's diagnostics")
    p_check.add_argument("doc", help="exchange file")
    p_check.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except DataDescError as exc:
        print(f"error {exc.code} . {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
