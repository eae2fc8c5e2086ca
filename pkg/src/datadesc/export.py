"""Publication-ready artifacts generated from a document.

Produces the exact file payloads downstream publication pipelines consume:
human-readable documentation (markdown or self-contained HTML), a CodeMeta
JSON record, a package-metadata stub, and a flat research-registry record
of subject/property/value triples.  Uploading is out of scope; everything
stops at deterministic bytes on disk.
"""

from __future__ import annotations

import html
import json
import re
from pathlib import Path
from typing import Any

from .checks import check_document
from .codemeta import codemeta_json, info_to_codemeta
from .exchange import variable_to_raw
from .model import (
    DataDescDocument,
    InvalidDocumentError,
    ClassDescription,
    ReferencePath,
    VariableDescription,
)

#: Relative path -> byte content of one export run.
FileSet = dict[str, bytes]

DOCS_MARKDOWN = "docs_markdown"
DOCS_HTML = "docs_html"
CODEMETA_JSON = "codemeta_json"
PACKAGE_METADATA = "package_metadata"
REGISTRY_RECORD = "registry_record"

EXPORT_TARGETS = (
    DOCS_MARKDOWN,
    DOCS_HTML,
    CODEMETA_JSON,
    PACKAGE_METADATA,
    REGISTRY_RECORD,
)

_HTML_STYLE = (
    "body{font-family:sans-serif;margin:2rem auto;max-width:60rem;line-height:1.5}"
    "code{background:#f2f2f2;padding:0 .2rem}"
    "h1,h2,h3{color:#223}ul{margin:.2rem 0}"
)


def _require_valid(document: DataDescDocument) -> None:
    errors = tuple(d for d in check_document(document) if d.severity == "error")
    if errors:
        raise InvalidDocumentError("document has errors and cannot be exported", errors)


def _page_name(class_name: str) -> str:
    safe = re.sub(r"[^A-Za-z0-9._-]", "_", class_name)
    return safe or "class"


def render_docs(document: DataDescDocument, format: str = DOCS_MARKDOWN) -> FileSet:
    """Render an index page plus one page per class.

    Every class, function, parameter, constraint, dimension and default of
    the document appears in the output; rendering is byte-deterministic.
    """
    _require_valid(document)
    if format not in (DOCS_MARKDOWN, DOCS_HTML):
        raise ValueError(f"unknown documentation format {format!r}")
    pages: dict[str, str] = {
        name: _page_name(name) for name in sorted(document.components)
    }
    if format == DOCS_MARKDOWN:
        files = {"index.md": _index_markdown(document, pages)}
        for name in sorted(document.components):
            files[f"{pages[name]}.md"] = _class_markdown(document.components[name], pages)
    else:
        files = {"index.html": _index_html(document, pages)}
        for name in sorted(document.components):
            files[f"{pages[name]}.html"] = _class_html(document.components[name], pages)
    return {path: text.encode("utf-8") for path, text in files.items()}


def _info_lines(document: DataDescDocument) -> list[str]:
    info = document.info
    lines = []
    if info.first_release is not None:
        lines.append(f"First release: {info.first_release}")
    if info.programming_language is not None:
        lines.append(f"Programming language: {info.programming_language}")
    if info.authors:
        lines.append("Authors: " + ", ".join(p.name for p in info.authors))
    if info.license is not None:
        lines.append(f"License: {info.license}")
    if info.repository is not None:
        lines.append(f"Repository: {info.repository}")
    if info.keywords:
        lines.append("Keywords: " + ", ".join(info.keywords))
    if info.reference_publication is not None:
        lines.append(f"Reference publication: {info.reference_publication}")
    return lines


def _scalar_text(value: Any) -> str:
    if value is True:
        return "true"
    if value is False:
        return "false"
    if value is None:
        return "null"
    if isinstance(value, dict):
        return "{}"
    if isinstance(value, list):
        return "[]"
    return str(value)


def _attribute_lines(raw: Any, indent: int = 0) -> list[str]:
    """Nested bullet rendering of a node's canonical attributes."""
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(raw, dict):
        for key, value in raw.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}- {key}:")
                lines.extend(_attribute_lines(value, indent + 1))
            else:
                lines.append(f"{pad}- {key}: {_scalar_text(value)}")
    elif isinstance(raw, list):
        for value in raw:
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}-")
                lines.extend(_attribute_lines(value, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar_text(value)}")
    else:
        lines.append(f"{pad}- {_scalar_text(raw)}")
    return lines


def _variable_block(variable: VariableDescription, default_role: str) -> list[str]:
    raw = variable_to_raw(variable, default_role)  # type: ignore[arg-type]
    description = raw.pop("description", None)
    nested = raw.pop("properties", None)
    lines: list[str] = []
    if description:
        lines.append(str(description))
        lines.append("")
    if variable.required:
        lines.append("- required: true")
    lines.extend(_attribute_lines(raw))
    if nested:
        lines.append("- properties:")
        lines.extend(_attribute_lines(nested, 1))
    if not lines:
        lines.append("- (no declared attributes)")
    return lines


def _index_markdown(document: DataDescDocument, pages: dict[str, str]) -> str:
    info = document.info
    out = [f"# {info.title}", "", f"Version: {info.version}", ""]
    if info.description:
        out += [info.description, ""]
    meta = _info_lines(document)
    if meta:
        out += [f"- {line}" for line in meta] + [""]
    out += ["## Classes", ""]
    if pages:
        out += [f"- [{name}]({page}.md)" for name, page in pages.items()]
    else:
        out += ["(no classes)"]
    out.append("")
    return "\n".join(out)


def _class_markdown(cls: ClassDescription, pages: dict[str, str]) -> str:
    out = [f"# {cls.name}", ""]
    if cls.description:
        out += [cls.description, ""]
    if cls.uri:
        out += [f"- URI: {cls.uri}"]
    out += [f"- Part of the interface: {'yes' if cls.is_part_of_interface else 'no'}", ""]
    if cls.properties:
        out += ["## Properties", ""]
        for name in sorted(cls.properties):
            out += [f"### {name}", ""]
            out += _variable_block(cls.properties[name], "internal")
            out.append("")
    if cls.functions:
        out += ["## Functions", ""]
        for fn_name in sorted(cls.functions):
            fn = cls.functions[fn_name]
            out += [f"### {fn_name}", ""]
            if fn.description:
                out += [fn.description, ""]
            if fn.is_part_of_interface:
                out += ["- Part of the interface: yes", ""]
            if fn.parameters:
                out += ["Parameters:", ""]
                for param_name in sorted(fn.parameters):
                    out += [f"#### {param_name}", ""]
                    out += _variable_block(fn.parameters[param_name], "input")
                    out.append("")
            ret = fn.return_description
            if isinstance(ret, ReferencePath):
                target = ret.target_name
                page = pages.get(target, _page_name(target))
                out += [f"Returns: [{target}]({page}.md)", ""]
            elif isinstance(ret, VariableDescription):
                out += ["Returns:", ""]
                out += _variable_block(ret, "output")
                out.append("")
    out += ["", "[Back to index](index.md)", ""]
    return "\n".join(out)


def _markdown_to_html_body(markdown: str, pages: dict[str, str]) -> str:
    """Line-oriented conversion of our own markdown subset."""
    body: list[str] = []
    in_list = False
    for line in markdown.splitlines():
        stripped = line.strip()
        is_item = stripped.startswith("- ") or stripped == "-"
        if in_list and not is_item:
            body.append("</ul>")
            in_list = False
        if not stripped:
            continue
        if stripped.startswith("#"):
            level = len(stripped) - len(stripped.lstrip("#"))
            text = html.escape(stripped[level:].strip())
            body.append(f"<h{level}>{text}</h{level}>")
        elif is_item:
            if not in_list:
                body.append("<ul>")
                in_list = True
            body.append(f"<li>{_inline_html(stripped[1:].strip(), pages)}</li>")
        else:
            body.append(f"<p>{_inline_html(stripped, pages)}</p>")
    if in_list:
        body.append("</ul>")
    return "\n".join(body)


_LINK_RE = re.compile(r"\[([^\]]+)\]\(([^)]+)\.md\)")


def _inline_html(text: str, pages: dict[str, str]) -> str:
    parts: list[str] = []
    cursor = 0
    for match in _LINK_RE.finditer(text):
        parts.append(html.escape(text[cursor:match.start()]))
        label, target = match.group(1), match.group(2)
        parts.append(f'<a href="{html.escape(target)}.html">{html.escape(label)}</a>')
        cursor = match.end()
    parts.append(html.escape(text[cursor:]))
    return "".join(parts)


def _html_page(title: str, body: str) -> str:
    return (
        "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n"
        f"<title>{html.escape(title)}</title>\n<style>{_HTML_STYLE}</style>\n"
        f"</head>\n<body>\n{body}\n</body>\n</html>\n"
    )


def _index_html(document: DataDescDocument, pages: dict[str, str]) -> str:
    body = _markdown_to_html_body(_index_markdown(document, pages), pages)
    return _html_page(document.info.title, body)


def _class_html(cls: ClassDescription, pages: dict[str, str]) -> str:
    body = _markdown_to_html_body(_class_markdown(cls, pages), pages)
    return _html_page(cls.name, body)


def export_codemeta(document: DataDescDocument) -> FileSet:
    """Write the info section's CodeMeta record as ``codemeta.json``."""
    _require_valid(document)
    record, _ = info_to_codemeta(document.info)
    return {"codemeta.json": codemeta_json(record).encode("utf-8")}


def build_registry_payload(document: DataDescDocument, target: str) -> FileSet:
    """Build a package-metadata stub or a flat registry record."""
    _require_valid(document)
    if target == PACKAGE_METADATA:
        return {"pyproject.toml": _package_stub(document).encode("utf-8")}
    if target == REGISTRY_RECORD:
        return {"registry.json": _registry_record(document).encode("utf-8")}
    raise ValueError(f"unknown registry target {target!r}")


def _toml_str(value: str) -> str:
    return json.dumps(value, ensure_ascii=False)


def _package_stub(document: DataDescDocument) -> str:
    info = document.info
    lines = ["[project]", f"name = {_toml_str(info.title)}", f"version = {_toml_str(info.version)}"]
    if info.description is not None:
        lines.append(f"description = {_toml_str(info.description)}")
    if info.authors:
        entries = []
        for person in info.authors:
            fields = [f"name = {_toml_str(person.name)}"]
            if person.email is not None:
                fields.append(f"email = {_toml_str(person.email)}")
            entries.append("    {" + ", ".join(fields) + "},")
        lines.append("authors = [")
        lines.extend(entries)
        lines.append("]")
    if info.license is not None:
        lines.append(f"license = {_toml_str(info.license)}")
    if info.keywords:
        rendered = ", ".join(_toml_str(k) for k in info.keywords)
        lines.append(f"keywords = [{rendered}]")
    return "\n".join(lines) + "\n"


def _registry_record(document: DataDescDocument) -> str:
    subject = document.info.title
    triples: list[dict[str, str]] = [
        {"subject": subject, "property": "softwareName", "value": document.info.title},
        {"subject": subject, "property": "version", "value": document.info.version},
    ]
    if document.info.programming_language is not None:
        triples.append(
            {
                "subject": subject,
                "property": "programmingLanguage",
                "value": document.info.programming_language,
            }
        )
    for class_name in sorted(document.components):
        cls = document.components[class_name]
        triples.append({"subject": subject, "property": "hasClass", "value": class_name})
        for fn_name in sorted(cls.functions):
            triples.append(
                {"subject": subject, "property": "hasFunction", "value": fn_name}
            )
            for param_name in sorted(cls.functions[fn_name].parameters):
                triples.append(
                    {
                        "subject": fn_name,
                        "property": "hasParameter",
                        "value": param_name,
                    }
                )
    record = {"subject": subject, "triples": triples}
    return json.dumps(record, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_fileset(fileset: FileSet, directory: str | Path) -> list[Path]:
    """Write a file set below a directory; returns the written paths."""
    base = Path(directory)
    written: list[Path] = []
    for relative in sorted(fileset):
        target = base / relative
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(fileset[relative])
        written.append(target)
    return written


__all__ = [
    "FileSet",
    "DOCS_MARKDOWN",
    "DOCS_HTML",
    "CODEMETA_JSON",
    "PACKAGE_METADATA",
    "REGISTRY_RECORD",
    "EXPORT_TARGETS",
    "render_docs",
    "export_codemeta",
    "build_registry_payload",
    "write_fileset",
]
