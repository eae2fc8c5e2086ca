"""Crosswalk between the info section and CodeMeta records.

A CodeMeta record is a flat mapping of term -> value, serializable as a
JSON-LD object carrying the standard CodeMeta context.  Terms outside the
crosswalk survive a round trip through the info section under the
``x-codemeta-`` extension prefix.
"""

from __future__ import annotations

import json
from typing import Any

from .model import (
    DataDescError,
    Diagnostic,
    Person,
    SoftwareInfo,
    info_note,
    order_diagnostics,
    warning,
)

CODEMETA_CONTEXT = "https://doi.org/10.5063/schema/codemeta-2.0"

#: info-section field -> CodeMeta term
CROSSWALK = {
    "title": "name",
    "version": "version",
    "description": "description",
    "first_release": "dateCreated",
    "programming_language": "programmingLanguage",
    "authors": "author",
    "license": "license",
    "repository": "codeRepository",
    "keywords": "keywords",
    "reference_publication": "referencePublication",
}

_TERM_TO_FIELD = {term: field for field, term in CROSSWALK.items()}

_EXTENSION_PREFIX = "x-codemeta-"


class MissingNameError(DataDescError):
    code = "missing-name"


CodeMetaRecord = dict[str, Any]


def info_to_codemeta(info: SoftwareInfo) -> tuple[CodeMetaRecord, list[Diagnostic]]:
    """Map an info section onto a CodeMeta record.

    Extension fields carried under the ``x-codemeta-`` prefix are restored
    to their terms; other unmapped extension fields are dropped with an info
    diagnostic.
    """
    diags: list[Diagnostic] = []
    record: CodeMetaRecord = {
        "@context": CODEMETA_CONTEXT,
        "@type": "SoftwareSourceCode",
        "name": info.title,
        "version": info.version,
    }
    if info.description is not None:
        record["description"] = info.description
    if info.first_release is not None:
        record["dateCreated"] = info.first_release
    if info.programming_language is not None:
        record["programmingLanguage"] = info.programming_language
    if info.authors:
        record["author"] = [_person_to_record(p) for p in info.authors]
    if info.license is not None:
        record["license"] = info.license
    if info.repository is not None:
        record["codeRepository"] = info.repository
    if info.keywords:
        record["keywords"] = list(info.keywords)
    if info.reference_publication is not None:
        record["referencePublication"] = info.reference_publication
    for key, value in info.unknown_extensions.items():
        if key.startswith(_EXTENSION_PREFIX):
            record[key[len(_EXTENSION_PREFIX):]] = value
        else:
            diags.append(
                info_note(
                    "unmapped-field",
                    "info",
                    f"info field {key!r} has no CodeMeta term and was dropped",
                )
            )
    return record, order_diagnostics(diags)


def _person_to_record(person: Person) -> dict[str, Any]:
    record: dict[str, Any] = {"@type": "Person", "name": person.name}
    if person.email is not None:
        record["email"] = person.email
    if person.uri is not None:
        record["@id"] = person.uri
    return record


def codemeta_to_info(record: CodeMetaRecord) -> tuple[SoftwareInfo, list[Diagnostic]]:
    """Inverse crosswalk; raises `MissingNameError` when name is absent.

    A record without a version gets the "0.0.0" placeholder plus a warning,
    since the exchange format mandates a version.  Unmapped terms are kept
    under the ``x-codemeta-`` extension prefix.
    """
    name = record.get("name")
    if name is None or (isinstance(name, str) and not name.strip()):
        raise MissingNameError("CodeMeta record has no name")
    diags: list[Diagnostic] = []

    version = record.get("version")
    if version is None or version == "":
        version = "0.0.0"
        diags.append(
            warning(
                "missing-version",
                "info/version",
                "record carries no version; substituted placeholder 0.0.0",
            )
        )

    fields: dict[str, Any] = {
        "title": str(name),
        "version": str(version),
        "unknown_extensions": {},
    }
    for term, value in record.items():
        if term in ("@context", "@type", "name", "version"):
            continue
        field = _TERM_TO_FIELD.get(term)
        if field is None:
            fields["unknown_extensions"][_EXTENSION_PREFIX + term] = value
            continue
        if field == "authors":
            fields[field] = _parse_author_term(value)
        elif field == "keywords":
            fields[field] = tuple(str(v) for v in value) if isinstance(value, list) else (str(value),)
        else:
            fields[field] = str(value)
    return SoftwareInfo(**fields), order_diagnostics(diags)


def _parse_author_term(value: Any) -> tuple[Person, ...]:
    entries = value if isinstance(value, list) else [value]
    persons = []
    for entry in entries:
        if isinstance(entry, dict):
            entry_name = entry.get("name")
            if entry_name is None:
                continue
            persons.append(
                Person(
                    name=str(entry_name),
                    email=entry.get("email"),
                    uri=entry.get("@id") or entry.get("id"),
                )
            )
        else:
            persons.append(Person(name=str(entry)))
    return tuple(persons)


def codemeta_json(record: CodeMetaRecord) -> str:
    """Serialize a record as stable JSON (sorted keys, two-space indent)."""
    return json.dumps(record, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


__all__ = [
    "CODEMETA_CONTEXT",
    "CROSSWALK",
    "CodeMetaRecord",
    "MissingNameError",
    "info_to_codemeta",
    "codemeta_to_info",
    "codemeta_json",
]
