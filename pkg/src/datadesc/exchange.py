"""The YAML exchange format: lenient parsing, canonical emission.

One software is described by a single OpenAPI-conformant YAML file with two
interpreted sections, ``info`` and ``components``.  Interface metadata the
base standard lacks travels in ``x-`` extension keys.  Parsing is lenient:
alias spellings are matched case-insensitively, classes are accepted both
directly under ``components`` and under ``components/schemas``, YAML anchors
are resolved by value duplication, and anything unrecognized is preserved
verbatim.  Emission is canonical: fixed key spellings, fixed key order,
sibling names sorted, two-space indentation, byte-deterministic output.
"""

from __future__ import annotations

import copy
import datetime
import re
from dataclasses import replace
from typing import Any

import yaml

from .checks import check_document
from .model import (
    DataDescDocument,
    DataType,
    Diagnostic,
    DimensionDescription,
    ClassDescription,
    FunctionDescription,
    InvalidDocumentError,
    Person,
    ReferencePath,
    Role,
    SoftwareInfo,
    UnitSpec,
    VariableDescription,
    error,
    info_note,
    order_diagnostics,
)

_OPENAPI_VERSION_RE = re.compile(r"^3\.[01](\.\d+)?$")

#: Component subsections of the base standard that are preserved, never
#: interpreted.
RESERVED_COMPONENT_SECTIONS = frozenset(
    {
        "schemas",
        "responses",
        "parameters",
        "examples",
        "requestBodies",
        "headers",
        "securitySchemes",
        "links",
        "callbacks",
        "pathItems",
    }
)

# Canonical serialized keys per node scope, mapped to the model field they
# feed.  Input matching is case-insensitive on the full key; the spellings
# below are the ones emission uses.
INFO_KEYS = {
    "title": "title",
    "version": "version",
    "description": "description",
    "contact": "authors",
    "license": "license",
    "x-first-release": "first_release",
    "x-programming-lang": "programming_language",
    "x-repository": "repository",
    "x-keywords": "keywords",
    "x-reference-publication": "reference_publication",
}

CLASS_KEYS = {
    "description": "description",
    "x-URI": "uri",
    "x-IsPartOfInterface": "is_part_of_interface",
    "properties": "properties",
    "required": "required",
    "x-functions": "functions",
}

FUNCTION_KEYS = {
    "description": "description",
    "x-IsPartOfInterface": "is_part_of_interface",
    "properties": "parameters",
    "required": "required",
    "return": "return_description",
}

VARIABLE_KEYS = {
    "description": "description",
    "type": "data_type",
    "$ref": "data_type",
    "x-MinimumValue": "minimum",
    "x-ExclusiveMinimum": "exclusive_minimum",
    "x-MaximumValue": "maximum",
    "x-ExclusiveMaximum": "exclusive_maximum",
    "x-RegularExpression": "regular_expression",
    "x-ValueSet": "value_set",
    "x-DefaultValue": "default_value",
    "x-URI": "concept_uri",
    "x-Unit": "unit",
    "x-UnitType": "unit_type",
    "x-VariableRole": "role",
    "x-FileFormat": "file_format",
    "x-CharacterEncoding": "character_encoding",
    "x-NetCDFFolders": "file_structure",
    "x-ExcelSheets": "file_structure",
    "properties": "properties",
    "required": "required",
    "x-dimensions": "dimensions",
}

DIMENSION_KEYS = {
    "Description": "description",
    "URI": "uri",
    "DataType": "index_type",
    "ItemMinimumValue": "item_minimum",
    "ItemMaximumValue": "item_maximum",
    "ValueSet": "value_set",
    "ValueIncrement": "value_increment",
    "UnitType": "unit_type",
}

#: Wire spellings of primitive type kinds (``type:`` values).
TYPE_NAMES = {
    "string": "string",
    "integer": "integer",
    "number": "number",
    "boolean": "boolean",
    "object": "object",
    "array": "array",
    "file": "file",
}


def attribute_table() -> dict[str, dict[str, str]]:
    """The canonical attribute table: scope -> serialized key -> model field.

    Canonical keys are bijective onto model fields per scope (the two file
    layout containers both feed ``file_structure`` and are told apart by
    their own key); case-insensitive alias spellings never collide.
    """
    return {
        "info": dict(INFO_KEYS),
        "class": dict(CLASS_KEYS),
        "function": dict(FUNCTION_KEYS),
        "variable": dict(VARIABLE_KEYS),
        "dimension": dict(DIMENSION_KEYS),
    }


def _fold_index(table: dict[str, str]) -> dict[str, str]:
    folded: dict[str, str] = {}
    for key in table:
        lowered = key.casefold()
        if lowered in folded:
            raise AssertionError(f"alias collision on {key!r}")
        folded[lowered] = key
    return folded


_INFO_FOLD = _fold_index(INFO_KEYS)
_CLASS_FOLD = _fold_index(CLASS_KEYS)
_FUNCTION_FOLD = _fold_index(FUNCTION_KEYS)
_VARIABLE_FOLD = _fold_index(VARIABLE_KEYS)
_DIMENSION_FOLD = _fold_index(DIMENSION_KEYS)


# ---------------------------------------------------------------------------
# YAML loading


class _DuplicateKeyLoader(yaml.SafeLoader):
    """SafeLoader that records duplicate mapping keys (last one wins)."""

    def __init__(self, stream):
        super().__init__(stream)
        self.duplicate_keys: list[str] = []

    def construct_mapping(self, node, deep=False):
        seen = set()
        for key_node, _value_node in node.value:
            key = self.construct_object(key_node, deep=True)
            try:
                if key in seen:
                    self.duplicate_keys.append(str(key))
                seen.add(key)
            except TypeError:
                continue
        return super().construct_mapping(node, deep=deep)


def _normalize(value: Any) -> Any:
    """Copy a loaded YAML tree into plain data.

    Anchored nodes are duplicated by value, dates become ISO strings, bytes
    are decoded, and mapping keys are coerced to text.
    """
    if isinstance(value, dict):
        return {_normalize_key(k): _normalize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set)):
        return [_normalize(v) for v in value]
    if isinstance(value, datetime.datetime):
        return value.isoformat()
    if isinstance(value, datetime.date):
        return value.isoformat()
    if isinstance(value, bytes):
        return value.decode("utf-8", errors="replace")
    return value


def _normalize_key(key: Any) -> str:
    if isinstance(key, str):
        return key
    if isinstance(key, datetime.date):
        return key.isoformat()
    return str(key)


def _load_yaml(text: str) -> tuple[Any, list[str]]:
    loader = _DuplicateKeyLoader(text)
    try:
        raw = loader.get_single_data()
        duplicates = list(loader.duplicate_keys)
    finally:
        loader.dispose()
    return _normalize(raw), duplicates


# ---------------------------------------------------------------------------
# Parsing


def parse_document(text: str | bytes) -> tuple[DataDescDocument | None, list[Diagnostic]]:
    """Parse exchange-format YAML into a document.

    Returns the document together with all diagnostics, including every
    `check_document` finding.  On a fatal problem (unparseable YAML, missing
    info section, unsupported version) the document is None and the single
    fatal diagnostic is returned.
    """
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            return None, [error("yaml-syntax", "", f"input is not UTF-8: {exc}")]
    try:
        raw, duplicates = _load_yaml(text)
    except Exception as exc:  # yaml errors vary; totality over malformed input
        return None, [error("yaml-syntax", "", f"not well-formed YAML: {exc}")]

    extra = [
        error("duplicate-key", "", f"duplicate mapping key {key!r}")
        for key in duplicates
    ]
    return document_from_raw(raw, extra)


def document_from_raw(
    raw: Any, extra_diagnostics: list[Diagnostic] | None = None
) -> tuple[DataDescDocument | None, list[Diagnostic]]:
    """Build a document from an already-loaded plain-data tree."""
    raw = _normalize(raw)
    if not isinstance(raw, dict):
        return None, [
            error("missing-info-section", "", "document root is not a mapping")
        ]

    diags: list[Diagnostic] = list(extra_diagnostics or ())

    keyed = {str(k).casefold(): k for k in raw}
    if "info" not in keyed:
        return None, [error("missing-info-section", "", "document has no info section")]

    if "openapi" not in keyed:
        return None, [
            error("unsupported-openapi-version", "", "document declares no openapi version")
        ]
    version_value = raw[keyed["openapi"]]
    openapi_version = _scalar_text(version_value)
    if openapi_version is None or not _OPENAPI_VERSION_RE.match(openapi_version):
        return None, [
            error(
                "unsupported-openapi-version",
                "",
                f"unsupported openapi version {version_value!r}; 3.0.x and 3.1.x "
                "are accepted",
            )
        ]

    info = _parse_info(raw[keyed["info"]], diags)

    components: dict[str, ClassDescription] = {}
    preserved: dict[str, Any] = {}
    if "components" in keyed:
        components, preserved = _parse_components(raw[keyed["components"]], diags)

    unknown: dict[str, Any] = {}
    handled = {keyed["info"], keyed["openapi"], keyed.get("components")}
    for key, value in raw.items():
        if key not in handled:
            unknown[key] = value

    document = DataDescDocument(
        info=info,
        openapi_version=openapi_version,
        components=components,
        preserved_components=preserved,
        unknown_extensions=unknown,
    )
    diags.extend(check_document(document))
    return document, order_diagnostics(diags)


def _scalar_text(value: Any) -> str | None:
    if isinstance(value, str):
        return value
    if isinstance(value, bool) or value is None:
        return None
    if isinstance(value, (int, float)):
        return str(value)
    return None


def _match(key: str, fold: dict[str, str]) -> str | None:
    return fold.get(key.casefold())


def _parse_info(raw: Any, diags: list[Diagnostic]) -> SoftwareInfo:
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", "info", "info section is not a mapping"))
        return SoftwareInfo(title="", version="")
    fields: dict[str, Any] = {
        "title": "",
        "version": "",
        "unknown_extensions": {},
    }
    for key, value in raw.items():
        canonical = _match(key, _INFO_FOLD)
        if canonical is None:
            fields["unknown_extensions"][key] = value
            continue
        field_name = INFO_KEYS[canonical]
        path = f"info/{field_name}"
        if field_name in ("title", "version"):
            fields[field_name] = _scalar_text(value) or ""
        elif field_name == "authors":
            fields[field_name] = _parse_contact(value, path, diags)
        elif field_name == "license":
            fields[field_name] = _parse_license(value, path, diags)
        elif field_name == "keywords":
            if isinstance(value, list):
                fields[field_name] = tuple(str(v) for v in value)
            elif value is not None:
                fields[field_name] = (str(value),)
        else:
            text = _scalar_text(value)
            if text is None and value is not None:
                diags.append(
                    error("invalid-attribute", path, f"{canonical} must be scalar text")
                )
            else:
                fields[field_name] = text
    return SoftwareInfo(**fields)


def _parse_contact(value: Any, path: str, diags: list[Diagnostic]) -> tuple[Person, ...]:
    entries = value if isinstance(value, list) else [value]
    persons: list[Person] = []
    for entry in entries:
        if isinstance(entry, dict):
            folded = {str(k).casefold(): v for k, v in entry.items()}
            name = _scalar_text(folded.get("name"))
            if name is None:
                diags.append(error("invalid-attribute", path, "contact entry has no name"))
                continue
            persons.append(
                Person(
                    name=name,
                    email=_scalar_text(folded.get("email")),
                    uri=_scalar_text(folded.get("url") or folded.get("uri")),
                )
            )
        elif isinstance(entry, str):
            persons.append(Person(name=entry))
        else:
            diags.append(error("invalid-attribute", path, "contact entry is not a person"))
    return tuple(persons)


def _parse_license(value: Any, path: str, diags: list[Diagnostic]) -> str | None:
    if isinstance(value, dict):
        folded = {str(k).casefold(): v for k, v in value.items()}
        return _scalar_text(folded.get("name")) or _scalar_text(folded.get("url"))
    text = _scalar_text(value)
    if text is None and value is not None:
        diags.append(error("invalid-attribute", path, "license must be text or a mapping"))
    return text


def _parse_components(
    raw: Any, diags: list[Diagnostic]
) -> tuple[dict[str, ClassDescription], dict[str, Any]]:
    classes: dict[str, ClassDescription] = {}
    preserved: dict[str, Any] = {}
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", "components", "components is not a mapping"))
        return classes, preserved

    def add_class(name: str, value: Any) -> None:
        path = f"components/{name}"
        if not isinstance(value, dict):
            diags.append(error("invalid-node", path, "class node is not a mapping"))
            return
        if name in classes:
            diags.append(error("duplicate-key", path, f"class {name!r} defined twice"))
        classes[name] = _parse_class(name, value, path, diags)

    for key, value in raw.items():
        if key == "schemas" and isinstance(value, dict):
            for name, node in value.items():
                add_class(name, node)
        elif key in RESERVED_COMPONENT_SECTIONS:
            preserved[key] = value
        else:
            add_class(key, value)
    return classes, preserved


def _apply_required(
    members: dict[str, VariableDescription],
    entries: Any,
    path: str,
    diags: list[Diagnostic],
) -> tuple[str, ...]:
    """Flag members named in a required list; return unmatched entries."""
    if entries is None:
        return ()
    if not isinstance(entries, list):
        diags.append(error("invalid-attribute", path, "required must be a list of names"))
        return ()
    unmatched: list[str] = []
    for entry in entries:
        name = str(entry)
        if name in members:
            members[name] = replace(members[name], required=True)
        else:
            unmatched.append(name)
    return tuple(unmatched)


def _parse_class(
    name: str, raw: dict, path: str, diags: list[Diagnostic]
) -> ClassDescription:
    description = None
    uri = None
    is_part_of_interface = False
    properties: dict[str, VariableDescription] = {}
    functions: dict[str, FunctionDescription] = {}
    unknown: dict[str, Any] = {}
    required_entries: Any = None

    for key, value in raw.items():
        canonical = _match(key, _CLASS_FOLD)
        if canonical is None:
            unknown[key] = value
            continue
        field_name = CLASS_KEYS[canonical]
        if field_name == "description":
            description = _scalar_text(value)
        elif field_name == "uri":
            uri = _scalar_text(value)
        elif field_name == "is_part_of_interface":
            is_part_of_interface = bool(value)
        elif field_name == "properties":
            properties = _parse_variable_map(value, f"{path}/properties", "internal", diags)
        elif field_name == "required":
            required_entries = value
        elif field_name == "functions":
            functions = _parse_function_map(value, f"{path}/functions", diags)
    unmatched = _apply_required(properties, required_entries, path, diags)
    return ClassDescription(
        name=name,
        description=description,
        uri=uri,
        is_part_of_interface=is_part_of_interface,
        properties=properties,
        unmatched_required=unmatched,
        functions=functions,
        unknown_extensions=unknown,
    )


def _parse_variable_map(
    raw: Any, path: str, default_role: Role, diags: list[Diagnostic]
) -> dict[str, VariableDescription]:
    variables: dict[str, VariableDescription] = {}
    if raw is None:
        return variables
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", path, "properties is not a mapping"))
        return variables
    for name, node in raw.items():
        variables[name] = _parse_variable(
            name, node, f"{path}/{name}", default_role, diags
        )
    return variables


def _parse_function_map(
    raw: Any, path: str, diags: list[Diagnostic]
) -> dict[str, FunctionDescription]:
    functions: dict[str, FunctionDescription] = {}
    if raw is None:
        return functions
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", path, "x-functions is not a mapping"))
        return functions
    for name, node in raw.items():
        fn_path = f"{path}/{name}"
        if node is None:
            node = {}
        if not isinstance(node, dict):
            diags.append(error("invalid-node", fn_path, "function node is not a mapping"))
            continue
        functions[name] = _parse_function(name, node, fn_path, diags)
    return functions


def _parse_function(
    name: str, raw: dict, path: str, diags: list[Diagnostic]
) -> FunctionDescription:
    description = None
    is_part_of_interface = False
    parameters: dict[str, VariableDescription] = {}
    return_description: VariableDescription | ReferencePath | None = None
    unknown: dict[str, Any] = {}
    required_entries: Any = None

    for key, value in raw.items():
        canonical = _match(key, _FUNCTION_FOLD)
        if canonical is None:
            unknown[key] = value
            continue
        field_name = FUNCTION_KEYS[canonical]
        if field_name == "description":
            description = _scalar_text(value)
        elif field_name == "is_part_of_interface":
            is_part_of_interface = bool(value)
        elif field_name == "parameters":
            parameters = _parse_variable_map(value, f"{path}/parameters", "input", diags)
        elif field_name == "required":
            required_entries = value
        elif field_name == "return_description":
            return_description = _parse_return(value, f"{path}/return", diags)
    unmatched = _apply_required(parameters, required_entries, path, diags)
    return FunctionDescription(
        name=name,
        description=description,
        is_part_of_interface=is_part_of_interface,
        parameters=parameters,
        unmatched_required=unmatched,
        return_description=return_description,
        unknown_extensions=unknown,
    )


def _parse_return(
    raw: Any, path: str, diags: list[Diagnostic]
) -> VariableDescription | ReferencePath | None:
    if raw is None:
        return None
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", path, "return node is not a mapping"))
        return None
    if len(raw) == 1:
        only_key = next(iter(raw))
        if only_key.casefold() == "$ref" and isinstance(raw[only_key], str):
            return ReferencePath(raw[only_key])
    return _parse_variable("return", raw, path, "output", diags)


def map_wire_type(value: Any) -> DataType:
    text = str(value)
    kind = TYPE_NAMES.get(text.casefold())
    if kind is not None:
        return DataType(kind)
    return DataType.opaque(text)


def _parse_variable(
    name: str, raw: Any, path: str, default_role: Role, diags: list[Diagnostic]
) -> VariableDescription:
    if raw is None:
        return VariableDescription(name=name, role=default_role)
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", path, "variable node is not a mapping"))
        return VariableDescription(name=name, role=default_role)

    fields: dict[str, Any] = {
        "name": name,
        "role": default_role,
        "file_structure": {},
        "unknown_extensions": {},
    }
    unit_name_node: Any = None
    unit_type_text: str | None = None
    required_entries: Any = None
    data_type: DataType | None = None
    saw_ref = False

    for key, value in raw.items():
        canonical = _match(key, _VARIABLE_FOLD)
        if canonical is None:
            fields["unknown_extensions"][key] = value
            continue
        field_name = VARIABLE_KEYS[canonical]
        if canonical == "$ref":
            if isinstance(value, str):
                data_type = DataType.class_reference(ReferencePath(value))
                saw_ref = True
            else:
                diags.append(error("invalid-attribute", path, "$ref must be text"))
        elif canonical == "type":
            if saw_ref:
                diags.append(
                    info_note("invalid-attribute", path, "type ignored next to $ref")
                )
            elif value is not None:
                data_type = map_wire_type(value)
        elif field_name == "description":
            fields["description"] = _scalar_text(value)
        elif field_name in ("minimum", "maximum"):
            number = _as_number(value, canonical, path, diags)
            if number is not None:
                fields[field_name] = number
        elif field_name in ("exclusive_minimum", "exclusive_maximum"):
            fields[field_name] = bool(value)
        elif field_name == "regular_expression":
            fields[field_name] = _scalar_text(value)
        elif field_name == "value_set":
            entries = _as_scalar_list(value, canonical, path, diags)
            if entries is not None:
                fields[field_name] = entries
        elif field_name == "default_value":
            if isinstance(value, list):
                fields[field_name] = tuple(value)
            elif value is not None:
                fields[field_name] = value
        elif field_name == "concept_uri":
            fields[field_name] = _scalar_text(value)
        elif field_name == "unit":
            unit_name_node = value
        elif field_name == "unit_type":
            unit_type_text = _scalar_text(value)
        elif field_name == "role":
            role = _scalar_text(value)
            if role in ("input", "output", "internal"):
                fields["role"] = role
            else:
                diags.append(
                    error("invalid-attribute", path, f"unknown variable role {value!r}")
                )
        elif field_name == "file_format":
            fields[field_name] = _scalar_text(value)
        elif field_name == "character_encoding":
            fields[field_name] = _scalar_text(value)
        elif field_name == "file_structure":
            fields["file_structure"][canonical] = value
        elif field_name == "properties":
            fields["properties"] = _parse_variable_map(
                value, f"{path}/properties", "internal", diags
            )
        elif field_name == "required":
            required_entries = value
        elif field_name == "dimensions":
            fields["dimensions"] = _parse_dimension_map(value, f"{path}/dimensions", diags)

    if data_type is not None:
        fields["data_type"] = data_type
    unit = _build_unit(unit_name_node, unit_type_text, path, diags)
    if unit is not None:
        fields["unit"] = unit
    properties = fields.get("properties", {})
    unmatched = _apply_required(properties, required_entries, path, diags)
    if unmatched:
        fields["unmatched_required"] = unmatched
    return VariableDescription(**fields)


def _build_unit(
    name_node: Any, unit_type: str | None, path: str, diags: list[Diagnostic]
) -> UnitSpec | None:
    if name_node is None and unit_type is None:
        return None
    name = description = uri = None
    if isinstance(name_node, dict):
        folded = {str(k).casefold(): v for k, v in name_node.items()}
        name = _scalar_text(folded.get("name"))
        description = _scalar_text(folded.get("description"))
        uri = _scalar_text(folded.get("uri"))
    elif name_node is not None:
        name = _scalar_text(name_node)
        if name is None:
            diags.append(error("invalid-attribute", path, "x-Unit must be text or a mapping"))
    return UnitSpec(name=name, description=description, uri=uri, unit_type=unit_type)


def _parse_dimension_map(
    raw: Any, path: str, diags: list[Diagnostic]
) -> dict[str, DimensionDescription]:
    dims: dict[str, DimensionDescription] = {}
    if raw is None:
        return dims
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", path, "x-dimensions is not a mapping"))
        return dims
    for name, node in raw.items():
        dims[name] = parse_dimension(name, node, f"{path}/{name}", diags)
    return dims


def parse_dimension(
    name: str, raw: Any, path: str, diags: list[Diagnostic]
) -> DimensionDescription:
    """Build one dimension from its raw mapping (also used by the extractor)."""
    if raw is None:
        return DimensionDescription(name=name)
    if not isinstance(raw, dict):
        diags.append(error("invalid-node", path, "dimension node is not a mapping"))
        return DimensionDescription(name=name)
    fields: dict[str, Any] = {"name": name, "unknown_extensions": {}}
    for key, value in raw.items():
        canonical = _match(key, _DIMENSION_FOLD)
        if canonical is None:
            fields["unknown_extensions"][key] = value
            continue
        field_name = DIMENSION_KEYS[canonical]
        if field_name in ("description", "uri", "unit_type"):
            fields[field_name] = _scalar_text(value)
        elif field_name == "index_type":
            if value is not None:
                fields[field_name] = map_wire_type(value)
        elif field_name in ("item_minimum", "item_maximum"):
            if isinstance(value, (str, int, float, bool)):
                fields[field_name] = value
            elif value is not None:
                diags.append(error("invalid-attribute", path, f"{canonical} must be scalar"))
        elif field_name == "value_set":
            entries = _as_scalar_list(value, canonical, path, diags)
            if entries is not None:
                fields[field_name] = entries
        elif field_name == "value_increment":
            number = _as_number(value, canonical, path, diags)
            if number is not None:
                fields[field_name] = number
    return DimensionDescription(**fields)


def _as_number(
    value: Any, key: str, path: str, diags: list[Diagnostic]
) -> int | float | None:
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return value
    if value is not None:
        diags.append(error("invalid-attribute", path, f"{key} must be a number"))
    return None


def _as_scalar_list(
    value: Any, key: str, path: str, diags: list[Diagnostic]
) -> tuple[Any, ...] | None:
    if isinstance(value, list):
        return tuple(value)
    if value is not None:
        diags.append(error("invalid-attribute", path, f"{key} must be a list"))
    return None


# ---------------------------------------------------------------------------
# Emission


def document_to_raw(document: DataDescDocument) -> dict[str, Any]:
    """Canonical plain-data form of a document (key spellings and order)."""
    raw: dict[str, Any] = {
        "openapi": document.openapi_version,
        "info": _info_to_raw(document.info),
    }
    components: dict[str, Any] = {}
    if document.components:
        components["schemas"] = {
            name: _class_to_raw(document.components[name])
            for name in sorted(document.components)
        }
    for key in sorted(document.preserved_components):
        components[key] = copy.deepcopy(document.preserved_components[key])
    raw["components"] = components
    for key in sorted(document.unknown_extensions):
        raw[key] = copy.deepcopy(document.unknown_extensions[key])
    return raw


def _info_to_raw(info: SoftwareInfo) -> dict[str, Any]:
    raw: dict[str, Any] = {"title": info.title, "version": info.version}
    if info.description is not None:
        raw["description"] = info.description
    if info.authors:
        persons = [_person_to_raw(p) for p in info.authors]
        raw["contact"] = persons[0] if len(persons) == 1 else persons
    if info.license is not None:
        raw["license"] = {"name": info.license}
    if info.first_release is not None:
        raw["x-first-release"] = info.first_release
    if info.programming_language is not None:
        raw["x-programming-lang"] = info.programming_language
    if info.repository is not None:
        raw["x-repository"] = info.repository
    if info.keywords:
        raw["x-keywords"] = list(info.keywords)
    if info.reference_publication is not None:
        raw["x-reference-publication"] = info.reference_publication
    for key in sorted(info.unknown_extensions):
        raw[key] = copy.deepcopy(info.unknown_extensions[key])
    return raw


def _person_to_raw(person: Person) -> dict[str, Any]:
    raw: dict[str, Any] = {"name": person.name}
    if person.email is not None:
        raw["email"] = person.email
    if person.uri is not None:
        raw["url"] = person.uri
    return raw


def _class_to_raw(cls: ClassDescription) -> dict[str, Any]:
    raw: dict[str, Any] = {}
    if cls.description is not None:
        raw["description"] = cls.description
    if cls.uri is not None:
        raw["x-URI"] = cls.uri
    if cls.is_part_of_interface:
        raw["x-IsPartOfInterface"] = True
    if cls.properties:
        raw["properties"] = {
            name: variable_to_raw(cls.properties[name], "internal")
            for name in sorted(cls.properties)
        }
    required = sorted(n for n, p in cls.properties.items() if p.required)
    required += list(cls.unmatched_required)
    if required:
        raw["required"] = required
    if cls.functions:
        raw["x-functions"] = {
            name: _function_to_raw(cls.functions[name]) for name in sorted(cls.functions)
        }
    for key in sorted(cls.unknown_extensions):
        raw[key] = copy.deepcopy(cls.unknown_extensions[key])
    return raw


def _function_to_raw(fn: FunctionDescription) -> dict[str, Any]:
    raw: dict[str, Any] = {}
    if fn.description is not None:
        raw["description"] = fn.description
    if fn.is_part_of_interface:
        raw["x-IsPartOfInterface"] = True
    if fn.parameters:
        raw["properties"] = {
            name: variable_to_raw(fn.parameters[name], "input")
            for name in sorted(fn.parameters)
        }
    required = sorted(n for n, p in fn.parameters.items() if p.required)
    required += list(fn.unmatched_required)
    if required:
        raw["required"] = required
    if isinstance(fn.return_description, ReferencePath):
        raw["return"] = {"$ref": fn.return_description.path}
    elif isinstance(fn.return_description, VariableDescription):
        raw["return"] = variable_to_raw(fn.return_description, "output")
    for key in sorted(fn.unknown_extensions):
        raw[key] = copy.deepcopy(fn.unknown_extensions[key])
    return raw


def variable_to_raw(variable: VariableDescription, default_role: Role) -> dict[str, Any]:
    raw: dict[str, Any] = {}
    if variable.description is not None:
        raw["description"] = variable.description
    dt = variable.data_type
    if dt is not None:
        if dt.kind == "class_reference":
            assert dt.reference is not None
            raw["$ref"] = dt.reference.path
        elif dt.kind == "opaque":
            raw["type"] = dt.text
        else:
            raw["type"] = TYPE_NAMES[dt.kind]
    if variable.minimum is not None:
        raw["x-MinimumValue"] = variable.minimum
    if variable.exclusive_minimum:
        raw["x-ExclusiveMinimum"] = True
    if variable.maximum is not None:
        raw["x-MaximumValue"] = variable.maximum
    if variable.exclusive_maximum:
        raw["x-ExclusiveMaximum"] = True
    if variable.regular_expression is not None:
        raw["x-RegularExpression"] = variable.regular_expression
    if variable.value_set is not None:
        raw["x-ValueSet"] = list(variable.value_set)
    if variable.default_value is not None:
        default = variable.default_value
        raw["x-DefaultValue"] = list(default) if isinstance(default, tuple) else default
    if variable.concept_uri is not None:
        raw["x-URI"] = variable.concept_uri
    if variable.unit is not None:
        unit = variable.unit
        if unit.name is not None or unit.description is not None or unit.uri is not None:
            if unit.description is None and unit.uri is None:
                raw["x-Unit"] = unit.name
            else:
                unit_raw: dict[str, Any] = {}
                if unit.name is not None:
                    unit_raw["Name"] = unit.name
                if unit.description is not None:
                    unit_raw["Description"] = unit.description
                if unit.uri is not None:
                    unit_raw["URI"] = unit.uri
                raw["x-Unit"] = unit_raw
        if unit.unit_type is not None:
            raw["x-UnitType"] = unit.unit_type
    if variable.role != default_role:
        raw["x-VariableRole"] = variable.role
    if variable.file_format is not None:
        raw["x-FileFormat"] = variable.file_format
    if variable.character_encoding is not None:
        raw["x-CharacterEncoding"] = variable.character_encoding
    for key in sorted(variable.file_structure):
        raw[key] = copy.deepcopy(variable.file_structure[key])
    if variable.properties:
        raw["properties"] = {
            name: variable_to_raw(variable.properties[name], "internal")
            for name in sorted(variable.properties)
        }
    required = sorted(n for n, p in variable.properties.items() if p.required)
    required += list(variable.unmatched_required)
    if required:
        raw["required"] = required
    if variable.dimensions:
        raw["x-dimensions"] = {
            name: _dimension_to_raw(variable.dimensions[name])
            for name in sorted(variable.dimensions)
        }
    for key in sorted(variable.unknown_extensions):
        raw[key] = copy.deepcopy(variable.unknown_extensions[key])
    return raw


def _dimension_to_raw(dim: DimensionDescription) -> dict[str, Any]:
    raw: dict[str, Any] = {}
    if dim.description is not None:
        raw["Description"] = dim.description
    if dim.uri is not None:
        raw["URI"] = dim.uri
    if dim.index_type is not None:
        if dim.index_type.kind == "opaque":
            raw["DataType"] = dim.index_type.text
        else:
            raw["DataType"] = TYPE_NAMES.get(dim.index_type.kind, dim.index_type.kind)
    if dim.item_minimum is not None:
        raw["ItemMinimumValue"] = dim.item_minimum
    if dim.item_maximum is not None:
        raw["ItemMaximumValue"] = dim.item_maximum
    if dim.value_set is not None:
        raw["ValueSet"] = list(dim.value_set)
    if dim.value_increment is not None:
        raw["ValueIncrement"] = dim.value_increment
    if dim.unit_type is not None:
        raw["UnitType"] = dim.unit_type
    for key in sorted(dim.unknown_extensions):
        raw[key] = copy.deepcopy(dim.unknown_extensions[key])
    return raw


class _CanonicalDumper(yaml.SafeDumper):
    """Stable emitter settings; never emits anchors for repeated structure."""

    def ignore_aliases(self, data):
        return True


def emit_document(document: DataDescDocument) -> str:
    """Emit the canonical YAML text of a valid document.

    Raises `InvalidDocumentError` when the document has error-severity
    findings (warnings are permitted).  Output is byte-deterministic for
    equal documents regardless of their construction order.
    """
    diagnostics = check_document(document)
    errors = tuple(d for d in diagnostics if d.severity == "error")
    if errors:
        raise InvalidDocumentError(
            "document has errors and cannot be emitted", errors
        )
    raw = document_to_raw(document)
    return yaml.dump(
        raw,
        Dumper=_CanonicalDumper,
        sort_keys=False,
        default_flow_style=False,
        allow_unicode=True,
        width=100000,
        indent=2,
    )


__all__ = [
    "RESERVED_COMPONENT_SECTIONS",
    "INFO_KEYS",
    "CLASS_KEYS",
    "FUNCTION_KEYS",
    "VARIABLE_KEYS",
    "DIMENSION_KEYS",
    "TYPE_NAMES",
    "attribute_table",
    "map_wire_type",
    "parse_document",
    "parse_dimension",
    "document_from_raw",
    "document_to_raw",
    "variable_to_raw",
    "emit_document",
]
