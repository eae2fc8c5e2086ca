"""Core object model for machine-actionable software interface metadata.

A document couples general software information (the ``info`` section of the
exchange file) with a components section of data model classes.  Classes own
variables and interface functions; variables describe their data along four
facets: content (name, concept, unit), format (data type, file format,
encoding), value (ranges, patterns, value sets, defaults) and structure
(nested properties, dimensions).

All types are frozen value objects.  Toolchain operations never mutate a
document; they build new ones.  Documents are therefore safe to share across
threads.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Any, Iterator, Literal

Scalar = str | int | float | bool
Severity = Literal["error", "warning", "info"]
Role = Literal["input", "output", "internal"]

ROLE_INPUT: Role = "input"
ROLE_OUTPUT: Role = "output"
ROLE_INTERNAL: Role = "internal"

#: Data type kinds a variable or dimension index may declare.
KINDS = (
    "string",
    "integer",
    "number",
    "boolean",
    "object",
    "array",
    "file",
    "class_reference",
    "opaque",
)

_SEVERITY_ORDER = {"error": 0, "warning": 1, "info": 2}


class DataDescError(Exception):
    """Base class for toolchain failures that carry a stable code."""

    code = "error"

    def __init__(self, message: str, *, path: str = ""):
        super().__init__(message)
        self.path = path


class MalformedReferenceError(DataDescError):
    code = "malformed-reference"


class UnresolvedReferenceError(DataDescError):
    code = "unresolved-reference"


class InvalidDocumentError(DataDescError):
    """Raised when an operation requires an error-free document."""

    code = "invalid-document"

    def __init__(self, message: str, diagnostics: tuple["Diagnostic", ...] = ()):
        super().__init__(message)
        self.diagnostics = diagnostics


class DuplicateClassError(DataDescError):
    code = "duplicate-class"


@dataclass(frozen=True)
class Diagnostic:
    """One validation finding: severity, stable code, node path, message.

    ``path`` is slash separated and addresses a node of the document model
    (for example ``components/EnergySystemModel/properties/numberOfTimeSteps``);
    the empty string addresses the document root.
    """

    severity: Severity
    code: str
    path: str
    message: str

    def __str__(self) -> str:
        return f"{self.severity} {self.code} {self.path or '.'} {self.message}"


def error(code: str, path: str, message: str) -> Diagnostic:
    return Diagnostic("error", code, path, message)


def warning(code: str, path: str, message: str) -> Diagnostic:
    return Diagnostic("warning", code, path, message)


def info_note(code: str, path: str, message: str) -> Diagnostic:
    return Diagnostic("info", code, path, message)


def order_diagnostics(diagnostics: list[Diagnostic]) -> list[Diagnostic]:
    """Deterministic ordering: by path, then severity, code and message."""
    return sorted(
        diagnostics,
        key=lambda d: (d.path, _SEVERITY_ORDER[d.severity], d.code, d.message),
    )


def has_errors(diagnostics: list[Diagnostic] | tuple[Diagnostic, ...]) -> bool:
    return any(d.severity == "error" for d in diagnostics)


def scalar_equal(a: Any, b: Any) -> bool:
    """Scalar equality with numbers compared by mathematical value.

    ``0 == 0.0`` holds, but booleans never equal numbers (Python would
    otherwise collapse ``True`` and ``1``).
    """
    a_bool, b_bool = isinstance(a, bool), isinstance(b, bool)
    if a_bool or b_bool:
        return a_bool and b_bool and a == b
    if isinstance(a, (int, float)) and isinstance(b, (int, float)):
        return a == b
    return type(a) is type(b) and a == b


_REFERENCE_RE = re.compile(r"^#/components/schemas/([^/]+)$")


@dataclass(frozen=True)
class ReferencePath:
    """An internal reference of the form ``#/components/schemas/<Name>``."""

    path: str

    @property
    def is_wellformed(self) -> bool:
        return _REFERENCE_RE.match(self.path) is not None

    @property
    def target_name(self) -> str:
        """Final path segment; raises for malformed paths."""
        match = _REFERENCE_RE.match(self.path)
        if match is None:
            raise MalformedReferenceError(
                f"reference {self.path!r} is not of the form "
                "'#/components/schemas/<Name>'"
            )
        return match.group(1)

    @classmethod
    def to_class(cls, name: str) -> "ReferencePath":
        return cls(f"#/components/schemas/{name}")


@dataclass(frozen=True)
class DataType:
    """A variable's format kind, possibly referencing a declared class.

    ``reference`` is set only for ``class_reference``; ``text`` keeps the
    original spelling of an ``opaque`` type.
    """

    kind: str
    reference: ReferencePath | None = None
    text: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown data type kind {self.kind!r}")
        if (self.kind == "class_reference") != (self.reference is not None):
            raise ValueError("class_reference carries a reference, other kinds do not")

    @classmethod
    def class_reference(cls, target: str | ReferencePath) -> "DataType":
        if isinstance(target, str) and not target.startswith("#/"):
            target = ReferencePath.to_class(target)
        elif isinstance(target, str):
            target = ReferencePath(target)
        return cls("class_reference", reference=target)

    @classmethod
    def opaque(cls, text: str) -> "DataType":
        return cls("opaque", text=text)

    @property
    def is_numeric(self) -> bool:
        return self.kind in ("integer", "number")


STRING = DataType("string")
INTEGER = DataType("integer")
NUMBER = DataType("number")
BOOLEAN = DataType("boolean")
OBJECT = DataType("object")
ARRAY = DataType("array")
FILE = DataType("file")


@dataclass(frozen=True)
class UnitSpec:
    """Unit of a numeric variable; at least one field must be set."""

    name: str | None = None
    description: str | None = None
    uri: str | None = None
    unit_type: str | None = None

    @property
    def is_empty(self) -> bool:
        return not any((self.name, self.description, self.uri, self.unit_type))


@dataclass(frozen=True)
class DimensionDescription:
    """One axis along which a variable's values are resolved."""

    name: str
    description: str | None = None
    uri: str | None = None
    index_type: DataType | None = None
    item_minimum: Scalar | None = None
    item_maximum: Scalar | None = None
    value_set: tuple[Scalar, ...] | None = None
    value_increment: int | float | None = None
    unit_type: str | None = None
    unknown_extensions: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class VariableDescription:
    """One variable: its content, format, value and structure facets."""

    name: str
    # content
    description: str | None = None
    concept_uri: str | None = None
    unit: UnitSpec | None = None
    # format; ``data_type`` is None when the variable declares no type
    data_type: DataType | None = None
    file_format: str | None = None
    character_encoding: str | None = None
    #: raw layout subtrees of referenced files, keyed by their canonical
    #: container spelling (``x-NetCDFFolders`` or ``x-ExcelSheets``)
    file_structure: dict[str, Any] = field(default_factory=dict)
    # value
    minimum: int | float | None = None
    exclusive_minimum: bool = False
    maximum: int | float | None = None
    exclusive_maximum: bool = False
    regular_expression: str | None = None
    value_set: tuple[Scalar, ...] | None = None
    required: bool = False
    default_value: Scalar | None = None
    # structure
    properties: dict[str, "VariableDescription"] = field(default_factory=dict)
    #: required-list entries of a grouping variable that name no property
    unmatched_required: tuple[str, ...] = ()
    dimensions: dict[str, DimensionDescription] = field(default_factory=dict)
    role: Role = ROLE_INTERNAL
    unknown_extensions: dict[str, Any] = field(default_factory=dict)

    @property
    def has_default(self) -> bool:
        return self.default_value is not None

    @property
    def is_grouping(self) -> bool:
        return bool(self.properties)


@dataclass(frozen=True)
class FunctionDescription:
    """A function of a data model class, with its parameter descriptions.

    Requiredness of a parameter lives on the parameter's ``required`` flag;
    ``unmatched_required`` keeps required-list entries that name no parameter
    so that document checking can report them.
    """

    name: str
    description: str | None = None
    is_part_of_interface: bool = False
    parameters: dict[str, VariableDescription] = field(default_factory=dict)
    unmatched_required: tuple[str, ...] = ()
    return_description: VariableDescription | ReferencePath | None = None
    unknown_extensions: dict[str, Any] = field(default_factory=dict)

    @property
    def required_names(self) -> tuple[str, ...]:
        """Effective required set: flagged parameters plus unmatched entries."""
        flagged = tuple(n for n, p in self.parameters.items() if p.required)
        return flagged + self.unmatched_required


@dataclass(frozen=True)
class ClassDescription:
    """A reusable data model class bundling variables and functions."""

    name: str
    description: str | None = None
    uri: str | None = None
    is_part_of_interface: bool = False
    properties: dict[str, VariableDescription] = field(default_factory=dict)
    unmatched_required: tuple[str, ...] = ()
    functions: dict[str, FunctionDescription] = field(default_factory=dict)
    unknown_extensions: dict[str, Any] = field(default_factory=dict)

    @property
    def required_names(self) -> tuple[str, ...]:
        flagged = tuple(n for n, p in self.properties.items() if p.required)
        return flagged + self.unmatched_required


@dataclass(frozen=True)
class Person:
    name: str
    email: str | None = None
    uri: str | None = None


@dataclass(frozen=True)
class SoftwareInfo:
    """General software metadata carried by the info section."""

    title: str
    version: str
    description: str | None = None
    first_release: str | None = None
    programming_language: str | None = None
    authors: tuple[Person, ...] = ()
    license: str | None = None
    repository: str | None = None
    keywords: tuple[str, ...] = ()
    reference_publication: str | None = None
    unknown_extensions: dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class DataDescDocument:
    """Root document: info section plus named data model classes.

    ``preserved_components`` keeps reserved component subsections that are
    accepted but not interpreted (responses, parameters, securitySchemes,
    ...); ``unknown_extensions`` keeps unrecognized top level keys (paths,
    servers, ...).  Both round-trip verbatim through the exchange format.
    """

    info: SoftwareInfo
    openapi_version: str = "3.0.0"
    components: dict[str, ClassDescription] = field(default_factory=dict)
    preserved_components: dict[str, Any] = field(default_factory=dict)
    unknown_extensions: dict[str, Any] = field(default_factory=dict)


def resolve(document: DataDescDocument, ref: ReferencePath | str) -> ClassDescription:
    """Resolve an internal reference to its class.

    Resolution is by exact name match on the final path segment.  Raises
    ``MalformedReferenceError`` for a wrong path shape and
    ``UnresolvedReferenceError`` when the target class does not exist.
    """
    if isinstance(ref, str):
        ref = ReferencePath(ref)
    name = ref.target_name
    try:
        return document.components[name]
    except KeyError:
        raise UnresolvedReferenceError(
            f"reference {ref.path!r} does not resolve: no class named {name!r}"
        ) from None


def iter_variables(
    document: DataDescDocument,
) -> Iterator[tuple[str, VariableDescription]]:
    """Yield every variable in the document with its node path.

    Covers class properties, function parameters, inline return descriptions
    and nested grouping properties, depth first.
    """
    for class_name, cls in document.components.items():
        base = f"components/{class_name}"
        for prop_name, prop in cls.properties.items():
            yield from _walk_variable(prop, f"{base}/properties/{prop_name}")
        for fn_name, fn in cls.functions.items():
            fn_base = f"{base}/functions/{fn_name}"
            for param_name, param in fn.parameters.items():
                yield from _walk_variable(param, f"{fn_base}/parameters/{param_name}")
            if isinstance(fn.return_description, VariableDescription):
                yield from _walk_variable(fn.return_description, f"{fn_base}/return")


def _walk_variable(
    variable: VariableDescription, path: str
) -> Iterator[tuple[str, VariableDescription]]:
    yield path, variable
    for child_name, child in variable.properties.items():
        yield from _walk_variable(child, f"{path}/properties/{child_name}")


def iter_references(
    document: DataDescDocument,
) -> Iterator[tuple[str, ReferencePath]]:
    """Yield every internal reference in the document with its node path."""
    for path, variable in iter_variables(document):
        if variable.data_type is not None and variable.data_type.reference is not None:
            yield path, variable.data_type.reference
    for class_name, cls in document.components.items():
        for fn_name, fn in cls.functions.items():
            ret = fn.return_description
            fn_path = f"components/{class_name}/functions/{fn_name}"
            if isinstance(ret, ReferencePath):
                yield f"{fn_path}/return", ret
            elif (
                isinstance(ret, VariableDescription)
                and ret.data_type is not None
                and ret.data_type.reference is not None
            ):
                yield f"{fn_path}/return", ret.data_type.reference


def node_at(document: DataDescDocument, path: str) -> Any:
    """Return the model node addressed by a diagnostic path, or None.

    The empty path addresses the document itself.
    """
    if path == "":
        return document
    segments = path.split("/")
    node: Any = document
    i = 0
    while i < len(segments):
        seg = segments[i]
        if node is document:
            if seg == "info":
                node = document.info
                i += 1
            elif seg == "components" and i + 1 < len(segments):
                node = document.components.get(segments[i + 1])
                i += 2
            elif seg == "components":
                node = document.components
                i += 1
            else:
                return None
        elif isinstance(node, SoftwareInfo):
            return getattr(node, seg, None) if i == len(segments) - 1 else None
        elif isinstance(node, ClassDescription):
            if seg == "properties" and i + 1 < len(segments):
                node = node.properties.get(segments[i + 1])
                i += 2
            elif seg == "functions" and i + 1 < len(segments):
                node = node.functions.get(segments[i + 1])
                i += 2
            else:
                return None
        elif isinstance(node, FunctionDescription):
            if seg == "parameters" and i + 1 < len(segments):
                node = node.parameters.get(segments[i + 1])
                i += 2
            elif seg == "return":
                node = node.return_description
                i += 1
            else:
                return None
        elif isinstance(node, VariableDescription):
            if seg == "properties" and i + 1 < len(segments):
                node = node.properties.get(segments[i + 1])
                i += 2
            elif seg == "dimensions" and i + 1 < len(segments):
                node = node.dimensions.get(segments[i + 1])
                i += 2
            elif seg == "unit":
                node = node.unit
                i += 1
            else:
                return None
        else:
            return None
        if node is None:
            return None
    return node


def with_required(variable: VariableDescription, required: bool) -> VariableDescription:
    """Convenience copy helper used by parsers and the extractor."""
    return replace(variable, required=required)


def is_iso_date(text: str) -> bool:
    """True for a valid ISO-8601 calendar date (YYYY-MM-DD)."""
    import datetime

    if not re.match(r"^\d{4}-\d{2}-\d{2}$", text):
        return False
    try:
        datetime.date.fromisoformat(text)
    except ValueError:
        return False
    return True


__all__ = [
    "Scalar",
    "Severity",
    "Role",
    "ROLE_INPUT",
    "ROLE_OUTPUT",
    "ROLE_INTERNAL",
    "KINDS",
    "DataDescError",
    "MalformedReferenceError",
    "UnresolvedReferenceError",
    "InvalidDocumentError",
    "DuplicateClassError",
    "Diagnostic",
    "error",
    "warning",
    "info_note",
    "order_diagnostics",
    "has_errors",
    "scalar_equal",
    "ReferencePath",
    "DataType",
    "STRING",
    "INTEGER",
    "NUMBER",
    "BOOLEAN",
    "OBJECT",
    "ARRAY",
    "FILE",
    "UnitSpec",
    "DimensionDescription",
    "VariableDescription",
    "FunctionDescription",
    "ClassDescription",
    "Person",
    "SoftwareInfo",
    "DataDescDocument",
    "resolve",
    "iter_variables",
    "iter_references",
    "node_at",
    "with_required",
    "is_iso_date",
]
