"""Validation of concrete data values against variable descriptions.

Makes the value and structure vocabulary executable: scalar values are
checked against type kind, numeric ranges with exclusivity, anchored
regular expressions and value sets; records are checked against grouping
descriptions or classes; dimensioned datasets are checked against their
axis declarations.  All applicable checks run, so the diagnostics of an
invalid value are complete rather than first-failure-only.

Regular expressions match the full string even without explicit anchors.
Numeric bound comparison is exact; declared bounds are authoritative
literals, never subject to a tolerance.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path
from typing import Any, Mapping

from .model import (
    DataDescDocument,
    Diagnostic,
    DimensionDescription,
    ClassDescription,
    Scalar,
    VariableDescription,
    error,
    order_diagnostics,
    resolve,
    scalar_equal,
    warning,
)


@dataclass(frozen=True)
class DimensionedValue:
    """A dataset resolved along named axes: one value per index tuple."""

    axes: tuple[str, ...]
    entries: dict[tuple[Scalar, ...], Any]

    @classmethod
    def from_raw(cls, raw: Mapping[str, Any]) -> "DimensionedValue":
        """Build from the serialized form::

            {"axes": ["store", "department"],
             "values": [{"index": ["London", "sales"], "value": 15}, ...]}
        """
        axes = tuple(str(a) for a in raw.get("axes", ()))
        entries: dict[tuple[Scalar, ...], Any] = {}
        for item in raw.get("values", ()):
            index = tuple(item["index"])
            entries[index] = item.get("value")
        return cls(axes=axes, entries=entries)


DataValue = Any  # scalar | list | dict record | DimensionedValue


def data_value_from_raw(raw: Any) -> DataValue:
    """Promote the reserved ``{"axes": ..., "values": ...}`` shape."""
    if isinstance(raw, Mapping) and set(raw.keys()) == {"axes", "values"}:
        return DimensionedValue.from_raw(raw)
    return raw


@dataclass(frozen=True)
class ValidationResult:
    valid: bool
    diagnostics: tuple[Diagnostic, ...] = ()

    @classmethod
    def from_diagnostics(cls, diagnostics: list[Diagnostic]) -> "ValidationResult":
        ordered = tuple(order_diagnostics(diagnostics))
        return cls(
            valid=not any(d.severity == "error" for d in ordered),
            diagnostics=ordered,
        )


def validate_value(
    value: DataValue,
    description: VariableDescription,
    *,
    document: DataDescDocument | None = None,
    path: str = "",
) -> ValidationResult:
    """Check one value against a variable description."""
    diags: list[Diagnostic] = []
    _validate_into(value, description, document, path or description.name, diags)
    return ValidationResult.from_diagnostics(diags)


def _validate_into(
    value: DataValue,
    description: VariableDescription,
    document: DataDescDocument | None,
    path: str,
    diags: list[Diagnostic],
) -> None:
    kind = description.data_type.kind if description.data_type is not None else None

    if isinstance(value, DimensionedValue):
        if description.dimensions:
            diags.extend(
                validate_dimensions(value, description.dimensions, path=path).diagnostics
            )
        else:
            diags.append(
                error("type", path, "dimensioned value against an undimensioned variable")
            )
        for index, entry in value.entries.items():
            entry_path = f"{path}[{','.join(str(i) for i in index)}]"
            _check_scalar_constraints(entry, description, entry_path, diags)
        return

    if isinstance(value, Mapping):
        target: ClassDescription | VariableDescription | None = None
        if kind == "class_reference" and document is not None:
            try:
                target = resolve(document, description.data_type.reference)
            except Exception:
                diags.append(
                    error("type", path, "value targets an unresolvable class reference")
                )
                return
        elif description.properties:
            target = description
        elif kind in (None, "object", "class_reference"):
            return  # a bare record with no declared shape; nothing to check
        else:
            diags.append(error("type", path, f"record value against type {kind}"))
            return
        diags.extend(
            validate_record(dict(value), target, document=document, path=path).diagnostics
        )
        return

    if isinstance(value, list):
        if kind not in (None, "array", "opaque"):
            diags.append(error("type", path, f"list value against type {kind}"))
        for position, element in enumerate(value):
            _check_scalar_constraints(element, description, f"{path}[{position}]", diags)
        return

    _check_kind(value, kind, path, diags)
    _check_scalar_constraints(value, description, path, diags)


def _check_kind(value: Any, kind: str | None, path: str, diags: list[Diagnostic]) -> None:
    if kind is None or kind == "opaque":
        return
    ok = True
    if kind == "string" or kind == "file":
        ok = isinstance(value, str)
    elif kind == "integer":
        ok = isinstance(value, int) and not isinstance(value, bool)
    elif kind == "number":
        ok = isinstance(value, (int, float)) and not isinstance(value, bool)
    elif kind == "boolean":
        ok = isinstance(value, bool)
    elif kind == "object" or kind == "class_reference":
        ok = isinstance(value, Mapping)
    elif kind == "array":
        ok = isinstance(value, list)
    if not ok:
        diags.append(
            error("type", path, f"value {value!r} does not have type {kind}")
        )


def _check_scalar_constraints(
    value: Any,
    description: VariableDescription,
    path: str,
    diags: list[Diagnostic],
) -> None:
    numeric = isinstance(value, (int, float)) and not isinstance(value, bool)
    if numeric:
        if description.minimum is not None:
            if value < description.minimum:
                diags.append(
                    error("range", path,
                          f"{value} is below the minimum {description.minimum}")
                )
            elif value == description.minimum and description.exclusive_minimum:
                diags.append(
                    error("exclusive-bound", path,
                          f"{value} equals the exclusive minimum {description.minimum}")
                )
        if description.maximum is not None:
            if value > description.maximum:
                diags.append(
                    error("range", path,
                          f"{value} is above the maximum {description.maximum}")
                )
            elif value == description.maximum and description.exclusive_maximum:
                diags.append(
                    error("exclusive-bound", path,
                          f"{value} equals the exclusive maximum {description.maximum}")
                )
    if description.regular_expression is not None and isinstance(value, str):
        try:
            pattern = re.compile(description.regular_expression)
        except re.error:
            pattern = None
        if pattern is not None and pattern.fullmatch(value) is None:
            diags.append(
                error("regex", path,
                      f"{value!r} does not match {description.regular_expression!r}")
            )
    if description.value_set is not None:
        if not any(scalar_equal(value, entry) for entry in description.value_set):
            diags.append(
                error("value-set", path,
                      f"{value!r} is not one of {list(description.value_set)!r}")
            )


def validate_record(
    record: Mapping[str, Any],
    container: ClassDescription | VariableDescription,
    *,
    document: DataDescDocument | None = None,
    with_defaults: bool = False,
    path: str = "",
) -> ValidationResult:
    """Check a record against a class or a grouping variable.

    With ``with_defaults`` the record is completed by `apply_defaults`
    before required properties are checked.
    """
    diags: list[Diagnostic] = []
    properties = container.properties
    effective: Mapping[str, Any] = (
        apply_defaults(record, container) if with_defaults else record
    )
    for name, prop in properties.items():
        member_path = _join(path, name)
        if prop.required and name not in effective:
            diags.append(
                error("missing-required", member_path,
                      f"required property {name!r} is absent")
            )
    for name, value in effective.items():
        member_path = _join(path, name)
        if name in properties:
            _validate_into(
                data_value_from_raw(value), properties[name], document, member_path, diags
            )
        else:
            diags.append(
                warning("unknown-property", member_path,
                        f"property {name!r} is not declared")
            )
    return ValidationResult.from_diagnostics(diags)


def validate_dimensions(
    value: DimensionedValue,
    dimensions: Mapping[str, DimensionDescription],
    *,
    path: str = "",
) -> ValidationResult:
    """Check a dimensioned dataset against its axis declarations."""
    diags: list[Diagnostic] = []
    declared = list(dimensions.values())
    declared_names = [d.name for d in declared]

    if value.axes and list(value.axes) != declared_names:
        if len(value.axes) != len(declared):
            diags.append(
                error("dimension-arity", path,
                      f"value declares {len(value.axes)} axes, description "
                      f"{len(declared)}")
            )
        else:
            diags.append(
                error("dimension-arity", path,
                      f"axis names {list(value.axes)!r} do not match the declared "
                      f"order {declared_names!r}")
            )

    for index in value.entries:
        index_path = f"{path}[{','.join(str(i) for i in index)}]" if path else \
            f"[{','.join(str(i) for i in index)}]"
        if len(index) != len(declared):
            diags.append(
                error("dimension-arity", index_path,
                      f"index has {len(index)} components, expected {len(declared)}")
            )
            continue
        for component, dimension in zip(index, declared):
            _check_index_component(component, dimension, index_path, diags)
    return ValidationResult.from_diagnostics(diags)


def _check_index_component(
    component: Scalar,
    dimension: DimensionDescription,
    path: str,
    diags: list[Diagnostic],
) -> None:
    axis = dimension.name
    if dimension.index_type is not None:
        kind = dimension.index_type.kind
        kind_diags: list[Diagnostic] = []
        _check_kind(component, kind, path, kind_diags)
        if kind_diags:
            diags.append(
                error("dimension-index", path,
                      f"index {component!r} on axis {axis!r} is not of type {kind}")
            )
    numeric = isinstance(component, (int, float)) and not isinstance(component, bool)
    if numeric:
        minimum = dimension.item_minimum
        maximum = dimension.item_maximum
        if isinstance(minimum, (int, float)) and not isinstance(minimum, bool):
            if component < minimum:
                diags.append(
                    error("dimension-index", path,
                          f"index {component} on axis {axis!r} is below {minimum}")
                )
        if isinstance(maximum, (int, float)) and not isinstance(maximum, bool):
            if component > maximum:
                diags.append(
                    error("dimension-index", path,
                          f"index {component} on axis {axis!r} is above {maximum}")
                )
        if (
            dimension.value_increment is not None
            and isinstance(minimum, (int, float))
            and not isinstance(minimum, bool)
            and not _on_grid(component, minimum, dimension.value_increment)
        ):
            diags.append(
                error("dimension-index", path,
                      f"index {component} on axis {axis!r} is not on the grid "
                      f"{minimum} + k*{dimension.value_increment}")
            )
    if dimension.value_set is not None:
        if not any(scalar_equal(component, entry) for entry in dimension.value_set):
            diags.append(
                error("dimension-index", path,
                      f"index {component!r} on axis {axis!r} is not one of "
                      f"{list(dimension.value_set)!r}")
            )


def _on_grid(value: float, start: float, increment: float) -> bool:
    """Exact membership in {start, start+inc, ...}, decimal arithmetic."""
    try:
        offset = Decimal(str(value)) - Decimal(str(start))
        step = Decimal(str(increment))
        if step == 0:
            return False
        return offset >= 0 and offset % step == 0
    except (InvalidOperation, ValueError):
        return False


def apply_defaults(
    record: Mapping[str, Any],
    container: ClassDescription | VariableDescription,
) -> dict[str, Any]:
    """Insert declared defaults for absent properties; never overwrites.

    Recurses into present records whose description is itself a grouping.
    Idempotent: applying twice equals applying once.
    """
    out = dict(record)
    for name, prop in container.properties.items():
        if name not in out:
            if prop.default_value is not None:
                default = prop.default_value
                out[name] = list(default) if isinstance(default, tuple) else default
        elif isinstance(out[name], Mapping) and prop.properties:
            out[name] = apply_defaults(out[name], prop)
    return out


# File-format tags: extension spellings and magic-byte prefixes.  Deep
# validation of declared folder/sheet layouts is documentation, not checked.
FILE_FORMAT_EXTENSIONS = {
    "NetCDF": (".nc", ".nc4", ".cdf", ".netcdf"),
    "XLSX": (".xlsx",),
    "XML": (".xml",),
    "JSON": (".json",),
    "CSV": (".csv",),
    "TXT": (".txt", ".text"),
    "PDF": (".pdf",),
    "JPG": (".jpg", ".jpeg"),
    "HTML": (".html", ".htm"),
}

FILE_FORMAT_MAGIC = {
    "NetCDF": (b"CDF\x01", b"CDF\x02", b"\x89HDF"),
    "XLSX": (b"PK\x03\x04",),
    "PDF": (b"%PDF",),
    "JPG": (b"\xff\xd8\xff",),
    "XML": (b"<?xml",),
}


def validate_file_format(file_path: str | Path, declared: str) -> ValidationResult:
    """Check a file against its declared format tag.

    Matches the extension table; when the file exists and the tag has known
    magic bytes, the content prefix is checked as well.
    """
    diags: list[Diagnostic] = []
    tag = _canonical_tag(declared)
    path = Path(file_path)
    if tag is None:
        diags.append(
            warning("file-format", str(file_path),
                    f"unknown file format tag {declared!r}; not checked")
        )
        return ValidationResult.from_diagnostics(diags)
    extensions = FILE_FORMAT_EXTENSIONS[tag]
    if path.suffix.lower() not in extensions:
        diags.append(
            error("file-format", str(file_path),
                  f"extension {path.suffix!r} does not match format {tag}")
        )
    magic = FILE_FORMAT_MAGIC.get(tag)
    if magic and path.is_file():
        prefix = path.open("rb").read(8)
        if not any(prefix.startswith(m) for m in magic):
            diags.append(
                error("file-format", str(file_path),
                      f"content signature does not match format {tag}")
            )
    return ValidationResult.from_diagnostics(diags)


def _canonical_tag(declared: str) -> str | None:
    folded = declared.casefold()
    for tag in FILE_FORMAT_EXTENSIONS:
        if tag.casefold() == folded:
            return tag
    aliases = {"excel": "XLSX", "xls": "XLSX", "text": "TXT", "jpeg": "JPG"}
    return aliases.get(folded)


def _join(path: str, name: str) -> str:
    return f"{path}/{name}" if path else name


__all__ = [
    "DimensionedValue",
    "DataValue",
    "data_value_from_raw",
    "ValidationResult",
    "validate_value",
    "validate_record",
    "validate_dimensions",
    "apply_defaults",
    "validate_file_format",
    "FILE_FORMAT_EXTENSIONS",
    "FILE_FORMAT_MAGIC",
]
