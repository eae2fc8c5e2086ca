"""Structural checking of documents against the schema invariants.

`check_document` walks a document and returns every invariant violation as a
diagnostic; it never raises.  An empty result means the document is valid
(warnings such as ``required-with-default`` may still appear and do not make
a document invalid).
"""

from __future__ import annotations

import re
from typing import Any

from .model import (
    DataDescDocument,
    Diagnostic,
    DimensionDescription,
    FunctionDescription,
    ClassDescription,
    ReferencePath,
    Scalar,
    VariableDescription,
    error,
    is_iso_date,
    order_diagnostics,
    scalar_equal,
    warning,
)

#: Kinds on which nested properties make sense (grouping types).
GROUPING_KINDS = ("object", "class_reference")
#: Kinds on which dimensions make sense (container / table-like types).
DIMENSIONED_KINDS = ("array", "object", "opaque", "class_reference")


def check_document(document: DataDescDocument) -> list[Diagnostic]:
    """Return all invariant violations, ordered deterministically by path."""
    diags: list[Diagnostic] = []
    _check_info(document, diags)
    for class_name, cls in document.components.items():
        _check_class(document, class_name, cls, diags)
    return order_diagnostics(diags)


def _check_info(document: DataDescDocument, diags: list[Diagnostic]) -> None:
    info = document.info
    if not info.title:
        diags.append(error("info-title-missing", "info", "title must be non-empty"))
    if not info.version:
        diags.append(error("info-version-missing", "info", "version must be non-empty"))
    if info.first_release is not None and not is_iso_date(info.first_release):
        diags.append(
            error(
                "invalid-date",
                "info/first_release",
                f"{info.first_release!r} is not an ISO-8601 calendar date",
            )
        )


def _check_class(
    document: DataDescDocument,
    class_name: str,
    cls: ClassDescription,
    diags: list[Diagnostic],
) -> None:
    path = f"components/{class_name}"
    if not class_name:
        diags.append(error("empty-name", "components", "class name must be non-empty"))
        return
    _check_required_entries(cls.properties, cls.unmatched_required, path, diags)
    for prop_name, prop in cls.properties.items():
        _check_variable(document, prop, f"{path}/properties/{prop_name}", diags)
    for fn_name, fn in cls.functions.items():
        _check_function(document, fn, f"{path}/functions/{fn_name}", diags)


def _check_function(
    document: DataDescDocument,
    fn: FunctionDescription,
    path: str,
    diags: list[Diagnostic],
) -> None:
    if not fn.name:
        diags.append(error("empty-name", path, "function name must be non-empty"))
    _check_required_entries(fn.parameters, fn.unmatched_required, path, diags)
    for param_name, param in fn.parameters.items():
        param_path = f"{path}/parameters/{param_name}"
        if param.role != "input":
            diags.append(
                error(
                    "invalid-parameter-role",
                    param_path,
                    f"parameter role must be input, got {param.role}",
                )
            )
        _check_variable(document, param, param_path, diags)
    ret = fn.return_description
    if isinstance(ret, VariableDescription):
        ret_path = f"{path}/return"
        if ret.role != "output":
            diags.append(
                error(
                    "invalid-return-role",
                    ret_path,
                    f"return role must be output, got {ret.role}",
                )
            )
        _check_variable(document, ret, ret_path, diags)
    elif isinstance(ret, ReferencePath):
        _check_reference(document, ret, f"{path}/return", diags)


def _check_required_entries(
    members: dict[str, VariableDescription],
    unmatched: tuple[str, ...],
    path: str,
    diags: list[Diagnostic],
) -> None:
    for entry in unmatched:
        diags.append(
            error(
                "required-unknown-parameter",
                path,
                f"required lists {entry!r} which is not declared",
            )
        )


def _check_variable(
    document: DataDescDocument,
    variable: VariableDescription,
    path: str,
    diags: list[Diagnostic],
) -> None:
    if not variable.name:
        diags.append(error("empty-name", path, "variable name must be non-empty"))

    kind = variable.data_type.kind if variable.data_type is not None else None

    # value facet
    _check_range(variable.minimum, variable.maximum,
                 variable.exclusive_minimum, variable.exclusive_maximum, path, diags)
    if (variable.minimum is not None or variable.maximum is not None) and kind not in (
        None,
        "integer",
        "number",
    ):
        diags.append(
            error(
                "constraint-type-mismatch",
                path,
                f"numeric range constraints are not meaningful on type {kind}",
            )
        )
    regex = _check_regex(variable, kind, path, diags)
    if variable.value_set is not None:
        _check_value_set(variable, regex, path, diags)
    if variable.default_value is not None:
        if not _satisfies_value_constraints(variable.default_value, variable, regex):
            diags.append(
                error(
                    "default-constraint",
                    path,
                    f"default value {variable.default_value!r} violates the "
                    "variable's own value constraints",
                )
            )
        if variable.required:
            diags.append(
                warning(
                    "required-with-default",
                    path,
                    "variable is required and also declares a default value",
                )
            )

    # structure facet
    if variable.properties and kind is not None and kind not in GROUPING_KINDS:
        diags.append(
            error(
                "structure-type-mismatch",
                path,
                f"nested properties are not meaningful on type {kind}",
            )
        )
    if variable.dimensions and kind is not None and kind not in DIMENSIONED_KINDS:
        diags.append(
            error(
                "structure-type-mismatch",
                path,
                f"dimensions are not meaningful on type {kind}",
            )
        )
    _check_required_entries(variable.properties, variable.unmatched_required, path, diags)

    if variable.unit is not None and variable.unit.is_empty:
        diags.append(error("empty-unit", f"{path}/unit", "unit declares no field"))

    if variable.data_type is not None and variable.data_type.reference is not None:
        _check_reference(document, variable.data_type.reference, path, diags)

    for dim_name, dim in variable.dimensions.items():
        _check_dimension(dim, f"{path}/dimensions/{dim_name}", diags)
    for child_name, child in variable.properties.items():
        _check_variable(document, child, f"{path}/properties/{child_name}", diags)


def _check_range(
    minimum: Any,
    maximum: Any,
    exclusive_minimum: bool,
    exclusive_maximum: bool,
    path: str,
    diags: list[Diagnostic],
) -> None:
    if not isinstance(minimum, (int, float)) or not isinstance(maximum, (int, float)):
        return
    if isinstance(minimum, bool) or isinstance(maximum, bool):
        return
    if minimum > maximum:
        diags.append(
            error(
                "invalid-range",
                path,
                f"minimum {minimum} exceeds maximum {maximum}",
            )
        )
    elif minimum == maximum and (exclusive_minimum or exclusive_maximum):
        diags.append(
            error(
                "exclusive-equal-bounds",
                path,
                "equal bounds must not carry an exclusivity flag",
            )
        )


def _check_regex(
    variable: VariableDescription,
    kind: str | None,
    path: str,
    diags: list[Diagnostic],
) -> re.Pattern | None:
    if variable.regular_expression is None:
        return None
    if kind not in (None, "string"):
        diags.append(
            error(
                "constraint-type-mismatch",
                path,
                f"a regular expression is not meaningful on type {kind}",
            )
        )
    try:
        return re.compile(variable.regular_expression)
    except re.error as exc:
        diags.append(
            error(
                "invalid-regex",
                path,
                f"regular expression does not compile: {exc}",
            )
        )
        return None


def _check_value_set(
    variable: VariableDescription,
    regex: re.Pattern | None,
    path: str,
    diags: list[Diagnostic],
) -> None:
    entries = variable.value_set or ()
    for i, entry in enumerate(entries):
        if any(scalar_equal(entry, other) for other in entries[:i]):
            diags.append(
                error(
                    "value-set-duplicate",
                    path,
                    f"value set entry {entry!r} appears more than once",
                )
            )
        if not _satisfies_value_constraints(entry, variable, regex, check_set=False):
            diags.append(
                error(
                    "value-set-constraint",
                    path,
                    f"value set entry {entry!r} violates the variable's "
                    "range or pattern constraints",
                )
            )


def _satisfies_value_constraints(
    value: Scalar,
    variable: VariableDescription,
    regex: re.Pattern | None,
    check_set: bool = True,
) -> bool:
    """True when a scalar satisfies the variable's own value constraints."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        if variable.minimum is not None:
            if value < variable.minimum:
                return False
            if value == variable.minimum and variable.exclusive_minimum:
                return False
        if variable.maximum is not None:
            if value > variable.maximum:
                return False
            if value == variable.maximum and variable.exclusive_maximum:
                return False
    if regex is not None and isinstance(value, str):
        if regex.fullmatch(value) is None:
            return False
    if check_set and variable.value_set is not None:
        if not any(scalar_equal(value, entry) for entry in variable.value_set):
            return False
    return True


def _check_dimension(
    dim: DimensionDescription, path: str, diags: list[Diagnostic]
) -> None:
    if not dim.name:
        diags.append(error("empty-name", path, "dimension name must be non-empty"))
    _check_range(dim.item_minimum, dim.item_maximum, False, False, path, diags)
    if dim.value_increment is not None and not dim.value_increment > 0:
        diags.append(
            error(
                "invalid-increment",
                path,
                f"value increment must be positive, got {dim.value_increment}",
            )
        )


def _check_reference(
    document: DataDescDocument,
    ref: ReferencePath,
    path: str,
    diags: list[Diagnostic],
) -> None:
    if not ref.is_wellformed:
        diags.append(
            error(
                "malformed-reference",
                path,
                f"reference {ref.path!r} is not of the form "
                "'#/components/schemas/<Name>'",
            )
        )
        return
    if ref.target_name not in document.components:
        diags.append(
            error(
                "unresolved-reference",
                path,
                f"reference {ref.path!r} does not resolve to a declared class",
            )
        )


__all__ = ["check_document", "GROUPING_KINDS", "DIMENSIONED_KINDS"]
