"""Extraction of interface metadata from annotated source files.

The supported input dialect is a Python-3-style declaration subset: class
statements, annotated attribute assignments, function definitions with type
hints and literal defaults, triple-quoted docstrings, and calls of the
``datadesc`` decorator whose keyword arguments are literals.  Nothing is
imported or executed; files that cannot be parsed at all yield a single
fatal diagnostic, and unsupported constructs are skipped with a note.

Decorator keys equal the canonical extension attribute names without their
``x-`` prefix (``DefaultValue``, ``MinimumValue``, ``ValueSet``, ...), plus
``Required``, ``DataType`` and ``Dimensions``.  A keyword whose value is a
mapping of such keys attaches metadata to the parameter or attribute of
that name instead of to the decorated object itself.
"""

from __future__ import annotations

import ast
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Iterable

from . import exchange
from .model import (
    DataDescDocument,
    DataType,
    Diagnostic,
    DuplicateClassError,
    ClassDescription,
    FunctionDescription,
    ReferencePath,
    SoftwareInfo,
    UnitSpec,
    VariableDescription,
    error,
    info_note,
    order_diagnostics,
    warning,
)

DECORATOR_NAME = "datadesc"

#: Decorator keys (canonical x-attribute names without the prefix), mapped to
#: the variable/class/function field they set.
DECORATOR_KEYS = {
    "Description": "description",
    "URI": "uri",
    "IsPartOfInterface": "is_part_of_interface",
    "DataType": "data_type",
    "MinimumValue": "minimum",
    "ExclusiveMinimum": "exclusive_minimum",
    "MaximumValue": "maximum",
    "ExclusiveMaximum": "exclusive_maximum",
    "RegularExpression": "regular_expression",
    "ValueSet": "value_set",
    "DefaultValue": "default_value",
    "Required": "required",
    "VariableRole": "role",
    "Unit": "unit",
    "UnitType": "unit_type",
    "FileFormat": "file_format",
    "CharacterEncoding": "character_encoding",
    "NetCDFFolders": "file_structure",
    "ExcelSheets": "file_structure",
    "Dimensions": "dimensions",
}

_DECORATOR_FOLD = {key.casefold(): key for key in DECORATOR_KEYS}

#: Type-hint spelling -> data type kind.
HINT_TABLE = {
    "int": "integer",
    "float": "number",
    "str": "string",
    "bool": "boolean",
    "list": "array",
    "dict": "object",
}


@dataclass(frozen=True)
class SourceUnit:
    """One annotated source file: path, decoded text, dialect tag."""

    path: str
    text: str
    dialect: str = "python3"

    @classmethod
    def from_path(cls, path: str | Path) -> tuple["SourceUnit | None", list[Diagnostic]]:
        return source_unit_from_bytes(str(path), Path(path).read_bytes())


def source_unit_from_bytes(
    path: str, data: bytes
) -> tuple[SourceUnit | None, list[Diagnostic]]:
    """Decode raw file content; a unit's text must be UTF-8."""
    try:
        return SourceUnit(path=path, text=data.decode("utf-8")), []
    except UnicodeDecodeError as exc:
        return None, [error("source-syntax", path, f"file is not UTF-8: {exc}")]


@dataclass(frozen=True)
class ParameterNode:
    name: str
    line: int
    hint: str | None = None
    has_default: bool = False
    default_value: Any = None
    literal_default: bool = False


@dataclass(frozen=True)
class FunctionNode:
    name: str
    line: int
    docstring: str | None = None
    parameters: tuple[ParameterNode, ...] = ()
    return_hint: str | None = None
    metadata: dict[str, Any] = field(default_factory=dict)
    member_metadata: dict[str, dict[str, Any]] = field(default_factory=dict)


@dataclass(frozen=True)
class AttributeNode:
    name: str
    line: int
    hint: str | None = None
    has_default: bool = False
    default_value: Any = None
    literal_default: bool = False


@dataclass(frozen=True)
class ClassNode:
    name: str
    line: int
    docstring: str | None = None
    attributes: tuple[AttributeNode, ...] = ()
    methods: tuple[FunctionNode, ...] = ()
    metadata: dict[str, Any] = field(default_factory=dict)
    member_metadata: dict[str, dict[str, Any]] = field(default_factory=dict)


@dataclass(frozen=True)
class AnnotatedInterfaceTree:
    """Declarations recognized in one source unit."""

    unit_path: str
    classes: tuple[ClassNode, ...] = ()
    functions: tuple[FunctionNode, ...] = ()


def parse_source(unit: SourceUnit) -> tuple[AnnotatedInterfaceTree, list[Diagnostic]]:
    """Parse one unit into a declaration tree; never raises on bad input."""
    diags: list[Diagnostic] = []
    try:
        module = ast.parse(unit.text)
    except Exception as exc:  # SyntaxError, ValueError on NUL bytes, ...
        diags.append(
            error("source-syntax", unit.path, f"source cannot be parsed: {exc}")
        )
        return AnnotatedInterfaceTree(unit_path=unit.path), diags

    classes: list[ClassNode] = []
    functions: list[FunctionNode] = []
    _collect_scope(module.body, unit.path, classes, functions, diags, top_level=True)
    return (
        AnnotatedInterfaceTree(
            unit_path=unit.path, classes=tuple(classes), functions=tuple(functions)
        ),
        order_diagnostics(diags),
    )


def _collect_scope(
    body: list[ast.stmt],
    path: str,
    classes: list[ClassNode],
    functions: list[FunctionNode],
    diags: list[Diagnostic],
    top_level: bool,
) -> None:
    for node in body:
        if isinstance(node, ast.ClassDef):
            classes.append(_parse_class(node, path, classes, diags))
        elif isinstance(node, (ast.FunctionDef, ast.AsyncFunctionDef)):
            functions.append(_parse_function(node, path, diags, method=False))
        elif isinstance(node, (ast.Import, ast.ImportFrom, ast.Pass)):
            continue
        elif isinstance(node, ast.Expr) and isinstance(node.value, ast.Constant):
            continue  # module docstring or stray literal
        elif isinstance(node, (ast.Assign, ast.AnnAssign)):
            continue  # module-level constants are not interface metadata
        else:
            diags.append(
                info_note(
                    "unsupported-construct",
                    path,
                    f"line {node.lineno}: {type(node).__name__} is outside the "
                    "declaration subset and was skipped",
                )
            )


def _parse_class(
    node: ast.ClassDef,
    path: str,
    classes: list[ClassNode],
    diags: list[Diagnostic],
) -> ClassNode:
    metadata, member_metadata = _parse_decorators(node, path, diags)
    attributes: list[AttributeNode] = []
    methods: list[FunctionNode] = []
    for stmt in node.body:
        if isinstance(stmt, ast.AnnAssign) and isinstance(stmt.target, ast.Name):
            attributes.append(_parse_attribute(stmt.target.id, stmt, stmt.value, path))
        elif isinstance(stmt, ast.Assign):
            if len(stmt.targets) == 1 and isinstance(stmt.targets[0], ast.Name):
                attributes.append(
                    _parse_attribute(stmt.targets[0].id, stmt, stmt.value, path)
                )
            else:
                diags.append(
                    info_note(
                        "unsupported-construct",
                        path,
                        f"line {stmt.lineno}: multi-target assignment skipped",
                    )
                )
        elif isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef)):
            methods.append(_parse_function(stmt, path, diags, method=True))
        elif isinstance(stmt, ast.ClassDef):
            classes.append(_parse_class(stmt, path, classes, diags))
        elif isinstance(stmt, ast.Expr) and isinstance(stmt.value, ast.Constant):
            continue  # docstring
        elif isinstance(stmt, ast.Pass):
            continue
        else:
            diags.append(
                info_note(
                    "unsupported-construct",
                    path,
                    f"line {stmt.lineno}: {type(stmt).__name__} in class "
                    f"{node.name} skipped",
                )
            )
    return ClassNode(
        name=node.name,
        line=node.lineno,
        docstring=ast.get_docstring(node),
        attributes=tuple(attributes),
        methods=tuple(methods),
        metadata=metadata,
        member_metadata=member_metadata,
    )


def _parse_attribute(
    name: str, stmt: ast.stmt, value: ast.expr | None, path: str
) -> AttributeNode:
    hint = None
    if isinstance(stmt, ast.AnnAssign):
        hint = ast.unparse(stmt.annotation)
    has_default = value is not None
    default_value: Any = None
    literal = False
    if value is not None:
        default_value, literal = _literal_value(value)
    return AttributeNode(
        name=name,
        line=stmt.lineno,
        hint=hint,
        has_default=has_default,
        default_value=default_value,
        literal_default=literal,
    )


def _parse_function(
    node: ast.FunctionDef | ast.AsyncFunctionDef,
    path: str,
    diags: list[Diagnostic],
    method: bool,
) -> FunctionNode:
    metadata, member_metadata = _parse_decorators(node, path, diags)
    args = node.args
    positional = list(args.posonlyargs) + list(args.args)
    defaults: list[ast.expr | None] = [None] * (
        len(positional) - len(args.defaults)
    ) + list(args.defaults)
    parameters: list[ParameterNode] = []
    skip_first = method and positional and positional[0].arg in ("self", "cls")
    for i, arg in enumerate(positional):
        if i == 0 and skip_first:
            continue
        parameters.append(_parse_parameter(arg, defaults[i]))
    for arg, default in zip(args.kwonlyargs, args.kw_defaults):
        parameters.append(_parse_parameter(arg, default))
    return FunctionNode(
        name=node.name,
        line=node.lineno,
        docstring=ast.get_docstring(node),
        parameters=tuple(parameters),
        return_hint=ast.unparse(node.returns) if node.returns is not None else None,
        metadata=metadata,
        member_metadata=member_metadata,
    )


def _parse_parameter(arg: ast.arg, default: ast.expr | None) -> ParameterNode:
    default_value: Any = None
    literal = False
    if default is not None:
        default_value, literal = _literal_value(default)
    return ParameterNode(
        name=arg.arg,
        line=arg.lineno,
        hint=ast.unparse(arg.annotation) if arg.annotation is not None else None,
        has_default=default is not None,
        default_value=default_value,
        literal_default=literal,
    )


def _literal_value(node: ast.expr) -> tuple[Any, bool]:
    """Evaluate a default expression; only literal defaults are recorded."""
    try:
        value = ast.literal_eval(node)
    except (ValueError, SyntaxError, TypeError):
        return None, False
    if value is None or isinstance(value, (str, int, float, bool)):
        return value, True
    if isinstance(value, (list, tuple)) and all(
        isinstance(v, (str, int, float, bool)) for v in value
    ):
        return list(value), True
    return None, False


def _parse_decorators(
    node: ast.ClassDef | ast.FunctionDef | ast.AsyncFunctionDef,
    path: str,
    diags: list[Diagnostic],
) -> tuple[dict[str, Any], dict[str, dict[str, Any]]]:
    metadata: dict[str, Any] = {}
    member_metadata: dict[str, dict[str, Any]] = {}
    for decorator in node.decorator_list:
        if not isinstance(decorator, ast.Call):
            continue
        target = decorator.func
        name = target.id if isinstance(target, ast.Name) else (
            target.attr if isinstance(target, ast.Attribute) else None
        )
        if name != DECORATOR_NAME:
            continue
        for keyword in decorator.keywords:
            if keyword.arg is None:
                diags.append(
                    info_note(
                        "decorator-invalid",
                        path,
                        f"line {decorator.lineno}: ** arguments are not supported",
                    )
                )
                continue
            try:
                value = ast.literal_eval(keyword.value)
            except Exception:
                diags.append(
                    info_note(
                        "decorator-invalid",
                        path,
                        f"line {decorator.lineno}: value of {keyword.arg} is "
                        "not a literal and was skipped",
                    )
                )
                continue
            canonical = _DECORATOR_FOLD.get(keyword.arg.casefold())
            if canonical is not None:
                metadata[canonical] = value
            elif isinstance(value, dict):
                member_metadata[keyword.arg] = {str(k): v for k, v in value.items()}
            else:
                diags.append(
                    info_note(
                        "decorator-invalid",
                        path,
                        f"line {decorator.lineno}: {keyword.arg} is neither a "
                        "schema key nor a member mapping",
                    )
                )
    return metadata, member_metadata


# ---------------------------------------------------------------------------
# Mapping trees onto documents


def map_type_hint(hint: str, declared: Iterable[str] = ()) -> DataType:
    """Map a type-hint spelling onto a data type.

    Parameterized spellings map by their base name; names of declared
    classes become references; anything else stays opaque under its
    original spelling.
    """
    text = hint.strip()
    base = text.split("[", 1)[0].strip()
    base = base.rsplit(".", 1)[-1]  # typing.List -> List
    kind = HINT_TABLE.get(base)
    if kind is None and base in ("List", "Dict"):
        kind = HINT_TABLE[base.lower()]
    if kind is not None:
        return DataType(kind)
    if base in set(declared):
        return DataType.class_reference(base)
    return DataType.opaque(text)


def extract_interface(
    trees: AnnotatedInterfaceTree | Iterable[AnnotatedInterfaceTree],
    info: SoftwareInfo,
) -> tuple[DataDescDocument, list[Diagnostic]]:
    """Build a document from declaration trees and an externally supplied info.

    Raises `DuplicateClassError` when two classes share a name across units.
    """
    if isinstance(trees, AnnotatedInterfaceTree):
        trees = [trees]
    trees = list(trees)
    diags: list[Diagnostic] = []

    declared: list[str] = []
    for tree in trees:
        for cls in tree.classes:
            if cls.name in declared:
                raise DuplicateClassError(
                    f"class {cls.name!r} is declared more than once"
                )
            declared.append(cls.name)

    components: dict[str, ClassDescription] = {}
    for tree in trees:
        for cls in tree.classes:
            components[cls.name] = _class_to_description(cls, declared, diags)
        if tree.functions:
            container = _container_name(tree.unit_path, declared + list(components))
            functions = {
                fn.name: _function_to_description(fn, declared, f"components/{container}", diags)
                for fn in tree.functions
            }
            components[container] = ClassDescription(name=container, functions=functions)

    document = DataDescDocument(info=info, components=components)
    return document, order_diagnostics(diags)


def _container_name(unit_path: str, taken: Iterable[str]) -> str:
    stem = Path(unit_path).stem if unit_path else ""
    name = stem if stem.isidentifier() else "module"
    taken = set(taken)
    candidate = name
    suffix = 2
    while candidate in taken:
        candidate = f"{name}{suffix}"
        suffix += 1
    return candidate


def _class_to_description(
    cls: ClassNode, declared: list[str], diags: list[Diagnostic]
) -> ClassDescription:
    path = f"components/{cls.name}"
    properties: dict[str, VariableDescription] = {}
    for attribute in cls.attributes:
        variable = _variable_from_declaration(
            name=attribute.name,
            hint=attribute.hint,
            has_default=attribute.has_default,
            default_value=attribute.default_value,
            literal_default=attribute.literal_default,
            role="internal",
            declared=declared,
            path=f"{path}/properties/{attribute.name}",
            diags=diags,
        )
        metadata = cls.member_metadata.get(attribute.name)
        if metadata:
            variable = _apply_variable_metadata(
                variable, metadata, f"{path}/properties/{attribute.name}", diags
            )
        properties[attribute.name] = variable

    functions = {
        method.name: _function_to_description(method, declared, path, diags)
        for method in cls.methods
    }

    description = _first_line(cls.docstring)
    uri = None
    is_part_of_interface = False
    meta = dict(cls.metadata)
    if "Description" in meta:
        description = str(meta.pop("Description"))
    if "URI" in meta:
        uri = str(meta.pop("URI"))
    if "IsPartOfInterface" in meta:
        is_part_of_interface = bool(meta.pop("IsPartOfInterface"))
    for key in meta:
        diags.append(
            info_note(
                "decorator-invalid", path, f"{key} is not applicable to a class"
            )
        )
    return ClassDescription(
        name=cls.name,
        description=description,
        uri=uri,
        is_part_of_interface=is_part_of_interface,
        properties=properties,
        functions=functions,
    )


def _function_to_description(
    fn: FunctionNode, declared: list[str], class_path: str, diags: list[Diagnostic]
) -> FunctionDescription:
    path = f"{class_path}/functions/{fn.name}"
    parameters: dict[str, VariableDescription] = {}
    for parameter in fn.parameters:
        variable = _variable_from_declaration(
            name=parameter.name,
            hint=parameter.hint,
            has_default=parameter.has_default,
            default_value=parameter.default_value,
            literal_default=parameter.literal_default,
            role="input",
            declared=declared,
            path=f"{path}/parameters/{parameter.name}",
            diags=diags,
        )
        metadata = fn.member_metadata.get(parameter.name)
        if metadata:
            variable = _apply_variable_metadata(
                variable, metadata, f"{path}/parameters/{parameter.name}", diags
            )
        parameters[parameter.name] = variable
    for member in fn.member_metadata:
        if member not in parameters:
            diags.append(
                info_note(
                    "decorator-invalid",
                    path,
                    f"metadata names unknown parameter {member!r}",
                )
            )

    return_description: VariableDescription | ReferencePath | None = None
    if fn.return_hint is not None and fn.return_hint != "None":
        return_type = map_type_hint(fn.return_hint, declared)
        if return_type.kind == "class_reference":
            return_description = return_type.reference
        else:
            if return_type.kind == "opaque":
                diags.append(
                    warning(
                        "opaque-type",
                        f"{path}/return",
                        f"return hint {fn.return_hint!r} is not in the mapping "
                        "table and stays opaque",
                    )
                )
            return_description = VariableDescription(
                name="return", data_type=return_type, role="output"
            )

    description = _first_line(fn.docstring)
    is_part_of_interface = False
    meta = dict(fn.metadata)
    if "Description" in meta:
        description = str(meta.pop("Description"))
    if "IsPartOfInterface" in meta:
        is_part_of_interface = bool(meta.pop("IsPartOfInterface"))
    for key in meta:
        diags.append(
            info_note(
                "decorator-invalid", path, f"{key} is not applicable to a function"
            )
        )
    return FunctionDescription(
        name=fn.name,
        description=description,
        is_part_of_interface=is_part_of_interface,
        parameters=parameters,
        return_description=return_description,
    )


def _variable_from_declaration(
    name: str,
    hint: str | None,
    has_default: bool,
    default_value: Any,
    literal_default: bool,
    role: str,
    declared: list[str],
    path: str,
    diags: list[Diagnostic],
) -> VariableDescription:
    data_type: DataType | None = None
    if hint is not None:
        data_type = map_type_hint(hint, declared)
        if data_type.kind == "opaque":
            diags.append(
                warning(
                    "opaque-type",
                    path,
                    f"type hint {hint!r} is not in the mapping table and stays opaque",
                )
            )
    required = not has_default
    default: Any = None
    if has_default:
        if literal_default:
            default = (
                tuple(default_value)
                if isinstance(default_value, (list, tuple))
                else default_value
            )
        else:
            diags.append(
                warning(
                    "dynamic-default",
                    path,
                    f"default of {name!r} is not a literal and was not recorded",
                )
            )
    return VariableDescription(
        name=name,
        data_type=data_type,
        required=required,
        default_value=default,
        role=role,  # type: ignore[arg-type]
    )


def _apply_variable_metadata(
    variable: VariableDescription,
    metadata: dict[str, Any],
    path: str,
    diags: list[Diagnostic],
) -> VariableDescription:
    """Fold decorator metadata into a variable; metadata wins on conflict."""
    updates: dict[str, Any] = {}
    for raw_key, value in metadata.items():
        canonical = _DECORATOR_FOLD.get(raw_key.casefold())
        if canonical is None:
            diags.append(
                info_note(
                    "decorator-invalid", path, f"unknown metadata key {raw_key!r}"
                )
            )
            continue
        field_name = DECORATOR_KEYS[canonical]
        if field_name == "uri":
            field_name = "concept_uri"
        if field_name == "is_part_of_interface":
            diags.append(
                info_note(
                    "decorator-invalid", path, f"{canonical} is not applicable here"
                )
            )
            continue
        if field_name == "data_type":
            new_type = exchange.map_wire_type(value)
            if variable.data_type is not None and variable.data_type != new_type:
                diags.append(
                    warning(
                        "decorator-override",
                        path,
                        f"metadata type {value!r} overrides the hint-derived type",
                    )
                )
            updates["data_type"] = new_type
        elif field_name == "dimensions":
            if isinstance(value, dict):
                updates["dimensions"] = {
                    str(dim_name): exchange.parse_dimension(
                        str(dim_name), dim_raw, f"{path}/dimensions/{dim_name}", diags
                    )
                    for dim_name, dim_raw in value.items()
                }
            else:
                diags.append(
                    info_note("decorator-invalid", path, "Dimensions must be a mapping")
                )
        elif field_name == "unit":
            if isinstance(value, dict):
                folded = {str(k).casefold(): v for k, v in value.items()}
                updates["unit"] = UnitSpec(
                    name=folded.get("name"),
                    description=folded.get("description"),
                    uri=folded.get("uri"),
                    unit_type=(variable.unit.unit_type if variable.unit else None),
                )
            else:
                updates["unit"] = UnitSpec(
                    name=str(value),
                    unit_type=(variable.unit.unit_type if variable.unit else None),
                )
        elif field_name == "unit_type":
            base = updates.get("unit", variable.unit) or UnitSpec()
            updates["unit"] = replace(base, unit_type=str(value))
        elif field_name == "value_set":
            if isinstance(value, (list, tuple)):
                updates["value_set"] = tuple(value)
            else:
                diags.append(
                    info_note("decorator-invalid", path, "ValueSet must be a list")
                )
        elif field_name == "default_value":
            new_default = tuple(value) if isinstance(value, (list, tuple)) else value
            if variable.default_value is not None and variable.default_value != new_default:
                diags.append(
                    warning(
                        "decorator-override",
                        path,
                        "metadata default overrides the declaration default",
                    )
                )
            updates["default_value"] = new_default
        elif field_name == "required":
            new_required = bool(value)
            if new_required != variable.required:
                diags.append(
                    warning(
                        "decorator-override",
                        path,
                        "metadata requiredness overrides the declaration-derived flag",
                    )
                )
            updates["required"] = new_required
        elif field_name == "file_structure":
            structure = dict(variable.file_structure)
            structure["x-" + canonical] = value
            updates["file_structure"] = structure
        elif field_name == "role":
            if value in ("input", "output", "internal"):
                updates["role"] = value
            else:
                diags.append(
                    info_note("decorator-invalid", path, f"unknown role {value!r}")
                )
        elif field_name in ("minimum", "maximum"):
            if isinstance(value, (int, float)) and not isinstance(value, bool):
                updates[field_name] = value
            else:
                diags.append(
                    info_note("decorator-invalid", path, f"{canonical} must be a number")
                )
        elif field_name in ("exclusive_minimum", "exclusive_maximum"):
            updates[field_name] = bool(value)
        else:  # description, concept_uri, regular_expression, file_format, encoding
            updates[field_name] = str(value)
    return replace(variable, **updates)


def _first_line(docstring: str | None) -> str | None:
    if not docstring:
        return None
    return docstring.strip().splitlines()[0].strip()


def extract_from_paths(
    paths: Iterable[str | Path], info: SoftwareInfo
) -> tuple[DataDescDocument | None, list[Diagnostic]]:
    """Convenience pipeline: read, parse and extract a set of source files."""
    trees: list[AnnotatedInterfaceTree] = []
    diags: list[Diagnostic] = []
    for path in paths:
        unit, unit_diags = SourceUnit.from_path(path)
        diags.extend(unit_diags)
        if unit is None:
            continue
        tree, parse_diags = parse_source(unit)
        diags.extend(parse_diags)
        trees.append(tree)
    document, extract_diags = extract_interface(trees, info)
    diags.extend(extract_diags)
    return document, order_diagnostics(diags)


__all__ = [
    "DECORATOR_NAME",
    "DECORATOR_KEYS",
    "HINT_TABLE",
    "SourceUnit",
    "source_unit_from_bytes",
    "ParameterNode",
    "FunctionNode",
    "AttributeNode",
    "ClassNode",
    "AnnotatedInterfaceTree",
    "parse_source",
    "map_type_hint",
    "extract_interface",
    "extract_from_paths",
]
