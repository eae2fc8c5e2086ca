"""Producer/consumer compatibility of variable descriptions.

Foundation for composing tools into workflows: a producer output can feed a
consumer input when its type matches, its value range and value set fit
inside the consumer's, its unit agrees, and its dimensions line up.  The
report enumerates every failed clause rather than stopping at the first.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import (
    DataDescDocument,
    Diagnostic,
    DimensionDescription,
    UnitSpec,
    VariableDescription,
    error,
    info_note,
    resolve,
    scalar_equal,
)


@dataclass(frozen=True)
class CompatibilityReport:
    compatible: bool
    reasons: tuple[Diagnostic, ...] = ()


def check_compatibility(
    producer: VariableDescription,
    consumer: VariableDescription,
    *,
    producer_document: DataDescDocument | None = None,
    consumer_document: DataDescDocument | None = None,
) -> CompatibilityReport:
    """Decide whether values produced under `producer` fit `consumer`.

    Both descriptions are assumed to pass their own invariants.  Class
    references are compared structurally when the owning documents are
    given, else by target name.
    """
    reasons: list[Diagnostic] = []
    _check_types(producer, consumer, producer_document, consumer_document, "", reasons)
    _check_range_containment(producer, consumer, "", reasons)
    _check_value_set_containment(producer, consumer, "", reasons)
    _check_units(producer.unit, consumer.unit, "", reasons)
    _check_dimensions(producer, consumer, producer_document, consumer_document, reasons)
    compatible = not any(r.severity == "error" for r in reasons)
    return CompatibilityReport(compatible, tuple(reasons))


def _check_types(
    producer: VariableDescription,
    consumer: VariableDescription,
    producer_document: DataDescDocument | None,
    consumer_document: DataDescDocument | None,
    path: str,
    reasons: list[Diagnostic],
) -> None:
    p, c = producer.data_type, consumer.data_type
    if c is None:
        return  # consumer imposes no type constraint
    if p is None:
        reasons.append(
            error(
                "type-mismatch",
                path,
                f"producer declares no data type but consumer expects {c.kind}",
            )
        )
        return
    if p.kind != c.kind:
        reasons.append(
            error("type-mismatch", path, f"producer type {p.kind} != consumer type {c.kind}")
        )
        return
    if p.kind == "opaque" and p.text != c.text:
        reasons.append(
            error("type-mismatch", path, f"opaque type {p.text!r} != {c.text!r}")
        )
        return
    if p.kind == "class_reference":
        assert p.reference is not None and c.reference is not None
        if producer_document is None or consumer_document is None:
            if p.reference.target_name != c.reference.target_name:
                reasons.append(
                    error(
                        "type-mismatch",
                        path,
                        f"referenced classes differ: {p.reference.target_name} != "
                        f"{c.reference.target_name}",
                    )
                )
            return
        if not _classes_structurally_equal(
            p.reference.target_name,
            c.reference.target_name,
            producer_document,
            consumer_document,
            set(),
            reasons,
        ):
            reasons.append(
                error(
                    "type-mismatch",
                    path,
                    f"class {p.reference.target_name} is not structurally equal "
                    f"to {c.reference.target_name}",
                )
            )


def _classes_structurally_equal(
    producer_name: str,
    consumer_name: str,
    producer_document: DataDescDocument,
    consumer_document: DataDescDocument,
    visited: set[tuple[str, str]],
    reasons: list[Diagnostic],
) -> bool:
    """Structural equality on the type shape: property names, types, dimensions.

    Constraints and prose are ignored.  A revisited class pair ends the walk
    with a cycle note instead of recursing further and is treated as equal,
    so self-referential data models compare reflexively.
    """
    pair = (producer_name, consumer_name)
    if pair in visited:
        reasons.append(
            info_note(
                "reference-cycle",
                "",
                f"reference expansion revisited {producer_name}/{consumer_name}; "
                "assuming equality for the repeated pair",
            )
        )
        return True
    visited = visited | {pair}
    try:
        producer_cls = resolve(producer_document, f"#/components/schemas/{producer_name}")
        consumer_cls = resolve(consumer_document, f"#/components/schemas/{consumer_name}")
    except Exception:
        return False
    if set(producer_cls.properties) != set(consumer_cls.properties):
        return False
    for name, p_prop in producer_cls.properties.items():
        c_prop = consumer_cls.properties[name]
        if not _shapes_equal(
            p_prop, c_prop, producer_document, consumer_document, visited, reasons
        ):
            return False
    return True


def _shapes_equal(
    producer: VariableDescription,
    consumer: VariableDescription,
    producer_document: DataDescDocument,
    consumer_document: DataDescDocument,
    visited: set[tuple[str, str]],
    reasons: list[Diagnostic],
) -> bool:
    p, c = producer.data_type, consumer.data_type
    if (p is None) != (c is None):
        return False
    if p is not None and c is not None:
        if p.kind != c.kind or (p.kind == "opaque" and p.text != c.text):
            return False
        if p.kind == "class_reference":
            assert p.reference is not None and c.reference is not None
            if not _classes_structurally_equal(
                p.reference.target_name,
                c.reference.target_name,
                producer_document,
                consumer_document,
                visited,
                reasons,
            ):
                return False
    if list(producer.dimensions) != list(consumer.dimensions):
        return False
    if set(producer.properties) != set(consumer.properties):
        return False
    for name, p_child in producer.properties.items():
        if not _shapes_equal(
            p_child,
            consumer.properties[name],
            producer_document,
            consumer_document,
            visited,
            reasons,
        ):
            return False
    return True


def _interval(
    minimum: int | float | None,
    exclusive_minimum: bool,
    maximum: int | float | None,
    exclusive_maximum: bool,
    integral: bool,
) -> tuple[float, bool, float, bool]:
    """Normalize bounds for containment comparison.

    For integer-typed pairs the interval collapses to its closed integer
    hull (exclusive or fractional bounds tightened to the nearest attainable
    integer), so containment agrees with integer enumeration.
    """
    import math

    lo: float = float("-inf") if minimum is None else minimum
    lo_excl = exclusive_minimum and minimum is not None
    hi: float = float("inf") if maximum is None else maximum
    hi_excl = exclusive_maximum and maximum is not None
    if integral:
        if minimum is not None:
            if float(lo).is_integer():
                lo = lo + 1 if lo_excl else lo
            else:
                lo = math.ceil(lo)
            lo_excl = False
        if maximum is not None:
            if float(hi).is_integer():
                hi = hi - 1 if hi_excl else hi
            else:
                hi = math.floor(hi)
            hi_excl = False
    return lo, lo_excl, hi, hi_excl


def _check_range_containment(
    producer: VariableDescription,
    consumer: VariableDescription,
    path: str,
    reasons: list[Diagnostic],
) -> None:
    if all(
        b is None
        for b in (producer.minimum, producer.maximum, consumer.minimum, consumer.maximum)
    ):
        return
    integral = (
        producer.data_type is not None
        and consumer.data_type is not None
        and producer.data_type.kind == "integer"
        and consumer.data_type.kind == "integer"
    )
    p_lo, p_lo_x, p_hi, p_hi_x = _interval(
        producer.minimum, producer.exclusive_minimum,
        producer.maximum, producer.exclusive_maximum, integral,
    )
    c_lo, c_lo_x, c_hi, c_hi_x = _interval(
        consumer.minimum, consumer.exclusive_minimum,
        consumer.maximum, consumer.exclusive_maximum, integral,
    )
    lower_ok = p_lo > c_lo or (p_lo == c_lo and (c_lo_x <= p_lo_x))
    upper_ok = p_hi < c_hi or (p_hi == c_hi and (c_hi_x <= p_hi_x))
    if not (lower_ok and upper_ok):
        reasons.append(
            error(
                "range-not-contained",
                path,
                "producer value range is not contained in the consumer range",
            )
        )


def _check_value_set_containment(
    producer: VariableDescription,
    consumer: VariableDescription,
    path: str,
    reasons: list[Diagnostic],
) -> None:
    if consumer.value_set is None:
        return
    if producer.value_set is None:
        reasons.append(
            error(
                "value-set-not-contained",
                path,
                "consumer restricts values to a set but producer declares none",
            )
        )
        return
    missing = [
        entry
        for entry in producer.value_set
        if not any(scalar_equal(entry, allowed) for allowed in consumer.value_set)
    ]
    if missing:
        reasons.append(
            error(
                "value-set-not-contained",
                path,
                f"producer values {missing!r} are outside the consumer value set",
            )
        )


def _check_units(
    producer: UnitSpec | None,
    consumer: UnitSpec | None,
    path: str,
    reasons: list[Diagnostic],
) -> None:
    if producer is None or consumer is None:
        return
    consumer_names_unit = consumer.name is not None or consumer.uri is not None
    if consumer_names_unit and (producer.name is not None or producer.uri is not None):
        if producer.uri is not None and consumer.uri is not None:
            if producer.uri != consumer.uri:
                reasons.append(
                    error("unit-mismatch", path,
                          f"unit URIs differ: {producer.uri} != {consumer.uri}")
                )
            return
        p_name = (producer.name or "").casefold()
        c_name = (consumer.name or "").casefold()
        if p_name != c_name:
            reasons.append(
                error("unit-mismatch", path,
                      f"unit names differ: {producer.name!r} != {consumer.name!r}")
            )
        return
    if not consumer_names_unit and consumer.unit_type is not None:
        p_type = (producer.unit_type or "").casefold()
        if p_type != consumer.unit_type.casefold():
            reasons.append(
                error(
                    "unit-mismatch",
                    path,
                    f"unit types differ: {producer.unit_type!r} != "
                    f"{consumer.unit_type!r}",
                )
            )


def _check_dimensions(
    producer: VariableDescription,
    consumer: VariableDescription,
    producer_document: DataDescDocument | None,
    consumer_document: DataDescDocument | None,
    reasons: list[Diagnostic],
) -> None:
    p_dims = list(producer.dimensions.values())
    c_dims = list(consumer.dimensions.values())
    if not p_dims and not c_dims:
        return
    if len(p_dims) != len(c_dims):
        reasons.append(
            error(
                "dimension-count-mismatch",
                "",
                f"producer declares {len(p_dims)} dimensions, consumer "
                f"{len(c_dims)}",
            )
        )
        return
    for p_dim, c_dim in zip(p_dims, c_dims):
        path = f"dimensions/{c_dim.name}"
        as_producer = _dimension_as_variable(p_dim)
        as_consumer = _dimension_as_variable(c_dim)
        _check_types(
            as_producer, as_consumer, producer_document, consumer_document, path, reasons
        )
        _check_range_containment(as_producer, as_consumer, path, reasons)
        _check_value_set_containment(as_producer, as_consumer, path, reasons)


def _dimension_as_variable(dim: DimensionDescription) -> VariableDescription:
    minimum = dim.item_minimum if isinstance(dim.item_minimum, (int, float)) else None
    maximum = dim.item_maximum if isinstance(dim.item_maximum, (int, float)) else None
    return VariableDescription(
        name=dim.name,
        data_type=dim.index_type,
        minimum=minimum if not isinstance(minimum, bool) else None,
        maximum=maximum if not isinstance(maximum, bool) else None,
        value_set=dim.value_set,
    )


__all__ = ["CompatibilityReport", "check_compatibility"]
