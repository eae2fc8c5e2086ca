from hypothesis import given, assume, settings
from hypothesis import strategies as st

from datadesc import (
    ClassDescription,
    DataDescDocument,
    DataType,
    DimensionDescription,
    INTEGER,
    SoftwareInfo,
    UnitSpec,
    VariableDescription,
    check_compatibility,
)

# ---------------------------------------------------------------------------
# independent oracle: a value is valid under a description iff it passes the
# bound/exclusivity/value-set predicate; producer fits consumer iff every
# integer the producer admits is admitted by the consumer


def valid_int(x: int, d: VariableDescription) -> bool:
    if d.minimum is not None:
        if x < d.minimum or (x == d.minimum and d.exclusive_minimum):
            return False
    if d.maximum is not None:
        if x > d.maximum or (x == d.maximum and d.exclusive_maximum):
            return False
    if d.value_set is not None and x not in d.value_set:
        return False
    return True


def range_oracle(producer, consumer, window=range(-50, 51)) -> bool:
    return all(valid_int(x, consumer) for x in window if valid_int(x, producer))


def int_range(minimum, maximum, excl_min=False, excl_max=False):
    return VariableDescription(
        name="v",
        data_type=INTEGER,
        minimum=minimum,
        maximum=maximum,
        exclusive_minimum=excl_min,
        exclusive_maximum=excl_max,
    )


@st.composite
def integer_ranges(draw):
    lo = draw(st.one_of(st.none(), st.integers(-20, 20)))
    hi = draw(st.one_of(st.none(), st.integers(-20, 20)))
    if lo is not None and hi is not None and lo > hi:
        lo, hi = hi, lo
    excl_lo = draw(st.booleans()) if lo is not None else False
    excl_hi = draw(st.booleans()) if hi is not None else False
    if lo is not None and hi is not None and lo == hi:
        excl_lo = excl_hi = False
    return int_range(lo, hi, excl_lo, excl_hi)


def test_reflexive_on_fixture_variables(fine_document):
    for cls in fine_document.components.values():
        for variable in cls.properties.values():
            report = check_compatibility(
                variable,
                variable,
                producer_document=fine_document,
                consumer_document=fine_document,
            )
            assert report.compatible, report.reasons
        for fn in cls.functions.values():
            for parameter in fn.parameters.values():
                assert check_compatibility(parameter, parameter).compatible


def test_contained_integer_range_is_compatible():
    producer = int_range(10, 20)
    consumer = int_range(0, None, excl_min=True)
    report = check_compatibility(producer, consumer)
    assert report.compatible
    assert range_oracle(producer, consumer, range(-5, 26))


def test_reverse_containment_fails():
    producer = int_range(0, None, excl_min=True)
    consumer = int_range(10, 20)
    report = check_compatibility(producer, consumer)
    assert not report.compatible
    assert [r.code for r in report.reasons] == ["range-not-contained"]
    assert not range_oracle(producer, consumer, range(-5, 26))


def test_value_set_subset_direction():
    producer = VariableDescription(name="v", value_set=("averaging",))
    consumer = VariableDescription(name="v", value_set=("averaging", "k_means"))
    assert check_compatibility(producer, consumer).compatible
    reverse = check_compatibility(consumer, producer)
    assert not reverse.compatible
    assert [r.code for r in reverse.reasons] == ["value-set-not-contained"]


def test_consumer_set_requires_producer_set():
    producer = VariableDescription(name="v")
    consumer = VariableDescription(name="v", value_set=("a",))
    assert not check_compatibility(producer, consumer).compatible


def test_type_mismatch_reason():
    producer = VariableDescription(name="v", data_type=DataType("string"))
    consumer = VariableDescription(name="v", data_type=INTEGER)
    report = check_compatibility(producer, consumer)
    assert not report.compatible
    assert "type-mismatch" in [r.code for r in report.reasons]


def test_untyped_consumer_accepts_any_type():
    producer = VariableDescription(name="v", data_type=INTEGER)
    consumer = VariableDescription(name="v")
    assert check_compatibility(producer, consumer).compatible


def test_all_failed_clauses_are_enumerated():
    producer = VariableDescription(
        name="v",
        data_type=DataType("string"),
        minimum=0,
        maximum=99,
        unit=UnitSpec(name="meter"),
    )
    consumer = VariableDescription(
        name="v",
        data_type=INTEGER,
        minimum=10,
        maximum=20,
        value_set=(10, 11),
        unit=UnitSpec(name="second"),
    )
    report = check_compatibility(producer, consumer)
    assert sorted(r.code for r in report.reasons) == [
        "range-not-contained",
        "type-mismatch",
        "unit-mismatch",
        "value-set-not-contained",
    ]


def test_unit_rules():
    meter = UnitSpec(name="Meter", uri="http://qudt.org/vocab/unit/M")
    metre = UnitSpec(name="meter", uri="http://qudt.org/vocab/unit/M")
    mile = UnitSpec(name="mile", uri="http://qudt.org/vocab/unit/MI")
    v = lambda unit: VariableDescription(name="v", unit=unit)  # noqa: E731
    assert check_compatibility(v(meter), v(metre)).compatible  # URI wins
    assert not check_compatibility(v(meter), v(mile)).compatible
    # names compared case-insensitively when a side lacks a URI
    assert check_compatibility(v(UnitSpec(name="Meter")), v(UnitSpec(name="meter"))).compatible
    # consumer declaring only a unit type matches on unit type
    length_only = UnitSpec(unit_type="length")
    assert check_compatibility(
        v(UnitSpec(name="meter", unit_type="length")), v(length_only)
    ).compatible
    assert not check_compatibility(
        v(UnitSpec(name="second", unit_type="duration")), v(length_only)
    ).compatible
    # unit declared on one side only is not a mismatch
    assert check_compatibility(v(meter), v(None)).compatible
    assert check_compatibility(v(None), v(meter)).compatible


def test_dimension_count_mismatch():
    one = VariableDescription(
        name="v", dimensions={"a": DimensionDescription(name="a")}
    )
    two = VariableDescription(
        name="v",
        dimensions={
            "a": DimensionDescription(name="a"),
            "b": DimensionDescription(name="b"),
        },
    )
    report = check_compatibility(one, two)
    assert not report.compatible
    assert [r.code for r in report.reasons] == ["dimension-count-mismatch"]


def test_dimensions_match_pairwise_by_position():
    producer = VariableDescription(
        name="v",
        dimensions={
            "store": DimensionDescription(name="store", value_set=("Berlin",)),
            "year": DimensionDescription(name="year", item_minimum=2015, item_maximum=2020),
        },
    )
    consumer = VariableDescription(
        name="v",
        dimensions={
            "store": DimensionDescription(
                name="store", value_set=("Berlin", "London", "Paris")
            ),
            "year": DimensionDescription(name="year", item_minimum=2010, item_maximum=2030),
        },
    )
    assert check_compatibility(producer, consumer).compatible
    tightened = check_compatibility(consumer, producer)
    assert not tightened.compatible
    paths = {r.path for r in tightened.reasons}
    assert paths == {"dimensions/store", "dimensions/year"}


def _one_class_document(cls_name, properties):
    cls = ClassDescription(name=cls_name, properties=properties)
    return DataDescDocument(
        info=SoftwareInfo(title="t", version="1"), components={cls_name: cls}
    )


def test_class_reference_structural_equality():
    left = _one_class_document("Point", {
        "x": VariableDescription(name="x", data_type=INTEGER),
        "y": VariableDescription(name="y", data_type=INTEGER),
    })
    right = _one_class_document("Point", {
        "x": VariableDescription(name="x", data_type=INTEGER),
        "y": VariableDescription(name="y", data_type=INTEGER),
    })
    producer = VariableDescription(name="v", data_type=DataType.class_reference("Point"))
    consumer = VariableDescription(name="v", data_type=DataType.class_reference("Point"))
    report = check_compatibility(
        producer, consumer, producer_document=left, consumer_document=right
    )
    assert report.compatible

    differing = _one_class_document("Point", {
        "x": VariableDescription(name="x", data_type=INTEGER),
    })
    report = check_compatibility(
        producer, consumer, producer_document=left, consumer_document=differing
    )
    assert not report.compatible


def test_reference_cycle_terminates_and_is_reported():
    # self-referential data model: Node.next -> Node
    node = ClassDescription(
        name="Node",
        properties={
            "next": VariableDescription(
                name="next", data_type=DataType.class_reference("Node")
            )
        },
    )
    document = DataDescDocument(
        info=SoftwareInfo(title="t", version="1"), components={"Node": node}
    )
    variable = node.properties["next"]
    report = check_compatibility(
        variable, variable, producer_document=document, consumer_document=document
    )
    assert report.compatible  # reflexivity even on cyclic models
    assert "reference-cycle" in [r.code for r in report.reasons]


@given(d=integer_ranges())
@settings(max_examples=200)
def test_reflexivity_property(d):
    assert check_compatibility(d, d).compatible


@given(producer=integer_ranges(), consumer=integer_ranges())
@settings(max_examples=400)
def test_agreement_with_enumeration_oracle(producer, consumer):
    report = check_compatibility(producer, consumer)
    assert report.compatible == range_oracle(producer, consumer)


@given(a=integer_ranges(), b=integer_ranges(), c=integer_ranges())
@settings(max_examples=400)
def test_containment_transitivity(a, b, c):
    assume(check_compatibility(a, b).compatible)
    assume(check_compatibility(b, c).compatible)
    assert check_compatibility(a, c).compatible
