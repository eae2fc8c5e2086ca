import dataclasses

import pytest

from datadesc import (
    DataType,
    MalformedReferenceError,
    ReferencePath,
    SoftwareInfo,
    UnresolvedReferenceError,
    VariableDescription,
    resolve,
)
from datadesc.model import is_iso_date, node_at, scalar_equal


def test_resolve_fixture_component(fine_document):
    cls = resolve(fine_document, "#/components/schemas/Component")
    assert cls.name == "Component"
    assert cls is fine_document.components["Component"]


def test_resolve_missing_class(fine_document):
    with pytest.raises(UnresolvedReferenceError):
        resolve(fine_document, "#/components/schemas/Nope")


def test_resolve_malformed_path(fine_document):
    with pytest.raises(MalformedReferenceError):
        resolve(fine_document, "Component")


@pytest.mark.parametrize(
    "path,wellformed",
    [
        ("#/components/schemas/Component", True),
        ("#/components/schemas/A.B-c_2", True),
        ("#/components/Component", False),
        ("components/schemas/Component", False),
        ("#/components/schemas/", False),
        ("#/components/schemas/a/b", False),
    ],
)
def test_reference_wellformedness(path, wellformed):
    assert ReferencePath(path).is_wellformed is wellformed


def test_reference_target_name():
    assert ReferencePath("#/components/schemas/Component").target_name == "Component"


def test_data_type_constructors():
    ref = DataType.class_reference("Component")
    assert ref.kind == "class_reference"
    assert ref.reference.path == "#/components/schemas/Component"
    opaque = DataType.opaque("DataFrame")
    assert opaque.text == "DataFrame"
    with pytest.raises(ValueError):
        DataType("not-a-kind")
    with pytest.raises(ValueError):
        DataType("class_reference")  # reference missing


def test_scalar_equality_rules():
    assert scalar_equal(0, 0.0)
    assert scalar_equal(8760, 8760.0)
    assert not scalar_equal(True, 1)
    assert not scalar_equal(False, 0)
    assert scalar_equal(True, True)
    assert not scalar_equal("1", 1)
    assert scalar_equal("a", "a")


def test_model_is_frozen(fine_document):
    with pytest.raises(dataclasses.FrozenInstanceError):
        fine_document.info.title = "other"
    variable = VariableDescription(name="x")
    with pytest.raises(dataclasses.FrozenInstanceError):
        variable.minimum = 1


def test_info_defaults():
    info = SoftwareInfo(title="t", version="1")
    assert info.authors == ()
    assert info.keywords == ()
    assert info.unknown_extensions == {}


def test_node_at_addresses_fixture_nodes(fine_document):
    esm = fine_document.components["EnergySystemModel"]
    assert node_at(fine_document, "") is fine_document
    assert node_at(fine_document, "info") is fine_document.info
    assert node_at(fine_document, "components/EnergySystemModel") is esm
    steps = node_at(
        fine_document, "components/EnergySystemModel/properties/numberOfTimeSteps"
    )
    assert steps is esm.properties["numberOfTimeSteps"]
    cluster = node_at(
        fine_document,
        "components/EnergySystemModel/functions/aggregateTemporally/parameters/clusterMethod",
    )
    assert cluster.value_set == ("averaging", "k_means")
    dim = node_at(
        fine_document, "components/Component/properties/capacityMax/dimensions/location"
    )
    assert dim.unit_type == "spatial identifier"
    assert node_at(fine_document, "components/Missing") is None


@pytest.mark.parametrize(
    "text,ok",
    [
        ("2018-11-12", True),
        ("2018-13-12", False),
        ("2018-11-123", False),
        ("12.11.2018", False),
        ("2018-02-30", False),
    ],
)
def test_iso_date_check(text, ok):
    assert is_iso_date(text) is ok
