import pathlib

import pytest

from datadesc import parse_document

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


def read_fixture(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def fine_text() -> str:
    return read_fixture("fine_interface.yaml")


@pytest.fixture()
def fine_document(fine_text):
    document, diagnostics = parse_document(fine_text)
    assert document is not None
    assert not any(d.severity == "error" for d in diagnostics)
    return document


@pytest.fixture()
def info_half_document():
    document, _ = parse_document(read_fixture("fine_info_half.yaml"))
    assert document is not None
    return document


@pytest.fixture()
def components_half_document():
    document, _ = parse_document(read_fixture("fine_components_half.yaml"))
    assert document is not None
    return document


def pytest_runtest_logreport(report):
    # one pass/fail line per acceptance criterion
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        outcome = "PASS" if report.passed else "SKIP" if report.skipped else "FAIL"
        print(f"\nACCEPTANCE {name}: {outcome}")
