import json
import pathlib
import shutil

import pytest

from datadesc import parse_document
from datadesc.cli import main

FIXTURES = pathlib.Path(__file__).parent / "fixtures"


@pytest.fixture()
def workdir(tmp_path):
    for name in (
        "fine_interface.yaml",
        "fine_info_half.yaml",
        "fine_components_half.yaml",
        "fine_source.py",
    ):
        shutil.copy(FIXTURES / name, tmp_path / name)
    return tmp_path


def test_extract_command(workdir, capsys):
    out = workdir / "extracted.yaml"
    code = main(
        [
            "extract",
            str(workdir / "fine_source.py"),
            "--info",
            str(workdir / "fine_info_half.yaml"),
            "--out",
            str(out),
        ]
    )
    assert code == 0
    document, diagnostics = parse_document(out.read_bytes())
    assert document is not None
    assert not any(d.severity == "error" for d in diagnostics)
    assert "EnergySystemModel" in document.components


def test_merge_command_reproduces_fixture(workdir, fine_document):
    out = workdir / "merged.yaml"
    code = main(
        [
            "merge",
            str(workdir / "fine_info_half.yaml"),
            str(workdir / "fine_components_half.yaml"),
            "--out",
            str(out),
        ]
    )
    assert code == 0
    merged, _ = parse_document(out.read_bytes())
    assert merged == fine_document


def test_merge_conflict_exit_code(workdir, capsys):
    conflicting = workdir / "other.yaml"
    text = (workdir / "fine_info_half.yaml").read_text().replace("2.2.2", "2.2.3")
    conflicting.write_text(text)
    code = main(
        [
            "merge",
            str(workdir / "fine_info_half.yaml"),
            str(conflicting),
            "--out",
            str(workdir / "merged.yaml"),
        ]
    )
    assert code == 1
    captured = capsys.readouterr()
    assert "merge-conflict" in captured.err
    # precedence policy resolves it
    code = main(
        [
            "merge",
            str(workdir / "fine_info_half.yaml"),
            str(conflicting),
            "--on-conflict",
            "last",
            "--out",
            str(workdir / "merged.yaml"),
        ]
    )
    assert code == 0
    merged, _ = parse_document((workdir / "merged.yaml").read_bytes())
    assert merged.info.version == "2.2.3"


def test_validate_data_exit_codes_and_format(workdir, capsys):
    values = workdir / "values.json"
    values.write_text(json.dumps(8760))
    code = main(
        [
            "validate-data",
            str(workdir / "fine_interface.yaml"),
            "--target",
            "EnergySystemModel.numberOfTimeSteps",
            "--data",
            str(values),
        ]
    )
    assert code == 0

    values.write_text(json.dumps(0))
    code = main(
        [
            "validate-data",
            str(workdir / "fine_interface.yaml"),
            "--target",
            "EnergySystemModel.numberOfTimeSteps",
            "--data",
            str(values),
        ]
    )
    assert code == 1
    captured = capsys.readouterr()
    line = [l for l in captured.out.splitlines() if l.startswith("error")][0]
    severity, code_word, path, *message = line.split(" ")
    assert severity == "error"
    assert code_word == "exclusive-bound"
    assert message


def test_validate_function_call_record(workdir):
    values = workdir / "call.yaml"
    values.write_text("clusterMethod: averaging\n")
    code = main(
        [
            "validate-data",
            str(workdir / "fine_interface.yaml"),
            "--target",
            "EnergySystemModel.aggregateTemporally",
            "--data",
            str(values),
        ]
    )
    assert code == 0
    values.write_text("clusterMethod: median\n")
    code = main(
        [
            "validate-data",
            str(workdir / "fine_interface.yaml"),
            "--target",
            "EnergySystemModel.aggregateTemporally",
            "--data",
            str(values),
        ]
    )
    assert code == 1


def test_validate_class_record_with_defaults(workdir):
    values = workdir / "record.json"
    values.write_text("{}")
    args = [
        "validate-data",
        str(workdir / "fine_interface.yaml"),
        "--target",
        "EnergySystemModel",
        "--data",
        str(values),
    ]
    assert main(args) == 1  # numberOfTimeSteps is required
    assert main([*args, "--use-defaults"]) == 0  # its default satisfies it


def test_validate_unknown_target(workdir, capsys):
    values = workdir / "values.json"
    values.write_text("1")
    code = main(
        [
            "validate-data",
            str(workdir / "fine_interface.yaml"),
            "--target",
            "Nope",
            "--data",
            str(values),
        ]
    )
    assert code == 2
    assert "unknown-target" in capsys.readouterr().err


@pytest.mark.parametrize(
    "target,expected",
    [
        ("docs-md", "index.md"),
        ("docs-html", "index.html"),
        ("codemeta", "codemeta.json"),
        ("package", "pyproject.toml"),
        ("registry", "registry.json"),
    ],
)
def test_export_targets(workdir, target, expected):
    out = workdir / "out" / target
    code = main(
        [
            "export",
            str(workdir / "fine_interface.yaml"),
            "--target",
            target,
            "--out",
            str(out),
        ]
    )
    assert code == 0
    assert (out / expected).is_file()


def test_check_command(workdir, capsys):
    code = main(["check", str(workdir / "fine_interface.yaml")])
    assert code == 0
    out = capsys.readouterr().out
    assert "required-with-default" in out
    assert out.strip().endswith("ok")

    broken = workdir / "broken.yaml"
    broken.write_text("openapi: 3.0.0\ninfo: {title: '', version: ''}\n")
    assert main(["check", str(broken)]) == 1


def test_entry_point_is_installed():
    import shutil as _shutil

    assert _shutil.which("datadesc") is not None
