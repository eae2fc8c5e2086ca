"""Merging of documents into one complete description.

The merge is a deep union over the canonical serialized tree: mappings
union by key, equal scalar leaves collapse, list leaves (value sets,
required lists) union in first-occurrence order, and unequal scalar leaves
at the same path are conflicts handled per policy.  Conflict paths use the
exchange-file addressing (for example ``info/version``).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass
from functools import reduce
from typing import Any, Iterable, Literal

from .checks import check_document
from .exchange import document_from_raw, document_to_raw
from .model import (
    DataDescDocument,
    Diagnostic,
    InvalidDocumentError,
    order_diagnostics,
    scalar_equal,
)

OnConflict = Literal["error", "prefer_first", "prefer_last"]


@dataclass(frozen=True)
class MergePolicy:
    """What to do when two inputs disagree on a scalar leaf."""

    on_scalar_conflict: OnConflict = "error"


@dataclass(frozen=True)
class MergeReport:
    """Merge outcome; ``merged`` is absent when the error policy fired."""

    merged: DataDescDocument | None
    conflicts: tuple[Diagnostic, ...] = ()

    @property
    def ok(self) -> bool:
        return self.merged is not None and not any(
            c.severity == "error" for c in self.conflicts
        )


def merge(
    documents: Iterable[DataDescDocument],
    policy: MergePolicy = MergePolicy(),
) -> MergeReport:
    """Deep-union an ordered list of documents.

    Every input must pass `check_document` without errors; an invalid input
    raises `InvalidDocumentError`.
    """
    docs = list(documents)
    if not docs:
        raise InvalidDocumentError("nothing to merge")
    for index, doc in enumerate(docs):
        errors = tuple(d for d in check_document(doc) if d.severity == "error")
        if errors:
            raise InvalidDocumentError(
                f"merge input {index} has errors", errors
            )

    conflicts: list[Diagnostic] = []
    severity = "error" if policy.on_scalar_conflict == "error" else "warning"

    def fold(a: Any, b: Any) -> Any:
        return _merge_raw(a, b, "", policy, severity, conflicts)

    merged_raw = reduce(fold, (document_to_raw(d) for d in docs))
    conflicts = order_diagnostics(conflicts)

    if policy.on_scalar_conflict == "error" and conflicts:
        return MergeReport(merged=None, conflicts=tuple(conflicts))

    merged, diagnostics = _rebuild(merged_raw)
    if merged is None:
        return MergeReport(merged=None, conflicts=tuple(conflicts) + tuple(diagnostics))
    residual = tuple(d for d in diagnostics if d.severity == "error")
    return MergeReport(merged=merged, conflicts=tuple(conflicts) + residual)


def _rebuild(raw: Any) -> tuple[DataDescDocument | None, list[Diagnostic]]:
    # Re-entering through the parser keeps merge semantics identical to a
    # file-level union of the canonical emissions.
    return document_from_raw(raw)


def _merge_raw(
    a: Any,
    b: Any,
    path: str,
    policy: MergePolicy,
    severity: str,
    conflicts: list[Diagnostic],
) -> Any:
    if isinstance(a, dict) and isinstance(b, dict):
        result: dict[str, Any] = {}
        for key, value in a.items():
            if key in b:
                result[key] = _merge_raw(
                    value, b[key], _join(path, key), policy, severity, conflicts
                )
            else:
                result[key] = copy.deepcopy(value)
        for key, value in b.items():
            if key not in result:
                result[key] = copy.deepcopy(value)
        return result
    if isinstance(a, list) and isinstance(b, list):
        result_list = [copy.deepcopy(v) for v in a]
        for value in b:
            if not any(_raw_equal(value, present) for present in result_list):
                result_list.append(copy.deepcopy(value))
        return result_list
    if _raw_equal(a, b):
        return copy.deepcopy(a)
    diagnostic = Diagnostic(
        severity,  # type: ignore[arg-type]
        "merge-conflict",
        path,
        f"conflicting values {a!r} and {b!r}",
    )
    conflicts.append(diagnostic)
    return copy.deepcopy(a if policy.on_scalar_conflict != "prefer_last" else b)


def _join(path: str, key: str) -> str:
    return f"{path}/{key}" if path else str(key)


def _raw_equal(a: Any, b: Any) -> bool:
    if isinstance(a, dict) and isinstance(b, dict):
        return a.keys() == b.keys() and all(_raw_equal(v, b[k]) for k, v in a.items())
    if isinstance(a, list) and isinstance(b, list):
        return len(a) == len(b) and all(_raw_equal(x, y) for x, y in zip(a, b))
    if a is None or b is None:
        return a is None and b is None
    if isinstance(a, (dict, list)) or isinstance(b, (dict, list)):
        return False
    return scalar_equal(a, b)


__all__ = ["MergePolicy", "MergeReport", "merge", "OnConflict"]
