"""Runtime no-op marker used to annotate source code for extraction.

The extractor reads ``datadesc(...)`` calls syntactically and never imports
the analyzed code, but decorated modules still have to run; this marker
returns the decorated object unchanged.
"""

from __future__ import annotations

from typing import Any, Callable, TypeVar

T = TypeVar("T")


def datadesc(**_metadata: Any) -> Callable[[T], T]:
    """Attach interface metadata to a class, function or their members.

    Keyword names equal the canonical extension attribute names without the
    ``x-`` prefix; a mapping value attaches metadata to the named parameter
    or attribute instead.
    """

    def wrap(obj: T) -> T:
        return obj

    return wrap


__all__ = ["datadesc"]
