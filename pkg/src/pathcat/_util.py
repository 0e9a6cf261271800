"""Deterministic ordering and formatting of hashable ids."""

from __future__ import annotations

from typing import Any, Iterable


def order_key(x: Any) -> tuple:
    """Total order on the ids we use: numbers < strings < tuples < other."""
    if isinstance(x, bool):
        return (0, int(x))
    if isinstance(x, (int, float)):
        return (0, x)
    if isinstance(x, str):
        return (1, x)
    if isinstance(x, tuple):
        return (2, tuple(order_key(y) for y in x))
    key = getattr(x, "order_key", None)
    if key is not None:
        return (3, key())
    return (4, repr(x))


def ordered(xs: Iterable[Any]) -> list:
    return sorted(xs, key=order_key)


def fmt(x: Any) -> str:
    """Compact, stable rendering used in reports and error locations."""
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    if isinstance(x, tuple):
        return "(" + ",".join(fmt(y) for y in x) + ")"
    f = getattr(x, "fmt", None)
    if f is not None:
        return f()
    return str(x)
