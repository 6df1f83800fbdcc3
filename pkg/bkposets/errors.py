"""
Exception hierarchy for the BK poset engine.

Every error raised for invalid input derives from :class:`BKError`, so callers
(the CLI in particular) can catch one type.
"""

from __future__ import annotations


class BKError(Exception):
    """Base class for all engine errors."""


class RangeError(BKError):
    """An element id or subset lies outside ``[0, n)``."""


class CycleError(BKError):
    """A cover relation contains a directed cycle."""


class StrictnessError(BKError):
    """A partition that must be strictly decreasing is not."""


class ParamError(BKError):
    """A family constructor was called with out-of-bounds parameters."""


class CapError(BKError):
    """An input exceeds a configured size cap."""


class DegreeCapError(CapError):
    """The number of linear extensions exceeds the configured degree cap."""

    def __init__(self, count: int, cap: int, exact: bool = True) -> None:
        self.count = count
        self.cap = cap
        self.exact = exact
        relation = "=" if exact else ">="
        super().__init__(f"linear extension count exceeds degree cap {cap}: |L(P)| {relation} {count}")


class LabelIndexError(BKError, IndexError):
    """An operator index (t_i, ∂_i, q_i, q_jk) is out of range."""


class ComponentError(BKError):
    """A word is not a linear extension of the expected disjoint union."""


class ShapeError(BKError):
    """A tableau is not column-strict of the declared shape."""


class NotStandardError(BKError):
    """A tableau that must be standard is not."""


class OrderDivisionError(BKError, ArithmeticError):
    """A group order is not divisible by its degree."""


class UnknownGeneratorError(BKError, KeyError):
    """No generator carries the requested name."""


class PosetFormatError(BKError):
    """A poset or tableau document is malformed."""


class SpecSyntaxError(BKError):
    """A family-spec string failed to parse."""

    def __init__(self, message: str, position: int, text: str) -> None:
        self.position = position
        self.text = text
        pointer = " " * position + "^"
        super().__init__(f"{message} at position {position}\n  {text}\n  {pointer}")
