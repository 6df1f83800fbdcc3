"""
Parser for family-spec strings.

Grammar::

    spec   := call | atom
    call   := ("osum" | "dsum") "(" spec ("," spec)+ ")" | "dual" "(" spec ")"
    atom   := family ":" ints | "named" ":" word
    ints   := int ("," int)*

Families: chain, antichain, ferrers, shifted, zigzag, N, M, minO.
Examples: ``"ferrers:3,2"``, ``"osum(antichain:3,antichain:1)"``,
``"dual(N:1,2,1)"``, ``"named:jdt9"``.
"""

from __future__ import annotations

import logging
import re
from functools import reduce
from typing import Callable

from bkposets.errors import BKError, SpecSyntaxError
from bkposets.families import ferrers, m_poset, minuscule_ordinal, n_poset, named, shifted_ferrers, zigzag
from bkposets.poset import Poset, antichain, chain, disjoint_union, dual, ordinal_sum

logger = logging.getLogger(__name__)

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>[(),:]))")

_FAMILIES: dict[str, tuple[Callable[..., Poset], int | None]] = {
    "chain": (chain, 1),
    "antichain": (antichain, 1),
    "ferrers": (lambda *parts: ferrers(parts), None),
    "shifted": (lambda *parts: shifted_ferrers(parts), None),
    "zigzag": (zigzag, 1),
    "N": (n_poset, 3),
    "M": (m_poset, 2),
    "minO": (minuscule_ordinal, 1),
}

_COMBINATORS: dict[str, Callable[[Poset, Poset], Poset]] = {
    "osum": ordinal_sum,
    "dsum": disjoint_union,
}


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            match = _TOKEN.match(text, pos)
            if match is None:
                start = pos + len(text[pos:]) - len(text[pos:].lstrip())
                raise SpecSyntaxError(f"unexpected character {text[start]!r}", start, text)
            kind = match.lastgroup or ""
            self.tokens.append((kind, match.group(kind), match.start(kind)))
            pos = match.end()
        self.index = 0

    def _peek(self) -> tuple[str, str, int]:
        if self.index < len(self.tokens):
            return self.tokens[self.index]
        return ("end", "", len(self.text))

    def _next(self) -> tuple[str, str, int]:
        token = self._peek()
        self.index += 1
        return token

    def _expect(self, symbol: str) -> None:
        kind, value, position = self._next()
        if kind != "sym" or value != symbol:
            found = value or "end of input"
            raise SpecSyntaxError(f"expected {symbol!r}, found {found!r}", position, self.text)

    def parse(self) -> Poset:
        poset = self._spec()
        kind, value, position = self._peek()
        if kind != "end":
            raise SpecSyntaxError(f"trailing input {value!r}", position, self.text)
        return poset

    def _spec(self) -> Poset:
        kind, value, position = self._next()
        if kind != "word":
            raise SpecSyntaxError(f"expected a family name, found {value or 'end of input'!r}", position, self.text)
        if value in _COMBINATORS or value == "dual":
            return self._call(value, position)
        self._expect(":")
        if value == "named":
            kind, name, name_position = self._next()
            if kind != "word":
                raise SpecSyntaxError("expected a built-in poset name", name_position, self.text)
            return self._build(lambda: named(name), name_position)
        if value not in _FAMILIES:
            raise SpecSyntaxError(f"unknown family {value!r}", position, self.text)
        factory, arity = _FAMILIES[value]
        args = self._ints()
        if arity is not None and len(args) != arity:
            raise SpecSyntaxError(f"{value} takes {arity} argument(s), got {len(args)}", position, self.text)
        return self._build(lambda: factory(*args), position)

    def _call(self, name: str, position: int) -> Poset:
        self._expect("(")
        operands = [self._spec()]
        while self._peek()[:2] == ("sym", ","):
            self._next()
            operands.append(self._spec())
        self._expect(")")
        if name == "dual":
            if len(operands) != 1:
                raise SpecSyntaxError("dual takes exactly one operand", position, self.text)
            return dual(operands[0])
        if len(operands) < 2:
            raise SpecSyntaxError(f"{name} takes at least two operands", position, self.text)
        return reduce(_COMBINATORS[name], operands)

    def _ints(self) -> list[int]:
        values = []
        while True:
            kind, value, position = self._next()
            if kind != "int":
                raise SpecSyntaxError(f"expected an integer, found {value or 'end of input'!r}", position, self.text)
            values.append(int(value))
            if self._peek()[:2] != ("sym", ",") or self._lookahead_is_spec():
                return values
            self._next()

    def _lookahead_is_spec(self) -> bool:
        # inside osum(chain:2,antichain:1) a comma may end the integer list
        following = self.tokens[self.index + 1] if self.index + 1 < len(self.tokens) else None
        return following is not None and following[0] == "word"

    def _build(self, factory: Callable[[], Poset], position: int) -> Poset:
        try:
            return factory()
        except SpecSyntaxError:
            raise
        except BKError as error:
            raise SpecSyntaxError(str(error), position, self.text) from error


def parse_spec(text: str) -> Poset:
    """Parse a family-spec string into a poset."""
    logger.debug(f"Parsing spec {text!r}")
    return _Parser(text).parse()
