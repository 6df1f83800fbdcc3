"""
Constructors for the poset families used throughout the engine:
(shifted) Ferrers posets, zigzags, N- and M-shaped posets, the minuscule
ordinal sums, and a handful of named built-ins.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from bkposets.errors import ParamError, StrictnessError
from bkposets.poset import Poset, antichain, chain, from_covers, ordinal_sum
from utils.constants import NAMED

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of positive parts."""

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(part < 1 for part in self.parts):
            raise ParamError(f"partition parts must be positive: {self.parts}")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ParamError(f"partition parts must be weakly decreasing: {self.parts}")

    @classmethod
    def of(cls, parts: Sequence[int]) -> Partition:
        return cls(tuple(int(part) for part in parts))

    @property
    def size(self) -> int:
        return sum(self.parts)

    def is_strict(self) -> bool:
        return all(a > b for a, b in zip(self.parts, self.parts[1:]))

    def conjugate(self) -> Partition:
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for part in self.parts if part > j) for j in range(self.parts[0])))

    def cells(self) -> list[tuple[int, int]]:
        """Cells ``(row, column)`` in row-major order, both 1-indexed."""
        return [(i, j) for i, part in enumerate(self.parts, start=1) for j in range(1, part + 1)]

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.parts)) + ")"


def partitions(size: int, largest: int | None = None) -> Iterator[Partition]:
    """All partitions of ``size`` in reverse lexicographic order."""
    if largest is None:
        largest = size
    if size == 0:
        yield Partition(())
        return
    for first in range(min(size, largest), 0, -1):
        for rest in partitions(size - first, first):
            yield Partition((first, *rest.parts))


def _grid_poset(cells: list[tuple[int, int]]) -> Poset:
    index = {cell: k for k, cell in enumerate(cells)}
    covers = []
    for (i, j), k in index.items():
        for neighbour in ((i, j + 1), (i + 1, j)):
            if neighbour in index:
                covers.append((k, index[neighbour]))
    return from_covers(len(cells), covers)


def ferrers(shape: Partition | Sequence[int]) -> Poset:
    """Ferrers poset of ``shape``; cells are numbered row-major."""
    shape = shape if isinstance(shape, Partition) else Partition.of(shape)
    if not shape.parts:
        raise ParamError("ferrers needs a non-empty partition")
    return _grid_poset(shape.cells())


def shifted_cells(shape: Partition) -> list[tuple[int, int]]:
    """Cells ``{(i, j): i ≤ j ≤ λ_i + i − 1}`` in row-major order."""
    return [(i, j) for i, part in enumerate(shape.parts, start=1) for j in range(i, part + i)]


def shifted_ferrers(shape: Partition | Sequence[int]) -> Poset:
    """Shifted Ferrers poset of a strict partition."""
    parts = tuple(shape.parts if isinstance(shape, Partition) else shape)
    if not parts:
        raise ParamError("shifted_ferrers needs a non-empty partition")
    if any(a <= b for a, b in zip(parts, parts[1:])) or any(part < 1 for part in parts):
        raise StrictnessError(f"shifted shape must be strictly decreasing: {parts}")
    return _grid_poset(shifted_cells(Partition(parts)))


def zigzag(m: int) -> Poset:
    """``v_1 < v_2 > v_3 < v_4 ...`` on ``m`` elements."""
    if m < 1:
        raise ParamError(f"zigzag needs m >= 1, got {m}")
    covers = [(k, k + 1) if k % 2 == 0 else (k + 1, k) for k in range(m - 1)]
    return from_covers(m, covers)


def n_poset(a: int, b: int, c: int) -> Poset:
    """
    ``N_{a,b,c}``: ``v_1 < ... < v_{a+1} > ... > v_{a+b+1} < ... < v_{a+b+c+1}``.
    """
    if min(a, b, c) < 1:
        raise ParamError(f"n_poset needs a, b, c >= 1, got {(a, b, c)}")
    covers = [(k, k + 1) for k in range(a)]
    covers += [(k + 1, k) for k in range(a, a + b)]
    covers += [(k, k + 1) for k in range(a + b, a + b + c)]
    return from_covers(a + b + c + 1, covers)


def m_poset(a: int, b: int) -> Poset:
    """Chains ``v_1 < ... < v_a`` and ``v_{a+1} < ... < v_{a+b}`` joined by ``v_{a-1} < v_{a+2}``."""
    if a < 2 or b < 2:
        raise ParamError(f"m_poset needs a, b >= 2, got {(a, b)}")
    covers = [(k, k + 1) for k in range(a - 1)]
    covers += [(k, k + 1) for k in range(a, a + b - 1)]
    covers.append((a - 2, a + 1))
    return from_covers(a + b, covers)


def minuscule_ordinal(k: int) -> Poset:
    """``A_1^{⊕k} ⊕ A_2 ⊕ A_1^{⊕k}``."""
    if k < 0:
        raise ParamError(f"minuscule_ordinal needs k >= 0, got {k}")
    return ordinal_sum(ordinal_sum(chain(k), antichain(2)), chain(k))


def _named(n: int, covers: tuple[tuple[int, int], ...]) -> Callable[[], Poset]:
    return lambda: from_covers(n, covers)


NAMED_POSETS: dict[str, Callable[[], Poset]] = {
    "butterfly": _named(4, NAMED.BUTTERFLY),
    "jdt9": _named(9, NAMED.JDT9),
    "cactus5": _named(5, NAMED.CACTUS5),
    "chain_bridge": _named(8, NAMED.CHAIN_BRIDGE),
}


def named(name: str) -> Poset:
    try:
        return NAMED_POSETS[name]()
    except KeyError:
        raise ParamError(f"unknown named poset {name!r}; known: {sorted(NAMED_POSETS)}") from None
