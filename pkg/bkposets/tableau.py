"""
Column-strict tableaux, Bender–Knuth moves on them, and the bridge between
standard Young tableaux and linear extensions of Ferrers posets.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from bkposets import words
from bkposets.errors import LabelIndexError, NotStandardError, ParamError, ShapeError
from bkposets.families import Partition, ferrers
from bkposets.linext import LinearExtension, enumerate_extensions, is_linear_extension

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ColumnStrictTableau:
    """Rows weakly increase; columns strictly increase; entries are ≥ 1."""

    shape: Partition
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if tuple(len(row) for row in self.rows) != self.shape.parts:
            raise ShapeError(f"row lengths {[len(row) for row in self.rows]} do not match shape {self.shape}")
        for r, row in enumerate(self.rows):
            if any(entry < 1 for entry in row):
                raise ShapeError(f"row {r + 1} has an entry below 1")
            if any(a > b for a, b in zip(row, row[1:])):
                raise ShapeError(f"row {r + 1} is not weakly increasing: {row}")
            if r and any(self.rows[r - 1][c] >= entry for c, entry in enumerate(row)):
                raise ShapeError(f"a column is not strictly increasing at row {r + 1}")

    @classmethod
    def of(cls, rows: Sequence[Sequence[int]]) -> ColumnStrictTableau:
        try:
            shape = Partition.of([len(row) for row in rows])
        except ParamError as error:
            raise ShapeError(str(error)) from error
        return cls(shape=shape, rows=tuple(tuple(int(x) for x in row) for row in rows))

    @property
    def size(self) -> int:
        return self.shape.size

    def entry(self, r: int, c: int) -> int | None:
        """Entry at 0-indexed ``(r, c)``, or ``None`` outside the shape."""
        if 0 <= r < len(self.rows) and 0 <= c < len(self.rows[r]):
            return self.rows[r][c]
        return None

    def is_standard(self) -> bool:
        return sorted(x for row in self.rows for x in row) == list(range(1, self.size + 1))

    def __str__(self) -> str:
        return "\n".join(" ".join(map(str, row)) for row in self.rows)


def content(tableau: ColumnStrictTableau) -> tuple[int, ...]:
    """``α_i`` = number of entries equal to ``i``, for ``i = 1 .. max entry``."""
    counts = Counter(x for row in tableau.rows for x in row)
    if not counts:
        return ()
    return tuple(counts.get(i, 0) for i in range(1, max(counts) + 1))


def cst_bk_move(tableau: ColumnStrictTableau, i: int) -> ColumnStrictTableau:
    """
    ``t_i`` on a column-strict tableau.

    An ``i`` with ``i+1`` directly below it, and an ``i+1`` with ``i``
    directly above it, are fixed. In every row the remaining entries from
    ``{i, i+1}`` form a contiguous run of ``b`` copies of ``i`` then ``c``
    copies of ``i+1``; the run is rewritten as ``c`` copies of ``i`` then ``b``
    copies of ``i+1``.
    """
    if i < 1:
        raise LabelIndexError(f"BK move index must be >= 1, got {i}")
    rows = [list(row) for row in tableau.rows]
    for r, row in enumerate(tableau.rows):
        free = []
        for c, x in enumerate(row):
            if x == i and tableau.entry(r + 1, c) != i + 1:
                free.append(c)
            elif x == i + 1 and tableau.entry(r - 1, c) != i:
                free.append(c)
        if not free:
            continue
        low = sum(1 for c in free if row[c] == i)
        high = len(free) - low
        for offset, c in enumerate(free):
            rows[r][c] = i if offset < high else i + 1
    return ColumnStrictTableau(shape=tableau.shape, rows=tuple(tuple(row) for row in rows))


def syt_to_linext(tableau: ColumnStrictTableau) -> LinearExtension:
    """The extension of ``ferrers(shape)`` labeling each cell by its entry."""
    if not tableau.is_standard():
        raise NotStandardError(f"tableau is not standard:\n{tableau}")
    labels = [x for row in tableau.rows for x in row]
    return LinearExtension.from_labels(labels)


def linext_to_syt(ext: LinearExtension, shape: Partition | Sequence[int]) -> ColumnStrictTableau:
    shape = shape if isinstance(shape, Partition) else Partition.of(shape)
    if not is_linear_extension(ferrers(shape), ext.word):
        raise NotStandardError(f"{ext.word} is not a linear extension of the Ferrers poset of {shape}")
    labels = iter(ext.labels)
    rows = tuple(tuple(next(labels) for _ in range(part)) for part in shape.parts)
    return ColumnStrictTableau(shape=shape, rows=rows)


def enumerate_syt(shape: Partition | Sequence[int]) -> list[ColumnStrictTableau]:
    """SYT(λ) in the order of L(ferrers(λ))."""
    shape = shape if isinstance(shape, Partition) else Partition.of(shape)
    return [linext_to_syt(ext, shape) for ext in enumerate_extensions(ferrers(shape))]


def enumerate_cst(shape: Partition | Sequence[int], max_entry: int) -> list[ColumnStrictTableau]:
    """All column-strict tableaux of ``shape`` with entries in ``[1, max_entry]``."""
    shape = shape if isinstance(shape, Partition) else Partition.of(shape)
    cells = [(r, c) for r, part in enumerate(shape.parts) for c in range(part)]
    rows = [[0] * part for part in shape.parts]
    found: list[ColumnStrictTableau] = []

    def fill(k: int) -> None:
        if k == len(cells):
            found.append(ColumnStrictTableau(shape=shape, rows=tuple(tuple(row) for row in rows)))
            return
        r, c = cells[k]
        low = 1
        if c:
            low = max(low, rows[r][c - 1])
        if r:
            low = max(low, rows[r - 1][c] + 1)
        for value in range(low, max_entry + 1):
            rows[r][c] = value
            fill(k + 1)

    fill(0)
    return found


@dataclass(frozen=True)
class TableauRelationReport:
    """Which of the four classical BK relations hold on a set of tableaux."""

    involutions: bool
    commuting: bool
    evacuation_fourth_power: bool
    hexagon: bool

    @property
    def all_hold(self) -> bool:
        return self.involutions and self.commuting and self.evacuation_fourth_power and self.hexagon


def tableau_moves(tableaux: Sequence[ColumnStrictTableau], top: int) -> list[np.ndarray]:
    """Permutation arrays of ``t_1 .. t_top`` on a set of tableaux closed under them."""
    index = {t.rows: position for position, t in enumerate(tableaux)}
    arrays = []
    for i in range(1, top + 1):
        images = np.empty(len(tableaux), dtype=np.int64)
        for position, t in enumerate(tableaux):
            moved = cst_bk_move(t, i).rows
            if moved not in index:
                raise ParamError(f"tableau set is not closed under t_{i}")
            images[position] = index[moved]
        arrays.append(images)
    return arrays


def relation_check(tableaux: Sequence[ColumnStrictTableau], top: int) -> TableauRelationReport:
    """
    Check, for ``t_1 .. t_top`` acting on ``tableaux``:
    ``t_i² = 1``; ``(t_i t_j)² = 1`` for ``|i − j| ≥ 2``;
    ``(t_1 q_i)⁴ = 1`` for ``3 ≤ i ≤ top``; ``(t_1 t_2)⁶ = 1``.
    """
    degree = len(tableaux)
    moves = tableau_moves(tableaux, top)
    involutions = all(words.is_identity(words.power(t, 2)) for t in moves)
    commuting = all(
        words.is_identity(words.power(words.product(moves[a], moves[b]), 2))
        for a in range(top)
        for b in range(a + 2, top)
    )
    evacuations = words.evacuation_arrays(moves, degree)
    evacuation_fourth_power = all(
        words.is_identity(words.power(words.product(moves[0], evacuations[i]), 4)) for i in range(3, top + 1)
    )
    hexagon = top < 2 or words.is_identity(words.power(words.product(moves[0], moves[1]), 6))
    return TableauRelationReport(
        involutions=involutions,
        commuting=commuting,
        evacuation_fourth_power=evacuation_fourth_power,
        hexagon=hexagon,
    )
