"""
Hypothesis strategies for random small posets and tableaux.
"""

from hypothesis import strategies as st

from bkposets.families import partitions
from bkposets.poset import Poset, from_covers
from bkposets.tableau import ColumnStrictTableau


@st.composite
def posets(draw, min_size: int = 0, max_size: int = 6) -> Poset:
    """Random posets; edges only run from lower to higher ids, so no cycles."""
    n = draw(st.integers(min_value=min_size, max_value=max_size))
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return from_covers(n, chosen)


@st.composite
def relabelings(draw, poset: Poset) -> Poset:
    """The same poset with its ids permuted."""
    perm = draw(st.permutations(range(poset.n)))
    return from_covers(poset.n, [(perm[a], perm[b]) for a, b in poset.covers])


@st.composite
def column_strict_tableaux(draw, max_size: int = 8, max_step: int = 2) -> ColumnStrictTableau:
    """
    Random column-strict tableaux of size 1..``max_size``. Each cell is filled
    row by row with its smallest legal value plus a step of at most ``max_step``.
    """
    size = draw(st.integers(min_value=1, max_value=max_size))
    shape = draw(st.sampled_from(list(partitions(size))))
    rows: list[list[int]] = []
    for r, part in enumerate(shape.parts):
        row: list[int] = []
        for c in range(part):
            low = 1
            if c:
                low = max(low, row[c - 1])
            if r:
                low = max(low, rows[r - 1][c] + 1)
            row.append(low + draw(st.integers(min_value=0, max_value=max_step)))
        rows.append(row)
    return ColumnStrictTableau.of(rows)
