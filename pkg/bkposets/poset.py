"""
Finite posets: representation, composition and structural analysis.

A :class:`Poset` stores its irredundant cover relation together with the
strict up-sets and down-sets of every element as integer bitmasks, so
comparisons are O(1). Elements are the integers ``0 .. n-1``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

import networkx as nx
import numpy as np

from bkposets.errors import CapError, CycleError, RangeError
from config import settings

logger = logging.getLogger(__name__)


def _bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Poset:
    """An immutable finite poset on ``0 .. n-1``."""

    n: int
    covers: tuple[tuple[int, int], ...]
    up: tuple[int, ...]
    down: tuple[int, ...]

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Poset(n={self.n}, covers={list(self.covers)})"

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def lt(self, a: int, b: int) -> bool:
        return bool(self.down[b] >> a & 1)

    def leq(self, a: int, b: int) -> bool:
        return a == b or self.lt(a, b)

    def comparable(self, a: int, b: int) -> bool:
        return a == b or self.lt(a, b) or self.lt(b, a)

    def upper_covers(self, x: int) -> list[int]:
        return [b for a, b in self.covers if a == x]

    def lower_covers(self, x: int) -> list[int]:
        return [a for a, b in self.covers if b == x]

    def minimal_elements(self, mask: int | None = None) -> list[int]:
        """Elements of ``mask`` with nothing below them inside ``mask``."""
        if mask is None:
            mask = self.full_mask
        return [x for x in _bits(mask) if not self.down[x] & mask]

    def maximal_elements(self, mask: int | None = None) -> list[int]:
        if mask is None:
            mask = self.full_mask
        return [x for x in _bits(mask) if not self.up[x] & mask]

    def is_down_closed(self, mask: int) -> bool:
        return all(self.down[x] & ~mask == 0 for x in _bits(mask))

    def relation_matrix(self) -> np.ndarray:
        """The reflexive order relation as an ``n × n`` boolean array."""
        matrix = np.zeros((self.n, self.n), dtype=bool)
        for b in range(self.n):
            for a in _bits(self.down[b] | 1 << b):
                matrix[a, b] = True
        return matrix

    def to_digraph(self) -> nx.DiGraph:
        """Hasse diagram as a networkx digraph (edges point upward)."""
        graph = nx.DiGraph()
        graph.add_nodes_from(range(self.n))
        graph.add_edges_from(self.covers)
        return graph


def _from_down_masks(down: Sequence[int]) -> Poset:
    """Build a poset from transitively closed strict down-set masks."""
    n = len(down)
    up = [0] * n
    covers = []
    for b in range(n):
        below = down[b]
        implied = 0
        for c in _bits(below):
            implied |= down[c]
        for a in _bits(below & ~implied):
            covers.append((a, b))
        for a in _bits(below):
            up[a] |= 1 << b
    return Poset(n=n, covers=tuple(sorted(covers)), up=tuple(up), down=tuple(down))


def from_covers(n: int, covers: Iterable[Sequence[int]]) -> Poset:
    """
    Build a poset from a (possibly redundant) list of cover pairs ``(a, b)``
    meaning ``a < b``. The stored cover set is the transitive reduction.
    """
    if n < 0:
        raise RangeError(f"element count must be non-negative, got {n}")
    pairs = [tuple(pair) for pair in covers]
    for pair in pairs:
        if len(pair) != 2:
            raise RangeError(f"cover {pair!r} is not a pair")
        a, b = pair
        if not (0 <= a < n and 0 <= b < n):
            raise RangeError(f"cover {pair!r} has an id outside [0, {n})")

    graph = nx.DiGraph()
    graph.add_nodes_from(range(n))
    graph.add_edges_from(pairs)
    if not nx.is_directed_acyclic_graph(graph):
        cycle = nx.find_cycle(graph)
        raise CycleError(f"cover relation has a cycle: {cycle}")

    down = [0] * n
    for x in nx.topological_sort(graph):
        for y in graph.successors(x):
            down[y] |= down[x] | 1 << x
    return _from_down_masks(down)


def chain(m: int) -> Poset:
    """The chain ``C_m`` with ``0 < 1 < ... < m-1``."""
    return _from_down_masks([(1 << x) - 1 for x in range(max(m, 0))])


def antichain(m: int) -> Poset:
    """The antichain ``A_m``."""
    return _from_down_masks([0] * max(m, 0))


def dual(poset: Poset) -> Poset:
    """Reverse the order; element ids are preserved."""
    return _from_down_masks(list(poset.up))


def ordinal_sum(lower: Poset, upper: Poset) -> Poset:
    """``lower ⊕ upper``: every element of ``lower`` below every element of ``upper``."""
    shift = lower.n
    down = list(lower.down) + [mask << shift | lower.full_mask for mask in upper.down]
    return _from_down_masks(down)


def disjoint_union(left: Poset, right: Poset) -> Poset:
    """``left + right`` with ``right``'s ids shifted by ``len(left)``."""
    shift = left.n
    down = list(left.down) + [mask << shift for mask in right.down]
    return _from_down_masks(down)


def add_maximal(poset: Poset, ideal: Iterable[int]) -> Poset:
    """Append a new element ``n`` lying above exactly the order ideal ``ideal``."""
    mask = _subset_mask(poset, ideal)
    if not poset.is_down_closed(mask):
        raise RangeError(f"{sorted(ideal)} is not an order ideal of {poset}")
    return _from_down_masks([*poset.down, mask])


def _subset_mask(poset: Poset, subset: Iterable[int]) -> int:
    mask = 0
    for x in subset:
        if not 0 <= x < poset.n:
            raise RangeError(f"element {x} outside [0, {poset.n})")
        mask |= 1 << x
    return mask


def induced_subposet(poset: Poset, subset: Iterable[int]) -> Poset:
    """Restrict the order to ``subset``; its elements are renumbered in increasing order."""
    mask = _subset_mask(poset, subset)
    kept = list(_bits(mask))
    position = {x: k for k, x in enumerate(kept)}
    down = []
    for x in kept:
        below = 0
        for y in _bits(poset.down[x] & mask):
            below |= 1 << position[y]
        down.append(below)
    return _from_down_masks(down)


def is_convex(poset: Poset, subset: Iterable[int]) -> bool:
    """True iff ``x, z ∈ S`` and ``x ≤ y ≤ z`` force ``y ∈ S``."""
    mask = _subset_mask(poset, subset)
    between = 0
    for x in _bits(mask):
        between |= poset.up[x]
    hull = 0
    for z in _bits(mask):
        hull |= poset.down[z] & between
    return hull & ~mask == 0


def order_ideals(poset: Poset) -> Iterator[frozenset[int]]:
    """
    Yield every down-closed subset exactly once, ordered by size and then
    lexicographically. Ideals are the down-closures of antichains.
    """
    graph = nx.transitive_closure_dag(poset.to_digraph()) if poset.n else nx.DiGraph()
    ideals = []
    for antichain_ in nx.antichains(graph):
        ideal = set(antichain_)
        for x in antichain_:
            ideal |= set(_bits(poset.down[x]))
        ideals.append(frozenset(ideal))
    ideals.sort(key=lambda ideal: (len(ideal), sorted(ideal)))
    yield from ideals


@dataclass(frozen=True)
class PosetDecomposition:
    """Maximal ordinal-sum split of a poset into indecomposable summands."""

    summands: tuple[Poset, ...]
    blocks: tuple[tuple[int, ...], ...]
    split_points: tuple[int, ...]

    def recompose(self) -> Poset:
        """Join the summands by ordinal sum and restore the original ids."""
        n = sum(len(block) for block in self.blocks)
        down = [0] * n
        below = 0
        for summand, block in zip(self.summands, self.blocks):
            for local, x in enumerate(block):
                mask = below
                for y in _bits(summand.down[local]):
                    mask |= 1 << block[y]
                down[x] = mask
            for x in block:
                below |= 1 << x
        return _from_down_masks(down)


def ordinal_decomposition(poset: Poset) -> PosetDecomposition:
    """
    Split ``poset`` at every ``i`` for which the ``i`` lowest elements of a
    linear extension lie below everything else. This is independent of the
    extension chosen, so the lexicographically first one is used.
    """
    if poset.n == 0:
        return PosetDecomposition(summands=(), blocks=(), split_points=())
    word = list(nx.lexicographical_topological_sort(poset.to_digraph()))
    splits = []
    prefix = 0
    for i, x in enumerate(word[:-1], start=1):
        prefix |= 1 << x
        rest = poset.full_mask & ~prefix
        if all(poset.up[y] & rest == rest for y in _bits(prefix)):
            splits.append(i)

    blocks = []
    for start, stop in zip([0, *splits], [*splits, poset.n]):
        blocks.append(tuple(sorted(word[start:stop])))
    summands = tuple(induced_subposet(poset, block) for block in blocks)
    return PosetDecomposition(summands=summands, blocks=tuple(blocks), split_points=tuple(splits))


def height(poset: Poset) -> int:
    """Cardinality of a longest chain."""
    if poset.n == 0:
        return 0
    return nx.dag_longest_path_length(poset.to_digraph()) + 1


def width(poset: Poset) -> int:
    """Cardinality of a largest antichain, by exhaustive branch search."""
    if poset.n > settings.width_cap:
        raise CapError(f"width search is capped at n = {settings.width_cap}, got {poset.n}")
    comparable = [poset.up[x] | poset.down[x] for x in range(poset.n)]

    @lru_cache(maxsize=None)
    def best(mask: int) -> int:
        if not mask:
            return 0
        x = (mask & -mask).bit_length() - 1
        rest = mask & ~(1 << x)
        return max(best(rest), 1 + best(rest & ~comparable[x]))

    return best(poset.full_mask)


def components(poset: Poset) -> list[Poset]:
    """Connected components as induced subposets, ordered by least element."""
    if poset.n == 0:
        return []
    parts = sorted(nx.weakly_connected_components(poset.to_digraph()), key=min)
    return [induced_subposet(poset, part) for part in parts]


def is_disjoint_union_of_chains(poset: Poset) -> bool:
    """Every element has at most one upper and at most one lower cover."""
    uppers = [0] * poset.n
    lowers = [0] * poset.n
    for a, b in poset.covers:
        uppers[a] += 1
        lowers[b] += 1
    return all(u <= 1 for u in uppers) and all(d <= 1 for d in lowers)


def is_series_parallel(poset: Poset) -> bool:
    """Built from singletons by disjoint unions and ordinal sums."""
    if poset.n <= 1:
        return True
    parts = components(poset)
    if len(parts) > 1:
        return all(is_series_parallel(part) for part in parts)
    summands = ordinal_decomposition(poset).summands
    if len(summands) == 1:
        return False
    return all(is_series_parallel(summand) for summand in summands)


@dataclass(frozen=True)
class PosetStructure:
    """Structure record returned by :func:`structure`."""

    connected: bool
    height: int
    width: int
    is_disjoint_union_of_chains: bool
    is_series_parallel: bool
    components: tuple[Poset, ...]


def structure(poset: Poset) -> PosetStructure:
    parts = components(poset)
    return PosetStructure(
        connected=len(parts) <= 1,
        height=height(poset),
        width=width(poset),
        is_disjoint_union_of_chains=is_disjoint_union_of_chains(poset),
        is_series_parallel=is_series_parallel(poset),
        components=tuple(parts),
    )


def _refined_colors(poset: Poset, rounds: int = 2) -> list[tuple]:
    colors: list[tuple] = [(bin(poset.down[x]).count("1"), bin(poset.up[x]).count("1")) for x in range(poset.n)]
    for _ in range(rounds):
        colors = [
            (
                colors[x],
                tuple(sorted(colors[a] for a in poset.lower_covers(x))),
                tuple(sorted(colors[b] for b in poset.upper_covers(x))),
            )
            for x in range(poset.n)
        ]
    return colors


def canonical_form(poset: Poset) -> bytes:
    """
    Isomorphism-invariant byte string: the lexicographically least packed
    order matrix over all relabelings that respect the refined element
    invariants. Equal outputs iff the posets are isomorphic.
    """
    if poset.n > settings.canonical_cap:
        raise CapError(f"canonical form is capped at n = {settings.canonical_cap}, got {poset.n}")
    if poset.n == 0:
        return bytes([0])

    colors = _refined_colors(poset)
    classes: dict[tuple, list[int]] = {}
    for x in sorted(range(poset.n), key=lambda x: colors[x]):
        classes.setdefault(colors[x], []).append(x)
    ordered = [classes[color] for color in sorted(classes)]

    matrix = poset.relation_matrix()
    best: bytes | None = None
    for parts in itertools.product(*(itertools.permutations(group) for group in ordered)):
        order = [x for part in parts for x in part]
        code = np.packbits(matrix[np.ix_(order, order)]).tobytes()
        if best is None or code < best:
            best = code
    assert best is not None
    return bytes([poset.n]) + best


def is_isomorphic(left: Poset, right: Poset) -> bool:
    if left.n != right.n or len(left.covers) != len(right.covers):
        return False
    return canonical_form(left) == canonical_form(right)
