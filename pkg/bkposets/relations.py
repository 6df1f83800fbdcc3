"""
Relation checks in BK_P and the poset predicates built on them.

All checks compose the generator permutation arrays of
:class:`~bkposets.linext.LinExtSpace`; no slide procedure is re-run per
relation. Witnesses are positions in the lexicographic order of L(P).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterator

from bkposets import words
from bkposets.linext import enumerate_extensions
from bkposets.permgroup import bk_group
from bkposets.poset import (
    Poset,
    disjoint_union,
    dual,
    height,
    induced_subposet,
    is_convex,
    order_ideals,
    ordinal_decomposition,
    ordinal_sum,
    width,
)
from utils.constants import REFERENCE
from utils.decorators import log_method

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CactusFailure:
    i: int
    j: int
    k: int
    witness: int


def eligible_triples(n: int) -> Iterator[tuple[int, int, int]]:
    """All ``(i, j, k)`` with ``2 ≤ i+1 < j < k ≤ n``, ordered by ``i``, then ``j``, then ``k``."""
    for i in range(1, n + 1):
        for j in range(i + 2, n + 1):
            for k in range(j + 1, n + 1):
                yield i, j, k


def trivial_moves(poset: Poset) -> set[int]:
    """``{i : t_i`` fixes every extension``}``."""
    space = enumerate_extensions(poset)
    return {i for i, move in enumerate(space.moves, start=1) if words.is_identity(move)}


def braid_failures(poset: Poset) -> list[int]:
    """Indices ``i`` with ``(t_i t_{i+1})³ ≠ 1``."""
    moves = enumerate_extensions(poset).moves
    return [
        i
        for i in range(1, poset.n - 1)
        if not words.is_identity(words.power(words.product(moves[i - 1], moves[i]), 3))
    ]


def braid_holds(poset: Poset) -> bool:
    return not braid_failures(poset)


def universal_relations_hold(poset: Poset) -> bool:
    """``t_i² = 1``, ``(t_i t_j)² = 1`` for ``|i − j| ≥ 2`` and ``(t_i t_{i+1})⁶ = 1``."""
    moves = enumerate_extensions(poset).moves
    for a, first in enumerate(moves):
        if not words.is_identity(words.power(first, 2)):
            return False
        for b in range(a + 1, len(moves)):
            exponent = 6 if b == a + 1 else 2
            if not words.is_identity(words.power(words.product(first, moves[b]), exponent)):
                return False
    return True


def cactus_failures(poset: Poset, first_only: bool = False) -> list[CactusFailure]:
    """
    Every eligible triple with ``(t_i q_{jk})² ≠ 1``, each with the least
    extension position it moves.
    """
    space = enumerate_extensions(poset)
    failures = []
    for j, k in combinations(range(3, poset.n + 1), 2):
        q = space.qjk(j, k)
        for i in range(1, j - 1):
            t = space.moves[i - 1]
            witness = words.first_moved(words.product(t, q, t, q))
            if witness is not None:
                failures.append(CactusFailure(i=i, j=j, k=k, witness=witness))
                if first_only:
                    return failures
    failures.sort(key=lambda f: (f.i, f.j, f.k))
    return failures


def cactus_holds(poset: Poset, i: int, j: int, k: int) -> bool:
    space = enumerate_extensions(poset)
    t = space.moves[i - 1]
    q = space.qjk(j, k)
    return words.is_identity(words.product(t, q, t, q))


def is_le_cactus(poset: Poset) -> bool:
    return not cactus_failures(poset, first_only=True)


def is_le_symmetric(poset: Poset) -> bool:
    return bk_group(poset).is_symmetric()


def is_le_primitive(poset: Poset) -> bool:
    return bk_group(poset).is_primitive()


def stab_size(poset: Poset) -> int:
    """``𝔰_P = |BK_P| / |L(P)|``."""
    return bk_group(poset).stabilizer_order()


def comparability(poset: Poset) -> int:
    """``c(P)``: most consecutive-label pairs that are comparable, over all extensions."""
    best = 0
    for ext in enumerate_extensions(poset):
        word = ext.word
        best = max(best, sum(1 for a, b in zip(word, word[1:]) if poset.lt(a, b)))
    return best


def is_ordinal_sum_of_antichains(poset: Poset) -> bool:
    return all(not summand.covers for summand in ordinal_decomposition(poset).summands)


def is_indecomposable(poset: Poset) -> bool:
    return poset.n >= 1 and len(ordinal_decomposition(poset).summands) == 1


@dataclass(frozen=True)
class RelationReport:
    degree: int
    order: int
    trivial_ti: tuple[int, ...]
    braid_failures: tuple[int, ...]
    cactus_failures: tuple[CactusFailure, ...]
    le_cactus: bool
    le_symmetric: bool
    le_primitive: bool
    stab_size: int
    comparability: int


@log_method
def relation_report(poset: Poset) -> RelationReport:
    group = bk_group(poset)
    failures = tuple(cactus_failures(poset))
    return RelationReport(
        degree=group.degree,
        order=group.order,
        trivial_ti=tuple(sorted(trivial_moves(poset))),
        braid_failures=tuple(braid_failures(poset)),
        cactus_failures=failures,
        le_cactus=not failures,
        le_symmetric=group.is_symmetric(),
        le_primitive=group.is_primitive(),
        stab_size=group.stabilizer_order(),
        comparability=comparability(poset),
    )


def _stab_value_allowed(value: int) -> bool:
    power_of_two = value & (value - 1) == 0
    return value in REFERENCE.STAB_VALUES or power_of_two or value % 24 == 0


@log_method
def check_numeric_laws(poset: Poset, other: Poset | None = None) -> dict[str, bool | None]:
    """
    Evaluate the size laws for ``poset`` (and, given ``other``, the laws for
    ``poset ⊕ other`` and ``poset + other``). ``None`` marks a law whose
    hypothesis does not apply.
    """
    order = bk_group(poset).order
    stab = stab_size(poset)
    c = comparability(poset)
    indecomposable = is_indecomposable(poset)
    laws: dict[str, bool | None] = {
        "dual_order": bk_group(dual(poset)).order == order,
        "height_comparability": height(poset) - 1 <= c <= poset.n - width(poset),
        "stab_comparability_bound": stab >= 2**c if indecomposable else None,
        "height_stab_bound": stab >= 2 ** (height(poset) - 1) if indecomposable else None,
        "stab_value_set": _stab_value_allowed(stab),
        "stab_one_iff_antichain_sum": (stab == 1) == is_ordinal_sum_of_antichains(poset),
    }
    if other is not None:
        other_order = bk_group(other).order
        m, n = poset.n, other.n
        laws["ordinal_sum_order"] = bk_group(ordinal_sum(poset, other)).order == order * other_order
        laws["ordinal_sum_stab"] = stab_size(ordinal_sum(poset, other)) == stab * stab_size(other)
        bound = (order * other_order) ** math.comb(m + n, n) * math.factorial(m + n)
        laws["disjoint_union_bound"] = bk_group(disjoint_union(poset, other)).order <= bound
    return laws


def generators_independent(poset: Poset) -> bool:
    """No non-trivial ``t_i`` lies in the subgroup generated by the other moves."""
    group = bk_group(poset)
    for gen in group.generators:
        if gen.trivial:
            continue
        if group.subgroup_without(gen.name).contains(gen.perm):
            logger.info(f"{gen.name} is generated by the other moves of {poset}")
            return False
    return True


def _convex_subsets(poset: Poset, minimum: int) -> Iterator[tuple[int, ...]]:
    for size in range(minimum, poset.n + 1):
        for subset in combinations(range(poset.n), size):
            if is_convex(poset, subset):
                yield subset


def convex_braid_inheritance(poset: Poset) -> bool:
    """A braid failure on any convex induced subposet implies one on ``poset``."""
    if braid_holds(poset):
        return all(braid_holds(induced_subposet(poset, subset)) for subset in _convex_subsets(poset, 3))
    return True


def order_ideal_criterion(poset: Poset) -> bool:
    """``is_le_cactus(P)`` agrees with every order ideal being LE-cactus."""
    ideals_cactus = all(is_le_cactus(induced_subposet(poset, ideal)) for ideal in order_ideals(poset))
    return is_le_cactus(poset) == ideals_cactus
