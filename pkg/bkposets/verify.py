"""
The verification battery: every computational claim about BK moves that the
engine can reproduce at desk scale, each run as a named boolean check.

Checks take the census bound ``max_size`` and scale their ranges from it;
ranges that stay small whatever the bound are fixed.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from itertools import combinations, product
from typing import Callable, Iterator

from bkposets import words
from bkposets.errors import BKError, CapError
from bkposets.families import (
    ferrers,
    m_poset,
    minuscule_ordinal,
    n_poset,
    named,
    partitions,
    shifted_ferrers,
    zigzag,
)
from bkposets.linext import (
    LinearExtension,
    bk_move,
    enumerate_extensions,
    evacuation_label_law,
    lift_extension,
    linext_graph,
    qjk_component_law,
    t_action_on_decomposition,
    t_decompose,
    t_recompose,
)
from bkposets.models import SuiteItem, SuiteReport
from bkposets.permgroup import brute_force_order, bk_group
from bkposets.poset import (
    Poset,
    antichain,
    canonical_form,
    chain,
    components,
    disjoint_union,
    dual,
    from_covers,
    induced_subposet,
    is_convex,
    is_disjoint_union_of_chains,
    is_series_parallel,
    ordinal_decomposition,
    ordinal_sum,
)
from bkposets.relations import (
    braid_holds,
    cactus_failures,
    cactus_holds,
    check_numeric_laws,
    convex_braid_inheritance,
    eligible_triples,
    generators_independent,
    is_indecomposable,
    is_le_cactus,
    is_le_primitive,
    is_le_symmetric,
    is_ordinal_sum_of_antichains,
    order_ideal_criterion,
    stab_size,
    trivial_moves,
    universal_relations_hold,
)
from bkposets.scan import all_posets
from bkposets.tableau import (
    ColumnStrictTableau,
    cst_bk_move,
    enumerate_cst,
    linext_to_syt,
    relation_check,
    syt_to_linext,
)
from config import settings
from utils.constants import CENSUS, REFERENCE
from utils.decorators import log_check, log_method

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SuiteCheck:
    name: str
    run: Callable[[int], bool]


SUITE: list[SuiteCheck] = []


def suite_item(name: str) -> Callable[[Callable[[int], bool]], Callable[[int], bool]]:
    """Register a check in :data:`SUITE` under ``name``."""

    def register(func: Callable[[int], bool]) -> Callable[[int], bool]:
        SUITE.append(SuiteCheck(name=name, run=log_check(func)))
        return func

    return register


def _census(low: int, high: int) -> Iterator[Poset]:
    for n in range(low, high + 1):
        yield from all_posets(n)


def _forms(posets: Iterator[Poset] | list[Poset]) -> set[bytes]:
    return {canonical_form(poset) for poset in posets}


def _fail(message: str) -> bool:
    logger.warning(f"   ❌ {message}")
    return False


# ---------------------------------------------------------------------------
# Extensions, moves and tableaux
# ---------------------------------------------------------------------------


@suite_item("butterfly_graph")
def butterfly_graph(max_size: int) -> bool:
    graph = linext_graph(named("butterfly"))
    labels = sorted(data["label"] for _, _, data in graph.edges(data=True))
    cycle = all(degree == 2 for _, degree in graph.degree())
    return graph.number_of_nodes() == 4 and labels == [1, 1, 3, 3] and cycle


@suite_item("tableau_oracle")
def tableau_oracle(max_size: int) -> bool:
    worked = ColumnStrictTableau.of(REFERENCE.TABLEAU_T2_BEFORE)
    if cst_bk_move(worked, 2).rows != REFERENCE.TABLEAU_T2_AFTER:
        return _fail("worked t_2 example differs")
    for size in range(1, min(6, max_size) + 1):
        for shape in partitions(size):
            poset = ferrers(shape)
            for ext in enumerate_extensions(poset):
                tableau = linext_to_syt(ext, shape)
                for i in range(1, size):
                    if syt_to_linext(cst_bk_move(tableau, i)) != bk_move(poset, ext, i):
                        return _fail(f"shape {shape}, {ext.word}, t_{i}")
    return True


@suite_item("tableau_relations")
def tableau_relations(max_size: int) -> bool:
    for size in range(1, 5):
        for shape in partitions(size):
            report = relation_check(enumerate_cst(shape, 5), top=4)
            if not report.all_hold:
                return _fail(f"shape {shape}: {report}")
    return True


@suite_item("universal_relations")
def universal_relations(max_size: int) -> bool:
    return all(universal_relations_hold(poset) for poset in _census(1, min(5, max_size)))


@suite_item("transitivity")
def transitivity(max_size: int) -> bool:
    return all(bk_group(poset).is_transitive() for poset in _census(1, min(6, max_size)))


# ---------------------------------------------------------------------------
# Relation families
# ---------------------------------------------------------------------------


@suite_item("trivialization")
def trivialization(max_size: int) -> bool:
    for poset in _census(1, min(6, max_size)):
        if trivial_moves(poset) != set(ordinal_decomposition(poset).split_points):
            return _fail(f"{poset}")
    return True


@suite_item("braid_characterization")
def braid_characterization(max_size: int) -> bool:
    return all(braid_holds(p) == is_disjoint_union_of_chains(p) for p in _census(1, min(6, max_size)))


@suite_item("ferrers_le_cactus")
def ferrers_le_cactus(max_size: int) -> bool:
    return all(is_le_cactus(ferrers(shape)) for size in range(1, max_size + 2) for shape in partitions(size))


@suite_item("small_cactus_counterexamples")
def small_cactus_counterexamples(max_size: int) -> bool:
    failing = [p for p in all_posets(4) if len(components(p)) == 1 and not cactus_holds(p, 1, 3, 4)]
    if len(failing) != 3:
        return _fail(f"{len(failing)} connected 4-element classes fail (t_1 q_34)^2 = 1")
    poset = named("cactus5")
    return len(cactus_failures(poset)) == len(list(eligible_triples(poset.n)))


@suite_item("order_ideal_criterion")
def order_ideal_check(max_size: int) -> bool:
    return all(order_ideal_criterion(poset) for poset in _census(1, min(5, max_size)))


@suite_item("disjoint_union_cactus")
def disjoint_union_cactus(max_size: int) -> bool:
    p = from_covers(6, REFERENCE.T_DECOMPOSE_P)
    q = from_covers(4, REFERENCE.T_DECOMPOSE_Q)
    ext = LinearExtension.of(REFERENCE.T_DECOMPOSE_WORD)
    d = t_decompose(p, q, ext)
    if (d.labels_p, d.labels_q) != (REFERENCE.T_DECOMPOSE_SP, REFERENCE.T_DECOMPOSE_SQ):
        return _fail(f"decomposition label sets {d.labels_p}, {d.labels_q}")
    swapped = t_action_on_decomposition(p, q, d, 3)
    if swapped.labels_p != REFERENCE.T_DECOMPOSE_SP_AFTER_T3 or swapped.ell_p != d.ell_p:
        return _fail("t_3 does not exchange labels 3 and 4 between the components")
    moved = t_action_on_decomposition(p, q, d, 5)
    if moved.ell_p != bk_move(p, d.ell_p, 4) or moved.labels_p != d.labels_p:
        return _fail("t_5 does not act as t_4 on the P component")

    small = list(_census(1, 3))
    for left, right in product(small, repeat=2):
        union = disjoint_union(left, right)
        if is_le_cactus(left) and is_le_cactus(right) and not is_le_cactus(union):
            return _fail(f"{left} + {right} is not LE-cactus")
        for ext in enumerate_extensions(union):
            d = t_decompose(left, right, ext)
            if t_recompose(left, right, d) != ext:
                return _fail(f"recompose differs on {ext.word}")
            for i in range(1, union.n):
                if t_action_on_decomposition(left, right, d, i) != t_decompose(left, right, bk_move(union, ext, i)):
                    return _fail(f"t_{i} action differs on {ext.word}")
        if not evacuation_label_law(left, right) or not qjk_component_law(left, right):
            return _fail(f"component law fails for {left} + {right}")
    return True


@suite_item("ordinal_sum_cactus")
def ordinal_sum_cactus(max_size: int) -> bool:
    for poset in _census(1, min(5, max_size)):
        if is_le_cactus(poset):
            for m in (1, 2):
                if not is_le_cactus(ordinal_sum(antichain(m), poset)):
                    return _fail(f"A_{m} ⊕ {poset} is not LE-cactus")
        m = max(poset.n - 3, 0)
        if not is_le_cactus(ordinal_sum(chain(m), poset)):
            return _fail(f"C_{m} ⊕ {poset} is not LE-cactus")
    if cactus_holds(ordinal_sum(antichain(3), antichain(1)), *REFERENCE.A3_A1_TRIPLE):
        return _fail("(t_1 q_34)^2 = 1 holds on A_3 ⊕ A_1")
    for m in range(3, max_size + 1):
        for poset in _census(1, max_size + 1 - m):
            if is_le_cactus(ordinal_sum(antichain(m), poset)):
                return _fail(f"A_{m} ⊕ {poset} is LE-cactus")
    return True


@suite_item("minuscule_families")
def minuscule_families(max_size: int) -> bool:
    rectangles = [ferrers([b] * a) for a in range(1, 9) for b in range(a, 9) if a * b <= 8]
    staircases = [shifted_ferrers(list(range(k, 0, -1))) for k in range(1, 5)]
    ordinals = [minuscule_ordinal(k) for k in range(4)]
    return all(is_le_cactus(poset) for poset in rectangles + staircases + ordinals)


@suite_item("jdt9_cactus_failure")
def jdt9_cactus_failure(max_size: int) -> bool:
    poset = named("jdt9")
    space = enumerate_extensions(poset)
    i, j, k = REFERENCE.JDT9_TRIPLE
    position = space.position(range(poset.n))
    t = space.moves[i - 1]
    q = space.qjk(j, k)
    if words.product(t, q, t, q)[position] != position:
        return True
    logger.error(
        f"   (t_{i} q_{j}{k})^2 fixes the identity labeling of the built-in jdt9 poset; "
        "re-derive NAMED.JDT9 from its Hasse diagram before trusting this check"
    )
    return False


# ---------------------------------------------------------------------------
# Group-theoretic properties
# ---------------------------------------------------------------------------


@suite_item("le_symmetric_families")
def le_symmetric_families(max_size: int) -> bool:
    family = [n_poset(1, b, 1) for b in range(1, 5)]
    family += [n_poset(1, 1, c) for c in range(1, 5)] + [n_poset(a, 1, 1) for a in range(1, 5)]
    family += [m_poset(a, b) for a in range(2, 5) for b in range(2, 5)]
    return all(is_le_symmetric(poset) for poset in family)


def _chain_sums(n: int, primitive: bool) -> list[Poset]:
    """``C_a ⊕ (C_b + C_c) ⊕ C_d`` on ``n`` elements, with ``c = 1`` unless ``primitive``."""
    found = []
    for a, d in product(range(n + 1), repeat=2):
        rest = n - a - d
        for b in range(rest + 1):
            c = rest - b
            if not primitive and c != 1:
                continue
            if primitive and b == c and b > 1:
                continue
            middle = disjoint_union(chain(b), chain(c))
            found.append(ordinal_sum(ordinal_sum(chain(a), middle), chain(d)))
    return found


@suite_item("disconnected_classification")
def disconnected_classification(max_size: int) -> bool:
    for n in range(2, min(6, max_size) + 1):
        disconnected = [p for p in all_posets(n) if len(components(p)) > 1]
        symmetric = _forms(p for p in disconnected if is_le_symmetric(p))
        primitive = _forms(p for p in disconnected if is_le_primitive(p))
        if symmetric != _forms([disjoint_union(chain(n - 1), antichain(1))]):
            return _fail(f"disconnected LE-symmetric classes differ at n={n}")
        pairs = [disjoint_union(chain(a), chain(n - a)) for a in range(1, n) if a != n - a or a == 1]
        if primitive != _forms(pairs):
            return _fail(f"disconnected LE-primitive classes differ at n={n}")
    return True


@suite_item("series_parallel_classification")
def series_parallel_classification(max_size: int) -> bool:
    for n in range(1, min(6, max_size) + 1):
        sp = [p for p in all_posets(n) if is_series_parallel(p)]
        if _forms(p for p in sp if is_le_symmetric(p)) != _forms(_chain_sums(n, primitive=False)):
            return _fail(f"series-parallel LE-symmetric classes differ at n={n}")
        if _forms(p for p in sp if is_le_primitive(p)) != _forms(_chain_sums(n, primitive=True)):
            return _fail(f"series-parallel LE-primitive classes differ at n={n}")
    return True


@suite_item("symmetric_invariance")
def symmetric_invariance(max_size: int) -> bool:
    for poset in _census(1, min(5, max_size)):
        symmetric = is_le_symmetric(poset)
        if is_le_symmetric(dual(poset)) != symmetric:
            return _fail(f"dual changes LE-symmetry of {poset}")
        for a, b in ((1, 0), (0, 1), (1, 1)):
            if is_le_symmetric(ordinal_sum(ordinal_sum(chain(a), poset), chain(b))) != symmetric:
                return _fail(f"C_{a} ⊕ {poset} ⊕ C_{b} changes LE-symmetry")
    return True


@suite_item("conjectured_symmetric_families")
def conjectured_symmetric_families(max_size: int) -> bool:
    family = [n_poset(a, b, c) for a, b, c in product(range(1, 4), repeat=3)]
    family += [zigzag(n) for n in (2, 4, 6, 8)]
    family += [ferrers([n, n - 2] if n > 2 else [n]) for n in range(2, 6)]
    family += [ferrers([n, 3]) for n in (3, 4, 5)] + [ferrers([n, 2, 2]) for n in (2, 3)]
    if not all(is_le_symmetric(poset) for poset in family):
        return False
    return not any(is_le_symmetric(zigzag(n)) for n in (5, 7))


@suite_item("chain_bridge_not_symmetric")
def chain_bridge_not_symmetric(max_size: int) -> bool:
    return not is_le_symmetric(named("chain_bridge"))


# ---------------------------------------------------------------------------
# Sizes
# ---------------------------------------------------------------------------


@suite_item("size_laws")
def size_laws(max_size: int) -> bool:
    for poset in _census(1, min(6, max_size)):
        laws = check_numeric_laws(poset)
        if False in laws.values():
            return _fail(f"{poset}: {laws}")
    small = list(_census(1, 3))
    for left, right in product(small, repeat=2):
        laws = check_numeric_laws(left, right)
        if False in laws.values():
            return _fail(f"{left}, {right}: {laws}")
    laws = check_numeric_laws(antichain(2), antichain(2))
    if not laws["disjoint_union_bound"]:
        return _fail("disjoint union bound fails for A_2, A_2")
    base = ordinal_sum(ordinal_sum(antichain(3), antichain(1)), antichain(1))
    return stab_size(disjoint_union(base, antichain(1))) == REFERENCE.STAB_ANTICHAIN_SUM_PLUS_POINT


@suite_item("stab_one_classification")
def stab_one_classification(max_size: int) -> bool:
    return all((stab_size(p) == 1) == is_ordinal_sum_of_antichains(p) for p in _census(1, min(6, max_size)))


# ---------------------------------------------------------------------------
# Generators and subposets
# ---------------------------------------------------------------------------


@suite_item("generator_independence")
def generator_independence(max_size: int) -> bool:
    return all(generators_independent(p) for p in _census(1, min(5, max_size)) if is_indecomposable(p))


@suite_item("convex_braid_inheritance")
def convex_braid(max_size: int) -> bool:
    return all(convex_braid_inheritance(poset) for poset in _census(1, min(5, max_size)))


@suite_item("convex_lifting")
def convex_lifting(max_size: int) -> bool:
    for poset in _census(1, min(4, max_size)):
        for size in range(1, poset.n + 1):
            for subset in combinations(range(poset.n), size):
                if not is_convex(poset, subset):
                    continue
                for ext in enumerate_extensions(induced_subposet(poset, subset)):
                    lifted, shift = lift_extension(poset, subset, ext)
                    labels = lifted.labels
                    if any(labels[subset[x]] != label + shift for x, label in enumerate(ext.labels)):
                        return _fail(f"lift of {ext.word} into {poset} on {subset}")
    return True


# ---------------------------------------------------------------------------
# Engine self-consistency
# ---------------------------------------------------------------------------


@suite_item("engine_self_consistency")
def engine_self_consistency(max_size: int) -> bool:
    for n in range(min(6, max_size) + 1):
        if len(list(all_posets(n))) != CENSUS.BY_SIZE[n]:
            return _fail(f"census count differs at n={n}")
    for poset in _census(1, min(5, max_size)):
        group = bk_group(poset)
        if group.degree > 24:
            continue
        if bk_group(poset, recognize_giants=False).order != group.order:
            return _fail(f"giant recognition changes the order of {poset}")
        closure = brute_force_order(group.degree, group.perms)
        if closure is not None and closure != group.order:
            return _fail(f"closure has {closure} elements, chain order is {group.order} for {poset}")
    return True


@log_method
def verify_suite(max_size: int | None = None, budget: float | None = None) -> SuiteReport:
    """
    Run every registered check. ``budget`` (seconds) marks the checks left
    after it is spent as skipped; a check hitting a size cap is skipped too.
    """
    max_size = max_size or settings.verify_max_size
    start = time.perf_counter()
    items = []
    for check in SUITE:
        if budget is not None and time.perf_counter() - start > budget:
            items.append(SuiteItem(name=check.name, status="skipped", seconds=0.0, detail="time budget spent"))
            continue
        logger.info(f"📋 Running {check.name}")
        began = time.perf_counter()
        try:
            status, detail = ("pass" if check.run(max_size) else "fail"), ""
        except CapError as error:
            status, detail = "skipped", str(error)
        except BKError as error:
            status, detail = "fail", f"{type(error).__name__}: {error}"
        items.append(
            SuiteItem(name=check.name, status=status, seconds=round(time.perf_counter() - began, 3), detail=detail)
        )
    return SuiteReport(items=items)
