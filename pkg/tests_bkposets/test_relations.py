"""
Tests for relation checks and the poset predicates built on them.
"""

import logging

import pytest

from bkposets.families import ferrers, n_poset, named, partitions, zigzag
from bkposets.poset import antichain, chain, disjoint_union, ordinal_decomposition, ordinal_sum
from bkposets.relations import (
    braid_failures,
    braid_holds,
    cactus_failures,
    cactus_holds,
    check_numeric_laws,
    comparability,
    convex_braid_inheritance,
    eligible_triples,
    generators_independent,
    is_indecomposable,
    is_le_cactus,
    is_le_primitive,
    is_le_symmetric,
    is_ordinal_sum_of_antichains,
    order_ideal_criterion,
    relation_report,
    stab_size,
    trivial_moves,
    universal_relations_hold,
)
from bkposets.scan import all_posets
from utils.constants import REFERENCE

logger = logging.getLogger(__name__)


class TestGeneratorRelations:
    """Test suite for trivial moves, braid and universal relations."""

    @pytest.mark.smoke
    @pytest.mark.parametrize(
        "poset,expected",
        [
            (chain(4), {1, 2, 3}),
            (n_poset(1, 1, 1), set()),
            (ordinal_sum(antichain(2), antichain(2)), {2}),
        ],
    )
    def test_trivial_moves(self, poset, expected) -> None:
        assert trivial_moves(poset) == expected

    @pytest.mark.regression
    def test_trivial_moves_are_split_points(self) -> None:
        for n in range(1, 6):
            for poset in all_posets(n):
                assert trivial_moves(poset) == set(ordinal_decomposition(poset).split_points)

    @pytest.mark.smoke
    def test_braid(self, v_shape) -> None:
        assert braid_holds(disjoint_union(chain(2), chain(3)))
        assert braid_holds(chain(5))
        assert not braid_holds(v_shape)
        assert braid_failures(v_shape) == [1]

    @pytest.mark.regression
    def test_universal_relations(self) -> None:
        for n in range(1, 5):
            assert all(universal_relations_hold(poset) for poset in all_posets(n))

    @pytest.mark.regression
    def test_convex_braid_inheritance(self, butterfly) -> None:
        assert convex_braid_inheritance(butterfly)
        assert convex_braid_inheritance(named("cactus5"))


class TestCactusRelations:
    """Test suite for cactus failures and LE-cactus posets."""

    @pytest.mark.smoke
    def test_eligible_triples(self) -> None:
        assert list(eligible_triples(4)) == [(1, 3, 4)]
        assert list(eligible_triples(5)) == [(1, 3, 4), (1, 3, 5), (1, 4, 5), (2, 4, 5)]
        assert list(eligible_triples(3)) == []

    @pytest.mark.smoke
    def test_antichain_sum_fails(self, antichain_sum) -> None:
        """A_3 ⊕ A_1 fails (t_1 q_34)² = 1."""
        logger.info("📋 Step 1: Collect cactus failures")
        failures = cactus_failures(antichain_sum)

        logger.info("📋 Step 2: Check the failing triple")
        assert [(f.i, f.j, f.k) for f in failures] == [REFERENCE.A3_A1_TRIPLE]
        assert not cactus_holds(antichain_sum, *REFERENCE.A3_A1_TRIPLE)
        assert not is_le_cactus(antichain_sum)

    @pytest.mark.regression
    def test_witness_is_moved(self, antichain_sum) -> None:
        failure = cactus_failures(antichain_sum)[0]
        assert 0 <= failure.witness < 6

    @pytest.mark.regression
    def test_five_element_counterexample(self) -> None:
        failures = cactus_failures(named("cactus5"))
        assert [(f.i, f.j, f.k) for f in failures] == list(eligible_triples(5))

    @pytest.mark.regression
    def test_ferrers_posets_are_le_cactus(self) -> None:
        for size in range(1, 6):
            for shape in partitions(size):
                assert is_le_cactus(ferrers(shape)), shape

    @pytest.mark.regression
    def test_small_posets_are_vacuously_le_cactus(self) -> None:
        assert is_le_cactus(zigzag(3))
        assert cactus_failures(antichain(3)) == []

    @pytest.mark.regression
    def test_first_only(self) -> None:
        assert len(cactus_failures(named("cactus5"), first_only=True)) == 1

    @pytest.mark.regression
    def test_order_ideal_criterion(self) -> None:
        for n in range(1, 5):
            assert all(order_ideal_criterion(poset) for poset in all_posets(n))


class TestGroupPredicates:
    """Test suite for LE-symmetric and LE-primitive posets."""

    @pytest.mark.smoke
    def test_le_symmetric(self, two_chains, chain_plus_point) -> None:
        assert is_le_symmetric(n_poset(1, 2, 1))
        assert is_le_symmetric(chain_plus_point)
        assert not is_le_symmetric(two_chains)

    @pytest.mark.regression
    def test_le_primitive(self, two_chains) -> None:
        assert is_le_primitive(disjoint_union(chain(1), chain(2)))
        assert is_le_primitive(disjoint_union(antichain(1), antichain(1)))
        assert not is_le_primitive(two_chains)

    @pytest.mark.regression
    def test_generators_independent(self) -> None:
        assert generators_independent(n_poset(1, 1, 1))
        assert generators_independent(ordinal_sum(antichain(2), antichain(2)))


class TestNumericInvariants:
    """Test suite for stabilizer sizes, comparability and size laws."""

    @pytest.mark.smoke
    def test_stab_size(self, two_chains) -> None:
        assert stab_size(ordinal_sum(antichain(2), antichain(2))) == 1
        assert stab_size(two_chains) == 4

    @pytest.mark.slow
    def test_large_stab_size(self) -> None:
        """(A_3 ⊕ A_1 ⊕ A_1) + A_1 has stabilizers of order 466560."""
        base = ordinal_sum(ordinal_sum(antichain(3), antichain(1)), antichain(1))
        assert stab_size(disjoint_union(base, antichain(1))) == REFERENCE.STAB_ANTICHAIN_SUM_PLUS_POINT

    @pytest.mark.smoke
    @pytest.mark.parametrize("k", [1, 3, 5])
    def test_comparability(self, k) -> None:
        assert comparability(antichain(k)) == 0
        assert comparability(chain(k)) == k - 1

    @pytest.mark.regression
    def test_structural_predicates(self, v_shape) -> None:
        assert is_ordinal_sum_of_antichains(v_shape)
        assert not is_ordinal_sum_of_antichains(n_poset(1, 1, 1))
        assert is_indecomposable(n_poset(1, 1, 1))
        assert not is_indecomposable(v_shape)
        assert not is_indecomposable(antichain(0))

    @pytest.mark.regression
    def test_laws_on_single_poset(self) -> None:
        laws = check_numeric_laws(n_poset(1, 1, 1))
        assert False not in laws.values()
        assert laws["stab_comparability_bound"] is True

        laws = check_numeric_laws(chain(3))
        assert laws["stab_comparability_bound"] is None

    @pytest.mark.regression
    def test_laws_on_pairs(self) -> None:
        logger.info("📋 Step 1: P = Q = A_2")
        laws = check_numeric_laws(antichain(2), antichain(2))
        assert laws["disjoint_union_bound"] is True
        assert laws["ordinal_sum_order"] is True
        assert laws["ordinal_sum_stab"] is True

        logger.info("📋 Step 2: Mixed pair")
        laws = check_numeric_laws(chain(2), n_poset(1, 1, 1))
        assert False not in laws.values()

    @pytest.mark.regression
    def test_laws_over_census(self) -> None:
        for n in range(1, 6):
            for poset in all_posets(n):
                assert False not in check_numeric_laws(poset).values(), poset


class TestRelationReport:
    """Test suite for the full relation report."""

    @pytest.mark.smoke
    def test_report(self, antichain_sum) -> None:
        report = relation_report(antichain_sum)
        assert report.degree == 6
        assert report.trivial_ti == (3,)
        assert not report.le_cactus
        assert [(f.i, f.j, f.k) for f in report.cactus_failures] == [(1, 3, 4)]
        assert report.stab_size == 1
        assert report.order == 6
