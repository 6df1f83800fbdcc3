"""
Tests for the poset census and per-class classification.
"""

import logging
from itertools import combinations

import networkx as nx
import pytest

from bkposets.errors import CapError, ParamError
from bkposets.poset import antichain, canonical_form, chain, disjoint_union, from_covers, is_isomorphic
from bkposets.scan import PROPERTIES, ScanFilter, all_posets, classify, classify_poset
from config import settings
from utils.constants import CENSUS

logger = logging.getLogger(__name__)


def _labelled_orders(n: int) -> list[nx.DiGraph]:
    """Every transitively closed relation a < b on naturally labelled ids, one graph per isomorphism class."""
    pairs = list(combinations(range(n), 2))
    classes: list[nx.DiGraph] = []
    for mask in range(1 << len(pairs)):
        graph = nx.DiGraph()
        graph.add_nodes_from(range(n))
        graph.add_edges_from(pair for bit, pair in enumerate(pairs) if mask >> bit & 1)
        closed = all(graph.has_edge(a, c) for a, b in graph.edges for c in graph.successors(b))
        if closed and not any(nx.is_isomorphic(graph, seen) for seen in classes):
            classes.append(graph)
    return classes


class TestCensus:
    """Test suite for one-per-class poset generation."""

    @pytest.mark.smoke
    @pytest.mark.census
    @pytest.mark.parametrize("n", range(0, 6))
    def test_class_counts(self, n) -> None:
        assert len(list(all_posets(n))) == CENSUS.BY_SIZE[n]

    @pytest.mark.slow
    @pytest.mark.census
    def test_class_count_six(self) -> None:
        assert len(list(all_posets(6))) == CENSUS.BY_SIZE[6]

    @pytest.mark.regression
    @pytest.mark.census
    @pytest.mark.parametrize("n", range(0, 6))
    def test_matches_brute_force_classes(self, n) -> None:
        """Brute-force labelled orders deduplicated by isomorphism pair up one-to-one with the census."""
        logger.info(f"📋 Step 1: Brute-force the order classes on {n} elements")
        expected = _labelled_orders(n)

        logger.info("📋 Step 2: Match every census poset to exactly one class")
        census = [nx.transitive_closure(poset.to_digraph()) for poset in all_posets(n)]
        assert len(census) == len(expected)
        for graph in census:
            assert sum(nx.is_isomorphic(graph, other) for other in expected) == 1
        for other in expected:
            assert sum(nx.is_isomorphic(graph, other) for graph in census) == 1

    @pytest.mark.regression
    @pytest.mark.census
    def test_two_element_classes(self) -> None:
        found = list(all_posets(2))
        assert {canonical_form(p) for p in found} == {canonical_form(antichain(2)), canonical_form(chain(2))}

    @pytest.mark.regression
    @pytest.mark.census
    def test_classes_are_distinct_and_ordered(self) -> None:
        forms = [canonical_form(p) for p in all_posets(5)]
        assert forms == sorted(set(forms))

    @pytest.mark.regression
    def test_bounds(self) -> None:
        with pytest.raises(ParamError):
            list(all_posets(-1))
        with pytest.raises(CapError):
            list(all_posets(settings.census_cap + 1))


class TestScanFilter:
    """Test suite for structural and property filters."""

    @pytest.mark.smoke
    def test_unknown_property(self) -> None:
        with pytest.raises(ParamError):
            ScanFilter(require=("le-bogus",))

    @pytest.mark.regression
    def test_structural_match(self, two_chains, v_shape) -> None:
        connected = ScanFilter(connected=True)
        assert connected.structural_match(v_shape)
        assert not connected.structural_match(two_chains)
        assert ScanFilter(connected=False, series_parallel=True).structural_match(two_chains)

    @pytest.mark.regression
    def test_property_names(self) -> None:
        assert PROPERTIES == ("le-cactus", "le-symmetric", "le-primitive", "braid")


class TestClassify:
    """Test suite for census classification."""

    @pytest.mark.smoke
    def test_connected_cactus_failures_on_four_elements(self) -> None:
        """Exactly three connected 4-element classes fail a cactus relation."""
        logger.info("📋 Step 1: Scan n = 4")
        records = classify(4, ScanFilter(connected=True, exclude=("le-cactus",)))

        logger.info("📋 Step 2: Check every record")
        assert len(records) == 3
        for record in records:
            assert record.connected
            assert not record.report.le_cactus
            assert [(f.i, f.j, f.k) for f in record.report.cactus_failures] == [(1, 3, 4)]

    @pytest.mark.regression
    def test_disconnected_symmetric(self) -> None:
        records = classify(3, ScanFilter(connected=False, require=("le-symmetric",)))
        assert len(records) == 1
        poset = from_covers(records[0].n, records[0].covers)
        assert is_isomorphic(poset, disjoint_union(chain(2), antichain(1)))

    @pytest.mark.regression
    def test_braid_property(self) -> None:
        records = classify(3, ScanFilter(require=("braid",)))
        # A_3, C_3 and C_2 + A_1
        assert len(records) == 3
        assert all(not record.report.braid_failures for record in records)

    @pytest.mark.regression
    def test_records_carry_groups(self) -> None:
        records = classify(2)
        assert len(records) == 2
        orders = sorted(record.group.order for record in records)
        assert orders == [1, 2]
        assert all(record.skipped is None for record in records)

    @pytest.mark.regression
    def test_worker_count_does_not_change_output(self) -> None:
        sequential = [record.model_dump_json() for record in classify(4, threads=1)]
        parallel = [record.model_dump_json() for record in classify(4, threads=3)]
        assert sequential == parallel
        assert len(sequential) == CENSUS.BY_SIZE[4]

    @pytest.mark.regression
    def test_over_cap_is_skipped(self, monkeypatch) -> None:
        monkeypatch.setattr(settings, "max_degree", 2)
        record = classify_poset(antichain(3))
        assert record.skipped is not None
        assert record.report is None
        assert record.group is None

    @pytest.mark.regression
    def test_skipped_records_pass_property_filters(self, monkeypatch) -> None:
        monkeypatch.setattr(settings, "max_degree", 2)
        records = classify(3, ScanFilter(require=("le-cactus",)))
        assert any(record.skipped for record in records)
