"""
Tests for linear extensions, BK moves, promotion, evacuation and the
extension graph.
"""

import logging
from collections import Counter

import networkx as nx
import pytest
from hypothesis import given, settings as hypothesis_settings

from bkposets import words
from bkposets.errors import ComponentError, DegreeCapError, LabelIndexError, ParamError
from bkposets.families import ferrers
from bkposets.linext import (
    LinearExtension,
    apply_word,
    bk_move,
    count_extensions,
    enumerate_extensions,
    evacuation,
    evacuation_label_law,
    export_dot,
    is_linear_extension,
    lift_extension,
    linext_graph,
    promotion,
    q_jk,
    qjk_component_law,
    t_action_on_decomposition,
    t_decompose,
    t_recompose,
)
from bkposets.poset import antichain, chain, disjoint_union, from_covers, ordinal_sum
from bkposets.scan import all_posets
from tests_bkposets.strategies import posets
from utils.constants import REFERENCE

logger = logging.getLogger(__name__)


def _small_census(high: int):
    for n in range(1, high + 1):
        yield from all_posets(n)


class TestEnumeration:
    """Test suite for enumerating L(P)."""

    @pytest.mark.smoke
    def test_butterfly_extensions(self, butterfly_space) -> None:
        """Verify the four extensions of a, b < c, d in lexicographic order."""
        assert butterfly_space.word_lists() == [[0, 1, 2, 3], [0, 1, 3, 2], [1, 0, 2, 3], [1, 0, 3, 2]]
        assert butterfly_space.position((1, 0, 2, 3)) == 2
        assert str(butterfly_space[3]) == "1-0-3-2"

    @pytest.mark.smoke
    @pytest.mark.parametrize(
        "poset,count",
        [(chain(5), 1), (antichain(3), 6), (ferrers((3, 2)), 5), (antichain(0), 1)],
    )
    def test_counts(self, poset, count) -> None:
        assert len(enumerate_extensions(poset)) == count
        assert count_extensions(poset) == count

    @pytest.mark.regression
    def test_degree_cap(self) -> None:
        logger.info("📋 Step 1: A_4 has 24 extensions, above a cap of 10")
        with pytest.raises(DegreeCapError) as error:
            enumerate_extensions(antichain(4), cap=10)
        assert error.value.count == 24
        assert error.value.cap == 10

    @pytest.mark.regression
    def test_unknown_word(self, butterfly_space) -> None:
        with pytest.raises(ParamError):
            butterfly_space.position((2, 0, 1, 3))

    @pytest.mark.regression
    def test_labels_round_trip(self) -> None:
        ext = LinearExtension.of([2, 0, 1])
        assert ext.labels == (2, 3, 1)
        assert LinearExtension.from_labels(ext.labels) == ext

    @pytest.mark.regression
    @hypothesis_settings(max_examples=50)
    @given(posets(max_size=6))
    def test_enumeration_matches_count(self, poset) -> None:
        space = enumerate_extensions(poset)
        assert len(space) == count_extensions(poset)
        assert all(is_linear_extension(poset, ext.word) for ext in space)
        assert space.word_lists() == sorted(space.word_lists())


class TestMoves:
    """Test suite for t_i, ∂_i, q_i and q_jk on single extensions."""

    @pytest.mark.smoke
    def test_butterfly_t1(self, butterfly) -> None:
        ext = LinearExtension.of([1, 0, 3, 2])
        assert bk_move(butterfly, ext, 1).word == (0, 1, 3, 2)
        assert bk_move(butterfly, ext, 2) == ext

    @pytest.mark.regression
    def test_chain_moves_are_trivial(self) -> None:
        ext = LinearExtension.of(range(4))
        assert all(bk_move(chain(4), ext, i) == ext for i in range(1, 4))

    @pytest.mark.regression
    @pytest.mark.parametrize("i", [0, 4, -1])
    def test_move_index_range(self, butterfly, i) -> None:
        with pytest.raises(LabelIndexError):
            bk_move(butterfly, LinearExtension.of(range(4)), i)

    @pytest.mark.regression
    def test_other_index_errors(self, butterfly) -> None:
        ext = LinearExtension.of(range(4))
        with pytest.raises(LabelIndexError):
            promotion(butterfly, ext, 4)
        with pytest.raises(LabelIndexError):
            q_jk(butterfly, ext, 3, 3)
        with pytest.raises(LabelIndexError):
            q_jk(butterfly, ext, 2, 5)

    @pytest.mark.regression
    def test_empty_poset_index_zero(self) -> None:
        """∂_0 and q_0 fix the single extension of the empty poset; q_jk does not exist."""
        empty = antichain(0)
        ext = LinearExtension.of([])
        assert promotion(empty, ext, 0) == ext
        assert evacuation(empty, ext, 0) == ext
        assert words.is_identity(enumerate_extensions(empty).evacuations[0])
        with pytest.raises(LabelIndexError):
            promotion(empty, ext, 1)
        with pytest.raises(LabelIndexError):
            q_jk(empty, ext, 0, 1)

    @pytest.mark.smoke
    def test_promotion_by_sliding(self) -> None:
        """On A_3, ∂_2 sends (0,1,2) to (1,2,0)."""
        ext = LinearExtension.of([0, 1, 2])
        assert promotion(antichain(3), ext, 2).word == (1, 2, 0)
        assert promotion(antichain(3), ext, 0) == ext
        assert evacuation(antichain(3), ext, 0) == ext

    @pytest.mark.regression
    def test_promotion_equals_move_word(self) -> None:
        """∂_i agrees with t_i t_{i-1} ... t_1 on every census poset up to size 5."""
        for poset in _small_census(5):
            for ext in enumerate_extensions(poset):
                for i in range(1, poset.n):
                    assert promotion(poset, ext, i) == apply_word(poset, ext, list(range(i, 0, -1)))

    @pytest.mark.regression
    def test_evacuations_are_involutions(self) -> None:
        for poset in _small_census(5):
            for ext in enumerate_extensions(poset):
                for i in range(poset.n):
                    assert evacuation(poset, evacuation(poset, ext, i), i) == ext

    @pytest.mark.regression
    def test_qjk_trivial_above_a_point(self) -> None:
        """q_{j,j+1} is the identity on A_1 ⊕ P."""
        for poset in _small_census(3):
            raised = ordinal_sum(antichain(1), poset)
            for ext in enumerate_extensions(raised):
                for j in range(1, raised.n):
                    assert q_jk(raised, ext, j, j + 1) == ext

    @pytest.mark.regression
    def test_arrays_match_single_operators(self, butterfly, butterfly_space) -> None:
        """Permutation arrays agree with the word-level operators."""
        for position, ext in enumerate(butterfly_space):
            for i in range(1, 4):
                moved = butterfly_space.moves[i - 1][position]
                assert butterfly_space[int(moved)] == bk_move(butterfly, ext, i)
            for i in range(4):
                moved = butterfly_space.evacuations[i][position]
                assert butterfly_space[int(moved)] == evacuation(butterfly, ext, i)
            moved = butterfly_space.qjk(2, 4)[position]
            assert butterfly_space[int(moved)] == q_jk(butterfly, ext, 2, 4)

    @pytest.mark.regression
    def test_q_pair_degenerate_indices(self, butterfly_space) -> None:
        identity = words.identity(butterfly_space.degree)
        assert words.is_identity(butterfly_space.q_pair(1, 0))
        assert (butterfly_space.q_pair(0, 3) == butterfly_space.evacuations[3]).all()
        assert (butterfly_space.evacuation_or_identity(-2) == identity).all()


class TestDecomposition:
    """Test suite for splitting extensions of P + Q into component data."""

    @pytest.fixture(autouse=True)
    def setup(self):
        logger.info("🔧 Setting up the six- and four-element components")
        self.p = from_covers(6, REFERENCE.T_DECOMPOSE_P)
        self.q = from_covers(4, REFERENCE.T_DECOMPOSE_Q)
        self.ext = LinearExtension.of(REFERENCE.T_DECOMPOSE_WORD)
        logger.info("✅ Setup complete")

    @pytest.mark.smoke
    def test_label_sets(self) -> None:
        d = t_decompose(self.p, self.q, self.ext)
        assert d.labels_p == REFERENCE.T_DECOMPOSE_SP
        assert d.labels_q == REFERENCE.T_DECOMPOSE_SQ
        assert d.ell_p.word == (0, 1, 2, 4, 3, 5)
        assert d.ell_q.word == (0, 1, 2, 3)

    @pytest.mark.regression
    def test_recompose(self) -> None:
        d = t_decompose(self.p, self.q, self.ext)
        assert t_recompose(self.p, self.q, d) == self.ext

    @pytest.mark.regression
    def test_action_transports(self) -> None:
        """t_3 exchanges labels 3 and 4 between the components."""
        logger.info("📋 Step 1: Act through the decomposition")
        d = t_decompose(self.p, self.q, self.ext)
        moved = t_action_on_decomposition(self.p, self.q, d, 3)
        assert moved.labels_p == REFERENCE.T_DECOMPOSE_SP_AFTER_T3

        logger.info("📋 Step 2: Compare with acting on the whole word")
        union = disjoint_union(self.p, self.q)
        for i in range(1, union.n):
            direct = t_decompose(self.p, self.q, bk_move(union, self.ext, i))
            assert t_action_on_decomposition(self.p, self.q, d, i) == direct

    @pytest.mark.regression
    def test_foreign_word_rejected(self) -> None:
        with pytest.raises(ComponentError):
            t_decompose(self.p, self.q, LinearExtension.of(range(9, -1, -1)))

    @pytest.mark.regression
    def test_empty_component(self) -> None:
        d = t_decompose(chain(2), antichain(0), LinearExtension.of([0, 1]))
        assert d.labels_p == (1, 2)
        assert d.labels_q == ()

    @pytest.mark.regression
    @pytest.mark.parametrize(
        "left,right",
        [(chain(1), chain(2)), (antichain(2), chain(1)), (chain(2), antichain(2)), (antichain(0), chain(2))],
    )
    def test_component_laws(self, left, right) -> None:
        assert evacuation_label_law(left, right)
        assert qjk_component_law(left, right)


class TestLifting:
    """Test suite for lifting extensions of convex subposets."""

    @pytest.mark.regression
    def test_lift_shifts_labels(self, butterfly) -> None:
        lifted, shift = lift_extension(butterfly, [1, 3], LinearExtension.of([0, 1]))
        assert shift == 1
        assert lifted.labels[1] == 2
        assert lifted.labels[3] == 3

    @pytest.mark.regression
    def test_non_convex_rejected(self) -> None:
        with pytest.raises(ParamError):
            lift_extension(chain(3), [0, 2], LinearExtension.of([0, 1]))


class TestGraph:
    """Test suite for the linear extension graph."""

    @pytest.mark.smoke
    def test_butterfly_graph_is_a_square(self, butterfly) -> None:
        """Verify four vertices, two t_1 edges and two t_3 edges forming a 4-cycle."""
        graph = linext_graph(butterfly)
        assert graph.number_of_nodes() == 4
        assert graph.number_of_edges() == 4
        assert nx.is_isomorphic(graph, nx.cycle_graph(4))
        assert Counter(label for _, _, label in graph.edges(data="label")) == {1: 2, 3: 2}

    @pytest.mark.regression
    def test_chain_graph(self) -> None:
        graph = linext_graph(chain(4))
        assert graph.number_of_nodes() == 1
        assert graph.number_of_edges() == 0

    @pytest.mark.regression
    def test_dot_export(self, butterfly) -> None:
        text = export_dot(linext_graph(butterfly))
        lines = text.splitlines()
        assert lines[0] == "graph linext {"
        assert lines[-1] == "}"
        assert '  "0-1-2-3" -- "0-1-3-2" [label="t3"];' in lines
        assert '  "0-1-2-3" -- "1-0-2-3" [label="t1"];' in lines
        assert text == export_dot(linext_graph(butterfly))
