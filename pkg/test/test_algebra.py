"""
Tests for graph reductions, reduction trees and reduced forms.
"""
import pytest

from ij_tamari.algebra import (BetaPolynomial, CustomOrder, LeftmostOrder, LengthOrder, LongestPairOrder, Monomial,
                               build_reduction_tree, coefficient_list, evaluate_at_one, leftmost_pick, length_pick,
                               longest_pair_at, monomial_of, non_alternating_pairs, reduce_graph, reduced_form,
                               reduced_form_of_tree, shift_beta)
from ij_tamari.errors import ReductionError, ResourceLimitError
from ij_tamari.graphs import ProvEdge, ProvGraph, is_noncrossing_graph

SMALL_FORM = [
    ({(1, 2): 1, (1, 3): 1, (1, 4): 1}, 0),
    ({(1, 3): 1, (1, 4): 1, (2, 3): 1}, 0),
    ({(1, 4): 1, (2, 3): 1, (2, 4): 1}, 0),
    ({(1, 3): 1, (1, 4): 1}, 1),
    ({(1, 4): 1, (2, 3): 1}, 1),
]


class TestReduction:
    """Single reductions and pair selection."""

    def test_non_alternating_pairs(self, small_graph):
        """Both pairs of the small graph go through vertex 2."""
        assert non_alternating_pairs(small_graph) == frozenset({((1, 2), (2, 3)), ((1, 2), (2, 4))})

    def test_reduce_graph_children(self, small_graph):
        """Reducing 12, 24 gives the three graphs of the relation."""
        g1, g2, g3 = reduce_graph(small_graph, (1, 2), (2, 4))
        assert g1.endpoint_pairs() == [(1, 2), (1, 4), (2, 3)]
        assert g2.endpoint_pairs() == [(1, 4), (2, 3), (2, 4)]
        assert g3.endpoint_pairs() == [(1, 4), (2, 3)]
        assert g3.first_edge((1, 4)).provenance == ((1, 2), (2, 4))

    def test_reduce_graph_rejects_absent_pair(self, small_graph):
        """The pair 13, 34 is not in the graph."""
        with pytest.raises(ReductionError):
            reduce_graph(small_graph, (1, 3), (3, 4))

    def test_reduce_graph_rejects_bad_shape(self, small_graph):
        """Edges that do not meet head to tail are not a pair."""
        with pytest.raises(ReductionError):
            reduce_graph(small_graph, (2, 3), (2, 4))

    def test_reduce_consumes_one_parallel_copy(self):
        """With two copies of 13 one survives in every child."""
        g = ProvGraph.build([1, 2, 3, 4],
                            [ProvEdge.base(1, 3), ProvEdge(1, 3, ((1, 2), (2, 3))), ProvEdge.base(3, 4)],
                            [(1, 2), (2, 3), (1, 3), (3, 4)])
        g1, g2, g3 = reduce_graph(g, (1, 3), (3, 4))
        assert g1.multiplicities()[(1, 3)] == 2
        assert g3.endpoint_pairs() == [(1, 3), (1, 4)]
        assert g3.first_edge((1, 4)).provenance == ((1, 2), (2, 3), (3, 4))

    def test_picks(self, small_graph):
        """The length order takes the longest pair; leftmost the smallest head."""
        assert length_pick(small_graph) == ((1, 2), (2, 4))
        assert leftmost_pick(small_graph) == ((1, 2), (2, 3))
        assert longest_pair_at(small_graph, 3) is None

    def test_pick_on_alternating_graph(self):
        """There is nothing to pick in an alternating graph."""
        with pytest.raises(ReductionError):
            length_pick(ProvGraph.from_pairs([(1, 3), (2, 3)]))

    def test_unknown_leaf_policy(self):
        """Leaf policies are first, last or random."""
        with pytest.raises(ReductionError):
            LengthOrder("middle")


class TestReductionTree:
    """Trees and reduced forms of M_G."""

    def test_small_length_tree(self, small_graph):
        """Five leaves: three full-dimensional and two with one beta."""
        tree = build_reduction_tree(small_graph, LengthOrder())
        assert len(tree.leaf_indices) == 5
        assert tree.leaves_by_beta() == {0: 3, 1: 2}
        assert tree.steps == 2
        assert tree.root.pair == ((1, 2), (2, 4))
        assert [child.graph.endpoint_pairs() for child in tree.children_of(tree.root)][2] == [(1, 4), (2, 3)]

    def test_small_reduced_form(self, small_graph):
        """x12x23x24 reduces to three monomials plus two beta terms."""
        form = reduced_form(small_graph, LengthOrder())
        assert len(form) == 5
        for exponents, beta in SMALL_FORM:
            assert form.contains(exponents, beta)
        assert len(form.top_degree_part()) == 3
        assert "βx_{13}" not in form.render()
        assert "x_{13}x_{14}β" in form.render()

    def test_small_evaluation(self, small_graph):
        """p(1, beta) = 3 + 2 beta and p(1, beta - 1) = 1 + 2 beta."""
        at_one = evaluate_at_one(reduced_form(small_graph, LengthOrder()))
        assert coefficient_list(at_one) == [3, 2]
        assert coefficient_list(shift_beta(at_one, -1)) == [1, 2]

    def test_leaves_are_noncrossing_alternating(self, running_G):
        """Every leaf of the length order is non-crossing."""
        tree = build_reduction_tree(running_G, LengthOrder())
        assert len(tree.full_dimensional_leaves()) == 16
        assert all(is_noncrossing_graph(node.graph) for node in tree.leaves())

    def test_simple_tree(self, small_graph):
        """Without the third child only full-dimensional leaves remain."""
        tree = build_reduction_tree(small_graph, LengthOrder(), simple=True)
        assert tree.simple
        assert tree.leaves_by_beta() == {0: 3}

    def test_running_top_degree_part(self, running_G):
        """Sixteen degree-5 terms, x12x19x38x39x58 among them."""
        top = reduced_form(running_G, LengthOrder()).top_degree_part()
        assert len(top) == 16
        assert all(term.degree == 5 and term.beta_power == 0 for term in top.terms)
        assert top.contains({(1, 2): 1, (1, 9): 1, (3, 8): 1, (3, 9): 1, (5, 8): 1}, 0)

    @pytest.mark.parametrize("fixture", ["small_graph", "running_G"])
    def test_simple_tree_keeps_top_degree_part(self, fixture, request):
        """Dropping the third child leaves the full-dimensional terms unchanged."""
        g = request.getfixturevalue(fixture)
        simple_form = reduced_form_of_tree(build_reduction_tree(g, LengthOrder(), simple=True))
        full_form = reduced_form(g, LengthOrder())
        assert simple_form == full_form.degree_part(len(g.edges))

    @pytest.mark.parametrize("simple, per_reduction", [(False, 2), (True, 1)])
    def test_each_reduction_adds_fixed_leaf_count(self, running_G, simple, per_reduction):
        """A leaf reduction replaces one leaf by three children, or two in a simple tree."""
        tree = build_reduction_tree(running_G, LengthOrder(), simple=simple)
        assert tree.leaf_reductions > 0
        assert len(tree.leaf_indices) == 1 + per_reduction * tree.leaf_reductions
        for node in tree.nodes:
            assert len(node.children) in (0, 1 + per_reduction)

    def test_reduction_relation_adds_two_terms(self, small_graph):
        """x12x24 = x12x14 + x14x24 + beta x14 turns one term of M_G into three."""
        children = reduce_graph(small_graph, (1, 2), (2, 4))
        expanded = BetaPolynomial.from_terms(monomial_of(child, beta) for child, beta in zip(children, (0, 0, 1)))
        assert len(expanded) == len(BetaPolynomial.from_terms([monomial_of(small_graph)])) + 2
        assert expanded.contains({(1, 2): 1, (1, 4): 1, (2, 3): 1}, 0)
        assert expanded.contains({(1, 4): 1, (2, 3): 1}, 1)

    def test_leftmost_order(self, small_graph):
        """Leftmost picks give a different reduced form with the same value at x = 1."""
        tree = build_reduction_tree(small_graph, LeftmostOrder())
        form = reduced_form_of_tree(tree)
        assert form != reduced_form(small_graph, LengthOrder())
        assert form.contains({(1, 3): 1, (2, 4): 1}, 1)
        assert coefficient_list(evaluate_at_one(form)) == [3, 2]
        assert not all(is_noncrossing_graph(node.graph) for node in tree.leaves())

    def test_longest_pair_orders_agree(self, running_G):
        """Different longest-pair schedules give the same reduced form."""
        reference = reduced_form(running_G, LengthOrder())
        for order in (LengthOrder("last"), LengthOrder("random", seed=5), LongestPairOrder(seed=1)):
            assert reduced_form(running_G, order) == reference

    def test_custom_order(self, small_graph):
        """Replaying the length order's pairs gives its tree."""
        order = CustomOrder([((1, 2), (2, 4)), ((1, 2), (2, 3))])
        assert reduced_form(small_graph, order) == reduced_form(small_graph, LengthOrder())

    def test_custom_order_exhausted(self, small_graph):
        """The list must last until every leaf is alternating."""
        with pytest.raises(ReductionError):
            build_reduction_tree(small_graph, CustomOrder([((1, 2), (2, 4))]))

    def test_reduction_cap(self, small_graph):
        """Two leaf reductions do not fit under a cap of one."""
        with pytest.raises(ResourceLimitError):
            build_reduction_tree(small_graph, LengthOrder(), max_reductions=1)

    def test_alternating_root_is_a_leaf(self):
        """An alternating graph is its own reduced form."""
        g = ProvGraph.from_pairs([(1, 3), (2, 3)])
        tree = build_reduction_tree(g, LengthOrder())
        assert tree.leaf_indices == (0,)
        assert reduced_form_of_tree(tree).render() == "x_{13}x_{23}"


class TestPolynomials:
    """Monomials and beta polynomials."""

    def test_monomial_rendering(self):
        """Two-digit labels are separated by a comma."""
        assert Monomial((((3, 10), 1),)).render() == "x_{3,10}"
        assert Monomial((((1, 2), 2),), beta_power=2, coefficient=3).render() == "3x_{12}^2β^2"

    def test_monomial_of_parallel_edges(self):
        """Parallel edges become an exponent."""
        g = ProvGraph.build([1, 2, 3], [ProvEdge(1, 3, ((1, 2), (2, 3))), ProvEdge.base(1, 3)],
                            [(1, 2), (2, 3), (1, 3)])
        assert monomial_of(g).exponents == (((1, 3), 2),)

    def test_bad_exponent(self):
        """Exponents are positive."""
        with pytest.raises(ReductionError):
            Monomial((((1, 2), 0),))

    def test_terms_are_collected(self):
        """Equal monomials add their coefficients."""
        term = Monomial((((1, 2), 1),))
        total = BetaPolynomial.from_terms([term]) + BetaPolynomial.from_terms([term])
        assert len(total) == 1
        assert total.render() == "2x_{12}"

    def test_zero_polynomial(self):
        """The empty sum evaluates to the zero polynomial."""
        assert BetaPolynomial().render() == "0"
        assert coefficient_list(evaluate_at_one(BetaPolynomial())) == []


if __name__ == "__main__":
    pytest.main([__file__])
