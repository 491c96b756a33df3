"""
Tests for the polytopes of a pair, the maps between them and flow counting.
"""
import pytest

from ij_tamari.algebra import LengthOrder, build_reduction_tree
from ij_tamari.errors import InvariantViolation, ReductionError, ResourceLimitError, SpaceMismatchError
from ij_tamari.geometry import (EDGE, FLOW, PAIR, ROOT, LatticeVertex, VertexSetPolytope, count_integer_flows,
                                ehrhart_polynomial, facet_route_sets, facet_simplices, flow_polytope_vertices,
                                integer_rank, lattice_index, mu, normalized_volume, P_polytope_vertices, phi1, phi2,
                                pi1, pi2, polytopes_of, route_vertex, S_polytope_vertices, U_polytope_vertices,
                                verify_reduction_lemma, verify_theorem_3_1)
from ij_tamari.graphs import ProvEdge, Route
from ij_tamari.ij_construction import OrderedElement, build_G, build_Ghat, validate_pair

ROUTE_1_8 = Route(((1, 2), (2, 5), (5, 8)), 1, 8)


class TestPolytopes:
    """Vertex sets and dimensions."""

    def test_running_dimensions(self, running_pair):
        """F and U have dimension 7, S and P dimension 5."""
        polytopes = polytopes_of(running_pair)
        assert polytopes[FLOW].dim == 7
        assert polytopes[PAIR].dim == 7
        assert polytopes[EDGE].dim == 5
        assert polytopes[ROOT].dim == 5

    def test_running_vertex_counts(self, running_pair):
        """Fifteen routes and arcs; twelve paths and quotient edges plus the origin."""
        assert len(flow_polytope_vertices(build_Ghat(running_pair)).vertices) == 15
        assert len(U_polytope_vertices(running_pair).vertices) == 15
        assert len(S_polytope_vertices(build_G(running_pair), running_pair).vertices) == 13
        assert len(P_polytope_vertices(running_pair).vertices) == 13

    def test_single_point(self, tiny_pair):
        """One cone route gives a point."""
        assert flow_polytope_vertices(build_Ghat(tiny_pair)).dim == 0
        assert U_polytope_vertices(tiny_pair).dim == 0

    def test_repeated_vertex_rejected(self):
        """A vertex list may not repeat a point."""
        point = LatticeVertex.of(ROOT, {1: 1})
        with pytest.raises(InvariantViolation):
            VertexSetPolytope.from_vertices(ROOT, [point, point])

    def test_wrong_space_rejected(self):
        """Every vertex must live in the polytope's space."""
        with pytest.raises(SpaceMismatchError):
            VertexSetPolytope.from_vertices(EDGE, [LatticeVertex.of(ROOT, {1: 1})])

    def test_matrix_text(self, small_pair):
        """The header names the coordinates."""
        text = U_polytope_vertices(small_pair).to_matrix_text()
        assert text.splitlines()[0] == "# 1 2 2b 3b 4b"
        assert len(text.splitlines()) == 7

    def test_rank_and_index(self):
        """2e1 and e2 span a sublattice of index 2."""
        assert integer_rank([[2, 0], [0, 1]]) == 2
        assert lattice_index([[2, 0], [0, 1]]) == 2
        assert lattice_index([[1, 1], [0, 1]]) == 1
        assert lattice_index([]) == 1


class TestMaps:
    """phi1, phi2, pi1, pi2 and mu on the running pair."""

    def test_phi1(self, running_pair):
        """The route (s,1,2,5,8,t) goes to e_1 + e_8bar."""
        image = phi1(ROUTE_1_8, running_pair)
        assert image == LatticeVertex.of(PAIR, {OrderedElement(1, False): 1, OrderedElement(8, True): 1})

    def test_phi1_through_prec_inverse(self, running_pair):
        """Exit vertex 5 is prec(7bar)."""
        image = phi1(Route(((3, 5),), 3, 5), running_pair)
        assert image.get(OrderedElement(7, True)) == 1

    def test_square_commutes_on_a_route(self, running_pair):
        """pi2(phi1(r)) = phi2(pi1(r)) = e_1 - e_8."""
        expected = LatticeVertex.of(ROOT, {1: 1, 8: -1})
        assert pi2(phi1(ROUTE_1_8, running_pair), running_pair) == expected
        assert phi2(pi1(route_vertex(ROUTE_1_8))) == expected

    def test_pi1_drops_boundary_coordinates(self):
        """Only the inner edges remain."""
        projected = pi1(route_vertex(ROUTE_1_8))
        assert projected == LatticeVertex.of(EDGE, {(1, 2): 1, (2, 5): 1, (5, 8): 1})

    def test_pi2_outside_jbar(self, running_pair):
        """A barred element outside Jbar maps to minus its own unbarred copy."""
        vertex = LatticeVertex.of(PAIR, {OrderedElement(3, True): 1})
        assert pi2(vertex, running_pair) == LatticeVertex.of(ROOT, {3: -1})

    def test_maps_check_their_space(self, running_pair):
        """pi1 takes flow vectors only."""
        with pytest.raises(SpaceMismatchError):
            pi1(phi1(ROUTE_1_8, running_pair))

    def test_mu(self, running_pair):
        """An edge carrying a path becomes the route along it."""
        ag = build_Ghat(running_pair)
        edge = ProvEdge(1, 8, ((1, 2), (2, 5), (5, 8)))
        assert mu(edge, ag) == ROUTE_1_8

    def test_vertex_label(self):
        """Labels list coordinates with signs."""
        assert LatticeVertex.of(ROOT, {1: 1, 8: -1}).label() == "e1 - e8"
        assert LatticeVertex.origin(ROOT).label() == "0"


class TestCommutingDiagram:
    """The verifier of the commuting square."""

    def test_running_pair(self, running_pair):
        """Every check passes on the running pair."""
        report = verify_theorem_3_1(running_pair)
        assert report.passed, report.to_text()
        assert report.summary["dims"] == [7, 7, 5, 5]
        assert report.summary["vertices"] == [15, 15, 13, 13]

    @pytest.mark.parametrize("I, J", [([1, 2], [2, 3, 4]), ([1], [1]), ([1, 2], [3]), ([1, 3], [2, 4])])
    def test_small_pairs(self, I, J):
        """Small pairs, including a single cone point."""
        assert verify_theorem_3_1(validate_pair(I, J)).passed


class TestCounting:
    """Integer flows, Ehrhart polynomials and volumes."""

    def test_unit_flows_are_routes(self, running_pair):
        """At t = 1 the count is the number of routes."""
        ag = build_Ghat(running_pair)
        assert count_integer_flows(ag, 0) == 1
        assert count_integer_flows(ag, 1) == 15

    def test_volumes(self, running_pair, small_pair, tiny_pair):
        """Normalized volumes 16, 3 and 1."""
        assert normalized_volume(build_Ghat(running_pair)) == 16
        assert normalized_volume(build_Ghat(small_pair)) == 3
        assert normalized_volume(build_Ghat(tiny_pair)) == 1

    def test_ehrhart_polynomial_values(self, small_pair):
        """The interpolated polynomial reproduces the counts beyond the interpolation range."""
        ag = build_Ghat(small_pair)
        polynomial = ehrhart_polynomial(ag)
        assert polynomial.degree() == 3
        assert polynomial.eval(5) == count_integer_flows(ag, 5)

    def test_negative_dilation(self, small_pair):
        """Dilations are nonnegative."""
        with pytest.raises(ValueError):
            count_integer_flows(build_Ghat(small_pair), -1)

    def test_overflow_guard(self, running_pair):
        """Counts above the bound raise."""
        with pytest.raises(ResourceLimitError):
            count_integer_flows(build_Ghat(running_pair), 3, max_count=10)


class TestTriangulation:
    """Facets and the reduction lemma."""

    def test_running_facets_are_unimodular(self, running_pair):
        """Sixteen unimodular facets in both spaces."""
        tree = build_reduction_tree(build_G(running_pair), LengthOrder())
        polytopes = polytopes_of(running_pair)
        for space in (FLOW, PAIR):
            simplices = facet_simplices(tree, space, running_pair)
            assert len(simplices) == 16
            assert all(s.is_unimodular_in(polytopes[space]) for s in simplices)

    def test_running_facet_route_table(self, running_pair):
        """The leaf x12x19x38x39x58 gives eight routes and their pair-space vertices."""
        tree = build_reduction_tree(build_G(running_pair), LengthOrder())
        leaves = [node.graph.endpoint_pairs() for node in tree.full_dimensional_leaves()]
        position = leaves.index([(1, 2), (1, 9), (3, 8), (3, 9), (5, 8)])
        route_set = facet_route_sets(tree, running_pair)[position]
        table = {r.label(): phi1(r, running_pair).label() for r in route_set}
        assert table == {
            "(s,1,2,t)": "e1 + e2b",
            "(s,1,2,5,9,t)": "e1 + e9b",
            "(s,3,5,8,t)": "e3 + e8b",
            "(s,3,5,9,t)": "e3 + e9b",
            "(s,5,8,t)": "e5 + e8b",
            "(s,2,t)": "e2 + e2b",
            "(s,5,t)": "e5 + e7b",
            "(s,9,t)": "e9 + e9b",
        }

    def test_facets_need_flow_or_pair_space(self, small_pair):
        """Other spaces are rejected."""
        tree = build_reduction_tree(build_G(small_pair), LengthOrder())
        with pytest.raises(SpaceMismatchError):
            facet_simplices(tree, EDGE, small_pair)

    def test_reduction_lemma_small(self, small_pair, small_graph):
        """F splits into two full pieces meeting in a facet."""
        report = verify_reduction_lemma(small_graph, ((1, 2), (2, 4)), small_pair)
        assert report.passed, report.to_text()
        assert report.summary["dims"] == [3, 3, 3, 2]

    def test_reduction_lemma_running_root(self, running_pair):
        """The first length-order reduction of the running G."""
        g = build_G(running_pair)
        assert verify_reduction_lemma(g, ((1, 2), (2, 5)), running_pair).passed

    def test_reduction_lemma_needs_a_pair(self, small_pair, small_graph):
        """The pair must be a non-alternating pair of the parent."""
        with pytest.raises(ReductionError):
            verify_reduction_lemma(small_graph, ((1, 3), (3, 4)), small_pair)


if __name__ == "__main__":
    pytest.main([__file__])
