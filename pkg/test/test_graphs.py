"""
Tests for the graphs module.
"""
import logging

import pytest

from ij_tamari.errors import GraphError, ProvenanceError
from ij_tamari.graphs import (ProvEdge, ProvGraph, Route, check_chain, directed_path, is_acyclic_undirected,
                              is_alternating, is_connected, is_noncrossing_graph, is_tree, partially_augment,
                              routes)


class TestProvGraph:
    """Construction and validation of provenance-carrying graphs."""

    def test_edge_requires_increasing_endpoints(self):
        """An edge must point from a smaller to a larger vertex."""
        with pytest.raises(GraphError):
            ProvEdge(3, 2, ((3, 2),))

    def test_edge_requires_provenance(self):
        """An edge with empty provenance is rejected."""
        with pytest.raises(ProvenanceError):
            ProvEdge(1, 2, ())

    def test_check_chain_rejects_broken_path(self):
        """Consecutive base edges must share endpoints."""
        with pytest.raises(ProvenanceError):
            check_chain(((1, 2), (3, 4)), 1, 4)
        check_chain(((1, 2), (2, 4)), 1, 4)

    def test_from_pairs_sorts_and_collects_vertices(self, small_graph):
        """Vertices come from the edges plus any extra vertices given."""
        g = ProvGraph.from_pairs([(2, 4), (1, 2), (2, 3)], vertices=[7])
        assert g.vertices == (1, 2, 3, 4, 7)
        assert g.endpoint_pairs() == [(1, 2), (2, 3), (2, 4)]
        assert small_graph.base_edges == frozenset({(1, 2), (2, 3), (2, 4)})

    def test_self_loop_rejected(self):
        """Loops are not edges of these graphs."""
        with pytest.raises(GraphError):
            ProvGraph.from_pairs([(1, 1)])

    def test_identical_parallel_edges_rejected(self):
        """Two edges with the same provenance are one edge listed twice."""
        with pytest.raises(GraphError):
            ProvGraph.build([1, 2], [ProvEdge.base(1, 2), ProvEdge.base(1, 2)], [(1, 2)])

    def test_unknown_base_edge_rejected(self):
        """Provenance may only use the graph's base edges."""
        with pytest.raises(ProvenanceError):
            ProvGraph.build([1, 2, 3], [ProvEdge(1, 3, ((1, 2), (2, 3)))], [(1, 2)])

    def test_sources_and_sinks(self, running_G):
        """Isolated and boundary vertices are reported as sources and sinks."""
        assert running_G.sources() == frozenset({1, 3})
        assert running_G.sinks() == frozenset({8, 9})

    def test_dot_export(self, small_graph):
        """DOT output lists every edge with its provenance label."""
        dot = small_graph.to_dot()
        assert dot.startswith("digraph G {")
        assert "rankdir=LR" in dot
        assert "1 -> 2 [label=12]" in dot

    def test_dot_edges_in_sorted_order(self, running_G):
        """Edges are written in (tail, head, provenance) order."""
        edge_lines = [line.strip() for line in running_G.to_dot().splitlines() if "->" in line]
        written = [tuple(int(v) for v in line.split(" [")[0].split(" -> ")) for line in edge_lines]
        assert written == running_G.endpoint_pairs()
        assert running_G.to_dot() == running_G.to_dot()


class TestPathsAndShape:
    """Path queries and structural predicates."""

    def test_directed_path_expands_provenance(self, running_G):
        """The path from 1 to 8 runs through 2 and 5."""
        assert directed_path(running_G, 1, 8) == ((1, 2), (2, 5), (5, 8))
        assert directed_path(running_G, 3, 9) == ((3, 5), (5, 9))

    def test_directed_path_absent(self, running_G):
        """No directed path from 1 to 3."""
        assert directed_path(running_G, 1, 3) is None

    def test_directed_path_requires_order(self, running_G):
        """The start vertex must come before the end vertex."""
        with pytest.raises(GraphError):
            directed_path(running_G, 5, 2)
        with pytest.raises(GraphError):
            directed_path(running_G, 1, 4)

    def test_directed_path_warns_on_several_paths(self, caplog):
        """A warning is logged when the path is not unique."""
        g = ProvGraph.from_pairs([(1, 2), (2, 3), (1, 3)])
        caplog.set_level(logging.WARNING, logger="ij_tamari")
        path = directed_path(g, 1, 3)
        assert path in (((1, 2), (2, 3)), ((1, 3),))
        assert "several directed paths" in caplog.text

    def test_acyclic_undirected(self, running_G):
        """G of the running pair is acyclic; the 4-cycle H is not."""
        assert is_acyclic_undirected(running_G)
        h = ProvGraph.from_pairs([(1, 3), (1, 4), (2, 3), (2, 4)])
        assert not is_acyclic_undirected(h)

    def test_parallel_edges_form_a_cycle(self):
        """Two copies of (1,3) are a cycle of the underlying multigraph."""
        g = ProvGraph.build([1, 2, 3], [ProvEdge(1, 3, ((1, 2), (2, 3))), ProvEdge.base(1, 3)],
                            [(1, 2), (2, 3), (1, 3)])
        assert not is_acyclic_undirected(g)
        assert not g.is_squarefree()

    def test_tree_and_connectivity(self, running_G):
        """The running G is a tree; dropping an edge disconnects it."""
        assert is_connected(running_G)
        assert is_tree(running_G)
        assert not is_connected(ProvGraph.from_pairs([(1, 2), (3, 5)]))

    def test_alternating(self, small_graph):
        """The small graph has the pair 12, 23; the three edges 13, 14, 23 do not chain."""
        assert not is_alternating(small_graph)
        assert is_alternating(ProvGraph.from_pairs([(1, 3), (1, 4), (2, 3)]))

    def test_noncrossing_graph(self):
        """Edges 13 and 24 cross; nested edges do not."""
        assert not is_noncrossing_graph(ProvGraph.from_pairs([(1, 3), (2, 4)]))
        assert is_noncrossing_graph(ProvGraph.from_pairs([(1, 4), (2, 3)]))


class TestAugmentation:
    """Partially augmented graphs and their routes."""

    def test_literal_augmentation(self, running_G):
        """Without kept vertices, sources are the non-sinks and sinks the non-sources."""
        ag = partially_augment(running_G)
        assert ag.source_edges == frozenset({1, 2, 3, 5})
        assert ag.sink_edges == frozenset({2, 5, 8, 9})

    def test_kept_vertices_get_both_boundary_edges(self, running_G):
        """Keeping 2, 5, 9 adds (s,9) and makes I the source set."""
        ag = partially_augment(running_G, keep=[2, 5, 9])
        assert ag.source_edges == frozenset({1, 2, 3, 5, 9})
        assert ag.sink_edges == frozenset({2, 5, 8, 9})
        assert ag.edge_count == 14
        assert ag.vertex_count == 8

    def test_keep_outside_graph_rejected(self, running_G):
        """Kept vertices must belong to the graph."""
        with pytest.raises(GraphError):
            partially_augment(running_G, keep=[4])

    def test_empty_graph_rejected(self):
        """There is nothing to augment without vertices."""
        with pytest.raises(GraphError):
            partially_augment(ProvGraph.from_pairs([]))

    def test_routes_of_running_example(self, running_G):
        """Fifteen routes, three of them trivial."""
        route_list = routes(partially_augment(running_G, keep=[2, 5, 9]))
        assert len(route_list) == 15
        assert {r.entry for r in route_list if r.is_trivial} == {2, 5, 9}
        labels = {r.label() for r in route_list}
        assert "(s,1,2,5,8,t)" in labels
        assert "(s,9,t)" in labels

    def test_route_validation(self):
        """A trivial route must enter and exit at the same vertex."""
        with pytest.raises(GraphError):
            Route((), 1, 2)
        assert Route(((1, 2),), 1, 2).inner_vertices() == (1, 2)


if __name__ == "__main__":
    pytest.main([__file__])
