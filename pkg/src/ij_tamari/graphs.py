"""
Directed graphs on linearly ordered integer vertices.

Edges carry provenance: the ordered list of base edges of the originating
graph whose formal sum they are. A base edge is identified by its
``(tail, head)`` endpoints, so its provenance is ``((tail, head),)``.
The source ``s`` and sink ``t`` of an augmented graph are never stored as
vertex labels; a route records the inner vertices where it enters and exits.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import islice
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Tuple

import graphviz
import networkx as nx

from .errors import GraphError, ProvenanceError
from .telemetry import get_logger

logger = get_logger(__name__)

BaseEdgeId = Tuple[int, int]
EndpointPair = Tuple[int, int]
Provenance = Tuple[BaseEdgeId, ...]


@dataclass(frozen=True, order=True)
class ProvEdge:
    """An edge ``tail -> head`` standing for the sum of the base edges in ``provenance``."""

    tail: int
    head: int
    provenance: Provenance

    def __post_init__(self):
        if self.tail >= self.head:
            raise GraphError("edge tail must precede its head", {"tail": self.tail, "head": self.head})
        if not self.provenance:
            raise ProvenanceError("edge without provenance", {"edge": (self.tail, self.head)})

    @classmethod
    def base(cls, tail: int, head: int) -> "ProvEdge":
        return cls(tail, head, ((tail, head),))

    @property
    def endpoints(self) -> EndpointPair:
        return (self.tail, self.head)

    def label(self) -> str:
        return "+".join(f"{a}{b}" if max(a, b) < 10 else f"{a},{b}" for a, b in self.provenance)


def check_chain(provenance: Sequence[BaseEdgeId], tail: int, head: int,
                base_edges: Optional[FrozenSet[BaseEdgeId]] = None) -> None:
    """
    Check that ``provenance`` is a directed path from ``tail`` to ``head``.

    Raises:
        ProvenanceError: if an identifier is unknown or consecutive edges do not chain
    """
    if not provenance:
        raise ProvenanceError("empty provenance", {"tail": tail, "head": head})
    at = tail
    for base_id in provenance:
        if base_edges is not None and base_id not in base_edges:
            raise ProvenanceError("unknown base edge in provenance", {"base_edge": base_id})
        if base_id[0] != at:
            raise ProvenanceError("provenance does not chain", {
                "provenance": list(provenance), "tail": tail, "head": head
            })
        at = base_id[1]
    if at != head:
        raise ProvenanceError("provenance does not end at the edge head", {
            "provenance": list(provenance), "tail": tail, "head": head
        })


@dataclass(frozen=True)
class ProvGraph:
    """
    Directed multigraph with provenance-carrying edges.

    Build instances through ``ProvGraph.build`` or ``ProvGraph.from_pairs``; both
    sort edges by ``(tail, head, provenance)`` and validate every invariant.
    """

    vertices: Tuple[int, ...]
    edges: Tuple[ProvEdge, ...]
    base_edges: FrozenSet[BaseEdgeId] = field(default_factory=frozenset)

    @classmethod
    def build(cls, vertices: Iterable[int], edges: Iterable[ProvEdge],
              base_edges: Iterable[BaseEdgeId]) -> "ProvGraph":
        vertex_tuple = tuple(sorted(set(vertices)))
        edge_tuple = tuple(sorted(edges))
        base_set = frozenset(base_edges)
        vertex_set = set(vertex_tuple)

        for edge in edge_tuple:
            if edge.tail not in vertex_set or edge.head not in vertex_set:
                raise GraphError("edge endpoint outside the vertex set", {"edge": edge.endpoints})
            check_chain(edge.provenance, edge.tail, edge.head, base_set)
        duplicates = [key for key, count in Counter(edge_tuple).items() if count > 1]
        if duplicates:
            raise GraphError("parallel edges with identical provenance", {
                "edges": [edge.endpoints for edge in duplicates]
            })
        return cls(vertex_tuple, edge_tuple, base_set)

    @classmethod
    def from_pairs(cls, pairs: Iterable[EndpointPair], vertices: Optional[Iterable[int]] = None) -> "ProvGraph":
        """Base graph whose edges are their own base edges."""
        pair_list = sorted(set((int(a), int(b)) for a, b in pairs))
        for a, b in pair_list:
            if a == b:
                raise GraphError("self-loop", {"vertex": a})
        vertex_set = set(vertices or ())
        for a, b in pair_list:
            vertex_set.update((a, b))
        return cls.build(vertex_set, (ProvEdge.base(a, b) for a, b in pair_list), pair_list)

    @property
    def base_edge_table(self) -> Dict[BaseEdgeId, EndpointPair]:
        return {base_id: base_id for base_id in sorted(self.base_edges)}

    def replace_edges(self, edges: Iterable[ProvEdge]) -> "ProvGraph":
        """Same vertices and base edges, new edge multiset."""
        return ProvGraph.build(self.vertices, edges, self.base_edges)

    def endpoint_pairs(self) -> List[EndpointPair]:
        return [edge.endpoints for edge in self.edges]

    def multiplicities(self) -> Counter:
        return Counter(self.endpoint_pairs())

    def has_pair(self, pair: EndpointPair) -> bool:
        return any(edge.endpoints == pair for edge in self.edges)

    def first_edge(self, pair: EndpointPair) -> ProvEdge:
        for edge in self.edges:
            if edge.endpoints == pair:
                return edge
        raise GraphError("edge not present", {"edge": pair})

    def out_edges(self, v: int) -> List[ProvEdge]:
        return [edge for edge in self.edges if edge.tail == v]

    def in_edges(self, v: int) -> List[ProvEdge]:
        return [edge for edge in self.edges if edge.head == v]

    def sources(self) -> FrozenSet[int]:
        """Vertices without incoming edges (isolated vertices included)."""
        heads = {edge.head for edge in self.edges}
        return frozenset(v for v in self.vertices if v not in heads)

    def sinks(self) -> FrozenSet[int]:
        """Vertices without outgoing edges (isolated vertices included)."""
        tails = {edge.tail for edge in self.edges}
        return frozenset(v for v in self.vertices if v not in tails)

    def is_squarefree(self) -> bool:
        return all(count == 1 for count in self.multiplicities().values())

    def to_networkx(self) -> nx.MultiDiGraph:
        """Edges keyed by their index in ``self.edges``; provenance stored as an attribute."""
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(self.vertices)
        for index, edge in enumerate(self.edges):
            graph.add_edge(edge.tail, edge.head, key=index, provenance=edge.provenance)
        return graph

    def to_dot(self, name: str = "G") -> str:
        dot = graphviz.Digraph(name, graph_attr={"rankdir": "LR"})
        for v in self.vertices:
            dot.node(str(v))
        for edge in self.edges:
            dot.edge(str(edge.tail), str(edge.head), label=edge.label())
        return dot.source

    def to_record(self) -> Dict:
        return {
            "vertices": list(self.vertices),
            "edges": [
                {"tail": edge.tail, "head": edge.head, "provenance": [list(p) for p in edge.provenance]}
                for edge in self.edges
            ],
        }


def _check_vertex(g: ProvGraph, v: int) -> None:
    if v not in g.vertices:
        raise GraphError("vertex not in graph", {"vertex": v})


def directed_path(g: ProvGraph, v: int, w: int) -> Optional[Provenance]:
    """
    Directed path from ``v`` to ``w`` as a list of base-edge identifiers.

    The path's edges are expanded through their provenance. When ``g`` has
    several ``v -> w`` paths the first one in sorted edge order is returned
    and a warning is logged.

    Args:
        g: graph to search
        v: start vertex
        w: end vertex, must come after ``v``

    Returns:
        Optional[Provenance]: the concatenated provenance, or None without a path

    Raises:
        GraphError: if ``v >= w`` or either vertex is missing
    """
    if v >= w:
        raise GraphError("directed_path requires v < w", {"v": v, "w": w})
    _check_vertex(g, v)
    _check_vertex(g, w)

    graph = g.to_networkx()
    found = list(islice(nx.all_simple_edge_paths(graph, v, w), 2))
    if not found:
        return None
    if len(found) > 1:
        logger.warning("several directed paths between vertices", {"v": v, "w": w})
    path: List[BaseEdgeId] = []
    for _, _, key in found[0]:
        path.extend(g.edges[key].provenance)
    return tuple(path)


def is_acyclic_undirected(g: ProvGraph) -> bool:
    """True iff the underlying undirected multigraph has no cycle; parallel edges form a 2-cycle."""
    if not g.vertices:
        return True
    return nx.is_forest(nx.MultiGraph(g.to_networkx()))


def is_connected(g: ProvGraph) -> bool:
    if not g.vertices:
        return False
    return nx.is_weakly_connected(g.to_networkx())


def is_tree(g: ProvGraph) -> bool:
    return is_connected(g) and is_acyclic_undirected(g)


def is_alternating(g: ProvGraph) -> bool:
    """No vertex is both the head of one edge and the tail of another."""
    heads = {edge.head for edge in g.edges}
    return not any(edge.tail in heads for edge in g.edges)


def is_noncrossing_graph(g: ProvGraph) -> bool:
    """No two edges (i, j), (i', j') with i < i' < j < j'."""
    pairs = sorted(set(g.endpoint_pairs()))
    for i, j in pairs:
        for i2, j2 in pairs:
            if i < i2 < j < j2:
                return False
    return True


@dataclass(frozen=True)
class Route:
    """
    An s -> t path of an augmented graph.

    ``inner_path`` lists base edges; it is empty exactly for trivial routes
    ``(s, v, t)`` where entry and exit coincide.
    """

    inner_path: Provenance
    entry: int
    exit: int

    def __post_init__(self):
        if not self.inner_path:
            if self.entry != self.exit:
                raise GraphError("empty route must enter and exit at the same vertex",
                                 {"entry": self.entry, "exit": self.exit})
        else:
            check_chain(self.inner_path, self.entry, self.exit)

    @property
    def is_trivial(self) -> bool:
        return not self.inner_path

    def inner_vertices(self) -> Tuple[int, ...]:
        return (self.entry,) + tuple(head for _, head in self.inner_path)

    def label(self) -> str:
        return "(" + ",".join(["s"] + [str(v) for v in self.inner_vertices()] + ["t"]) + ")"

    def sort_key(self) -> Tuple:
        return (self.entry, self.inner_path, self.exit)


@dataclass(frozen=True)
class AugmentedGraph:
    """Inner graph plus the vertices joined to ``s`` (``source_edges``) and to ``t`` (``sink_edges``)."""

    inner: ProvGraph
    source_edges: FrozenSet[int]
    sink_edges: FrozenSet[int]

    def __post_init__(self):
        outside = (self.source_edges | self.sink_edges) - set(self.inner.vertices)
        if outside:
            raise GraphError("boundary edge at a vertex outside the inner graph", {"vertices": sorted(outside)})

    def with_inner(self, inner: ProvGraph) -> "AugmentedGraph":
        """Same boundary edges around another graph on the same vertices, e.g. a reduction tree node."""
        return AugmentedGraph(inner, self.source_edges, self.sink_edges)

    @property
    def edge_count(self) -> int:
        return len(self.inner.edges) + len(self.source_edges) + len(self.sink_edges)

    @property
    def vertex_count(self) -> int:
        return len(self.inner.vertices) + 2

    def to_dot(self, name: str = "Ghat") -> str:
        dot = graphviz.Digraph(name, graph_attr={"rankdir": "LR"})
        dot.node("s", shape="box")
        dot.node("t", shape="box")
        for v in self.inner.vertices:
            dot.node(str(v))
        for v in sorted(self.source_edges):
            dot.edge("s", str(v))
        for edge in self.inner.edges:
            dot.edge(str(edge.tail), str(edge.head), label=edge.label())
        for v in sorted(self.sink_edges):
            dot.edge(str(v), "t")
        return dot.source

    def to_record(self) -> Dict:
        record = self.inner.to_record()
        record["source_edges"] = sorted(self.source_edges)
        record["sink_edges"] = sorted(self.sink_edges)
        return record


def partially_augment(g: ProvGraph, keep: Iterable[int] = ()) -> AugmentedGraph:
    """
    Partially augmented graph of ``g``.

    Adds ``(s, i)`` for every vertex that is not a sink and ``(j, t)`` for every
    vertex that is not a source. Vertices in ``keep`` get both boundary edges
    regardless; ``build_Ghat`` uses this for the vertices of I that prec also
    hits, whose routes ``(s, v, t)`` are the cone points.

    Raises:
        GraphError: if ``g`` has no vertices or ``keep`` names an unknown vertex
    """
    if not g.vertices:
        raise GraphError("cannot augment an empty graph")
    keep_set = frozenset(keep)
    if not keep_set <= set(g.vertices):
        raise GraphError("keep names vertices outside the graph", {"keep": sorted(keep_set)})

    sinks, sources = g.sinks(), g.sources()
    source_edges = frozenset(v for v in g.vertices if v not in sinks) | keep_set
    sink_edges = frozenset(v for v in g.vertices if v not in sources) | keep_set
    return AugmentedGraph(g, source_edges, sink_edges)


def _walk(g: ProvGraph, at: int, path: Tuple[BaseEdgeId, ...]) -> Iterator[Tuple[int, Tuple[BaseEdgeId, ...]]]:
    yield at, path
    for edge in g.out_edges(at):
        yield from _walk(g, edge.head, path + edge.provenance)


def routes(ag: AugmentedGraph) -> Tuple[Route, ...]:
    """
    All s -> t routes of ``ag``, sorted by (entry, inner path, exit).

    Trivial routes ``(s, v, t)`` appear exactly for ``v`` in both boundary sets.
    Inner edges are expanded through their provenance, so routes of a
    reduction-tree node live in the base graph's edge space.
    """
    found = set()
    for entry in sorted(ag.source_edges):
        for at, path in _walk(ag.inner, entry, ()):
            if at in ag.sink_edges:
                found.add(Route(path, entry, at))
    return tuple(sorted(found, key=Route.sort_key))
