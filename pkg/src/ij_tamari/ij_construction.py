"""
From a pair (I, Jbar) to its graphs.

Elements of [n] and of the barred copy are ordered 1 < 1bar < 2 < 2bar < ...
The pipeline is A(I,Jbar) -> prec quotient -> minimal graph G(I,Jbar) ->
partially augmented graph Ghat(I,Jbar).
"""

import random
from dataclasses import dataclass
from itertools import chain, combinations
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Tuple

import networkx as nx

from .errors import EmptyPair, InvalidPair, InvariantViolation
from .graphs import (AugmentedGraph, ProvEdge, ProvGraph, is_acyclic_undirected, is_connected,
                     partially_augment)
from .telemetry import get_logger

logger = get_logger(__name__)


class OrderedElement(NamedTuple):
    """Element of [n] (``barred=False``) or of the barred copy; tuple order is the pair order."""

    value: int
    barred: bool

    def __str__(self) -> str:
        return f"{self.value}̄" if self.barred else str(self.value)

    def token(self) -> str:
        """ASCII form used in records: ``3`` or ``3b``."""
        return f"{self.value}b" if self.barred else str(self.value)


class Arc(NamedTuple):
    """Arc (i, jbar) of A(I,Jbar); ``j`` is the value of the barred endpoint."""

    i: int
    j: int

    def label(self) -> str:
        return f"({self.i},{self.j}b)"


@dataclass(frozen=True)
class ValidPair:
    """
    A valid pair: the smallest element of I ⊔ Jbar is unbarred, the largest is barred.

    Attributes:
        I: sorted unbarred values
        Jbar: sorted values of the barred elements
    """

    I: Tuple[int, ...]
    Jbar: Tuple[int, ...]

    @property
    def n(self) -> int:
        return max(self.I + self.Jbar)

    @property
    def size(self) -> int:
        return len(self.I) + len(self.Jbar)

    def elements(self) -> List[OrderedElement]:
        """I ⊔ Jbar in increasing order."""
        return sorted([OrderedElement(i, False) for i in self.I] + [OrderedElement(j, True) for j in self.Jbar])

    def key(self) -> str:
        return f"I={','.join(map(str, self.I))};J={','.join(map(str, self.Jbar))}"

    def to_record(self) -> Dict:
        return {"I": list(self.I), "Jbar": list(self.Jbar)}


def _clean(values: Iterable[int], name: str) -> Tuple[int, ...]:
    items = list(values)
    for value in items:
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise InvalidPair(f"{name} must contain positive integers", {name: items})
    if len(set(items)) != len(items):
        raise InvalidPair(f"{name} has repeated elements", {name: items})
    return tuple(sorted(items))


def validate_pair(I: Iterable[int], Jbar: Iterable[int]) -> ValidPair:
    """
    Validate (I, Jbar) and return it as a ``ValidPair``.

    Raises:
        InvalidPair: naming the condition that fails
    """
    I_values, J_values = _clean(I, "I"), _clean(Jbar, "Jbar")
    if not I_values:
        raise InvalidPair("I is empty")
    if not J_values:
        raise InvalidPair("Jbar is empty")
    candidate = ValidPair(I_values, J_values)
    elements = candidate.elements()
    if elements[0].barred:
        raise InvalidPair("the minimum of I ⊔ Jbar must lie in I", {"minimum": elements[0].token()})
    if not elements[-1].barred:
        raise InvalidPair("the maximum of I ⊔ Jbar must lie in Jbar", {"maximum": elements[-1].token()})
    return candidate


def normalize_pair(I: Iterable[int], Jbar: Iterable[int]) -> ValidPair:
    """
    Drop elements that take part in no arc until the pair is valid.

    The arc set A(I,Jbar) is unchanged.

    Raises:
        EmptyPair: if no arc exists at all
    """
    I_values, J_values = set(_clean(I, "I")), set(_clean(Jbar, "Jbar"))
    changed = True
    while changed:
        kept_J = {j for j in J_values if any(i <= j for i in I_values)}
        kept_I = {i for i in I_values if any(i <= j for j in kept_J)}
        changed = (kept_I, kept_J) != (I_values, J_values)
        I_values, J_values = kept_I, kept_J
    if not I_values or not J_values:
        raise EmptyPair("no arc (i, jbar) with i before jbar survives", {"I": sorted(I), "Jbar": sorted(Jbar)})
    return validate_pair(I_values, J_values)


def prec(vp: ValidPair) -> Dict[int, int]:
    """
    The prec map Jbar -> [n], keyed by barred value.

    prec(jbar) is the immediately preceding element of I ⊔ Jbar when that
    element lies in I, and j otherwise.
    """
    elements = vp.elements()
    mapping: Dict[int, int] = {}
    for position, element in enumerate(elements):
        if not element.barred:
            continue
        before = elements[position - 1] if position else None
        mapping[element.value] = before.value if before is not None and not before.barred else element.value
    if len(set(mapping.values())) != len(mapping):
        raise InvariantViolation("prec is not injective", {"pair": vp.to_record(), "prec": mapping})
    return mapping


def prec_inverse(vp: ValidPair) -> Dict[int, int]:
    """Inverse of prec: vertex of prec(Jbar) -> barred value."""
    return {image: j for j, image in prec(vp).items()}


def build_A(vp: ValidPair) -> Tuple[Arc, ...]:
    """All arcs (i, jbar) with i before jbar, that is i <= j."""
    return tuple(Arc(i, j) for i in vp.I for j in vp.Jbar if i <= j)


@dataclass(frozen=True)
class PrecQuotient:
    """Quotient graph of an arc set plus the arcs that collapsed to loops."""

    graph: ProvGraph
    collapsed: Tuple[Arc, ...]


def prec_quotient(h: Iterable[Arc], pm: Dict[int, int], vp: ValidPair) -> PrecQuotient:
    """
    Quotient of the arc set ``h`` under ``pm``.

    Every arc (i, jbar) becomes the edge (i, prec(jbar)); arcs with
    prec(jbar) = i become loops, which are dropped from the graph and returned
    as ``collapsed``. The vertex set is I ∪ prec(Jbar).
    """
    arcs = sorted(set(h))
    edges = set()
    collapsed = []
    for arc in arcs:
        head = pm[arc.j]
        if head == arc.i:
            collapsed.append(arc)
        else:
            edges.add((arc.i, head))
    vertices = set(vp.I) | set(pm.values())
    return PrecQuotient(ProvGraph.from_pairs(edges, vertices), tuple(collapsed))


def minimal_graph(g: ProvGraph) -> ProvGraph:
    """Remove every edge (i, j) whose endpoints are also joined by a directed path of length at least 2."""
    graph = nx.DiGraph()
    graph.add_nodes_from(g.vertices)
    graph.add_edges_from(g.endpoint_pairs())

    kept = []
    for edge in g.edges:
        graph.remove_edge(edge.tail, edge.head)
        if not nx.has_path(graph, edge.tail, edge.head):
            kept.append(edge)
        graph.add_edge(edge.tail, edge.head)
    return g.replace_edges(kept)


def build_G(vp: ValidPair) -> ProvGraph:
    """
    G(I,Jbar) = min(prec(A(I,Jbar))), a tree on I ∪ prec(Jbar).

    Raises:
        InvariantViolation: if the result is not a tree with tails in I and heads in prec(Jbar)
    """
    pm = prec(vp)
    quotient = prec_quotient(build_A(vp), pm, vp)
    g = minimal_graph(quotient.graph)
    # base edges of G are its own edges, not those of the quotient
    g = ProvGraph.from_pairs(g.endpoint_pairs(), g.vertices)

    heads = set(pm.values())
    if not (is_connected(g) and is_acyclic_undirected(g)):
        raise InvariantViolation("G(I,Jbar) is not a tree", {"pair": vp.to_record()})
    if len(g.edges) != len(g.vertices) - 1:
        raise InvariantViolation("G(I,Jbar) has the wrong edge count", {"pair": vp.to_record()})
    for edge in g.edges:
        if edge.tail not in vp.I or edge.head not in heads:
            raise InvariantViolation("G(I,Jbar) edge outside I x prec(Jbar)", {"edge": edge.endpoints})
    logger.debug("built G(I,Jbar)", {"pair": vp.key(), "edges": g.endpoint_pairs()})
    return g


def cone_vertices(vp: ValidPair) -> FrozenSet[int]:
    """I ∩ prec(Jbar): the vertices whose trivial routes are cone points."""
    return frozenset(vp.I) & frozenset(prec(vp).values())


def build_Ghat(vp: ValidPair) -> AugmentedGraph:
    """
    Partially augmented graph of G(I,Jbar).

    Raises:
        InvariantViolation: unless the boundary sets are exactly I and prec(Jbar)
    """
    g = build_G(vp)
    ag = partially_augment(g, keep=cone_vertices(vp))
    if ag.source_edges != frozenset(vp.I) or ag.sink_edges != frozenset(prec(vp).values()):
        raise InvariantViolation("Ghat(I,Jbar) boundary edges differ from I and prec(Jbar)", {
            "pair": vp.to_record(),
            "source_edges": sorted(ag.source_edges),
            "sink_edges": sorted(ag.sink_edges),
        })
    return ag


def all_valid_pairs(max_n: int) -> List[ValidPair]:
    """Every valid pair with values in [max_n], ordered by (n, I, Jbar)."""
    pairs = []
    for I_values in _subsets(range(1, max_n + 1)):
        for J_values in _subsets(range(1, max_n + 1)):
            if not I_values or not J_values:
                continue
            # min in I and max in Jbar
            if min(I_values) <= min(J_values) and max(J_values) >= max(I_values):
                pairs.append(ValidPair(I_values, J_values))
    return sorted(pairs, key=lambda vp: (vp.n, vp.I, vp.Jbar))


def random_valid_pairs(count: int, max_n: int, seed: int) -> List[ValidPair]:
    """
    ``count`` valid pairs drawn uniformly by rejection sampling.

    Every element of [max_n] ⊔ [max_n bar] is kept with probability 1/2 and
    invalid draws are rejected.
    """
    rng = random.Random(seed)
    pairs = []
    while len(pairs) < count:
        I_values = tuple(v for v in range(1, max_n + 1) if rng.random() < 0.5)
        J_values = tuple(v for v in range(1, max_n + 1) if rng.random() < 0.5)
        try:
            pairs.append(validate_pair(I_values, J_values))
        except InvalidPair:
            continue
    return pairs


def _subsets(values: Iterable[int]) -> Iterator[Tuple[int, ...]]:
    items = tuple(values)
    return chain.from_iterable(combinations(items, size) for size in range(len(items) + 1))
