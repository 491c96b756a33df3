"""
The subdivision algebra x_ij x_jk = x_ik x_ij + x_jk x_ik + beta x_ik on graphs.

A reduction of the non-alternating pair (i,j), (j,k) turns a graph into the
three graphs of the relation's right-hand side. A reduction tree applies
reductions until every leaf is alternating; its leaves give a reduced form.
"""

import random
from abc import ABC, abstractmethod
from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import sympy
from sympy import Poly, ZZ

from .config import DEFAULT_MAX_REDUCTIONS
from .errors import ReductionError, ResourceLimitError
from .graphs import EndpointPair, ProvEdge, ProvGraph, is_alternating
from .telemetry import get_logger

logger = get_logger(__name__)

Pair = Tuple[EndpointPair, EndpointPair]

BETA = sympy.Symbol("beta")


def _pair_label(pair: Pair) -> str:
    (i, j), (_, k) = pair
    return f"({i},{j}),({j},{k})"


def non_alternating_pairs(g: ProvGraph) -> FrozenSet[Pair]:
    """All endpoint pairs ((i,j), (j,k)) of ``g`` with i < j < k."""
    endpoints = set(g.endpoint_pairs())
    return frozenset(
        ((i, j), (j2, k))
        for i, j in endpoints
        for j2, k in endpoints
        if j2 == j
    )


def longest_pair_at(g: ProvGraph, j: int) -> Optional[Pair]:
    """The pair at ``j`` with the smallest tail and the largest head, None if ``j`` carries no pair."""
    tails = [edge.tail for edge in g.in_edges(j)]
    heads = [edge.head for edge in g.out_edges(j)]
    if not tails or not heads:
        return None
    return ((min(tails), j), (j, max(heads)))


def _middle_vertices(g: ProvGraph) -> List[int]:
    heads = {edge.head for edge in g.edges}
    return sorted({edge.tail for edge in g.edges if edge.tail in heads})


def length_pick(g: ProvGraph) -> Pair:
    """
    The pair reduced next by the length order: the longest pair at the smallest middle vertex.

    Raises:
        ReductionError: if ``g`` is alternating
    """
    middles = _middle_vertices(g)
    if not middles:
        raise ReductionError("length_pick on an alternating graph")
    return longest_pair_at(g, middles[0])


def leftmost_pick(g: ProvGraph) -> Pair:
    """Lexicographically smallest (j, i, k) pair, regardless of length."""
    pairs = non_alternating_pairs(g)
    if not pairs:
        raise ReductionError("leftmost_pick on an alternating graph")
    (i, j), (_, k) = min(pairs, key=lambda p: (p[0][1], p[0][0], p[1][1]))
    return ((i, j), (j, k))


def _check_pair_shape(p1: EndpointPair, p2: EndpointPair) -> None:
    i, j = p1
    j2, k = p2
    if j != j2 or not i < j < k:
        raise ReductionError("pair is not of the form (i,j), (j,k) with i < j < k", {"pair": [p1, p2]})


def reduce_graph(g: ProvGraph, p1: EndpointPair, p2: EndpointPair) -> Tuple[ProvGraph, ProvGraph, ProvGraph]:
    """
    Reduce the pair ``p1 = (i,j)``, ``p2 = (j,k)`` of ``g``.

    One copy of each edge is consumed when there are parallel copies. The new
    edge (i,k) carries the provenance of (i,j) followed by that of (j,k).

    Returns:
        Tuple[ProvGraph, ProvGraph, ProvGraph]: G1 keeps (i,j), G2 keeps (j,k), G3 keeps neither; all gain (i,k)

    Raises:
        ReductionError: if the pair is not non-alternating or not present in ``g``
    """
    _check_pair_shape(p1, p2)
    if not (g.has_pair(p1) and g.has_pair(p2)):
        raise ReductionError("pair not present in graph", {"pair": [p1, p2]})

    first, second = g.first_edge(p1), g.first_edge(p2)
    new_edge = ProvEdge(p1[0], p2[1], first.provenance + second.provenance)
    rest = list(g.edges)
    rest.remove(first)
    rest.remove(second)

    g1 = g.replace_edges(rest + [first, new_edge])
    g2 = g.replace_edges(rest + [second, new_edge])
    g3 = g.replace_edges(rest + [new_edge])
    return g1, g2, g3


class ReductionOrder(ABC):
    """
    Chooses the pair reduced at each step of ``build_reduction_tree``.

    ``select`` sees the current non-alternating leaves and names a pair taken
    from one of them; ``accepts`` decides which leaves containing that pair
    are reduced in the same step.
    """

    name: str = "order"

    def start(self) -> None:
        """Reset per-tree state before a new tree is built."""

    @abstractmethod
    def select(self, leaves: Sequence[ProvGraph]) -> Pair:
        ...

    def accepts(self, leaf: ProvGraph, pair: Pair) -> bool:
        return leaf.has_pair(pair[0]) and leaf.has_pair(pair[1])

    def describe(self) -> str:
        return self.name


class _LeafPolicyMixin:
    leaf_policy: str
    seed: Optional[int]
    _rng: random.Random

    def _choose_leaf(self, leaves: Sequence[ProvGraph]) -> ProvGraph:
        if self.leaf_policy == "first":
            return leaves[0]
        if self.leaf_policy == "last":
            return leaves[-1]
        return leaves[self._rng.randrange(len(leaves))]


LEAF_POLICIES = ("first", "last", "random")


class LengthOrder(_LeafPolicyMixin, ReductionOrder):
    """
    Longest pair at the smallest middle vertex.

    ``leaf_policy`` only changes which leaf drives the next step, i.e. the
    interleaving of reductions across leaves.
    """

    name = "length"

    def __init__(self, leaf_policy: str = "first", seed: Optional[int] = None):
        if leaf_policy not in LEAF_POLICIES:
            raise ReductionError("unknown leaf policy", {"leaf_policy": leaf_policy})
        self.leaf_policy = leaf_policy
        self.seed = seed
        self._rng = random.Random(seed)

    def start(self) -> None:
        self._rng = random.Random(self.seed)

    def select(self, leaves: Sequence[ProvGraph]) -> Pair:
        return length_pick(self._choose_leaf(leaves))

    def accepts(self, leaf: ProvGraph, pair: Pair) -> bool:
        return not is_alternating(leaf) and length_pick(leaf) == pair

    def describe(self) -> str:
        if self.leaf_policy == "first":
            return self.name
        return f"{self.name}[{self.leaf_policy}, seed={self.seed}]"


class LongestPairOrder(_LeafPolicyMixin, ReductionOrder):
    """A longest pair at a random middle vertex of a random leaf, seeded."""

    name = "longest"

    def __init__(self, seed: Optional[int] = None):
        self.leaf_policy = "random"
        self.seed = seed
        self._rng = random.Random(seed)

    def start(self) -> None:
        self._rng = random.Random(self.seed)

    def select(self, leaves: Sequence[ProvGraph]) -> Pair:
        leaf = self._choose_leaf(leaves)
        middles = _middle_vertices(leaf)
        return longest_pair_at(leaf, middles[self._rng.randrange(len(middles))])

    def accepts(self, leaf: ProvGraph, pair: Pair) -> bool:
        return longest_pair_at(leaf, pair[0][1]) == pair

    def describe(self) -> str:
        return f"{self.name}[seed={self.seed}]"


class LeftmostOrder(ReductionOrder):
    """Lexicographically smallest (j, i, k) pair of the first reducible leaf."""

    name = "leftmost"

    def select(self, leaves: Sequence[ProvGraph]) -> Pair:
        return leftmost_pick(leaves[0])

    def accepts(self, leaf: ProvGraph, pair: Pair) -> bool:
        return not is_alternating(leaf) and leftmost_pick(leaf) == pair


class CustomOrder(ReductionOrder):
    """
    Replays an explicit list of pairs; each one is reduced in every leaf containing it.

    Raises ``ReductionError`` from ``select`` when the list runs out while some
    leaf is still reducible.
    """

    name = "custom"

    def __init__(self, pairs: Iterable[Pair]):
        self.pairs = [tuple(tuple(p) for p in pair) for pair in pairs]
        for p1, p2 in self.pairs:
            _check_pair_shape(p1, p2)
        self._position = 0

    def start(self) -> None:
        self._position = 0

    def select(self, leaves: Sequence[ProvGraph]) -> Pair:
        if self._position >= len(self.pairs):
            raise ReductionError("custom order exhausted while leaves are still reducible",
                                 {"used": self._position})
        pair = self.pairs[self._position]
        self._position += 1
        return pair


@dataclass(frozen=True)
class ReductionNode:
    """Node of a reduction tree; ``pair`` and ``children`` are set once the node is reduced."""

    index: int
    graph: ProvGraph
    parent: Optional[int] = None
    beta_power: int = 0
    pair: Optional[Pair] = None
    children: Tuple[int, ...] = ()

    @property
    def is_leaf(self) -> bool:
        return not self.children


@dataclass(frozen=True)
class ReductionTree:
    """
    Reduction tree with its leaves in frontier order.

    Attributes:
        nodes: all nodes, indexed by ``ReductionNode.index``; node 0 is the root
        leaf_indices: leaves in the order children replaced their parents
        simple: whether only the G1, G2 children were attached
        order_name: description of the reduction order used
        steps: number of global reduction steps
        leaf_reductions: number of individual leaf reductions
    """

    nodes: Tuple[ReductionNode, ...]
    leaf_indices: Tuple[int, ...]
    simple: bool
    order_name: str
    steps: int
    leaf_reductions: int

    @property
    def root(self) -> ReductionNode:
        return self.nodes[0]

    def leaves(self) -> List[ReductionNode]:
        return [self.nodes[index] for index in self.leaf_indices]

    def internal_nodes(self) -> List[ReductionNode]:
        return [node for node in self.nodes if not node.is_leaf]

    def full_dimensional_leaves(self) -> List[ReductionNode]:
        """Leaves with as many edges as the root."""
        return [node for node in self.leaves() if node.beta_power == 0]

    def leaves_by_beta(self) -> Dict[int, int]:
        return dict(sorted(Counter(node.beta_power for node in self.leaves()).items()))

    def children_of(self, node: ReductionNode) -> List[ReductionNode]:
        return [self.nodes[index] for index in node.children]


def build_reduction_tree(g: ProvGraph, order: ReductionOrder, simple: bool = False,
                         max_reductions: int = DEFAULT_MAX_REDUCTIONS) -> ReductionTree:
    """
    Reduce ``g`` until every leaf is alternating.

    At each step ``order`` names a pair taken from one of the current
    reducible leaves; the pair is reduced at once in every leaf containing it
    that the order accepts. Leaves without the pair are untouched.

    Args:
        g: root graph
        order: reduction order
        simple: attach only the G1 and G2 children
        max_reductions: cap on individual leaf reductions

    Returns:
        ReductionTree: the finished tree

    Raises:
        ReductionError: if the order names a pair no current leaf accepts
        ResourceLimitError: if the cap is exceeded
    """
    order.start()
    root_edges = len(g.edges)
    nodes: List[ReductionNode] = [ReductionNode(0, g)]
    frontier: List[int] = [0]
    steps = 0
    leaf_reductions = 0

    while True:
        active = [index for index in frontier if not is_alternating(nodes[index].graph)]
        if not active:
            break
        pair = order.select([nodes[index].graph for index in active])
        _check_pair_shape(*pair)
        targets = [index for index in active if order.accepts(nodes[index].graph, pair)
                   and nodes[index].graph.has_pair(pair[0]) and nodes[index].graph.has_pair(pair[1])]
        if not targets:
            raise ReductionError("selected pair is not reducible in any current leaf", {
                "pair": _pair_label(pair), "order": order.describe()
            })
        if leaf_reductions + len(targets) > max_reductions:
            raise ResourceLimitError("reduction step cap exceeded", {
                "max_reductions": max_reductions, "order": order.describe()
            })

        steps += 1
        leaf_reductions += len(targets)
        target_set = set(targets)
        new_frontier: List[int] = []
        for index in frontier:
            if index not in target_set:
                new_frontier.append(index)
                continue
            parent = nodes[index]
            children = reduce_graph(parent.graph, *pair)
            if simple:
                children = children[:2]
            child_indices = []
            for child in children:
                child_node = ReductionNode(len(nodes), child, parent=index,
                                           beta_power=root_edges - len(child.edges))
                nodes.append(child_node)
                child_indices.append(child_node.index)
            nodes[index] = replace(parent, pair=pair, children=tuple(child_indices))
            new_frontier.extend(child_indices)
        frontier = new_frontier
        logger.debug("reduction step", {
            "step": steps, "pair": _pair_label(pair), "leaves_reduced": len(targets), "frontier": len(frontier)
        })

    tree = ReductionTree(tuple(nodes), tuple(frontier), simple, order.describe(), steps, leaf_reductions)
    non_squarefree = sum(1 for node in tree.leaves() if not node.graph.is_squarefree())
    if non_squarefree:
        logger.warning("leaves with repeated edges", {"count": non_squarefree})
    logger.debug("reduction tree finished", {
        "order": tree.order_name, "steps": steps, "leaves": len(frontier), "simple": simple
    })
    return tree


def _x_name(pair: EndpointPair) -> str:
    i, j = pair
    return f"x_{{{i}{j}}}" if max(i, j) < 10 else f"x_{{{i},{j}}}"


@dataclass(frozen=True)
class Monomial:
    """
    coefficient * beta^beta_power * prod x_ij^e.

    ``exponents`` is a sorted tuple of ((i, j), e); ``witness`` is a graph whose
    edge multiset realizes the x-part and takes no part in comparisons.
    """

    exponents: Tuple[Tuple[EndpointPair, int], ...]
    beta_power: int = 0
    coefficient: int = 1
    witness: Optional[ProvGraph] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        for (i, j), exponent in self.exponents:
            if not i < j or exponent <= 0:
                raise ReductionError("bad monomial exponent", {"variable": (i, j), "exponent": exponent})
        if self.witness is not None and dict(self.exponents) != dict(self.witness.multiplicities()):
            raise ReductionError("witness does not realize the monomial", {"exponents": list(self.exponents)})

    @property
    def key(self) -> Tuple:
        return (self.exponents, self.beta_power)

    @property
    def degree(self) -> int:
        return sum(exponent for _, exponent in self.exponents)

    def render(self, with_coefficient: bool = True) -> str:
        parts = [_x_name(pair) + (f"^{e}" if e > 1 else "") for pair, e in self.exponents]
        if self.beta_power:
            parts.append("β" + (f"^{self.beta_power}" if self.beta_power > 1 else ""))
        body = "".join(parts) or "1"
        if with_coefficient and self.coefficient != 1:
            return f"{self.coefficient}{body}" if parts else str(self.coefficient)
        return body

    def to_record(self) -> Dict:
        return {
            "exponents": [[i, j, e] for (i, j), e in self.exponents],
            "beta_power": self.beta_power,
            "coefficient": self.coefficient,
        }


def monomial_of(g: ProvGraph, beta_power: int = 0) -> Monomial:
    """M_G = prod over edges of x_ab, times beta^beta_power."""
    return Monomial(tuple(sorted(g.multiplicities().items())), beta_power, 1, g)


@dataclass(frozen=True)
class BetaPolynomial:
    """Integer polynomial in the x_ij and beta, kept in canonical order."""

    terms: Tuple[Monomial, ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[Monomial]) -> "BetaPolynomial":
        collected: Dict[Tuple, Monomial] = {}
        for term in terms:
            seen = collected.get(term.key)
            if seen is None:
                collected[term.key] = term
            else:
                collected[term.key] = replace(seen, coefficient=seen.coefficient + term.coefficient)
        return cls(tuple(collected[key] for key in sorted(collected) if collected[key].coefficient != 0))

    def __add__(self, other: "BetaPolynomial") -> "BetaPolynomial":
        return BetaPolynomial.from_terms(self.terms + other.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def degree_part(self, degree: int) -> "BetaPolynomial":
        return BetaPolynomial(tuple(term for term in self.terms if term.degree == degree))

    def top_degree_part(self) -> "BetaPolynomial":
        if not self.terms:
            return self
        return self.degree_part(max(term.degree for term in self.terms))

    def contains(self, exponents: Dict[EndpointPair, int], beta_power: int = 0) -> bool:
        key = (tuple(sorted(exponents.items())), beta_power)
        return any(term.key == key for term in self.terms)

    def render(self) -> str:
        if not self.terms:
            return "0"
        text = self.terms[0].render()
        for term in self.terms[1:]:
            if term.coefficient < 0:
                text += " - " + replace(term, coefficient=-term.coefficient).render()
            else:
                text += " + " + term.render()
        return text

    def to_records(self) -> List[Dict]:
        return [term.to_record() for term in self.terms]


def reduced_form_of_tree(tree: ReductionTree) -> BetaPolynomial:
    """Sum over leaves of M_leaf * beta^(|E(root)| - |E(leaf)|)."""
    return BetaPolynomial.from_terms(monomial_of(node.graph, node.beta_power) for node in tree.leaves())


def reduced_form(g: ProvGraph, order: ReductionOrder, max_reductions: int = DEFAULT_MAX_REDUCTIONS) -> BetaPolynomial:
    """
    Reduced form of M_G under ``order``.

    No term's witness has a non-alternating pair.
    """
    return reduced_form_of_tree(build_reduction_tree(g, order, simple=False, max_reductions=max_reductions))


def evaluate_at_one(p: BetaPolynomial) -> Poly:
    """Set every x_ij to 1 and collect by powers of beta."""
    expression = sum((term.coefficient * BETA**term.beta_power for term in p.terms), sympy.Integer(0))
    return Poly(expression, BETA, domain=ZZ)


def shift_beta(q: Poly, delta: int) -> Poly:
    """q(beta + delta), expanded exactly."""
    return Poly(q, BETA, domain=ZZ).shift(delta)


def coefficient_list(q: Poly) -> List[int]:
    """Coefficients of ``q`` by ascending power of beta; the zero polynomial gives ``[]``."""
    if q.is_zero:
        return []
    return [int(c) for c in reversed(q.all_coeffs())]
