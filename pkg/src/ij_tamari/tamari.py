"""
(I,Jbar)-forests and trees, the (I,Jbar)-Tamari complex and the lattice-path oracles.

The tree enumerator and the path-counting DPs below are independent of the
reduction engine: they read only the pair (or the word nu) and share no
intermediate structures with ``algebra`` or ``geometry``. The reports at the
end of the module compare the two sides.
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from .algebra import (LengthOrder, LongestPairOrder, ReductionOrder, ReductionTree, build_reduction_tree,
                      coefficient_list, evaluate_at_one, reduced_form_of_tree, shift_beta)
from .config import DEFAULT_MAX_FLOW_COUNT, DEFAULT_MAX_REDUCTIONS
from .errors import GraphError, InvariantViolation
from .geometry import (FLOW, PAIR, Simplex, count_integer_flows, facet_route_sets, facet_simplices,
                       flow_polytope_vertices, normalized_volume, U_polytope_vertices)
from .graphs import ProvEdge, ProvGraph, directed_path, is_alternating, is_noncrossing_graph, is_tree, routes
from .ij_construction import Arc, ValidPair, build_A, build_G, build_Ghat, cone_vertices, prec, prec_inverse
from .reports import Report
from .telemetry import get_logger

logger = get_logger(__name__)


def arcs_cross(a: Arc, b: Arc) -> bool:
    """True iff i < i' <= j < j' for the arcs in some order, i.e. i ≺ i' ≺ jbar ≺ jbar'."""
    first, second = (a, b) if a.i <= b.i else (b, a)
    return first.i < second.i <= first.j < second.j


@dataclass(frozen=True)
class IJForest:
    """Non-crossing set of arcs of A(I,Jbar), kept sorted."""

    arcs: Tuple[Arc, ...]

    @classmethod
    def of(cls, arcs: Iterable[Arc]) -> "IJForest":
        return cls(tuple(sorted(set(Arc(*arc) for arc in arcs))))

    def __len__(self) -> int:
        return len(self.arcs)

    def arc_set(self) -> FrozenSet[Arc]:
        return frozenset(self.arcs)

    def is_covering(self, vp: ValidPair) -> bool:
        """Contains (min I, max Jbar) and touches every element of I ⊔ Jbar."""
        if Arc(vp.I[0], vp.Jbar[-1]) not in self.arcs:
            return False
        touched_I = {arc.i for arc in self.arcs}
        touched_J = {arc.j for arc in self.arcs}
        return touched_I == set(vp.I) and touched_J == set(vp.Jbar)

    def label(self) -> str:
        return "{" + ", ".join(arc.label() for arc in self.arcs) + "}"

    def to_record(self) -> List[List[int]]:
        return [[arc.i, arc.j] for arc in self.arcs]


class IJTree(IJForest):
    """A maximal (I,Jbar)-forest; it has |I|+|Jbar|-1 arcs."""


def _check_arcs(arcs: Iterable[Arc], vp: ValidPair) -> List[Arc]:
    allowed = set(build_A(vp))
    arc_list = [Arc(*arc) for arc in arcs]
    outside = [arc for arc in arc_list if arc not in allowed]
    if outside:
        raise GraphError("arcs outside A(I,Jbar)", {"arcs": [arc.label() for arc in outside]})
    return arc_list


def is_noncrossing(f: Iterable[Arc], vp: ValidPair) -> bool:
    """
    True iff no two arcs of ``f`` cross.

    Raises:
        GraphError: if an arc is not in A(I,Jbar)
    """
    arc_list = _check_arcs(f, vp)
    return not any(arcs_cross(a, b) for index, a in enumerate(arc_list) for b in arc_list[index + 1:])


def enumerate_IJ_trees(vp: ValidPair) -> List[IJTree]:
    """
    All maximal non-crossing arc sets, by backtracking over the arcs of A(I,Jbar) in order.

    Raises:
        InvariantViolation: if a maximal set does not have |I|+|Jbar|-1 arcs
    """
    arcs = sorted(build_A(vp))
    count = len(arcs)
    crossing = [frozenset(k for k in range(count) if arcs_cross(arcs[a], arcs[k])) for a in range(count)]
    target = vp.size - 1
    found: List[IJTree] = []

    def extend(position: int, chosen: List[int], blocked: FrozenSet[int]) -> None:
        if position == count:
            chosen_set = set(chosen)
            maximal = all(k in chosen_set or k in blocked for k in range(count))
            if maximal:
                if len(chosen) != target:
                    raise InvariantViolation("maximal forest with the wrong arc count", {
                        "arcs": [arcs[k].label() for k in chosen], "expected": target
                    })
                found.append(IJTree(tuple(arcs[k] for k in chosen)))
            return
        available = sum(1 for k in range(position, count) if k not in blocked)
        if len(chosen) + available < target:
            return
        if position not in blocked:
            extend(position + 1, chosen + [position], blocked | crossing[position])
        # skipping a free arc is only useful if a later arc will block it
        if position in blocked or any(k > position and k not in blocked for k in crossing[position]):
            extend(position + 1, chosen, blocked)

    extend(0, [], frozenset())
    logger.debug("enumerated (I,Jbar)-trees", {"pair": vp.key(), "count": len(found)})
    return sorted(found, key=lambda tree: tree.arcs)


def prec_tree(t: IJForest, vp: ValidPair) -> ProvGraph:
    """
    Quotient of an (I,Jbar)-tree under prec.

    Each arc (i, jbar) with prec(jbar) != i becomes the edge (i, prec(jbar)),
    whose provenance is the directed path of G(I,Jbar) between its endpoints.

    Raises:
        InvariantViolation: unless the result is an alternating non-crossing tree on I ∪ prec(Jbar)
    """
    pm = prec(vp)
    g = build_G(vp)
    edges = []
    for arc in _check_arcs(t.arcs, vp):
        head = pm[arc.j]
        if head == arc.i:
            continue
        path = directed_path(g, arc.i, head)
        if path is None:
            raise InvariantViolation("arc without a path in G(I,Jbar)", {"arc": arc.label()})
        edges.append(ProvEdge(arc.i, head, path))
    result = ProvGraph.build(g.vertices, edges, g.base_edges)
    if not (is_alternating(result) and is_noncrossing_graph(result) and is_tree(result)):
        raise InvariantViolation("prec(T) is not an alternating non-crossing tree", {"tree": t.label()})
    return result


def _check_D_member(d: ProvGraph, vp: ValidPair) -> None:
    heads = set(prec(vp).values())
    expected_vertices = tuple(sorted(set(vp.I) | heads))
    if d.vertices != expected_vertices:
        raise GraphError("graph is not on I ∪ prec(Jbar)", {"vertices": list(d.vertices)})
    if any(edge.tail not in vp.I or edge.head not in heads for edge in d.edges):
        raise GraphError("edge outside I x prec(Jbar)")
    if not is_alternating(d):
        raise GraphError("graph is not alternating")
    if not is_noncrossing_graph(d):
        raise GraphError("graph is not non-crossing")
    if not is_tree(d):
        raise GraphError("graph is not a maximal (tree) alternating non-crossing graph")


def prec_tree_inverse(d: ProvGraph, vp: ValidPair) -> IJTree:
    """
    The (I,Jbar)-tree whose prec quotient is ``d``.

    Every edge (a, b) lifts to the arc (a, prec^-1(b)), and every vertex
    v of I ∩ prec(Jbar) gains its collapsed arc (v, prec^-1(v)).

    Raises:
        GraphError: if ``d`` is not a maximal alternating non-crossing graph on I ∪ prec(Jbar)
        InvariantViolation: if the lift does not round-trip
    """
    _check_D_member(d, vp)
    inverse = prec_inverse(vp)
    arcs = {Arc(edge.tail, inverse[edge.head]) for edge in d.edges}
    arcs |= {Arc(v, inverse[v]) for v in cone_vertices(vp)}
    tree = IJTree.of(arcs)
    if len(tree) != vp.size - 1 or not is_noncrossing(tree.arcs, vp):
        raise InvariantViolation("lift is not an (I,Jbar)-tree", {"arcs": tree.label()})
    if sorted(prec_tree(tree, vp).endpoint_pairs()) != sorted(d.endpoint_pairs()):
        raise InvariantViolation("prec lift does not round-trip", {"arcs": tree.label()})
    return tree


def leaf_forest(leaf: ProvGraph, vp: ValidPair) -> IJForest:
    """Arcs of a reduction-tree leaf: (i, prec^-1(k)) per edge plus the collapsed arcs."""
    inverse = prec_inverse(vp)
    arcs = {Arc(edge.tail, inverse[edge.head]) for edge in leaf.edges}
    arcs |= {Arc(v, inverse[v]) for v in cone_vertices(vp)}
    return IJForest.of(arcs)


def complex_faces(tree: ReductionTree, vp: ValidPair) -> List[IJForest]:
    """
    The interior faces of the triangulation, one covering forest per leaf, in leaf order.

    Raises:
        InvariantViolation: if a leaf translates to a crossing or non-covering forest
    """
    faces = []
    for node in tree.leaves():
        forest = leaf_forest(node.graph, vp)
        if not is_noncrossing(forest.arcs, vp):
            raise InvariantViolation("leaf translates to a crossing forest", {"forest": forest.label()})
        if not forest.is_covering(vp):
            raise InvariantViolation("leaf translates to a non-covering forest", {"forest": forest.label()})
        faces.append(forest)
    return faces


def dual_graph(facets: Sequence[IJForest]) -> Dict[int, List[int]]:
    """Adjacency lists over facet indices; two facets are adjacent iff they differ in exactly one arc."""
    arc_sets = [facet.arc_set() for facet in facets]
    adjacency: Dict[int, List[int]] = {index: [] for index in range(len(facets))}
    for a in range(len(facets)):
        for b in range(a + 1, len(facets)):
            if len(arc_sets[a] ^ arc_sets[b]) == 2:
                adjacency[a].append(b)
                adjacency[b].append(a)
    return adjacency


def dual_graph_is_connected(adjacency: Dict[int, List[int]]) -> bool:
    graph = nx.Graph()
    graph.add_nodes_from(adjacency)
    graph.add_edges_from((a, b) for a, neighbours in adjacency.items() for b in neighbours)
    return graph.number_of_nodes() > 0 and nx.is_connected(graph)


@dataclass(frozen=True)
class LatticePath:
    """A word over E and N (and D for Schröder paths)."""

    word: str

    def __post_init__(self):
        if set(self.word) - set("END"):
            raise ValueError(f"lattice path letters must be E, N or D: {self.word!r}")

    @property
    def east(self) -> int:
        return self.word.count("E") + self.word.count("D")

    @property
    def north(self) -> int:
        return self.word.count("N") + self.word.count("D")

    def floor(self) -> List[int]:
        """Height of each E step of nu; a path may step east from column x only at height >= floor[x]."""
        heights, height = [], 0
        for letter in self.word:
            if letter == "E":
                heights.append(height)
            else:
                height += 1
        return heights

    def __str__(self) -> str:
        return self.word


def nu_from_pair(vp: ValidPair) -> LatticePath:
    """Read I ⊔ Jbar in order as E/N steps and drop the first E and the last N."""
    word = "".join("N" if element.barred else "E" for element in vp.elements())
    return LatticePath(word[1:-1])


def _check_nu(nu: LatticePath) -> None:
    if "D" in nu.word:
        raise ValueError("nu must be a word over E and N")


def _path_table(nu: LatticePath, allow_diagonal: bool, track_valleys: bool) -> Dict[Tuple, int]:
    """
    Count paths weakly above ``nu`` ending at nu's endpoint.

    States are (x, y, last_step, statistic) where the statistic counts
    valleys or diagonal steps.
    """
    _check_nu(nu)
    width, height = nu.east, nu.north
    floor = nu.floor()
    table: Dict[Tuple, int] = {(0, 0, "", 0): 1}
    # process lattice points in order of x + y so every predecessor is final
    for level in range(width + height + 1):
        for state in sorted(key for key in table if key[0] + key[1] == level):
            x, y, last, stat = state
            ways = table[state]
            moves = []
            if y < height:
                moves.append(("N", x, y + 1))
            if x < width and y >= floor[x]:
                moves.append(("E", x + 1, y))
                if allow_diagonal and y < height:
                    moves.append(("D", x + 1, y + 1))
            for step, nx_, ny in moves:
                if track_valleys:
                    gained = 1 if (last == "E" and step == "N") else 0
                else:
                    gained = 1 if step == "D" else 0
                key = (nx_, ny, step, stat + gained)
                table[key] = table.get(key, 0) + ways
    return {key: value for key, value in table.items() if key[0] == width and key[1] == height}


def _bucket(finals: Dict[Tuple, int]) -> List[int]:
    top = max(key[3] for key in finals)
    buckets = [0] * (top + 1)
    for key, value in finals.items():
        buckets[key[3]] += value
    return buckets


def nu_catalan(nu: LatticePath) -> int:
    """Number of nu-Dyck paths: E/N paths weakly above nu with nu's endpoints."""
    return sum(_path_table(nu, allow_diagonal=False, track_valleys=False).values())


def nu_narayana(nu: LatticePath) -> List[int]:
    """nu-Dyck paths by number of valleys (EN factors of the path's own word)."""
    return _bucket(_path_table(nu, allow_diagonal=False, track_valleys=True))


def nu_schroeder(nu: LatticePath) -> List[int]:
    """nu-Schröder paths (steps E, N, D weakly above nu) by number of D steps."""
    return _bucket(_path_table(nu, allow_diagonal=True, track_valleys=False))


def nu_table(nus: Iterable[LatticePath]) -> List[Dict]:
    """Rows (nu, Cat, Narayana vector, Schröder vector)."""
    return [
        {"nu": nu.word, "catalan": nu_catalan(nu), "narayana": nu_narayana(nu), "schroeder": nu_schroeder(nu)}
        for nu in nus
    ]


def length_tree(vp: ValidPair, max_reductions: int = DEFAULT_MAX_REDUCTIONS) -> ReductionTree:
    return build_reduction_tree(build_G(vp), LengthOrder(), simple=False, max_reductions=max_reductions)


def D_set(vp: ValidPair, tree: Optional[ReductionTree] = None) -> List[ProvGraph]:
    """Full-dimensional leaves of the length-order reduction tree of G(I,Jbar)."""
    tree = tree or length_tree(vp)
    return [node.graph for node in tree.full_dimensional_leaves()]


def verify_corollary_4_9(vp: ValidPair, order: Optional[ReductionOrder] = None,
                         max_reductions: int = DEFAULT_MAX_REDUCTIONS) -> Report:
    """
    Compare the reduced form at x_ij = 1 with the nu-Schröder and nu-Narayana vectors.

    Checks p(1, beta) = Sch_nu(beta) and p(1, beta - 1) = N_nu(beta), coefficientwise.
    """
    order = order or LengthOrder()
    tree = build_reduction_tree(build_G(vp), order, simple=False, max_reductions=max_reductions)
    at_one = evaluate_at_one(reduced_form_of_tree(tree))
    shifted = shift_beta(at_one, -1)
    nu = nu_from_pair(vp)
    schroeder, narayana = nu_schroeder(nu), nu_narayana(nu)

    report = Report("schroeder and narayana identities", subject={**vp.to_record(), "nu": nu.word})
    report.summary.update({
        "p(1,beta)": coefficient_list(at_one),
        "p(1,beta-1)": coefficient_list(shifted),
        "schroeder": schroeder,
        "narayana": narayana,
    })
    report.check("p(1, beta) = Sch_nu(beta)", coefficient_list(at_one) == schroeder,
                 got=coefficient_list(at_one), expected=schroeder)
    report.check("p(1, beta - 1) = N_nu(beta)", coefficient_list(shifted) == narayana,
                 got=coefficient_list(shifted), expected=narayana)
    report.check("leaf count = sum of Sch_nu", len(tree.leaf_indices) == sum(schroeder),
                 leaves=len(tree.leaf_indices), schroeder_total=sum(schroeder))
    return report


def arc_of_vertex(v) -> Arc:
    """Arc (i, jbar) of a PAIR-space vertex (e_i, e_jbar)."""
    elements = dict(v.coords)
    i = [element.value for element in elements if not element.barred]
    j = [element.value for element in elements if element.barred]
    if len(i) != 1 or len(j) != 1:
        raise GraphError("vertex is not of the form (e_i, e_jbar)", {"vertex": v.label()})
    return Arc(i[0], j[0])


def triangulation_report(vp: ValidPair, max_reductions: int = DEFAULT_MAX_REDUCTIONS,
                         max_flow_count: int = DEFAULT_MAX_FLOW_COUNT,
                         tree: Optional[ReductionTree] = None) -> Report:
    """
    Compare the length-order triangulation with the independent oracles.

    Checks that #full-dimensional leaves = normalized volume = nu-Catalan =
    #(I,Jbar)-trees, that every facet is a unimodular simplex containing the
    cone routes, that the full-dimensional leaves are exactly prec of the
    (I,Jbar)-trees, and that the facets of the complex match the simplices.
    """
    tree = tree or length_tree(vp, max_reductions)
    ag = build_Ghat(vp)
    nu = nu_from_pair(vp)
    trees = enumerate_IJ_trees(vp)
    full = tree.full_dimensional_leaves()
    volume = normalized_volume(ag, max_flow_count)
    catalan = nu_catalan(nu)

    report = Report("triangulation", subject={**vp.to_record(), "nu": nu.word})
    report.summary.update({
        "full_dimensional_leaves": len(full),
        "normalized_volume": volume,
        "nu_catalan": catalan,
        "ij_trees": len(trees),
        "leaves": len(tree.leaf_indices),
    })
    report.check("#full leaves = volume = nu-Catalan = #trees", len(full) == volume == catalan == len(trees),
                 leaves=len(full), volume=volume, catalan=catalan, trees=len(trees))

    route_list = routes(ag)
    report.check("integer unit flows = routes", count_integer_flows(ag, 1, max_flow_count) == len(route_list),
                 routes=len(route_list))

    report.check("every leaf is alternating", all(is_alternating(node.graph) for node in tree.leaves()))
    report.check("every node is non-crossing", all(is_noncrossing_graph(node.graph) for node in tree.nodes))
    report.check("full-dimensional leaves are trees", all(is_tree(node.graph) for node in full))

    flow_polytope = flow_polytope_vertices(ag)
    pair_polytope = U_polytope_vertices(vp)
    flow_simplices = facet_simplices(tree, FLOW, vp)
    pair_simplices = facet_simplices(tree, PAIR, vp)
    dim = vp.size - 2
    report.check("facets have dim+1 vertices",
                 all(len(s.vertices) == dim + 1 for s in flow_simplices + pair_simplices))
    bad = [index for index, s in enumerate(flow_simplices) if not s.is_unimodular_in(flow_polytope)]
    bad += [index for index, s in enumerate(pair_simplices) if not s.is_unimodular_in(pair_polytope)]
    report.check("facets are unimodular", not bad, facets=sorted(set(bad)))

    cones = {v for v in cone_vertices(vp)}
    missing = [index for index, route_set in enumerate(facet_route_sets(tree, vp))
               if not cones <= {r.entry for r in route_set if r.is_trivial}]
    report.check("cone routes lie in every facet", not missing, facets=missing, cone_vertices=sorted(cones))

    leaf_sets = {tuple(node.graph.endpoint_pairs()) for node in full}
    tree_sets = {tuple(prec_tree(t, vp).endpoint_pairs()) for t in trees}
    report.check("full-dimensional leaves = prec of (I,Jbar)-trees", leaf_sets == tree_sets,
                 only_leaves=len(leaf_sets - tree_sets), only_trees=len(tree_sets - leaf_sets))

    faces = complex_faces(tree, vp)
    report.check("leaves give distinct covering forests", len(set(faces)) == len(faces),
                 faces=len(faces), distinct=len(set(faces)))
    facet_forests = {face.arc_set() for face in faces if len(face) == vp.size - 1}
    simplex_forests = {frozenset(arc_of_vertex(v) for v in s.vertices) for s in pair_simplices}
    enumerated = {t.arc_set() for t in trees}
    report.check("complex facets = phi1 facet simplices = (I,Jbar)-trees",
                 facet_forests == simplex_forests == enumerated)

    report.check("dual graph is connected", dual_graph_is_connected(dual_graph(trees)))
    logger.info("triangulation checked", {"pair": vp.key(), "passed": report.passed})
    return report


def order_independence_report(vp: ValidPair, seeds: Sequence[int] = (0,),
                              max_reductions: int = DEFAULT_MAX_REDUCTIONS) -> Report:
    """Reduced forms of M_G under different longest-pair schedules must coincide."""
    g = build_G(vp)
    orders: List[ReductionOrder] = [LengthOrder("first"), LengthOrder("last")]
    for seed in seeds:
        orders.append(LengthOrder("random", seed))
        orders.append(LongestPairOrder(seed))
    forms = {order.describe(): reduced_form_of_tree(build_reduction_tree(g, order, max_reductions=max_reductions))
             for order in orders}
    reference = forms[orders[0].describe()]
    report = Report("longest-pair order independence", subject=vp.to_record())
    report.summary["orders"] = list(forms)
    differing = [name for name, form in forms.items() if form != reference]
    report.check("all longest-pair schedules give the same reduced form", not differing, differing=differing)
    return report


def prec_bijection_report(vp: ValidPair, tree: Optional[ReductionTree] = None) -> Report:
    """prec and its lift are mutually inverse between (I,Jbar)-trees and D(I,Jbar)."""
    report = Report("prec bijection", subject=vp.to_record())
    trees = enumerate_IJ_trees(vp)
    forward_failures = [t.label() for t in trees if prec_tree_inverse(prec_tree(t, vp), vp) != t]
    report.check("lift . prec = id on (I,Jbar)-trees", not forward_failures, trees=forward_failures)
    backward_failures = []
    for d in D_set(vp, tree):
        if sorted(prec_tree(prec_tree_inverse(d, vp), vp).endpoint_pairs()) != sorted(d.endpoint_pairs()):
            backward_failures.append(d.endpoint_pairs())
    report.check("prec . lift = id on D(I,Jbar)", not backward_failures, graphs=backward_failures)
    return report
