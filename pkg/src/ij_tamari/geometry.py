"""
Exact vertex realizations of the four polytopes of a valid pair and the maps between them.

Spaces and their coordinate keys:

- ``FLOW``: edges of Ghat, i.e. ``("s", i)``, base edges ``(a, b)`` and ``(j, "t")``
- ``EDGE``: base edges ``(a, b)`` of G
- ``PAIR``: ``OrderedElement`` values of [n] ⊔ [nbar]
- ``ROOT``: vertices of [n]

Coordinates are sparse, keyed by those objects, never by position. All
arithmetic is over the integers or the rationals.
"""

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy import Matrix, Poly, QQ, ZZ
from sympy.matrices.normalforms import invariant_factors
from sympy.polys.matrices import DomainMatrix
from sympy.polys.polyfuncs import interpolate

from .algebra import Pair, ReductionTree, non_alternating_pairs, reduce_graph
from .config import DEFAULT_MAX_FLOW_COUNT
from .errors import GraphError, InvariantViolation, ReductionError, ResourceLimitError, SpaceMismatchError
from .graphs import AugmentedGraph, ProvEdge, ProvGraph, Route, check_chain, directed_path, routes
from .ij_construction import (OrderedElement, ValidPair, build_A, build_G, build_Ghat, cone_vertices, prec,
                              prec_inverse, prec_quotient)
from .reports import Report
from .telemetry import get_logger

logger = get_logger(__name__)

FLOW = "flow"
EDGE = "edge"
PAIR = "pair"
ROOT = "root"
SPACES = (FLOW, EDGE, PAIR, ROOT)

T = sympy.Symbol("t")


def _rank_label(x: Any) -> float:
    if x == "s":
        return -math.inf
    if x == "t":
        return math.inf
    return x


def coordinate_sort_key(space: str, key: Any) -> Tuple:
    if space == FLOW:
        return (_rank_label(key[0]), _rank_label(key[1]))
    if space == EDGE:
        return tuple(key)
    if space == PAIR:
        return (key.value, key.barred)
    return (key,)


def format_key(space: str, key: Any) -> str:
    if space in (FLOW, EDGE):
        return f"({key[0]},{key[1]})"
    if space == PAIR:
        return key.token()
    return str(key)


@dataclass(frozen=True)
class LatticeVertex:
    """Integer vector in one of the four spaces, stored as sorted nonzero coordinates."""

    space: str
    coords: Tuple[Tuple[Any, int], ...]

    @classmethod
    def of(cls, space: str, mapping: Mapping[Any, int]) -> "LatticeVertex":
        if space not in SPACES:
            raise SpaceMismatchError("unknown space", {"space": space})
        items = [(key, int(value)) for key, value in mapping.items() if value != 0]
        items.sort(key=lambda item: coordinate_sort_key(space, item[0]))
        return cls(space, tuple(items))

    @classmethod
    def origin(cls, space: str) -> "LatticeVertex":
        return cls.of(space, {})

    def as_dict(self) -> Dict[Any, int]:
        return dict(self.coords)

    def get(self, key: Any) -> int:
        return self.as_dict().get(key, 0)

    @property
    def is_zero(self) -> bool:
        return not self.coords

    def require(self, space: str) -> None:
        if self.space != space:
            raise SpaceMismatchError("vertex lives in the wrong space", {"expected": space, "got": self.space})

    def label(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for key, value in self.coords:
            name = f"e{format_key(self.space, key)}"
            parts.append(("" if value == 1 else "-" if value == -1 else str(value)) + name)
        return " + ".join(parts).replace("+ -", "- ")

    def to_record(self) -> Dict[str, int]:
        return {format_key(self.space, key): value for key, value in self.coords}


def _difference_rows(vertices: Sequence[LatticeVertex], keys: Sequence[Any]) -> List[List[int]]:
    if len(vertices) < 2:
        return []
    base = vertices[0].as_dict()
    rows = []
    for vertex in vertices[1:]:
        values = vertex.as_dict()
        rows.append([values.get(key, 0) - base.get(key, 0) for key in keys])
    return rows


def _keys_of(vertices: Iterable[LatticeVertex], space: str) -> List[Any]:
    keys = {key for vertex in vertices for key, _ in vertex.coords}
    return sorted(keys, key=lambda key: coordinate_sort_key(space, key))


def integer_rank(rows: List[List[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    matrix = DomainMatrix([[ZZ(value) for value in row] for row in rows], (len(rows), len(rows[0])), ZZ)
    return matrix.convert_to(QQ).rank()


def lattice_index(rows: List[List[int]]) -> int:
    """Index of the lattice spanned by ``rows`` in its saturation; 1 means saturated."""
    if not rows or not rows[0]:
        return 1
    factors = invariant_factors(Matrix(rows), domain=ZZ)
    product = 1
    for factor in factors:
        if factor != 0:
            product *= abs(int(factor))
    return product


@dataclass(frozen=True)
class VertexSetPolytope:
    """Convex hull of a finite set of lattice vertices, with its affine dimension."""

    space: str
    vertices: Tuple[LatticeVertex, ...]
    dim: int

    @classmethod
    def from_vertices(cls, space: str, vertices: Iterable[LatticeVertex]) -> "VertexSetPolytope":
        vertex_list = list(vertices)
        for vertex in vertex_list:
            vertex.require(space)
        if len(set(vertex_list)) != len(vertex_list):
            raise InvariantViolation("repeated vertex", {"space": space})
        vertex_list.sort(key=lambda v: [coordinate_sort_key(space, k) + (c,) for k, c in v.coords])
        rows = _difference_rows(vertex_list, _keys_of(vertex_list, space))
        return cls(space, tuple(vertex_list), integer_rank(rows))

    def keys(self) -> List[Any]:
        return _keys_of(self.vertices, self.space)

    def vertex_set(self) -> frozenset:
        return frozenset(self.vertices)

    def lattice_index(self) -> int:
        return lattice_index(_difference_rows(self.vertices, self.keys()))

    def to_matrix_text(self, keys: Optional[Sequence[Any]] = None) -> str:
        """One vertex per line; the header declares the coordinate order."""
        keys = list(keys) if keys is not None else self.keys()
        lines = ["# " + " ".join(format_key(self.space, key) for key in keys)]
        for vertex in self.vertices:
            values = vertex.as_dict()
            lines.append(" ".join(str(values.get(key, 0)) for key in keys))
        return "\n".join(lines) + "\n"

    def to_record(self) -> Dict:
        return {"space": self.space, "dim": self.dim, "vertices": [v.to_record() for v in self.vertices]}


@dataclass(frozen=True)
class Simplex:
    """A candidate simplex given by its vertices."""

    space: str
    vertices: Tuple[LatticeVertex, ...]

    @property
    def dimension(self) -> int:
        return len(self.vertices) - 1

    def _rows(self) -> List[List[int]]:
        return _difference_rows(self.vertices, _keys_of(self.vertices, self.space))

    def is_affinely_independent(self) -> bool:
        return integer_rank(self._rows()) == self.dimension

    def lattice_index(self) -> int:
        return lattice_index(self._rows())

    def is_unimodular_in(self, polytope: VertexSetPolytope) -> bool:
        """Full-dimensional in ``polytope`` and spanning the same affine lattice."""
        return (self.is_affinely_independent() and self.dimension == polytope.dim
                and self.lattice_index() == polytope.lattice_index())


def route_vertex(route: Route) -> LatticeVertex:
    """0/1 indicator of the route's edges in the FLOW space."""
    coords = {("s", route.entry): 1, (route.exit, "t"): 1}
    for base_id in route.inner_path:
        coords[base_id] = coords.get(base_id, 0) + 1
    return LatticeVertex.of(FLOW, coords)


def flow_polytope_vertices(ag: AugmentedGraph, check_dimension: bool = True) -> VertexSetPolytope:
    """
    F_Ghat as the convex hull of its route vertices.

    Raises:
        InvariantViolation: if ``check_dimension`` and dim differs from |E| - |V| + 1
    """
    polytope = VertexSetPolytope.from_vertices(FLOW, (route_vertex(r) for r in routes(ag)))
    expected = ag.edge_count - ag.vertex_count + 1
    if check_dimension and polytope.dim != expected:
        raise InvariantViolation("flow polytope dimension differs from |E|-|V|+1", {
            "dim": polytope.dim, "expected": expected
        })
    return polytope


def node_flow_polytope(root_ag: AugmentedGraph, node: ProvGraph) -> VertexSetPolytope:
    """F of a reduction-tree node: routes of the node inside the root's boundary, expanded to base edges."""
    return flow_polytope_vertices(root_ag.with_inner(node), check_dimension=False)


def U_polytope_vertices(vp: ValidPair) -> VertexSetPolytope:
    """U(I,Jbar) = conv{(e_i, e_jbar)} over the arcs of A(I,Jbar)."""
    polytope = VertexSetPolytope.from_vertices(PAIR, (
        LatticeVertex.of(PAIR, {OrderedElement(arc.i, False): 1, OrderedElement(arc.j, True): 1})
        for arc in build_A(vp)
    ))
    if polytope.dim != vp.size - 2:
        raise InvariantViolation("U has the wrong dimension", {"dim": polytope.dim, "expected": vp.size - 2})
    return polytope


def path_vertex(path: Iterable[Tuple[int, int]]) -> LatticeVertex:
    return LatticeVertex.of(EDGE, {base_id: 1 for base_id in path})


def S_polytope_vertices(g: ProvGraph, vp: ValidPair) -> VertexSetPolytope:
    """Indicators of directed paths of G from I to prec(Jbar), plus the origin."""
    heads = sorted(set(prec(vp).values()))
    vertices = [LatticeVertex.origin(EDGE)]
    for i in vp.I:
        for w in heads:
            if i < w:
                path = directed_path(g, i, w)
                if path is not None:
                    vertices.append(path_vertex(path))
    return VertexSetPolytope.from_vertices(EDGE, vertices)


def P_polytope_vertices(vp: ValidPair) -> VertexSetPolytope:
    """conv{0, e_i - e_j} over the edges (i, j) of prec(A(I,Jbar))."""
    quotient = prec_quotient(build_A(vp), prec(vp), vp)
    vertices = [LatticeVertex.origin(ROOT)]
    vertices.extend(LatticeVertex.of(ROOT, {i: 1, j: -1}) for i, j in quotient.graph.endpoint_pairs())
    return VertexSetPolytope.from_vertices(ROOT, vertices)


def phi1(r: Route, vp: ValidPair) -> LatticeVertex:
    """
    Route -> (e_entry, e_jbar) with jbar = prec^-1(exit).

    Raises:
        GraphError: if the exit vertex is not in the image of prec
    """
    inverse = prec_inverse(vp)
    if r.exit not in inverse:
        raise GraphError("route exit is not in prec(Jbar)", {"route": r.label()})
    return LatticeVertex.of(PAIR, {OrderedElement(r.entry, False): 1, OrderedElement(inverse[r.exit], True): 1})


def phi1_vector(v: LatticeVertex, vp: ValidPair) -> LatticeVertex:
    """Linear extension of phi1 to FLOW vectors: (s,i) -> e_i, (j,t) -> e_{prec^-1(j)}, inner edges -> 0."""
    v.require(FLOW)
    inverse = prec_inverse(vp)
    image: Dict[OrderedElement, int] = {}
    for (u, w), value in v.coords:
        if u == "s":
            key = OrderedElement(w, False)
        elif w == "t":
            if u not in inverse:
                raise GraphError("sink edge outside prec(Jbar)", {"vertex": u})
            key = OrderedElement(inverse[u], True)
        else:
            continue
        image[key] = image.get(key, 0) + value
    return LatticeVertex.of(PAIR, image)


def pi1(v: LatticeVertex) -> LatticeVertex:
    """Projection onto the inner-edge coordinates."""
    v.require(FLOW)
    return LatticeVertex.of(EDGE, {key: value for key, value in v.coords if "s" not in key and "t" not in key})


def pi2(v: LatticeVertex, vp: ValidPair) -> LatticeVertex:
    """(e_i, 0) -> e_i and (0, e_jbar) -> -e_prec(jbar), or -e_j when jbar is not in Jbar."""
    v.require(PAIR)
    pm = prec(vp)
    image: Dict[int, int] = {}
    for element, value in v.coords:
        if element.barred:
            target, sign = pm.get(element.value, element.value), -1
        else:
            target, sign = element.value, 1
        image[target] = image.get(target, 0) + sign * value
    return LatticeVertex.of(ROOT, image)


def phi2(v: LatticeVertex) -> LatticeVertex:
    """e_(i,j) -> e_i - e_j, extended linearly."""
    v.require(EDGE)
    image: Dict[int, int] = {}
    for (i, j), value in v.coords:
        image[i] = image.get(i, 0) + value
        image[j] = image.get(j, 0) - value
    return LatticeVertex.of(ROOT, image)


def mu(edge: ProvEdge, ag: AugmentedGraph) -> Route:
    """
    The route (s, tail, ..., head, t) that walks the provenance of ``edge``.

    Raises:
        ProvenanceError: if the provenance does not chain inside the base graph
        GraphError: if the route has no boundary edge at its entry or exit
    """
    check_chain(edge.provenance, edge.tail, edge.head, ag.inner.base_edges)
    if edge.tail not in ag.source_edges or edge.head not in ag.sink_edges:
        raise GraphError("edge endpoints have no boundary edges", {"edge": edge.endpoints})
    return Route(edge.provenance, edge.tail, edge.head)


def _bijection(domain_images: Sequence[LatticeVertex], codomain: Iterable[LatticeVertex]) -> Tuple[bool, Dict]:
    codomain_set = set(codomain)
    image_set = set(domain_images)
    injective = len(image_set) == len(domain_images)
    onto = image_set == codomain_set
    details = {}
    if not injective:
        details["collisions"] = len(domain_images) - len(image_set)
    if not onto:
        details["missing"] = sorted(v.label() for v in codomain_set - image_set)
        details["extra"] = sorted(v.label() for v in image_set - codomain_set)
    return injective and onto, details


def verify_theorem_3_1(vp: ValidPair) -> Report:
    """
    Check the commuting square F_Ghat -> U, F_Ghat -> S(G), U -> P(G), S(G) -> P(G).

    Checks the bijections phi1 (routes to vertices of U) and phi2 (vertices of
    S(G) to vertices of P(G)), the four dimensions, commutativity
    pi2 . phi1 = phi2 . pi1 on every route, that pi1 maps routes onto S(G),
    and lattice preservation of phi1 and phi2.
    """
    report = Report("commuting diagram", subject=vp.to_record())
    ag = build_Ghat(vp)
    g = ag.inner
    route_list = routes(ag)
    flow_vertices = [route_vertex(r) for r in route_list]

    F = VertexSetPolytope.from_vertices(FLOW, flow_vertices)
    U = U_polytope_vertices(vp)
    S = S_polytope_vertices(g, vp)
    P = P_polytope_vertices(vp)
    report.summary.update({
        "dims": [F.dim, U.dim, S.dim, P.dim],
        "vertices": [len(F.vertices), len(U.vertices), len(S.vertices), len(P.vertices)],
    })

    report.check("route count equals arc count", len(route_list) == len(build_A(vp)),
                 routes=len(route_list), arcs=len(build_A(vp)))
    phi1_images = [phi1(r, vp) for r in route_list]
    ok, details = _bijection(phi1_images, U.vertices)
    report.check("phi1 is a bijection from routes onto vertices of U", ok, **details)
    report.check("phi1 agrees with its linear extension",
                 all(phi1_vector(v, vp) == w for v, w in zip(flow_vertices, phi1_images)))

    expected_dim = vp.size - 2
    report.check("dim F = dim U = |I|+|Jbar|-2", F.dim == U.dim == expected_dim,
                 dim_F=F.dim, dim_U=U.dim, expected=expected_dim)

    mismatches = [r.label() for r, v, w in zip(route_list, flow_vertices, phi1_images)
                  if pi2(w, vp) != phi2(pi1(v))]
    report.check("pi2 . phi1 = phi2 . pi1 on every route", not mismatches, routes=mismatches)

    ok, details = _bijection(sorted({pi1(v) for v in flow_vertices}, key=LatticeVertex.label), S.vertices)
    report.check("pi1 maps routes onto vertices of S(G)", ok, **details)

    phi2_images = [phi2(v) for v in S.vertices]
    ok, details = _bijection(phi2_images, P.vertices)
    report.check("phi2 is a bijection from vertices of S(G) onto vertices of P(G)", ok, **details)

    edges = len(g.edges)
    report.check("dim S(G) = dim P(G) = |E(G)|", S.dim == P.dim == edges, dim_S=S.dim, dim_P=P.dim, edges=edges)

    trivial = {r.label() for r, w in zip(route_list, phi1_images) if pi2(w, vp).is_zero}
    report.check("pi2 . phi1 sends exactly the trivial routes to the origin",
                 trivial == {r.label() for r in route_list if r.is_trivial}, origin_routes=sorted(trivial))

    indices = {"F": F.lattice_index(), "U": U.lattice_index(), "S": S.lattice_index(), "P": P.lattice_index()}
    report.check("phi1 preserves the lattice", F.dim == U.dim and indices["F"] == indices["U"] == 1, **indices)
    report.check("phi2 preserves the lattice", S.dim == P.dim and indices["S"] == indices["P"] == 1, **indices)

    logger.info("commuting diagram checked", {"pair": vp.key(), "passed": report.passed})
    return report


def facet_route_sets(tree: ReductionTree, vp: ValidPair) -> List[Tuple[Route, ...]]:
    """Routes of every full-dimensional leaf: mu of each edge plus the cone routes (s, v, t)."""
    root_ag = build_Ghat(vp)
    cones = [Route((), v, v) for v in sorted(cone_vertices(vp))]
    result = []
    for node in tree.full_dimensional_leaves():
        leaf_routes = [mu(edge, root_ag) for edge in node.graph.edges] + cones
        result.append(tuple(sorted(leaf_routes, key=Route.sort_key)))
    return result


def facet_simplices(tree: ReductionTree, target: str, vp: ValidPair) -> List[Simplex]:
    """
    Simplices of the triangulation given by the full-dimensional leaves of ``tree``.

    Args:
        tree: reduction tree rooted at G(I,Jbar)
        target: ``FLOW`` for route vertices or ``PAIR`` for their phi1 images
        vp: the pair

    Raises:
        SpaceMismatchError: for any other target
        InvariantViolation: if a leaf does not give a simplex of full dimension
    """
    if target not in (FLOW, PAIR):
        raise SpaceMismatchError("facet simplices live in the flow or pair space", {"target": target})
    dim = vp.size - 2
    result = []
    for route_set in facet_route_sets(tree, vp):
        if target == FLOW:
            vertices = tuple(route_vertex(r) for r in route_set)
        else:
            vertices = tuple(phi1(r, vp) for r in route_set)
        simplex = Simplex(target, vertices)
        if simplex.dimension != dim or not simplex.is_affinely_independent():
            raise InvariantViolation("leaf does not give a full-dimensional simplex", {
                "routes": [r.label() for r in route_set], "dim": dim
            })
        result.append(simplex)
    return result


def _stars_and_bars(total: int, parts: int) -> Iterable[Tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for bars in combinations(range(total + parts - 1), parts - 1):
        previous = -1
        split = []
        for bar in bars:
            split.append(bar - previous - 1)
            previous = bar
        split.append(total + parts - 1 - previous - 1)
        yield tuple(split)


def count_integer_flows(ag: AugmentedGraph, t: int, max_count: int = DEFAULT_MAX_FLOW_COUNT) -> int:
    """
    Number of nonnegative integer flows on ``ag`` with net flow t out of s and into t.

    Vertices are processed in increasing order; the state is the inflow still
    to be routed at every later vertex. Parallel edges with the same head are
    merged, a load of a over m copies contributing C(a+m-1, m-1) ways.

    Raises:
        ResourceLimitError: if the count exceeds ``max_count``
    """
    if t < 0:
        raise ValueError("t must be nonnegative")
    order: List[Any] = ["s"] + list(ag.inner.vertices) + ["t"]
    position = {v: index for index, v in enumerate(order)}
    heads: List[Tuple[Tuple[int, int], ...]] = []
    for v in order:
        counts: Dict[int, int] = {}
        if v == "s":
            targets = [position[i] for i in ag.source_edges]
        elif v == "t":
            targets = []
        else:
            targets = [position[edge.head] for edge in ag.inner.out_edges(v)]
            if v in ag.sink_edges:
                targets.append(position["t"])
        for target in targets:
            counts[target] = counts.get(target, 0) + 1
        heads.append(tuple(sorted(counts.items())))

    last = len(order) - 1

    @lru_cache(maxsize=None)
    def ways(index: int, pending: Tuple[int, ...]) -> int:
        # pending[k] is the inflow waiting at order[index + k]
        if index == last:
            return 1
        amount = pending[0]
        out = heads[index]
        rest = list(pending[1:])
        if not out:
            return ways(index + 1, tuple(rest)) if amount == 0 else 0
        total = 0
        for split in _stars_and_bars(amount, len(out)):
            weight = 1
            updated = list(rest)
            for (target, copies), load in zip(out, split):
                weight *= math.comb(load + copies - 1, copies - 1)
                updated[target - index - 1] += load
            total += weight * ways(index + 1, tuple(updated))
        return total

    count = ways(0, (t,) + (0,) * last)
    if count > max_count:
        raise ResourceLimitError("integer flow count exceeds the configured bound", {
            "t": t, "max_flow_count": max_count
        })
    return count


def ehrhart_polynomial(ag: AugmentedGraph, dim: Optional[int] = None,
                       max_count: int = DEFAULT_MAX_FLOW_COUNT) -> Poly:
    """Ehrhart polynomial of F, interpolated exactly through the counts at t = 0..dim."""
    if dim is None:
        dim = flow_polytope_vertices(ag, check_dimension=False).dim
    data = [(t, count_integer_flows(ag, t, max_count)) for t in range(dim + 1)]
    if dim == 0:
        return Poly(data[0][1], T, domain=QQ)
    return Poly(interpolate(data, T), T, domain=QQ)


def normalized_volume(ag: AugmentedGraph, max_count: int = DEFAULT_MAX_FLOW_COUNT) -> int:
    """
    Leading Ehrhart coefficient times dim!.

    Raises:
        InvariantViolation: if the result is not an integer
    """
    dim = flow_polytope_vertices(ag, check_dimension=False).dim
    polynomial = ehrhart_polynomial(ag, dim, max_count)
    volume = polynomial.coeff_monomial(T**dim) * sympy.factorial(dim)
    if not volume.is_integer:
        raise InvariantViolation("normalized volume is not an integer", {"volume": str(volume)})
    return int(volume)


def verify_reduction_lemma(parent: ProvGraph, pair: Pair, vp: ValidPair,
                           max_count: int = DEFAULT_MAX_FLOW_COUNT) -> Report:
    """
    Check that reducing ``pair`` subdivides F of ``parent`` into F1 and F2 meeting in F3.

    Polytopes of nodes are taken inside Ghat(I,Jbar): the node's edges plus the
    root's boundary edges. Checks dim F1 = dim F2 = dim F, dim F3 = dim F - 1
    and L(t) = L1(t) + L2(t) - L3(t) for t = 1..dim+1.

    Raises:
        ReductionError: if ``pair`` is not a non-alternating pair of ``parent``
    """
    if pair not in non_alternating_pairs(parent):
        raise ReductionError("reduction lemma needs a non-alternating pair of the parent", {"pair": list(pair)})
    root_ag = build_Ghat(vp)
    children = reduce_graph(parent, *pair)
    report = Report("reduction lemma", subject={**vp.to_record(), "pair": [list(p) for p in pair]})

    dims = [node_flow_polytope(root_ag, graph).dim for graph in (parent,) + children]
    dim = dims[0]
    report.summary["dims"] = dims
    report.check("dim F1 = dim F2 = dim F", dims[1] == dims[2] == dim, dims=dims)
    report.check("dim F3 = dim F - 1", dims[3] == dim - 1, dims=dims)

    failed_t = []
    for t in range(1, dim + 2):
        counts = [count_integer_flows(root_ag.with_inner(graph), t, max_count) for graph in (parent,) + children]
        if counts[0] != counts[1] + counts[2] - counts[3]:
            failed_t.append({"t": t, "counts": counts})
    report.check("L(t) = L1(t) + L2(t) - L3(t) for t = 1..dim+1", not failed_t, failures=failed_t)
    return report


def reduction_lemma_instances(tree: ReductionTree) -> List[Tuple[ProvGraph, Pair]]:
    """(parent graph, reduced pair) for every internal node of ``tree``."""
    return [(node.graph, node.pair) for node in tree.internal_nodes()]


def polytopes_of(vp: ValidPair) -> Dict[str, VertexSetPolytope]:
    """The four polytopes of a pair, keyed by space."""
    ag = build_Ghat(vp)
    return {
        FLOW: flow_polytope_vertices(ag),
        PAIR: U_polytope_vertices(vp),
        EDGE: S_polytope_vertices(build_G(vp), vp),
        ROOT: P_polytope_vertices(vp),
    }
