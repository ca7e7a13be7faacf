"""Total unimodularity, incidence and network matrices, and their polyhedra.

Nodes are 0-based here; the graph file format in :py:mod:`ratpoly.io` is
1-based. Arc and edge order fixes the column order of every matrix built
from a graph.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import networkx as nx
from loguru import logger

from ratpoly.config import Limits
from ratpoly.core.model import HRep
from ratpoly.errors import DimensionError, PreconditionError, ResourceLimitError
from ratpoly.linalg import MatrixLike, RatMatrix, integer_determinant
from ratpoly.utils import Vector, VectorLike, as_vector, is_integral

__all__ = [
    "Digraph",
    "Graph",
    "Submatrix",
    "TUVerdict",
    "BipartiteResult",
    "is_tu_determinant",
    "is_tu_ghouila_houri",
    "node_arc_incidence",
    "node_edge_incidence",
    "is_bipartite",
    "network_matrix",
    "matching_polytope_bipartite",
    "circulation_polytope",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)
_UNIT_ENTRIES = frozenset({-1, 0, 1})


def _check_node(node: int, num_nodes: int) -> None:
    if not 0 <= node < num_nodes:
        raise DimensionError(f"Node {node} is out of range for {num_nodes} nodes")


@dataclass(frozen=True, slots=True)
class Digraph:
    """A directed graph; parallel arcs are allowed, loops aren't."""

    num_nodes: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "arcs", tuple((int(v), int(w)) for v, w in self.arcs))
        for v, w in self.arcs:
            _check_node(v, self.num_nodes)
            _check_node(w, self.num_nodes)
            if v == w:
                raise PreconditionError(f"Loop at node {v} has no incidence column")

    def to_networkx(self) -> nx.MultiDiGraph:
        graph = nx.MultiDiGraph()
        graph.add_nodes_from(range(self.num_nodes))
        graph.add_edges_from(self.arcs)
        return graph


@dataclass(frozen=True, slots=True)
class Graph:
    """An undirected simple graph; edges are stored as ``(v, w)`` with ``v < w``."""

    num_nodes: int
    edges: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        edges = tuple((min(v, w), max(v, w)) for v, w in self.edges)
        object.__setattr__(self, "edges", tuple((int(v), int(w)) for v, w in edges))
        for v, w in self.edges:
            _check_node(v, self.num_nodes)
            _check_node(w, self.num_nodes)
            if v == w:
                raise PreconditionError(f"Loop at node {v} isn't a graph edge")
        if len(set(self.edges)) != len(self.edges):
            raise PreconditionError("Parallel edges aren't allowed")

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(self.num_nodes))
        graph.add_edges_from(self.edges)
        return graph


@dataclass(frozen=True, slots=True)
class Submatrix:
    rows: tuple[int, ...]
    columns: tuple[int, ...]
    determinant: Fraction


@dataclass(frozen=True, slots=True)
class TUVerdict:
    """Result of a total unimodularity test.

    The determinant test reports a square submatrix whose determinant isn't
    ``-1``, ``0`` or ``1``; the Ghouila-Houri test reports an ``unsignable``
    index set of rows or columns (``axis``).
    """

    is_tu: bool
    violating_submatrix: Submatrix | None = None
    unsignable: tuple[int, ...] | None = None
    axis: Literal["rows", "columns"] | None = None

    def __bool__(self) -> bool:
        return self.is_tu


@dataclass(frozen=True, slots=True)
class BipartiteResult:
    """``S ⊎ T`` when bipartite, otherwise an odd cycle starting at its smallest node."""

    bipartite: bool
    S: tuple[int, ...] = ()
    T: tuple[int, ...] = ()
    odd_cycle: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.bipartite


def _bad_entry(A: RatMatrix) -> TUVerdict | None:
    for i, row in enumerate(A.rows):
        for j, value in enumerate(row):
            if value not in _UNIT_ENTRIES:
                return TUVerdict(False, Submatrix((i,), (j,), value))
    return None


def is_tu_determinant(A: MatrixLike, limits: Limits | None = None) -> TUVerdict:
    """Check every square submatrix for a determinant in ``{-1, 0, 1}``.

    Submatrices are visited by order, then row set, then column set; the first
    violation is reported.

    Raises
    ------
    ResourceLimitError
        If there are more than ``limits.max_subsets`` square submatrices.
    """
    limits = Limits.resolve(limits)
    A = RatMatrix.create(A)
    if (verdict := _bad_entry(A)) is not None:
        return verdict
    m, n = A.shape
    count = sum(math.comb(m, k) * math.comb(n, k) for k in range(2, min(m, n) + 1))
    if count > limits.max_subsets:
        raise ResourceLimitError(
            f"{count} square submatrices exceed max_subsets={limits.max_subsets}"
        )
    entries = [[int(v) for v in row] for row in A.rows]
    for k in range(2, min(m, n) + 1):
        for rows in itertools.combinations(range(m), k):
            for cols in itertools.combinations(range(n), k):
                det = integer_determinant([[entries[i][j] for j in cols] for i in rows])
                if abs(det) > 1:
                    logger.debug("Submatrix {} x {} has determinant {}", rows, cols, det)
                    return TUVerdict(False, Submatrix(rows, cols, Fraction(det)))
    return TUVerdict(True)


def _signable(vectors: Sequence[Vector]) -> bool:
    first, rest = vectors[0], vectors[1:]
    for signs in itertools.product((1, -1), repeat=len(rest)):
        total = list(first)
        for sign, vector in zip(signs, rest, strict=True):
            for j, value in enumerate(vector):
                total[j] += sign * value
        if all(v in _UNIT_ENTRIES for v in total):
            return True
    return False


def is_tu_ghouila_houri(A: MatrixLike, limits: Limits | None = None) -> TUVerdict:
    """Check that every subset of rows can be signed to sum into ``{-1, 0, 1}ⁿ``.

    The same criterion holds for column subsets; the smaller side is used.
    Subsets are visited by size and then lexicographically, and only signings
    with a positive first vector are tried.

    Raises
    ------
    ResourceLimitError
        If there are more than ``limits.max_subsets`` signings to try.
    """
    limits = Limits.resolve(limits)
    A = RatMatrix.create(A)
    axis: Literal["rows", "columns"] = "rows" if A.nrows <= A.ncols else "columns"
    vectors = A.rows if axis == "rows" else A.columns
    count = (3 ** len(vectors) - 1) // 2
    if count > limits.max_subsets:
        raise ResourceLimitError(f"{count} signings exceed max_subsets={limits.max_subsets}")
    for k in range(1, len(vectors) + 1):
        for subset in itertools.combinations(range(len(vectors)), k):
            if not _signable([vectors[i] for i in subset]):
                logger.debug("No signing of {} {}", axis, subset)
                return TUVerdict(False, unsignable=subset, axis=axis)
    return TUVerdict(True)


def node_arc_incidence(d: Digraph) -> RatMatrix:
    """``inc(D)``: the column of arc ``(v, w)`` is ``-1`` at ``v`` and ``1`` at ``w``."""
    columns = []
    for v, w in d.arcs:
        column = [_ZERO] * d.num_nodes
        column[v], column[w] = -_ONE, _ONE
        columns.append(tuple(column))
    return RatMatrix.from_columns(columns, d.num_nodes)


def node_edge_incidence(g: Graph) -> RatMatrix:
    """``inc(G)``: the column of edge ``{v, w}`` is ``1`` at ``v`` and ``w``."""
    columns = []
    for v, w in g.edges:
        column = [_ZERO] * g.num_nodes
        column[v] = column[w] = _ONE
        columns.append(tuple(column))
    return RatMatrix.from_columns(columns, g.num_nodes)


def is_bipartite(g: Graph) -> BipartiteResult:
    """Two-colour ``g``; the side holding the smallest node of each component is ``S``."""
    graph = g.to_networkx()
    if not nx.is_bipartite(graph):
        cycle = next(c for c in nx.cycle_basis(graph) if len(c) % 2)
        start = cycle.index(min(cycle))
        cycle = cycle[start:] + cycle[:start]
        if cycle[1] > cycle[-1]:
            cycle = [cycle[0], *reversed(cycle[1:])]
        return BipartiteResult(False, odd_cycle=tuple(cycle))
    color = nx.bipartite.color(graph)
    side: set[int] = set()
    for component in nx.connected_components(graph):
        anchor = color[min(component)]
        side.update(v for v in component if color[v] == anchor)
    return BipartiteResult(
        True,
        tuple(sorted(side)),
        tuple(v for v in range(g.num_nodes) if v not in side),
    )


def network_matrix(d: Digraph, tree_arcs: Sequence[int]) -> RatMatrix:
    """The network matrix of ``d`` for the spanning tree formed by ``tree_arcs``.

    Row ``r`` belongs to the tree arc ``d.arcs[tree_arcs[r]]``. The column of an
    arc ``(v, w)`` has ``1`` (``-1``) for the tree arcs used forward (backward)
    on the tree path from ``v`` to ``w``.

    Raises
    ------
    PreconditionError
        If the tree arcs don't form a spanning tree of the underlying graph.
    """
    tree_arcs = [int(i) for i in tree_arcs]
    for i in tree_arcs:
        if not 0 <= i < len(d.arcs):
            raise DimensionError(f"Arc index {i} is out of range")
    tree = nx.Graph()
    tree.add_nodes_from(range(d.num_nodes))
    tree.add_edges_from(d.arcs[i] for i in tree_arcs)
    if (
        d.num_nodes == 0
        or len(tree_arcs) != d.num_nodes - 1
        or not nx.is_tree(tree)
    ):
        raise PreconditionError("The tree arcs must form a spanning tree of the nodes")
    position = {frozenset(d.arcs[i]): r for r, i in enumerate(tree_arcs)}
    columns = []
    for v, w in d.arcs:
        column = [_ZERO] * len(tree_arcs)
        path = nx.shortest_path(tree, v, w)
        for p, q in itertools.pairwise(path):
            r = position[frozenset((p, q))]
            column[r] = _ONE if d.arcs[tree_arcs[r]] == (p, q) else -_ONE
        columns.append(tuple(column))
    return RatMatrix.from_columns(columns, len(tree_arcs))


def matching_polytope_bipartite(g: Graph) -> HRep:
    """``{x ∈ ℝ^E : Σ_{e ∋ v} x_e ≤ 1 for all v, x ≥ 𝟘}``.

    Degree rows come first, then nonnegativity.

    Raises
    ------
    PreconditionError
        If ``g`` isn't bipartite.
    """
    if not is_bipartite(g):
        raise PreconditionError(
            "The matching system describes the polytope only for bipartite graphs"
        )
    incidence = node_edge_incidence(g)
    m = len(g.edges)
    degree = tuple((row, _ONE) for row in incidence.rows)
    nonnegative = tuple(
        (tuple(-_ONE if j == e else _ZERO for j in range(m)), _ZERO) for e in range(m)
    )
    return HRep(m, degree + nonnegative)


def circulation_polytope(d: Digraph, lower: VectorLike, upper: VectorLike) -> HRep:
    """``{x ∈ ℝ^A : inc(D)x = 𝟘, ℓ ≤ x ≤ u}``.

    Upper bound rows come first, then lower bound rows and conservation.

    Raises
    ------
    PreconditionError
        If the bounds aren't integral or ``ℓ ≤ u`` fails.
    """
    lower, upper = as_vector(lower), as_vector(upper)
    m = len(d.arcs)
    if len(lower) != m or len(upper) != m:
        raise DimensionError(f"Expected bounds for {m} arcs")
    if not is_integral(lower) or not is_integral(upper):
        raise PreconditionError("Circulation bounds must be integral")
    if any(lo > u for lo, u in zip(lower, upper, strict=True)):
        raise PreconditionError("Lower bounds must not exceed upper bounds")
    unit = [tuple(_ONE if j == e else _ZERO for j in range(m)) for e in range(m)]
    caps = tuple((unit[e], upper[e]) for e in range(m))
    floors = tuple((tuple(-v for v in unit[e]), -lower[e]) for e in range(m))
    conservation = tuple((row, _ZERO) for row in node_arc_incidence(d).rows)
    return HRep(m, caps + floors, conservation)
