import itertools

import numpy as np
import pytest

from ratpoly.config import Limits
from ratpoly.convert import h_to_v
from ratpoly.core import HRep
from ratpoly.corpus import (
    all_graphs,
    complete_bipartite,
    cycle_graph,
    path_digraph,
    path_graph,
    random_network_matrix,
    random_tree_digraph,
    random_unit_matrix,
)
from ratpoly.errors import DimensionError, PreconditionError, ResourceLimitError
from ratpoly.integrality import is_integral
from ratpoly.linalg import RatMatrix
from ratpoly.structure import vertices
from ratpoly.unimodularity import (
    Digraph,
    Graph,
    Submatrix,
    circulation_polytope,
    is_bipartite,
    is_tu_determinant,
    is_tu_ghouila_houri,
    matching_polytope_bipartite,
    network_matrix,
    node_arc_incidence,
    node_edge_incidence,
)
from ratpoly.utils import is_integral as is_integral_vector

TWO_CYCLE = Digraph(2, ((0, 1), (1, 0)))


def test_graphs_are_checked() -> None:
    assert Graph(3, ((2, 0),)).edges == ((0, 2),)
    with pytest.raises(PreconditionError):
        Graph(2, ((1, 1),))
    with pytest.raises(PreconditionError):
        Graph(2, ((0, 1), (1, 0)))
    with pytest.raises(DimensionError):
        Graph(2, ((0, 2),))
    with pytest.raises(PreconditionError):
        Digraph(2, ((0, 0),))
    assert Digraph(2, ((0, 1), (0, 1))).to_networkx().number_of_edges() == 2


def test_is_tu_determinant() -> None:
    assert is_tu_determinant(RatMatrix.identity(3))
    verdict = is_tu_determinant([[1, 1], [-1, 1]])
    assert not verdict
    assert verdict.violating_submatrix == Submatrix((0, 1), (0, 1), 2)
    verdict = is_tu_determinant(node_edge_incidence(cycle_graph(3)))
    assert verdict.violating_submatrix.rows == (0, 1, 2)
    assert abs(verdict.violating_submatrix.determinant) == 2
    verdict = is_tu_determinant([[1, 0], [0, 2]])
    assert verdict.violating_submatrix == Submatrix((1,), (1,), 2)
    with pytest.raises(ResourceLimitError, match="max_subsets"):
        is_tu_determinant(RatMatrix.identity(4), Limits(max_subsets=10))


def test_is_tu_ghouila_houri() -> None:
    assert is_tu_ghouila_houri([[1]])
    verdict = is_tu_ghouila_houri(node_edge_incidence(cycle_graph(3)))
    assert not verdict
    assert verdict.unsignable == (0, 1, 2)
    assert verdict.axis == "rows"
    verdict = is_tu_ghouila_houri([[1, 1], [-1, 1], [0, 1]])
    assert not verdict
    assert verdict.axis == "columns"
    with pytest.raises(ResourceLimitError):
        is_tu_ghouila_houri(RatMatrix.identity(6), Limits(max_subsets=100))


@pytest.mark.parametrize(("m", "n"), list(itertools.product(range(1, 4), range(1, 5))))
def test_tu_tests_agree_on_every_small_matrix(m: int, n: int) -> None:
    for entries in itertools.product((-1, 0, 1), repeat=m * n):
        A = RatMatrix.create([entries[i * n : (i + 1) * n] for i in range(m)])
        assert bool(is_tu_determinant(A)) == bool(is_tu_ghouila_houri(A)), entries


def test_tu_tests_agree_on_random_matrices(rng: np.random.Generator) -> None:
    for _ in range(200):
        A = random_unit_matrix(rng, 5, 5)
        assert bool(is_tu_determinant(A)) == bool(is_tu_ghouila_houri(A)), A


def test_incidence_matrices() -> None:
    assert node_arc_incidence(Digraph(2, ((0, 1),))) == RatMatrix.create([[-1], [1]])
    assert node_edge_incidence(Graph(2, ((0, 1),))) == RatMatrix.create([[1], [1]])
    expected = RatMatrix.create([[-1, 0], [1, -1], [0, 1]])
    assert node_arc_incidence(path_digraph(3)) == expected
    assert node_edge_incidence(Graph(3)).shape == (3, 0)


def test_digraph_incidence_is_tu(rng: np.random.Generator) -> None:
    for _ in range(20):
        d, _ = random_tree_digraph(rng, 4, extra_arcs=3)
        A = node_arc_incidence(d)
        assert is_tu_ghouila_houri(A)
        assert is_tu_determinant(A)


def test_is_bipartite() -> None:
    result = is_bipartite(complete_bipartite(2, 2))
    assert result
    assert result.S == (0, 1)
    assert result.T == (2, 3)
    result = is_bipartite(cycle_graph(3))
    assert not result
    assert result.odd_cycle == (0, 1, 2)
    assert is_bipartite(cycle_graph(5)).odd_cycle == (0, 1, 2, 3, 4)
    result = is_bipartite(Graph(3))
    assert result.S == (0, 1, 2)
    assert result.T == ()
    assert is_bipartite(path_graph(4)).S == (0, 2)


def test_bipartite_graphs_have_tu_incidence() -> None:
    for n in range(1, 6):
        for g in all_graphs(n):
            assert bool(is_bipartite(g)) == bool(is_tu_determinant(node_edge_incidence(g))), g


def test_network_matrix() -> None:
    assert network_matrix(Digraph(2, ((0, 1),)), [0]) == RatMatrix.create([[1]])
    d = Digraph(3, ((0, 1), (1, 2), (2, 0)))
    assert network_matrix(d, [0, 1]) == RatMatrix.create([[1, 0, -1], [0, 1, -1]])
    with pytest.raises(PreconditionError):
        network_matrix(d, [0])
    with pytest.raises(PreconditionError):
        network_matrix(Digraph(3, ((0, 1), (1, 0), (1, 2))), [0, 1])
    with pytest.raises(DimensionError):
        network_matrix(d, [0, 3])


def test_network_matrices_are_tu(rng: np.random.Generator) -> None:
    for _ in range(30):
        N = random_network_matrix(rng, 5, extra_arcs=3)
        assert is_tu_ghouila_houri(N)
    for _ in range(10):
        assert is_tu_determinant(random_network_matrix(rng, 4, extra_arcs=2))


def test_network_matrix_polyhedra_are_integral(rng: np.random.Generator) -> None:
    for _ in range(100):
        N = random_network_matrix(rng, 4, extra_arcs=2)
        b = tuple(int(v) for v in rng.integers(-3, 4, size=N.nrows))
        k = N.ncols
        nonnegative = tuple((tuple(-1 if j == i else 0 for j in range(k)), 0) for i in range(k))
        h = HRep(k, (*zip(N.rows, b, strict=True), *nonnegative))
        assert is_integral(h)


def test_matching_polytope() -> None:
    h = matching_polytope_bipartite(Graph(2, ((0, 1),)))
    assert h == HRep(1, (((1,), 1), ((1,), 1), ((-1,), 0)))
    h = matching_polytope_bipartite(complete_bipartite(2, 2))
    assert h.m == 8
    points = h_to_v(h).points
    assert len(points) == 7
    assert all(is_integral_vector(p) for p in points)
    assert set(points) == set(vertices(h))
    with pytest.raises(PreconditionError):
        matching_polytope_bipartite(cycle_graph(3))


@pytest.mark.parametrize(
    ("g", "count"),
    [(complete_bipartite(2, 2), 7), (complete_bipartite(2, 3), 13), (path_graph(4), 5)],
)
def test_matching_vertices_are_matchings(g: Graph, count: int) -> None:
    matchings = [
        chosen
        for k in range(g.num_nodes // 2 + 1)
        for chosen in itertools.combinations(range(len(g.edges)), k)
        if len({v for e in chosen for v in g.edges[e]}) == 2 * k
    ]
    assert len(matchings) == count
    expected = {tuple(1 if e in chosen else 0 for e in range(len(g.edges))) for chosen in matchings}
    h = matching_polytope_bipartite(g)
    assert set(vertices(h)) == expected
    assert set(h_to_v(h).points) == expected


def test_circulation_polytope() -> None:
    assert vertices(circulation_polytope(TWO_CYCLE, (0, 0), (1, 1))) == ((0, 0), (1, 1))
    assert vertices(circulation_polytope(TWO_CYCLE, (0, 0), (3, 5))) == ((0, 0), (3, 3))
    d = Digraph(3, ((0, 1), (1, 2), (2, 0), (0, 2)))
    assert vertices(circulation_polytope(d, (0,) * 4, (0,) * 4)) == ((0, 0, 0, 0),)


def test_circulation_polytope_errors() -> None:
    with pytest.raises(PreconditionError):
        circulation_polytope(TWO_CYCLE, ("1/2", 0), (1, 1))
    with pytest.raises(PreconditionError):
        circulation_polytope(TWO_CYCLE, (2, 0), (1, 1))
    with pytest.raises(DimensionError):
        circulation_polytope(TWO_CYCLE, (0,), (1,))


def test_circulation_polytopes_are_integral(rng: np.random.Generator) -> None:
    for _ in range(20):
        d, _ = random_tree_digraph(rng, 3, extra_arcs=1)
        lower = tuple(int(v) for v in rng.integers(-2, 1, size=len(d.arcs)))
        upper = tuple(int(v) for v in rng.integers(0, 3, size=len(d.arcs)))
        assert is_integral(circulation_polytope(d, lower, upper))
