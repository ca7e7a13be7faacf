"""Named polyhedra, graphs and seeded random instances.

Random generators take a :py:class:`numpy.random.Generator` so that every
instance is reproducible from its seed.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import numpy as np

from ratpoly.core.model import HRep, VRep
from ratpoly.linalg import RatMatrix
from ratpoly.unimodularity import Digraph, Graph, network_matrix
from ratpoly.utils import Vector

__all__ = [
    "unit_cube",
    "simplex",
    "cross_polytope",
    "orthant",
    "strip",
    "empty_system",
    "round_trip_corpus",
    "complete_bipartite",
    "cycle_graph",
    "path_graph",
    "path_digraph",
    "all_graphs",
    "random_system",
    "random_unit_matrix",
    "random_tree_digraph",
    "random_network_matrix",
    "random_pointed_cone",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _unit(n: int, i: int, value: Fraction = _ONE) -> Vector:
    return tuple(value if j == i else _ZERO for j in range(n))


def unit_cube(n: int) -> HRep:
    """``[0, 1]ⁿ``: the rows ``x_i ≤ 1`` followed by ``-x_i ≤ 0``."""
    upper = tuple((_unit(n, i), _ONE) for i in range(n))
    lower = tuple((_unit(n, i, -_ONE), _ZERO) for i in range(n))
    return HRep(n, upper + lower)


def simplex(n: int) -> HRep:
    """``{x ≥ 𝟘, Σ x_i ≤ 1}``."""
    rows = tuple((_unit(n, i, -_ONE), _ZERO) for i in range(n))
    return HRep(n, (*rows, ((_ONE,) * n, _ONE)))


def cross_polytope(n: int) -> HRep:
    """``{x : ⟨s, x⟩ ≤ 1 for all s ∈ {-1, 1}ⁿ}``."""
    rows = tuple(
        (tuple(Fraction(s) for s in signs), _ONE)
        for signs in itertools.product((1, -1), repeat=n)
    )
    return HRep(n, rows)


def orthant(n: int) -> HRep:
    return HRep(n, tuple((_unit(n, i, -_ONE), _ZERO) for i in range(n)))


def strip(n: int) -> HRep:
    """``{0 ≤ x_1 ≤ 1}`` in ``ℝⁿ``; for ``n ≥ 2`` its lineality space is nontrivial."""
    return HRep(n, ((_unit(n, 0), _ONE), (_unit(n, 0, -_ONE), _ZERO)))


def empty_system(n: int) -> HRep:
    """``{x_1 ≤ 0, -x_1 ≤ -1}``, empty without being in canonical form."""
    return HRep(n, ((_unit(n, 0), _ZERO), (_unit(n, 0, -_ONE), -_ONE)))


def round_trip_corpus() -> dict[str, HRep | VRep]:
    """Cubes, simplices and cross-polytopes up to dimension 4 plus unbounded and empty sets."""
    corpus: dict[str, HRep | VRep] = {}
    for n in (1, 2, 3, 4):
        corpus[f"cube{n}"] = unit_cube(n)
        corpus[f"simplex{n}"] = simplex(n)
    for n in (2, 3):
        corpus[f"cross{n}"] = cross_polytope(n)
    corpus["orthant2"] = orthant(2)
    corpus["cone2"] = VRep.cone(((1, 0), (1, 2)), 2)
    corpus["strip3"] = strip(3)
    corpus["empty2"] = empty_system(2)
    corpus["triangle"] = VRep(2, ((0, 0), (2, 0), (0, Fraction(3, 2))))
    return corpus


def complete_bipartite(p: int, q: int) -> Graph:
    """``K_{p,q}`` with sides ``0..p-1`` and ``p..p+q-1``, edges in lexicographic order."""
    return Graph(p + q, tuple((i, p + j) for i in range(p) for j in range(q)))


def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def path_digraph(n: int) -> Digraph:
    return Digraph(n, tuple((i, i + 1) for i in range(n - 1)))


def all_graphs(n: int) -> list[Graph]:
    """Every simple graph on the nodes ``0..n-1``."""
    pairs = list(itertools.combinations(range(n), 2))
    return [
        Graph(n, tuple(p for p, used in zip(pairs, mask, strict=True) if used))
        for mask in itertools.product((False, True), repeat=len(pairs))
    ]


def random_system(rng: np.random.Generator, m: int, n: int, bound: int = 5) -> HRep:
    """``m`` inequalities with integer entries in ``[-bound, bound]``."""
    entries = rng.integers(-bound, bound + 1, size=(m, n + 1))
    return HRep(n, tuple((tuple(row[:-1]), row[-1]) for row in entries.tolist()))


def random_unit_matrix(rng: np.random.Generator, m: int, n: int) -> RatMatrix:
    return RatMatrix.create(rng.integers(-1, 2, size=(m, n)))


def random_tree_digraph(
    rng: np.random.Generator, nodes: int, extra_arcs: int = 0
) -> tuple[Digraph, list[int]]:
    """A digraph whose first ``nodes - 1`` arcs form a random spanning tree.

    Every tree arc joins a new node to a random earlier one in a random
    direction; ``extra_arcs`` arbitrary arcs follow.
    """
    order = rng.permutation(nodes).tolist()
    arcs = []
    for k in range(1, nodes):
        v, w = order[k], order[int(rng.integers(k))]
        arcs.append((v, w) if rng.integers(2) else (w, v))
    for _ in range(extra_arcs):
        v, w = rng.choice(nodes, size=2, replace=False).tolist()
        arcs.append((v, w))
    return Digraph(nodes, tuple(arcs)), list(range(nodes - 1))


def random_network_matrix(
    rng: np.random.Generator, nodes: int, extra_arcs: int = 3
) -> RatMatrix:
    d, tree = random_tree_digraph(rng, nodes, extra_arcs)
    return network_matrix(d, tree)


def random_pointed_cone(
    rng: np.random.Generator, n: int, count: int, bound: int = 4
) -> list[Vector]:
    """``count`` nonzero integer vectors with entries in ``[0, bound]``, hence a pointed cone."""
    generators: list[Vector] = []
    while len(generators) < count:
        vector = rng.integers(0, bound + 1, size=n)
        if vector.any():
            generators.append(tuple(Fraction(int(v)) for v in vector))
    return generators
