import itertools
from fractions import Fraction

import numpy as np
import pytest

from ratpoly.config import Limits
from ratpoly.convert import h_to_v, same_set
from ratpoly.core import HRep, VRep, verify_infeasibility
from ratpoly.corpus import cross_polytope, orthant, round_trip_corpus, simplex, unit_cube
from ratpoly.errors import EmptyPolyhedronError, NotPointedError, ResourceLimitError
from ratpoly.linalg import dot
from ratpoly.structure import (
    OptStatus,
    affine_hull,
    certify_irredundant_h,
    certify_irredundant_v,
    char_cone,
    dimension,
    edges,
    extreme_rays,
    face_of,
    faces,
    facets,
    is_vertex_by_segments,
    lineality_space,
    optimize,
    vertices,
)

SQUARE_VERTICES = {(0, 0), (0, 1), (1, 0), (1, 1)}
SEGMENT = HRep(2, (((2, 0), 1), ((-1, 0), 0)), (((0, 1), 0),))
FLAT = HRep(2, (((0, 1), 1),), (((1, 0), 0),))


def _polytopes() -> list[HRep]:
    corpus = round_trip_corpus()
    return [corpus[name] for name in ("cube2", "cube3", "simplex2", "simplex3", "cross2", "cross3")]


def test_char_cone() -> None:
    zero = HRep(2, (), (((1, 0), 0), ((0, 1), 0)))
    assert same_set(char_cone(unit_cube(2)), zero)
    assert char_cone(orthant(1)) == orthant(1)
    assert char_cone(HRep(2, (((1, -1), 1), ((0, 1), 5)))) == HRep(2, (((1, -1), 0), ((0, 1), 0)))
    with pytest.raises(EmptyPolyhedronError):
        char_cone(HRep.infeasible(2))


def test_lineality_space() -> None:
    assert lineality_space(HRep(2, (((1, 1), 1),))) == ((1, -1),)
    assert lineality_space(unit_cube(2)) == ()
    basis = lineality_space(HRep(3, (((1, 0, 0), 0), ((-1, 0, 0), 0))))
    assert set(basis) == {(0, 1, 0), (0, 0, 1)}
    with pytest.raises(EmptyPolyhedronError):
        lineality_space(HRep.infeasible(1))


def test_dimension_and_affine_hull() -> None:
    assert dimension(unit_cube(2)) == 2
    assert affine_hull(unit_cube(2)) == HRep(2)
    flat = HRep(2, (((1, 0), 0), ((-1, 0), 0)))
    assert dimension(flat) == 1
    assert affine_hull(flat) == HRep(2, (), (((1, 0), 0),))
    assert dimension(HRep(2, (((1, 0), 0), ((-1, 0), -1)))) == -1
    assert affine_hull(HRep.infeasible(2)) == HRep.infeasible(2)
    assert dimension(HRep(0)) == 0


def test_vertices() -> None:
    assert set(vertices(unit_cube(2))) == SQUARE_VERTICES
    assert len(vertices(simplex(3))) == 4
    assert vertices(SEGMENT) == ((0, 0), (Fraction(1, 2), 0))
    assert vertices(HRep.infeasible(2)) == ()


def test_vertices_errors() -> None:
    with pytest.raises(NotPointedError, match="lineality"):
        vertices(HRep(2, (((1, 1), 1),)))
    assert len(vertices(cross_polytope(3))) == 6
    # A second call hits the enumeration cache, which must not bypass the limit.
    with pytest.raises(ResourceLimitError, match="max_subsets"):
        vertices(cross_polytope(3), Limits(max_subsets=10))
    with pytest.raises(ResourceLimitError, match="max_subsets"):
        optimize(cross_polytope(3), (1, 0, 0), Limits(max_subsets=10))


@pytest.mark.parametrize(
    ("h", "count"),
    [(unit_cube(1), 4), (unit_cube(2), 10), (simplex(2), 8), (orthant(2), 5)],
)
def test_face_count(h: HRep, count: int) -> None:
    lattice = faces(h)
    assert len(lattice) == count
    assert lattice[0].dim == -1
    assert lattice[0].is_empty
    assert lattice[-1].dim == dimension(h)


def test_faces_of_cube_by_dimension() -> None:
    lattice = faces(unit_cube(3))
    counts = [sum(1 for f in lattice if f.dim == d) for d in range(-1, 4)]
    assert counts == [1, 8, 12, 6, 1]


def test_faces_are_closed_and_contain_their_point() -> None:
    h = simplex(3)
    rows = h.expanded()
    for face in faces(h):
        if face.is_empty:
            continue
        x = face.representative_point
        assert h.satisfied_by(x)
        assert all(dot(rows[k][0], x) == rows[k][1] for k in face.equality_set)
        same = face_of(h, face.equality_set)
        assert (same.equality_set, same.dim) == (face.equality_set, face.dim)


def test_faces_respect_the_cap() -> None:
    with pytest.raises(ResourceLimitError):
        faces(unit_cube(3), max_count=20)


def test_facets() -> None:
    assert [k for k, _ in facets(unit_cube(2))] == [0, 1, 2, 3]
    h = unit_cube(2).with_rows(ineq_rows=(((1, 1), 3),))
    assert 4 not in [k for k, _ in facets(h)]
    ((k, face),) = facets(FLAT)
    assert k == 0
    assert face.dim == 0
    assert face.representative_point == (0, 1)


def test_certify_irredundant_h() -> None:
    assert certify_irredundant_h(unit_cube(2))
    duplicated = unit_cube(2).with_rows(ineq_rows=(((1, 0), 1),))
    verdict = certify_irredundant_h(duplicated)
    assert not verdict
    assert "pairwise distinct facets" in verdict.reason
    verdict = certify_irredundant_h(unit_cube(2).with_rows(ineq_rows=(((1, 1), 3),)))
    assert verdict.reason == "row 5 defines no facet"
    verdict = certify_irredundant_h(HRep(2, (), (((1, 0), 0), ((2, 0), 0))))
    assert "full row rank" in verdict.reason
    assert certify_irredundant_h(HRep.infeasible(2))
    assert not certify_irredundant_h(HRep(1, (((1,), 0), ((-1,), -1))))


def test_certify_irredundant_v() -> None:
    square = VRep(2, tuple(sorted(SQUARE_VERTICES)))
    assert certify_irredundant_v(square)
    verdict = certify_irredundant_v(VRep(2, (*square.points, (Fraction(1, 2), Fraction(1, 2)))))
    assert verdict.reason == "point (1/2 1/2) is not a vertex"
    verdict = certify_irredundant_v(VRep(2, ((0, 0),), ((1, 0), (2, 0))))
    assert verdict.reason == "rays 1 and 2 span the same extreme ray"
    verdict = certify_irredundant_v(VRep(2, ((0, 0),), ((1, 0), (0, 1), (1, 1))))
    assert verdict.reason == "ray (1 1) is not an extreme ray"
    assert certify_irredundant_v(VRep.empty(2))
    with pytest.raises(NotPointedError):
        certify_irredundant_v(VRep(2, ((0, 0),), ((1, 0), (-1, 0))))


def test_extreme_rays() -> None:
    assert extreme_rays(orthant(2)) == ((0, 1), (1, 0))
    assert extreme_rays(unit_cube(2)) == ()
    assert extreme_rays(HRep(2, (((0, -1), 0), ((-2, 1), 0)))) == ((1, 0), (1, 2))
    with pytest.raises(NotPointedError):
        extreme_rays(HRep(2, (((1, 0), 0),)))


def test_vertices_match_inner_description() -> None:
    for h in _polytopes():
        v = h_to_v(h)
        assert set(v.points) == set(vertices(h))
        assert certify_irredundant_v(v)


def test_vertex_characterizations_agree() -> None:
    grid = (Fraction(0), Fraction(1, 2), Fraction(1))
    for h in (unit_cube(3), simplex(3)):
        found = set(vertices(h))
        for x in itertools.product(grid, repeat=3):
            if h.satisfied_by(x):
                assert is_vertex_by_segments(h, x) == (x in found), x
    assert not is_vertex_by_segments(unit_cube(2), (2, 2))


def test_edges() -> None:
    assert len(edges(unit_cube(2))) == 4
    assert len(edges(unit_cube(3))) == 12
    assert ((0, 0), (1, 1)) not in edges(unit_cube(2))


def test_facets_and_affine_hull_rebuild_the_polyhedron() -> None:
    for h in (unit_cube(2).with_rows(ineq_rows=(((1, 1), 3),)), FLAT, SEGMENT):
        rows = h.expanded()
        rebuilt = HRep(h.n, tuple(rows[k] for k, _ in facets(h)), affine_hull(h).eq_rows)
        assert certify_irredundant_h(rebuilt)
        assert same_set(rebuilt, h)


def test_optimize() -> None:
    result = optimize(unit_cube(2), (1, 1))
    assert result.status is OptStatus.OPTIMAL
    assert result.value == 2
    assert result.argmax_vertex == (1, 1)

    result = optimize(orthant(1), (-1,))
    assert result.status is OptStatus.OPTIMAL
    assert result.value == 0

    result = optimize(HRep(1, (((-1,), 0),)), (1,))
    assert result.status is OptStatus.UNBOUNDED
    assert result.improving_ray == (1,)

    h = HRep(1, (((1,), 1), ((-1,), -2)))
    result = optimize(h, (1,))
    assert result.status is OptStatus.INFEASIBLE
    assert verify_infeasibility(h, result.infeasibility_cert)


def test_optimize_breaks_ties_lexicographically() -> None:
    assert optimize(unit_cube(2), (1, 0)).argmax_vertex == (1, 0)
    assert optimize(unit_cube(2), (0, 0)).argmax_vertex == (0, 0)


def test_optimize_with_lineality() -> None:
    h = HRep(2, (((1, 1), 1),))
    result = optimize(h, (1, 1))
    assert result.status is OptStatus.OPTIMAL
    assert result.value == 1
    result = optimize(h, (1, 0))
    assert result.status is OptStatus.UNBOUNDED
    assert dot((1, 0), result.improving_ray) > 0
    assert all(dot(a, result.improving_ray) <= 0 for a, _ in h.expanded())


def test_optimize_agrees_with_brute_force(rng: np.random.Generator) -> None:
    for h in _polytopes():
        points = h_to_v(h).points
        for _ in range(5):
            c = tuple(int(v) for v in rng.integers(-3, 4, size=h.n))
            result = optimize(h, c)
            assert result.status is OptStatus.OPTIMAL
            assert result.value == max(dot(c, x) for x in points)
