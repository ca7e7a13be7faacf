import itertools
from fractions import Fraction

import numpy as np
import pytest

from ratpoly.config import Limits
from ratpoly.convert import same_set, v_to_h
from ratpoly.core import HRep, VRep
from ratpoly.corpus import (
    complete_bipartite,
    cross_polytope,
    orthant,
    random_pointed_cone,
    simplex,
    unit_cube,
)
from ratpoly.errors import (
    EmptyPolyhedronError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedShapeError,
)
from ratpoly.integrality import (
    MonoidDecomposition,
    hilbert_basis,
    in_monoid,
    integer_hull,
    integral_optimum,
    is_integral,
    is_tdi,
    is_tdi_definitional,
    lattice_decomposition,
    lattice_points,
    make_tdi,
    verify_decomposition,
    verify_strong_duality,
)
from ratpoly.linalg import dot
from ratpoly.structure import OptStatus, vertices
from ratpoly.unimodularity import Graph, matching_polytope_bipartite
from ratpoly.utils import is_integral as is_integral_vector

HALF = Fraction(1, 2)
CONE = HRep(2, (((0, -1), 0), ((-2, 1), 0)))
WEDGE = HRep(2, (((1, 1), 0), ((1, -1), 0)))
TRIANGLE = VRep(2, ((0, 0), (2, 0), (0, Fraction(3, 2))))
KITE = v_to_h(VRep(2, ((0, 0), (2, 1), (1, 2))))
SEGMENT = HRep(2, (((0, 1), 1), ((0, -1), 0)), (((1, 0), 0),))
SLANTED_SEGMENT = HRep(2, (((1, 0), 1), ((-1, 0), 0)), (((1, 1), 1),))


@pytest.mark.parametrize(
    ("Y", "expected"),
    [
        ([(1, 0), (0, 1)], ((0, 1), (1, 0))),
        ([(1, 0), (1, 2)], ((1, 0), (1, 1), (1, 2))),
        ([(1, 0), (0, 1), (1, 1)], ((0, 1), (1, 0))),
        ([(2, 0), (0, HALF)], ((0, 1), (1, 0))),
        ([(1, 1, 0), (1, -1, 0)], ((1, -1, 0), (1, 0, 0), (1, 1, 0))),
    ],
)
def test_hilbert_basis(Y: list, expected: tuple) -> None:
    assert hilbert_basis(Y).basis == expected


def test_hilbert_basis_errors() -> None:
    with pytest.raises(UnsupportedShapeError):
        hilbert_basis([(1, 0), (-1, 0)])
    with pytest.raises(ResourceLimitError):
        hilbert_basis([(1, 0), (1, 1), (1, 2), (1, 3)], limits=Limits(max_subsets=2))


def test_hilbert_basis_generates_and_is_minimal(rng: np.random.Generator) -> None:
    window = range(-10, 11)
    for i in range(20):
        n = 2 + i % 2
        X = random_pointed_cone(rng, n, n + 1, bound=4)
        H = hilbert_basis(X).basis
        cone = v_to_h(VRep.cone(X, n))
        for h in H:
            assert cone.satisfied_by(h)
            rest = [g for g in H if g != h]
            assert in_monoid(h, rest) is None
        # H lies in the cone, so mono(H) can't leave it.
        for z in filter(cone.satisfied_by, itertools.product(window, repeat=n)):
            assert in_monoid(z, H) is not None, (X, z)


def test_hilbert_basis_of_fixed_cone_on_window() -> None:
    H = hilbert_basis([(1, 0), (1, 2)]).basis
    assert len(H) == 3
    for z in itertools.product(range(-10, 11), repeat=2):
        assert (in_monoid(z, H) is not None) == (z[1] >= 0 and 2 * z[0] >= z[1])


def test_in_monoid() -> None:
    assert in_monoid((2, 3), [(1, 0), (0, 1)]) == (2, 3)
    assert in_monoid((1, -1), [(1, 0), (0, 1)]) is None
    assert in_monoid((1, 0), [(1, 1), (1, -1)]) is None
    y = in_monoid((1, 0), [(1, 0), (-1, 0)])
    assert y is not None
    assert y[0] - y[1] == 1
    assert all(is_integral_vector((v,)) and v >= 0 for v in y)


def test_lattice_points() -> None:
    assert lattice_points(HRep(1, (((2,), 1), ((-1,), 0)))) == ((0,),)
    assert len(lattice_points(unit_cube(3))) == 8
    assert lattice_points(HRep(1, (((3,), 2), ((-3,), -1)))) == ()
    assert lattice_points(HRep.infeasible(2)) == ()
    with pytest.raises(UnsupportedShapeError):
        lattice_points(orthant(2))
    with pytest.raises(ResourceLimitError, match="max_lattice"):
        lattice_points(unit_cube(3), Limits(max_lattice=4))


def test_integer_hull() -> None:
    hull = integer_hull(HRep(1, (((2,), 1), ((-1,), 0))))
    assert same_set(hull, HRep(1, (), (((1,), 0),)))
    assert same_set(integer_hull(unit_cube(2)), unit_cube(2))
    hull = integer_hull(v_to_h(TRIANGLE))
    assert same_set(hull, VRep(2, ((0, 0), (2, 0), (0, 1))))
    assert integer_hull(HRep(1, (((3,), 2), ((-3,), -1)))) == HRep.infeasible(1)


def test_is_integral() -> None:
    assert is_integral(unit_cube(2))
    half_square = HRep(2, (((1, 0), HALF), ((0, 1), HALF), ((-1, 0), HALF), ((0, -1), HALF)))
    verdict = is_integral(half_square)
    assert not verdict
    assert verdict.witness in vertices(half_square)
    assert not is_integral_vector(verdict.witness)


def test_lattice_decomposition() -> None:
    square = lattice_decomposition(unit_cube(2))
    assert square == MonoidDecomposition(((0, 0), (0, 1), (1, 0), (1, 1)), ())
    cone = lattice_decomposition(CONE)
    assert cone == MonoidDecomposition(((0, 0),), ((1, 0), (1, 1), (1, 2)))
    point = lattice_decomposition(HRep(2, (), (((1, 0), 2), ((0, 1), 3))))
    assert point == MonoidDecomposition(((2, 3),), ())
    assert lattice_decomposition(HRep.infeasible(2)) == MonoidDecomposition((), ())


def test_lattice_decomposition_of_translated_cone() -> None:
    shifted = HRep(2, (((0, -1), -1), ((-2, 1), -1)))
    decomposition = lattice_decomposition(shifted)
    assert decomposition.X == ((1, 1),)
    assert verify_decomposition(shifted, decomposition, window=3)


def test_lattice_decomposition_errors() -> None:
    with pytest.raises(UnsupportedShapeError):
        lattice_decomposition(HRep(1, (((-2,), -1),)))
    with pytest.raises(UnsupportedShapeError):
        lattice_decomposition(HRep(2, (((1, 0), 0),)))


def test_verify_decomposition() -> None:
    assert verify_decomposition(CONE, lattice_decomposition(CONE), window=3)
    assert verify_decomposition(unit_cube(2), lattice_decomposition(unit_cube(2)))
    missing = MonoidDecomposition(((0, 0),), ((1, 0), (1, 2)))
    assert not verify_decomposition(CONE, missing, window=3)
    wrong_cone = MonoidDecomposition(((0, 0),), ((1, 0), (0, 1)))
    assert not verify_decomposition(CONE, wrong_cone, window=3)
    assert not verify_decomposition(CONE, MonoidDecomposition(((HALF, 0),), ()), window=3)


def test_is_tdi() -> None:
    assert is_tdi(HRep(2, (((1, 0), 0), ((0, 1), 0))))
    verdict = is_tdi(WEDGE)
    assert not verdict
    assert verdict.face == frozenset({0, 1})
    assert verdict.witness == (1, 0)
    assert verdict.complete
    assert is_tdi(HRep(1, (((1,), HALF),)))
    assert is_tdi(HRep.infeasible(2))
    with pytest.raises(PreconditionError, match="is_tdi_definitional"):
        is_tdi(HRep(1, (((HALF,), 1),)))


def test_bipartite_matching_system_is_tdi() -> None:
    h = matching_polytope_bipartite(complete_bipartite(2, 2))
    assert is_tdi(h)
    assert is_tdi_definitional(h, c_box=1)


def test_is_tdi_definitional() -> None:
    verdict = is_tdi_definitional(WEDGE, c_box=1)
    assert not verdict
    assert verdict.witness == (1, 0)
    assert not verdict.complete
    verdict = is_tdi_definitional(HRep(1, (((1,), HALF),)))
    assert verdict
    assert not verdict.complete
    assert is_tdi_definitional(HRep.infeasible(2))


TDI_SYSTEMS = [
    pytest.param(WEDGE, False, id="wedge"),
    pytest.param(matching_polytope_bipartite(complete_bipartite(2, 2)), True, id="k22"),
    pytest.param(unit_cube(2), True, id="square"),
    pytest.param(simplex(2), True, id="simplex"),
    pytest.param(KITE, False, id="kite"),
    pytest.param(cross_polytope(2), False, id="cross"),
    pytest.param(orthant(2), True, id="orthant"),
    pytest.param(HRep(1, (((1,), HALF),)), True, id="half-line"),
    pytest.param(SEGMENT, True, id="segment"),
    pytest.param(HRep(2, (((1, 2), 0), ((1, -2), 0))), False, id="steep-wedge"),
]


@pytest.mark.parametrize(("h", "tdi"), TDI_SYSTEMS)
def test_tdi_tests_agree(h: HRep, tdi: bool) -> None:  # noqa: FBT001
    assert bool(is_tdi(h)) is tdi
    assert bool(is_tdi_definitional(h, c_box=3)) is tdi


@pytest.mark.parametrize(
    "h",
    [
        matching_polytope_bipartite(complete_bipartite(2, 2)),
        unit_cube(2),
        simplex(2),
        KITE,
        cross_polytope(2),
        SEGMENT,
        SLANTED_SEGMENT,
    ],
)
def test_make_tdi_preserves_the_polytope(h: HRep) -> None:
    t = make_tdi(h)
    assert is_tdi(t)
    assert same_set(t, h)
    assert all(is_integral_vector((b,)) for _, b in t.ineq_rows + t.eq_rows)


def test_make_tdi_of_lower_dimensional_polytopes() -> None:
    assert make_tdi(SEGMENT) == HRep(2, (((0, -1), 0), ((0, 1), 1)), (((1, 0), 0),))
    # Modulo x1 + x2 the rows must be unit vectors; ±(1, -1) would lose TDI.
    t = make_tdi(SLANTED_SEGMENT)
    assert t == HRep(2, (((0, -1), 0), ((0, 1), 1)), (((1, 1), 1),))
    verdict = is_tdi(t)
    assert verdict
    assert not verdict.complete
    assert not is_tdi(HRep(2, (((1, -1), 1), ((-1, 1), 1)), (((1, 1), 1),)))


def test_make_tdi_of_square() -> None:
    h = make_tdi(unit_cube(2))
    assert h.m == 4
    assert same_set(h, unit_cube(2))
    assert is_tdi(h)


def test_make_tdi_of_triangle() -> None:
    h = make_tdi(simplex(2))
    assert set(h.ineq_rows) == {((1, 1), 1), ((-1, 0), 0), ((0, -1), 0)}


def test_make_tdi_adds_hilbert_rows() -> None:
    h = make_tdi(KITE)
    assert h.m > 3
    assert ((-1, 0), 0) in h.ineq_rows
    assert ((1, -1), 1) in h.ineq_rows


def test_make_tdi_errors() -> None:
    with pytest.raises(EmptyPolyhedronError):
        make_tdi(HRep.infeasible(2))
    with pytest.raises(UnsupportedShapeError):
        make_tdi(orthant(2))


def test_integral_optimum() -> None:
    result = integral_optimum(v_to_h(TRIANGLE), (0, 1))
    assert result.status is OptStatus.OPTIMAL
    assert result.value == 1
    assert result.argmax_vertex == (0, 1)
    assert integral_optimum(orthant(2), (1, 1)).status is OptStatus.UNBOUNDED
    result = integral_optimum(HRep(1, (((3,), 2), ((-3,), -1))), (1,))
    assert result.status is OptStatus.INFEASIBLE
    assert result.infeasibility_cert is None


@pytest.mark.parametrize(
    ("h", "c", "value"),
    [
        (HRep(1, (((1,), 3),)), (1,), 3),
        (simplex(2), (1, 1), 1),
        (matching_polytope_bipartite(complete_bipartite(2, 2)), (1, 1, 1, 1), 2),
    ],
)
def test_strong_duality(h: HRep, c: tuple[int, ...], value: int) -> None:
    report = verify_strong_duality(h, c)
    assert report.primal_value == value
    assert report.dual_value == value
    assert report.equal
    A, b = h.matrix()
    y = report.dual_multipliers
    assert all(v >= 0 and is_integral_vector((v,)) for v in y)
    assert A.vecmat(y) == c
    assert dot(y, b) == value


@pytest.mark.parametrize("g", [complete_bipartite(2, 2), complete_bipartite(2, 3)])
def test_strong_duality_on_matchings(g: Graph) -> None:
    h = matching_polytope_bipartite(g)
    for c in itertools.product(range(-2, 3), repeat=len(g.edges)):
        report = verify_strong_duality(h, c)
        assert report.equal, c
        assert report.dual_value == report.primal_value


def test_strong_duality_without_tdi() -> None:
    report = verify_strong_duality(WEDGE, (1, 0))
    assert report.primal_value == 0
    assert report.dual_value is None
    assert not report.equal


def test_dual_search_stays_at_the_lp_optimum() -> None:
    h = HRep(1, (((2,), 2), ((1,), 2)))
    report = verify_strong_duality(h, (1,))
    assert report.primal_value == 1
    assert report.dual_value is None
    # y = (0, 1) is an integral dual solution, but of value 2.
    assert in_monoid((1,), [(2,), (1,)]) == (0, 1)


def test_strong_duality_errors() -> None:
    with pytest.raises(PreconditionError):
        verify_strong_duality(HRep(1, (((1,), HALF),)), (1,))
    with pytest.raises(UnsupportedShapeError):
        verify_strong_duality(orthant(1), (1,))
    with pytest.raises(EmptyPolyhedronError):
        verify_strong_duality(HRep(1, (((3,), 2), ((-3,), -1))), (1,))
