"""Integer hulls, integral Hilbert bases and total dual integrality.

Lattice enumerations are exhaustive inside integer boxes and capped by
:py:attr:`Limits.max_lattice`. Monoid membership is an exact depth-first search
whose coefficient bounds come from a functional that is positive on every
generator of a pointed cone.
"""
from __future__ import annotations

import itertools
import math
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from ratpoly.config import Limits
from ratpoly.convert import same_set, v_to_h
from ratpoly.core.farkas import feasible
from ratpoly.core.model import HRep, Infeasible, VRep
from ratpoly.errors import (
    DimensionError,
    EmptyPolyhedronError,
    PreconditionError,
    ResourceLimitError,
    UnsupportedShapeError,
)
from ratpoly.linalg import (
    RatMatrix,
    determinant,
    dot,
    inverse,
    kernel_basis,
    primitive,
    rank,
    rref,
    sub,
    unimodular_reduction,
)
from ratpoly.structure import (
    OptResult,
    OptStatus,
    _implicit,
    _pointed_rays,
    _pointed_vertices,
    affine_hull,
    extreme_rays,
    faces,
    lineality_space,
    optimize,
    vertices,
)
from ratpoly.utils import Vector, VectorLike, as_vector, is_integral as is_integral_vector

__all__ = [
    "HilbertBasis",
    "MonoidDecomposition",
    "IntegralityVerdict",
    "TDIVerdict",
    "DualityReport",
    "lattice_points",
    "integer_hull",
    "is_integral",
    "in_monoid",
    "hilbert_basis",
    "lattice_decomposition",
    "verify_decomposition",
    "is_tdi",
    "is_tdi_definitional",
    "make_tdi",
    "integral_optimum",
    "verify_strong_duality",
]

_ZERO = Fraction(0)


@dataclass(frozen=True, slots=True)
class HilbertBasis:
    """``basis`` generates ``ccone(cone_generators) ∩ ℤⁿ`` as a monoid."""

    cone_generators: tuple[Vector, ...]
    basis: tuple[Vector, ...]


@dataclass(frozen=True, slots=True)
class MonoidDecomposition:
    """``P ∩ ℤⁿ = X + mono(Y)`` and ``char(P) = ccone(Y)``."""

    X: tuple[Vector, ...]
    Y: tuple[Vector, ...]


@dataclass(frozen=True, slots=True)
class IntegralityVerdict:
    integral: bool
    witness: Vector | None = None

    def __bool__(self) -> bool:
        return self.integral


@dataclass(frozen=True, slots=True)
class TDIVerdict:
    """Outcome of a TDI test.

    A violation carries the equality set of the face where it was found and a
    witness: an integer vector of the active cone outside the monoid of the
    active rows, or for the definitional test the objective ``c`` without an
    integral optimal dual solution. ``complete`` is ``False`` when only
    objectives up to ``c_box`` were tried. :py:func:`is_tdi` falls back to
    that test whenever some active cone isn't pointed, in particular for every
    system with an equation. The dual search then bounds each multiplier by
    ``limits.window``, so such a violation only says that no integral optimal
    dual solution exists within that window.
    """

    tdi: bool
    face: frozenset[int] | None = None
    witness: Vector | None = None
    complete: bool = True

    def __bool__(self) -> bool:
        return self.tdi


@dataclass(frozen=True, slots=True)
class DualityReport:
    """Both sides of the integral duality equation.

    ``max{⟨c, x⟩ : Ax ≤ b, x ∈ ℤⁿ} = min{⟨b, y⟩ : Aᵗy = c, y ∈ ℕᵐ}``

    ``dual_multipliers`` are indexed like :py:meth:`HRep.expanded`.
    ``dual_value`` is ``None`` if no integral dual solution supported on the
    optimal face reaches the LP optimum.
    """

    primal_value: Fraction
    primal_point: Vector
    dual_value: Fraction | None
    dual_multipliers: Vector | None

    @property
    def equal(self) -> bool:
        return self.dual_value == self.primal_value


def _box(lower: Sequence[int], upper: Sequence[int], limits: Limits) -> Iterable[Vector]:
    size = math.prod(max(0, u - lo + 1) for lo, u in zip(lower, upper, strict=True))
    if size > limits.max_lattice:
        raise ResourceLimitError(
            f"The lattice box holds {size} points (max_lattice={limits.max_lattice})"
        )
    ranges = [range(lo, u + 1) for lo, u in zip(lower, upper, strict=True)]
    return (tuple(Fraction(v) for v in z) for z in itertools.product(*ranges))


def _require_bounded(h: HRep, limits: Limits, what: str) -> tuple[Vector, ...]:
    if lineality_space(h, limits) or extreme_rays(h, limits):
        raise UnsupportedShapeError(f"{what} is only supported for bounded polyhedra")
    return vertices(h, limits)


def _bounding_box(points: Sequence[Vector], n: int) -> tuple[list[int], list[int]]:
    lower = [math.ceil(min(p[j] for p in points)) for j in range(n)]
    upper = [math.floor(max(p[j] for p in points)) for j in range(n)]
    return lower, upper


def lattice_points(h: HRep, limits: Limits | None = None) -> tuple[Vector, ...]:
    """All integer points of a bounded ``P``, sorted.

    Raises
    ------
    UnsupportedShapeError
        If ``P`` is unbounded.
    ResourceLimitError
        If the bounding box holds more than ``limits.max_lattice`` points.
    """
    limits = Limits.resolve(limits)
    if isinstance(feasible(h, limits), Infeasible):
        return ()
    corners = _require_bounded(h, limits, "Lattice point enumeration")
    lower, upper = _bounding_box(corners, h.n)
    points = tuple(z for z in _box(lower, upper, limits) if h.satisfied_by(z))
    logger.debug("{} lattice points in the box {}..{}", len(points), lower, upper)
    return points


def integer_hull(h: HRep, limits: Limits | None = None) -> HRep:
    """``P_I = conv(P ∩ ℤⁿ)`` of a bounded ``P`` in canonical form."""
    points = lattice_points(h, limits)
    if not points:
        return HRep.infeasible(h.n)
    return v_to_h(VRep(h.n, points), limits)


def is_integral(h: HRep, limits: Limits | None = None) -> IntegralityVerdict:
    """Whether every vertex of the pointed ``P`` is integral; the witness is a fractional vertex."""
    for v in vertices(h, limits):
        if not is_integral_vector(v):
            return IntegralityVerdict(False, v)
    return IntegralityVerdict(True)


def _positive_functional(
    generators: Sequence[Vector], n: int, limits: Limits | None
) -> Vector | None:
    """Some ``c`` with ``⟨c, g⟩ ≥ 1`` for every generator.

    ``None`` if the cone isn't pointed.
    """
    rows = tuple((tuple(-v for v in g), Fraction(-1)) for g in generators)
    result = feasible(HRep(n, rows), limits)
    return None if isinstance(result, Infeasible) else result.point


def _monoid_search(
    z: Vector,
    generators: Sequence[Vector],
    bounds: Sequence[int] | None,
    functional: Vector | None,
    limits: Limits,
) -> Vector | None:
    count = len(generators)
    coefficients = [0] * count
    failed: set[tuple[int, Vector]] = set()
    visited = 0

    def search(i: int, rest: Vector) -> bool:
        nonlocal visited
        if not any(rest):
            for j in range(i, count):
                coefficients[j] = 0
            return True
        if i == count or (i, rest) in failed:
            return False
        visited += 1
        if visited > limits.max_lattice:
            raise ResourceLimitError(
                f"Monoid membership visited more than {limits.max_lattice} states"
            )
        g = generators[i]
        if functional is None:
            top = bounds[i]
        else:
            top = math.floor(dot(functional, rest) / dot(functional, g))
        for k in range(top, -1, -1):
            coefficients[i] = k
            if search(i + 1, tuple(r - k * v for r, v in zip(rest, g, strict=True))):
                return True
        failed.add((i, rest))
        return False

    if functional is not None and dot(functional, z) < 0:
        return None
    if not search(0, z):
        return None
    return tuple(Fraction(k) for k in coefficients)


def _membership(
    generators: Sequence[Vector], n: int, limits: Limits
) -> Callable[[Vector], Vector | None]:
    support = [i for i, g in enumerate(generators) if any(g)]
    nonzero = [generators[i] for i in support]
    functional = _positive_functional(nonzero, n, limits)
    bounds = None if functional is not None else [limits.window] * len(support)

    def member(z: Vector) -> Vector | None:
        found = _monoid_search(z, nonzero, bounds, functional, limits)
        if found is None:
            return None
        result = [_ZERO] * len(generators)
        for i, k in zip(support, found, strict=True):
            result[i] = k
        return tuple(result)

    return member


def in_monoid(
    z: VectorLike, generators: Sequence[VectorLike], limits: Limits | None = None
) -> Vector | None:
    """Find ``y ∈ ℕ^|generators|`` with ``Σ y_i g_i = z``.

    For a pointed ``ccone(generators)`` the search is exact. Otherwise every
    coefficient is bounded by ``limits.window`` and ``None`` only means that no
    combination exists within that bound.
    """
    limits = Limits.resolve(limits)
    z = as_vector(z)
    gens = [as_vector(g) for g in generators]
    if any(len(g) != len(z) for g in gens):
        raise DimensionError(f"All generators must have dimension {len(z)}")
    return _membership(gens, len(z), limits)(z)


def _parallelepiped_points(basis: Sequence[Vector], n: int, limits: Limits) -> list[Vector]:
    """Nonzero integer points ``Σ μ_b b`` with ``0 ≤ μ < 1``.

    ``basis`` must be linearly independent.
    """
    columns = RatMatrix.from_columns(basis, n)
    _, independent = rref(columns.T)
    square = columns.select_rows(independent)
    if len(basis) == n and abs(determinant(square)) == 1:
        return []
    solve = inverse(square)
    lower = [math.floor(sum(min(_ZERO, b[k]) for b in basis)) for k in range(n)]
    upper = [math.ceil(sum(max(_ZERO, b[k]) for b in basis)) for k in range(n)]
    points = []
    for z in _box(lower, upper, limits):
        mu = solve.matvec(tuple(z[k] for k in independent))
        if all(0 <= v < 1 for v in mu) and columns.matvec(mu) == z and any(z):
            points.append(z)
    return points


def _irreducible(
    generators: Sequence[Vector], n: int, limits: Limits
) -> tuple[Vector, ...]:
    """The minimal Hilbert basis of the pointed cone spanned by integral ``generators``.

    Candidates are the generators and the parallelepiped points of every basis
    of their span (Gordan). A candidate is reducible iff it is an ℕ-combination
    of candidates with a smaller value of the positive functional.
    """
    gens = sorted({g for g in generators if any(g)})
    if not gens:
        return ()
    functional = _positive_functional(gens, n, limits)
    if functional is None:
        raise UnsupportedShapeError("Hilbert bases are only computed for pointed cones")
    r = rank(RatMatrix(gens, ncols=n))
    count = math.comb(len(gens), r)
    if count > limits.max_subsets:
        raise ResourceLimitError(
            f"Hilbert basis needs {count} generator bases (max_subsets={limits.max_subsets})"
        )
    candidates = set(gens)
    for basis in itertools.combinations(gens, r):
        if rank(RatMatrix(basis, ncols=n)) == r:
            candidates.update(_parallelepiped_points(basis, n, limits))
    ordered = sorted(candidates, key=lambda z: (dot(functional, z), z))
    result = []
    for z in ordered:
        smaller = [g for g in ordered if dot(functional, g) < dot(functional, z)]
        if _monoid_search(z, smaller, None, functional, limits) is None:
            result.append(z)
    logger.debug("{} candidates, {} irreducible", len(ordered), len(result))
    return tuple(sorted(result))


def hilbert_basis(
    Y: Sequence[VectorLike], n: int | None = None, limits: Limits | None = None
) -> HilbertBasis:
    """The unique minimal integral Hilbert basis of the pointed cone ``ccone(Y)``.

    Rational generators are scaled to primitive integer vectors first.

    Raises
    ------
    UnsupportedShapeError
        If ``ccone(Y)`` isn't pointed.
    ResourceLimitError
        If the parallelepipeds or the generator bases exceed the limits.
    """
    limits = Limits.resolve(limits)
    given = tuple(as_vector(y) for y in Y)
    if n is None:
        if not given:
            raise DimensionError("The dimension of an empty generator set is required")
        n = len(given[0])
    if any(len(y) != n for y in given):
        raise DimensionError(f"All generators must have dimension {n}")
    scaled = [primitive(y) for y in given if any(y)]
    return HilbertBasis(given, _irreducible(scaled, n, limits))


def lattice_decomposition(h: HRep, limits: Limits | None = None) -> MonoidDecomposition:
    """Finite ``X, Y ⊆ ℤⁿ`` with ``P ∩ ℤⁿ = X + mono(Y)`` and ``char(P) = ccone(Y)``.

    Bounded polyhedra give their lattice points and ``Y = ∅``. A pointed
    polyhedron with a single integral vertex ``v`` (a translated cone) gives
    ``X = {v}`` and the Hilbert basis of its characteristic cone.

    Raises
    ------
    UnsupportedShapeError
        For every other shape.
    """
    limits = Limits.resolve(limits)
    if isinstance(feasible(h, limits), Infeasible):
        return MonoidDecomposition((), ())
    if lineality_space(h, limits):
        raise UnsupportedShapeError("Lattice decompositions need a pointed polyhedron")
    rays = extreme_rays(h, limits)
    if not rays:
        return MonoidDecomposition(lattice_points(h, limits), ())
    corners = vertices(h, limits)
    if len(corners) != 1 or not is_integral_vector(corners[0]):
        raise UnsupportedShapeError(
            "Unbounded lattice decompositions are only supported for translated cones "
            "with an integral apex"
        )
    return MonoidDecomposition(corners, _irreducible(rays, h.n, limits))


def verify_decomposition(
    h: HRep,
    decomposition: MonoidDecomposition,
    window: int | None = None,
    limits: Limits | None = None,
) -> bool:
    """Check ``char(P) = ccone(Y)`` exactly and ``P ∩ ℤⁿ = X + mono(Y)`` on ``[-W, W]ⁿ``."""
    limits = Limits.resolve(limits)
    window = limits.window if window is None else window
    X, Y = decomposition.X, decomposition.Y
    if not all(is_integral_vector(v) for v in (*X, *Y)):
        return False
    if isinstance(feasible(h, limits), Infeasible):
        return not X
    if not X or not same_set(h.homogeneous(), VRep.cone(Y, h.n), limits):
        return False
    member = _membership(Y, h.n, limits)
    for z in _box([-window] * h.n, [window] * h.n, limits):
        generated = any(member(sub(z, x)) is not None for x in X)
        if generated != h.satisfied_by(z):
            logger.debug("Decomposition fails at {}", z)
            return False
    return True


def _require_integral_matrix(h: HRep) -> None:
    A, _ = h.matrix()
    if not A.is_integral():
        raise PreconditionError(
            "The Hilbert basis criterion needs an integral matrix; use is_tdi_definitional"
        )


def is_tdi(h: HRep, limits: Limits | None = None) -> TDIVerdict:
    """Decide total dual integrality of ``Ax ≤ b`` for integral ``A``.

    The system is TDI iff for every nonempty face the active rows form a
    Hilbert basis of the cone they span. Since the minimal Hilbert basis of a
    pointed cone consists of irreducible elements, the rows form one iff every
    element of the minimal basis is itself a row. Faces with a nonpointed
    active cone, which every system with an equation has, hand the whole
    system to :py:func:`is_tdi_definitional` with its default ``c_box`` and
    ``limits.window``; the verdict is then not ``complete``.
    """
    limits = Limits.resolve(limits)
    _require_integral_matrix(h)
    if isinstance(feasible(h, limits), Infeasible):
        return TDIVerdict(True)
    rows = h.expanded()
    for face in faces(h, limits=limits):
        if face.is_empty:
            continue
        active = [rows[i][0] for i in sorted(face.equality_set)]
        if _positive_functional([a for a in active if any(a)], h.n, limits) is None:
            logger.debug("Nonpointed active cone; using the definitional test")
            return is_tdi_definitional(h, limits=limits)
        present = set(active)
        for element in _irreducible(active, h.n, limits):
            if element not in present:
                return TDIVerdict(False, face.equality_set, element)
    return TDIVerdict(True)


def _optimal_face_rows(h: HRep, c: Vector, value: Fraction, limits: Limits) -> list[int]:
    rows = h.expanded()
    if not kernel_basis(h.all_normals()):
        # The optimal face is conv(optimal vertices) + ccone(extreme rays with ⟨c, r⟩ = 0).
        optimal = [v for v in _pointed_vertices(h, limits) if dot(c, v) == value]
        flat = [r for r in _pointed_rays(h, limits) if not dot(c, r)]
        return [
            i
            for i, (a, b) in enumerate(rows)
            if all(dot(a, v) == b for v in optimal) and not any(dot(a, r) for r in flat)
        ]
    extended = [*rows, (c, value), (tuple(-v for v in c), -value)]
    found = _implicit(extended, h.n, (len(rows), len(rows) + 1), limits)
    if found is None:  # pragma: no cover - the optimal face is nonempty
        raise EmptyPolyhedronError("The optimal face is empty")
    return sorted(i for i in found[0] if i < len(rows))


def _integral_dual(
    h: HRep, c: Vector, value: Fraction, limits: Limits
) -> tuple[list[int], Vector | None]:
    """An integral optimal dual solution supported on the rows tight on the optimal face."""
    rows = h.expanded()
    active = _optimal_face_rows(h, c, value, limits)
    found = in_monoid(c, [rows[i][0] for i in active], limits)
    if found is None:
        return active, None
    y = [_ZERO] * len(rows)
    for i, k in zip(active, found, strict=True):
        y[i] = k
    return active, tuple(y)


def is_tdi_definitional(
    h: HRep, c_box: int | None = None, limits: Limits | None = None
) -> TDIVerdict:
    """Search for ``c ∈ ℤⁿ`` with ``‖c‖∞ ≤ c_box`` and no integral optimal dual.

    For every such ``c`` with a finite maximum, an optimal dual solution is
    supported on the rows tight on the optimal face, so the test asks for
    ``c`` as an ℕ-combination of those rows. A violation disproves TDI; a
    clean run only covers the objectives tried, so ``complete`` is ``False``.
    Empty polyhedra are TDI by convention.
    """
    limits = Limits.resolve(limits)
    c_box = limits.c_box if c_box is None else c_box
    if isinstance(feasible(h, limits), Infeasible):
        return TDIVerdict(True)
    for raw in itertools.product(range(-c_box, c_box + 1), repeat=h.n):
        if not any(raw):
            continue
        c = tuple(Fraction(v) for v in raw)
        result = optimize(h, c, limits)
        if result.status is not OptStatus.OPTIMAL:
            continue
        active, dual = _integral_dual(h, c, result.value, limits)
        if dual is None:
            logger.debug("Objective {} has no integral optimal dual solution", c)
            return TDIVerdict(False, frozenset(active), c, complete=False)
    return TDIVerdict(True, complete=False)


def make_tdi(h: HRep, limits: Limits | None = None) -> HRep:
    """An integral TDI system describing the same polytope.

    The equations are a lattice basis of the integer vectors orthogonal to
    ``aff(P)``, so they generate every integral combination of the implicit
    equalities. Modulo that lattice the normal cone of each vertex ``v`` is
    pointed, and each element ``g`` of its Hilbert basis contributes the row
    ``⟨g, x⟩ ≤ ⟨g, v⟩``. The right-hand sides are integral whenever the
    polytope is.

    Raises
    ------
    EmptyPolyhedronError
        If ``P`` is empty.
    UnsupportedShapeError
        If ``P`` is unbounded.
    """
    limits = Limits.resolve(limits)
    if isinstance(feasible(h, limits), Infeasible):
        raise EmptyPolyhedronError("An empty polyhedron has no vertices to build on")
    corners = _require_bounded(h, limits, "TDI construction")
    hull = affine_hull(h, limits)
    U, k = unimodular_reduction(RatMatrix((a for a, _ in hull.eq_rows), ncols=h.n))
    # ``quotient`` maps ℤⁿ onto ℤⁿ⁻ᵏ, killing the integer vectors orthogonal to aff(P).
    quotient = RatMatrix(U.columns[k:], ncols=h.n)
    lift = inverse(U.T)
    rows = h.expanded()
    emitted: set[tuple[Vector, Fraction]] = set()
    for v in corners:
        active = [quotient.matvec(primitive(rows[i][0])) for i in h.tight_rows(v)]
        for g in _irreducible(active, h.n - k, limits):
            a = lift.matvec((_ZERO,) * k + g)
            emitted.add((a, dot(a, v)))
    equations = tuple((e, dot(e, corners[0])) for e in lift.columns[:k])
    logger.debug(
        "TDI system with {} rows and {} equations from {} vertices",
        len(emitted),
        k,
        len(corners),
    )
    return HRep(h.n, tuple(sorted(emitted)), equations)


def _search_box(
    corners: Sequence[Vector], rays: Sequence[Vector], n: int
) -> tuple[list[int], list[int]]:
    lower = [
        math.ceil(min(p[j] for p in corners) + sum(min(_ZERO, r[j]) for r in rays))
        for j in range(n)
    ]
    upper = [
        math.floor(max(p[j] for p in corners) + sum(max(_ZERO, r[j]) for r in rays))
        for j in range(n)
    ]
    return lower, upper


def integral_optimum(h: HRep, c: VectorLike, limits: Limits | None = None) -> OptResult:
    """``max{⟨c, x⟩ : x ∈ P ∩ ℤⁿ}`` for a pointed ``P``.

    An integral vertex among the LP maximizers settles it at once. Otherwise
    the lattice points of ``P`` inside the box of ``conv(vertices)`` plus the
    zonotope of the primitive extreme rays are searched: every lattice point of
    ``P`` is one of those plus an ℕ-combination of rays. ``INFEASIBLE`` without a
    certificate means ``P`` holds no lattice point.

    Raises
    ------
    UnsupportedShapeError
        If ``P`` has a nontrivial lineality space.
    """
    limits = Limits.resolve(limits)
    c = as_vector(c)
    return _integral_optimum(h, c, optimize(h, c, limits), limits)


def _integral_optimum(h: HRep, c: Vector, lp: OptResult, limits: Limits) -> OptResult:
    if lp.status is OptStatus.INFEASIBLE:
        return lp
    if kernel_basis(h.all_normals()):
        raise UnsupportedShapeError("Integral optimization needs a pointed polyhedron")
    if lp.status is OptStatus.OPTIMAL and is_integral_vector(lp.argmax_vertex):
        return lp
    corners = vertices(h, limits)
    if lp.status is OptStatus.OPTIMAL:
        best = sorted(v for v in corners if dot(c, v) == lp.value and is_integral_vector(v))
        if best:
            return OptResult(OptStatus.OPTIMAL, value=lp.value, argmax_vertex=best[0])
    rays = extreme_rays(h, limits)
    lower, upper = _search_box(corners, rays, h.n)
    points = [z for z in _box(lower, upper, limits) if h.satisfied_by(z)]
    if not points:
        return OptResult(OptStatus.INFEASIBLE)
    if lp.status is OptStatus.UNBOUNDED:
        return lp
    value = max(dot(c, z) for z in points)
    argmax = min(z for z in points if dot(c, z) == value)
    return OptResult(OptStatus.OPTIMAL, value=value, argmax_vertex=argmax)


def verify_strong_duality(
    h: HRep, c: VectorLike, limits: Limits | None = None
) -> DualityReport:
    """Compute the integral primal maximum and look for an integral dual solution.

    The dual side is searched only among solutions supported on the rows
    tight on the LP-optimal face with ``⟨b, y⟩`` equal to the LP optimum. For
    a TDI system with integral ``b`` and ``c`` such a solution exists and both
    sides agree. Otherwise the report may carry no dual solution even though
    a worse integral one exists; the integral dual minimum itself is not
    computed.

    Raises
    ------
    PreconditionError
        If ``b`` or ``c`` isn't integral.
    EmptyPolyhedronError
        If ``P`` holds no lattice point.
    UnsupportedShapeError
        If the primal problem is unbounded.
    """
    limits = Limits.resolve(limits)
    c = as_vector(c)
    if len(c) != h.n:
        raise DimensionError(f"Expected an objective of dimension {h.n}")
    _, b = h.matrix()
    if not is_integral_vector(b) or not is_integral_vector(c):
        raise PreconditionError("Strong duality is only asserted for integral b and c")
    lp = optimize(h, c, limits)
    primal = _integral_optimum(h, c, lp, limits)
    if primal.status is OptStatus.INFEASIBLE:
        raise EmptyPolyhedronError("The polyhedron holds no lattice point")
    if primal.status is OptStatus.UNBOUNDED:
        raise UnsupportedShapeError("The primal problem is unbounded")
    _, dual = _integral_dual(h, c, lp.value, limits)
    dual_value = None if dual is None else dot(dual, b)
    logger.debug("Primal {} / dual {}", primal.value, dual_value)
    return DualityReport(primal.value, primal.argmax_vertex, dual_value, dual)
