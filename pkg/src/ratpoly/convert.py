"""Conversions between outer and inner descriptions.

Both directions rest on a single primitive: the outer description of a finitely
generated cone ``ccone(X)`` is obtained by projecting the nonnegative orthant
``ℝ₊^{|X|}`` through the matrix whose columns are the generators
(:py:func:`ratpoly.projection.project_general`). Polyhedra are lifted to cones
by homogenization and inner descriptions are read off the polar cone.
"""
from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from ratpoly.config import Limits
from ratpoly.core.farkas import _validity, contains, feasible, separate_from_cone
from ratpoly.core.model import HRep, InCone, Infeasible, Invalid, VRep
from ratpoly.errors import ContractViolationError, DimensionError
from ratpoly.linalg import MatrixLike, RatMatrix, dot, primitive, unit_vector
from ratpoly.projection import project_general
from ratpoly.utils import Vector, VectorLike, as_vector

__all__ = [
    "HomogenizedCone",
    "homogenize",
    "dehomogenize",
    "cone_v_to_h",
    "cone_h_to_v",
    "v_to_h",
    "h_to_v",
    "same_set",
]

_ZERO = Fraction(0)

@dataclass(frozen=True, slots=True)
class HomogenizedCone:
    """``{(x, ξ) : Ax - ξb ≤ 𝟘, ξ ≥ 0}`` for ``base = P≤(A, b)``.

    ``x ∈ P`` iff ``(x, 1)`` lies in the cone, and rays ``y`` of ``P``
    correspond to ``(y, 0)``. The last inequality row of ``cone_hrep`` is
    ``-ξ ≤ 0``.
    """

    base: HRep
    cone_hrep: HRep


def homogenize(h: HRep) -> HomogenizedCone:
    n = h.n
    lifted = tuple(((*a, -b), _ZERO) for a, b in h.ineq_rows)
    xi_row = (tuple(-v for v in unit_vector(n + 1, n)), _ZERO)
    equations = tuple(((*a, -b), _ZERO) for a, b in h.eq_rows)
    return HomogenizedCone(h, HRep(n + 1, (*lifted, xi_row), equations))


def dehomogenize(generators: Iterable[VectorLike], n: int | None = None) -> VRep:
    """Turn cone generators ``(x, ξ)`` into points and rays.

    ``ξ > 0`` gives the point ``x/ξ`` and ``ξ = 0`` the ray ``x``.

    Zero generators are skipped.

    Raises
    ------
    ContractViolationError
        If a generator has ``ξ < 0``.
    """
    lifted = [as_vector(g) for g in generators]
    if n is None:
        if not lifted:
            raise DimensionError("The dimension of an empty generator set is required")
        n = len(lifted[0]) - 1
    points, rays = [], []
    for g in lifted:
        if len(g) != n + 1:
            raise DimensionError(f"Generator {g!r} doesn't have dimension {n + 1}")
        xi = g[-1]
        if xi < 0:
            raise ContractViolationError(f"Generator {g!r} has a negative last coordinate")
        if xi > 0:
            points.append(tuple(v / xi for v in g[:-1]))
        elif any(g[:-1]):
            rays.append(g[:-1])
    return VRep(n, tuple(points), tuple(rays))


def _cone_outer(generators: Sequence[Vector], n: int, limits: Limits | None) -> HRep:
    """Outer description (with equations) of ``ccone(generators) ⊆ ℝⁿ``."""
    d = len(generators)
    orthant = HRep(d, tuple((tuple(-v for v in unit_vector(d, i)), _ZERO) for i in range(d)))
    matrix = RatMatrix.from_columns(generators, n)
    projection = project_general(
        orthant,
        matrix,
        generators=[unit_vector(d, i) for i in range(d)],
        limits=limits,
    )
    logger.debug(
        "Cone with {} generators in dimension {}: {} inequalities, {} equations",
        d,
        n,
        projection.hrep.m,
        len(projection.hrep.eq_rows),
    )
    return projection.hrep.canonical()


def _cone_rows(h: HRep) -> list[Vector]:
    return [a for a, _ in h.ineq_rows] + [
        row for a, _ in h.eq_rows for row in (a, tuple(-v for v in a))
    ]


def _vectors(X: Iterable[VectorLike], n: int | None) -> tuple[list[Vector], int]:
    vectors = [as_vector(x) for x in X]
    if n is None:
        if not vectors:
            raise DimensionError("The dimension of an empty set of vectors is required")
        n = len(vectors[0])
    if any(len(x) != n for x in vectors):
        raise DimensionError(f"All vectors must have dimension {n}")
    return vectors, n


def cone_v_to_h(
    X: Iterable[VectorLike], n: int | None = None, limits: Limits | None = None
) -> RatMatrix:
    """A matrix ``A`` with ``ccone(X) = P≤(A, 𝟘)``, rows primitive and sorted."""
    vectors, n = _vectors(X, n)
    rows = sorted({primitive(a) for a in _cone_rows(_cone_outer(vectors, n, limits))})
    return RatMatrix(rows, ncols=n)


def cone_h_to_v(A: MatrixLike, limits: Limits | None = None) -> tuple[Vector, ...]:
    """A finite ``X`` with ``P≤(A, 𝟘) = ccone(X)``, primitive and sorted.

    The polar cone ``ccone(rows of A)`` is described as ``{c : Bc ≤ 𝟘, Ec = 𝟘}``,
    so the rows of ``B`` and ``±E`` generate ``P≤(A, 𝟘)`` again.
    """
    A = RatMatrix.create(A)
    polar = _cone_outer(list(A.rows), A.ncols, limits)
    return tuple(sorted({primitive(a) for a in _cone_rows(polar) if any(a)}))


def v_to_h(v: VRep, limits: Limits | None = None) -> HRep:
    """Outer description of ``conv(points) + ccone(rays)``.

    The generators are homogenized to ``(x, 1)`` and ``(y, 0)``, the cone they
    span is described by :py:func:`_cone_outer` and every row ``(α, -β)`` turns
    back into ``⟨α, x⟩ ≤ β``. The row coming from ``ξ ≥ 0`` becomes trivial and
    disappears in the canonical form. An empty ``v`` gives
    :py:meth:`HRep.infeasible`.
    """
    if v.is_empty:
        return HRep.infeasible(v.n)
    cone = _cone_outer(v.generators(), v.n + 1, limits)
    h = HRep(
        v.n,
        tuple((a[:-1], -a[-1]) for a, _ in cone.ineq_rows),
        tuple((a[:-1], -a[-1]) for a, _ in cone.eq_rows),
    ).canonical()
    logger.debug("v_to_h: {} generators -> {} rows", len(v.points) + len(v.rays), h.num_expanded)
    return h


def h_to_v(h: HRep, limits: Limits | None = None) -> VRep:
    """Inner description of an outer description, through the polar of its homogenization.

    With ``K = homog(P) = P≤(A', 𝟘)`` the polar is ``K° = ccone(rows of A')``;
    its outer description ``{c : Bc ≤ 𝟘, Ec = 𝟘}`` yields ``K = ccone(B ∪ ±E)``
    and dehomogenizing those generators gives points and rays. Infeasible
    systems give :py:meth:`VRep.empty`.
    """
    if isinstance(feasible(h, limits), Infeasible):
        return VRep.empty(h.n)
    cone = homogenize(h).cone_hrep
    polar = _cone_outer(_cone_rows(cone), h.n + 1, limits)
    v = dehomogenize(_cone_rows(polar), h.n).canonical()
    logger.debug(
        "h_to_v: {} rows -> {} points, {} rays", h.num_expanded, len(v.points), len(v.rays)
    )
    return v


def _in_char_cone(q: HRep | VRep, ray: Vector, limits: Limits | None) -> bool:
    if isinstance(q, HRep):
        return all(dot(a, ray) <= 0 for a, _ in q.expanded())
    return isinstance(separate_from_cone(q.rays, ray, limits), InCone)


def _is_empty(p: HRep | VRep, limits: Limits | None) -> bool:
    if isinstance(p, VRep):
        return p.is_empty
    return isinstance(feasible(p, limits), Infeasible)


def _subset(p: HRep | VRep, q: HRep | VRep, limits: Limits | None) -> bool:
    if _is_empty(p, limits):
        return True
    if _is_empty(q, limits):
        return False
    if isinstance(p, VRep):
        return all(contains(q, x, limits).contained for x in p.points) and all(
            _in_char_cone(q, y, limits) for y in p.rays
        )
    if isinstance(q, VRep):
        q = v_to_h(q, limits)
    return not any(
        result is None or isinstance(result, Invalid)
        for result in (_validity(p, a, b, limits) for a, b in q.expanded())
    )


def same_set(p: HRep | VRep, q: HRep | VRep, limits: Limits | None = None) -> bool:
    """Decide whether two descriptions represent the same set by mutual containment.

    Generators are checked with :py:func:`~ratpoly.core.farkas.contains` and rows
    with validity certificates.
    """
    if p.n != q.n:
        raise DimensionError(f"Can't compare sets in dimensions {p.n} and {q.n}")
    return _subset(p, q, limits) and _subset(q, p, limits)
