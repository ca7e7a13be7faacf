"""Face structure of polyhedra and exact linear optimization.

Row indices refer to :py:meth:`HRep.expanded` (equation ``i`` contributes the
pair ``m + 2i``, ``m + 2i + 1``) and are 0-based; messages meant for people
use 1-based numbers.
"""
from __future__ import annotations

import enum
import functools
import itertools
import math
from collections import deque
from collections.abc import Collection, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from ratpoly.config import Limits
from ratpoly.core import _fme
from ratpoly.core.farkas import _validity, contains, feasible, separate_from_cone
from ratpoly.core.model import Certificate, HRep, InCone, Infeasible, Row, Valid, VRep
from ratpoly.errors import (
    DimensionError,
    EmptyPolyhedronError,
    NotPointedError,
    ResourceLimitError,
    SingularMatrixError,
)
from ratpoly.linalg import RatMatrix, cramer_solve, dot, kernel_basis, primitive, rank, rref
from ratpoly.utils import Vector, VectorLike, as_vector, format_vector

__all__ = [
    "FaceDescriptor",
    "OptStatus",
    "OptResult",
    "IrredundancyVerdict",
    "char_cone",
    "lineality_space",
    "implicit_equalities",
    "affine_hull",
    "dimension",
    "vertices",
    "face_of",
    "faces",
    "facets",
    "certify_irredundant_h",
    "certify_irredundant_v",
    "extreme_rays",
    "is_vertex_by_segments",
    "edges",
    "optimize",
]

_ZERO = Fraction(0)


@dataclass(frozen=True, slots=True)
class FaceDescriptor:
    """The face ``{x ∈ P : A_I x = b_I}`` for its maximal equality set ``I``.

    The empty face has every row in its equality set, dimension ``-1`` and no
    representative point.
    """

    equality_set: frozenset[int]
    dim: int
    representative_point: Vector | None = None

    @property
    def is_empty(self) -> bool:
        return self.representative_point is None


class OptStatus(enum.Enum):
    OPTIMAL = "optimal"
    UNBOUNDED = "unbounded"
    INFEASIBLE = "infeasible"


@dataclass(frozen=True, slots=True)
class OptResult:
    status: OptStatus
    value: Fraction | None = None
    argmax_vertex: Vector | None = None
    improving_ray: Vector | None = None
    infeasibility_cert: Certificate | None = None


@dataclass(frozen=True, slots=True)
class IrredundancyVerdict:
    """``reason`` names the first violated condition when not irredundant."""

    irredundant: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.irredundant


def _require_nonempty(h: HRep, limits: Limits | None, what: str) -> Vector:
    result = feasible(h, limits)
    if isinstance(result, Infeasible):
        raise EmptyPolyhedronError(f"{what} is only defined for a nonempty polyhedron")
    return result.point


def _negated(row: Row) -> tuple[Vector, Fraction]:
    a, b = row
    return tuple(-v for v in a), -b


def _check_subsets(count: int, limits: Limits, what: str) -> None:
    if count > limits.max_subsets:
        raise ResourceLimitError(
            f"{what} needs {count} row subsets (max_subsets={limits.max_subsets})"
        )


def char_cone(h: HRep, limits: Limits | None = None) -> HRep:
    """``char(P) = P≤(A, 𝟘)``.

    Raises
    ------
    EmptyPolyhedronError
        If ``P`` is empty.
    """
    _require_nonempty(h, limits, "The characteristic cone")
    return h.homogeneous()


def lineality_space(h: HRep, limits: Limits | None = None) -> tuple[Vector, ...]:
    """A basis of ``lineal(P) = ker(A)`` in canonical primitive form."""
    _require_nonempty(h, limits, "The lineality space")
    return kernel_basis(h.all_normals())


def _implicit(
    rows: Sequence[Row], n: int, fixed: Collection[int], limits: Limits | None
) -> tuple[frozenset[int], Vector] | None:
    """Equality set of ``{x : rows ≤, rows[fixed] =}`` and one of its points.

    Returns ``None`` if that set is empty.
    """
    fixed = frozenset(fixed)
    others = [k for k in range(len(rows)) if k not in fixed]
    system = HRep(n, tuple(rows[k] for k in others), tuple(rows[k] for k in sorted(fixed)))
    result = feasible(system, limits)
    if isinstance(result, Infeasible):
        return None
    x = result.point
    implicit = set(fixed)
    for k in others:
        a, b = rows[k]
        if dot(a, x) == b:
            reversed_a, reversed_b = _negated(rows[k])
            if isinstance(_validity(system, reversed_a, reversed_b, limits), Valid):
                implicit.add(k)
    return frozenset(implicit), x


def implicit_equalities(h: HRep, limits: Limits | None = None) -> frozenset[int]:
    """Expanded rows satisfied with equality on all of ``P`` (every row if ``P = ∅``)."""
    found = _implicit(h.expanded(), h.n, (), limits)
    return frozenset(range(h.num_expanded)) if found is None else found[0]


def _equation_rank(rows: Sequence[Row], n: int, indices: Collection[int]) -> int:
    return rank(RatMatrix((rows[k][0] for k in indices), ncols=n))


def affine_hull(h: HRep, limits: Limits | None = None) -> HRep:
    """``aff(P)`` as a full row rank equation system (infeasible if ``P = ∅``)."""
    rows = h.expanded()
    found = _implicit(rows, h.n, (), limits)
    if found is None:
        return HRep.infeasible(h.n)
    implicit = sorted(found[0])
    augmented = RatMatrix((rows[k][0] + (rows[k][1],) for k in implicit), ncols=h.n + 1)
    reduced, pivots = rref(augmented)
    equations = tuple(
        (row[:-1], row[-1])
        for row in (primitive(r) for r in reduced.rows[: len(pivots)])
    )
    return HRep(h.n, (), equations)


def dimension(h: HRep, limits: Limits | None = None) -> int:
    """Affine dimension of ``P``; ``-1`` for the empty set."""
    rows = h.expanded()
    found = _implicit(rows, h.n, (), limits)
    if found is None:
        return -1
    return h.n - _equation_rank(rows, h.n, found[0])


def _check_pointed(h: HRep) -> None:
    if kernel_basis(h.all_normals()):
        raise NotPointedError(
            "The polyhedron has a nontrivial lineality space; project it to the "
            "orthogonal complement of the lineality space first"
        )


def _require_pointed(h: HRep, limits: Limits | None) -> None:
    _require_nonempty(h, limits, "The lineality space")
    _check_pointed(h)


@functools.lru_cache(maxsize=256)
def _basic_solutions(h: HRep) -> tuple[Vector, ...]:
    A, b = h.matrix()
    found: set[Vector] = set()
    for subset in itertools.combinations(range(A.nrows), h.n):
        try:
            x = cramer_solve(A.select_rows(subset), tuple(b[i] for i in subset))
        except SingularMatrixError:
            continue
        if x not in found and h.satisfied_by(x):
            found.add(x)
    logger.debug("Found {} vertices among {} rows", len(found), A.nrows)
    return tuple(sorted(found))


@functools.lru_cache(maxsize=256)
def _edge_directions(h: HRep) -> tuple[Vector, ...]:
    A, _ = h.matrix()
    found: set[Vector] = set()
    for subset in itertools.combinations(range(A.nrows), h.n - 1):
        basis = kernel_basis(A.select_rows(subset))
        if len(basis) != 1:
            continue
        for r in (basis[0], tuple(-v for v in basis[0])):
            if all(dot(a, r) <= 0 for a in A.rows):
                found.add(primitive(r))
    return tuple(sorted(found))


def _pointed_vertices(h: HRep, limits: Limits) -> tuple[Vector, ...]:
    """Vertices of a nonempty pointed ``P``; enumerations are cached per system."""
    _check_subsets(math.comb(h.num_expanded, h.n), limits, "Vertex enumeration")
    return _basic_solutions(h)


def _pointed_rays(h: HRep, limits: Limits) -> tuple[Vector, ...]:
    if h.n == 0:
        return ()
    _check_subsets(math.comb(h.num_expanded, h.n - 1), limits, "Extreme ray enumeration")
    return _edge_directions(h)


def vertices(h: HRep, limits: Limits | None = None) -> tuple[Vector, ...]:
    """All vertices of a pointed ``P``, sorted, by basic solution enumeration.

    Every ``n``-subset ``I`` of the rows with a regular ``A_I`` gives the
    candidate ``A_I⁻¹ b_I``; the feasible candidates are the vertices.

    Raises
    ------
    NotPointedError
        If ``P`` has a nontrivial lineality space.
    ResourceLimitError
        If there are more than ``limits.max_subsets`` candidate subsets.
    """
    limits = Limits.resolve(limits)
    if isinstance(feasible(h, limits), Infeasible):
        return ()
    _check_pointed(h)
    return _pointed_vertices(h, limits)


def _face(
    rows: Sequence[Row], n: int, fixed: Collection[int], limits: Limits | None
) -> FaceDescriptor:
    found = _implicit(rows, n, fixed, limits)
    if found is None:
        return FaceDescriptor(frozenset(range(len(rows))), -1)
    equality_set, point = found
    return FaceDescriptor(equality_set, n - _equation_rank(rows, n, equality_set), point)


def face_of(h: HRep, rows: Collection[int], limits: Limits | None = None) -> FaceDescriptor:
    """The face where the given expanded rows hold with equality, with its closure."""
    if any(not 0 <= i < h.num_expanded for i in rows):
        raise DimensionError(f"Row indices must lie in [0, {h.num_expanded})")
    return _face(h.expanded(), h.n, rows, limits)


def faces(
    h: HRep, max_count: int | None = None, limits: Limits | None = None
) -> tuple[FaceDescriptor, ...]:
    """The face lattice of ``P``, ordered by dimension and equality set.

    Starting from ``P`` itself, every face is closed under adding one more
    tight row; the empty face is always included.

    Raises
    ------
    ResourceLimitError
        If more than ``max_count`` (default ``limits.max_faces``) faces exist.
    """
    limits = Limits.resolve(limits)
    cap = limits.max_faces if max_count is None else max_count
    rows = h.expanded()
    empty = FaceDescriptor(frozenset(range(len(rows))), -1)
    top = _face(rows, h.n, (), limits)
    if top.is_empty:
        return (empty,)
    found = {top.equality_set: top}
    queue = deque([top])
    while queue:
        face = queue.popleft()
        for k in range(len(rows)):
            if k in face.equality_set:
                continue
            child = _face(rows, h.n, face.equality_set | {k}, limits)
            # the empty face shares its equality set with an apex tight on every row
            if child.is_empty or child.equality_set in found:
                continue
            found[child.equality_set] = child
            if len(found) >= cap:
                raise ResourceLimitError(f"The polyhedron has more than {cap} faces")
            queue.append(child)
    logger.debug("Face lattice with {} faces", len(found) + 1)
    ordered = sorted(found.values(), key=lambda f: (f.dim, sorted(f.equality_set)))
    return (empty, *ordered)


def facets(h: HRep, limits: Limits | None = None) -> tuple[tuple[int, FaceDescriptor], ...]:
    """Rows defining a face of dimension ``dim(P) - 1``, with that face."""
    rows = h.expanded()
    top = _face(rows, h.n, (), limits)
    if top.is_empty:
        return ()
    result = []
    for k in range(len(rows)):
        if k in top.equality_set:
            continue
        face = _face(rows, h.n, top.equality_set | {k}, limits)
        if face.dim == top.dim - 1:
            result.append((k, face))
    return tuple(result)


def certify_irredundant_h(h: HRep, limits: Limits | None = None) -> IrredundancyVerdict:
    """Check that no row of ``h`` can be dropped.

    The equations must have full row rank and each inequality must define a
    facet, different from the facets of all other inequalities.
    """
    rows = h.expanded()
    top = _face(rows, h.n, (), limits)
    if top.is_empty:
        if len(rows) == 1:
            return IrredundancyVerdict(True)
        return IrredundancyVerdict(False, "the polyhedron is empty and needs a single row")
    equations = RatMatrix((a for a, _ in h.eq_rows), ncols=h.n)
    if rank(equations) < len(h.eq_rows):
        return IrredundancyVerdict(False, "the equations don't have full row rank")
    seen: dict[frozenset[int], int] = {}
    for k in range(h.m):
        if k in top.equality_set:
            return IrredundancyVerdict(False, f"row {k + 1} defines no facet")
        face = _face(rows, h.n, top.equality_set | {k}, limits)
        if face.dim != top.dim - 1:
            return IrredundancyVerdict(False, f"row {k + 1} defines no facet")
        if face.equality_set in seen:
            return IrredundancyVerdict(
                False,
                f"rows {seen[face.equality_set] + 1} and {k + 1} don't define "
                "pairwise distinct facets",
            )
        seen[face.equality_set] = k
    return IrredundancyVerdict(True)


def certify_irredundant_v(v: VRep, limits: Limits | None = None) -> IrredundancyVerdict:
    """Check that the points are exactly the vertices and the rays one per extreme ray.

    Raises
    ------
    NotPointedError
        If ``conv(points) + ccone(rays)`` has a nontrivial lineality space.
    """
    from ratpoly.convert import v_to_h

    if v.is_empty:
        if v.rays:
            return IrredundancyVerdict(False, "rays given for an empty set")
        return IrredundancyVerdict(True)
    _require_pointed(v_to_h(v, limits), limits)
    for (i, x), (j, y) in itertools.combinations(enumerate(v.points), 2):
        if x == y:
            return IrredundancyVerdict(False, f"points {i + 1} and {j + 1} coincide")
    for (i, x), (j, y) in itertools.combinations(enumerate(v.rays), 2):
        if x == y:
            return IrredundancyVerdict(
                False, f"rays {i + 1} and {j + 1} span the same extreme ray"
            )
    for i, x in enumerate(v.points):
        rest = VRep(v.n, v.points[:i] + v.points[i + 1 :], v.rays)
        if rest.points and contains(rest, x, limits).contained:
            return IrredundancyVerdict(False, f"point ({format_vector(x)}) is not a vertex")
    for i, y in enumerate(v.rays):
        rest = v.rays[:i] + v.rays[i + 1 :]
        if isinstance(separate_from_cone(rest, y, limits), InCone):
            return IrredundancyVerdict(
                False, f"ray ({format_vector(y)}) is not an extreme ray"
            )
    return IrredundancyVerdict(True)


def extreme_rays(h: HRep, limits: Limits | None = None) -> tuple[Vector, ...]:
    """Primitive generators of the extreme rays of ``char(P)`` for a pointed ``P``.

    Every ``(n - 1)``-subset of rows of rank ``n - 1`` spans a line; the
    direction lying in ``char(P)`` is an extreme ray.
    """
    limits = Limits.resolve(limits)
    _require_pointed(h, limits)
    return _pointed_rays(h, limits)


def is_vertex_by_segments(h: HRep, v: VectorLike, limits: Limits | None = None) -> bool:
    """Decide whether ``v ∈ P`` lies in the interior of no segment of ``P``.

    ``v`` is not a vertex iff some ``d ≠ 𝟘`` keeps ``v ± d`` in ``P``; by symmetry
    it suffices to test ``d_k > 0`` for every coordinate ``k``, each as a strict
    feasibility system.
    """
    v = as_vector(v)
    if len(v) != h.n:
        raise DimensionError(f"Expected a point of dimension {h.n}")
    if not h.satisfied_by(v):
        return False
    slack_rows = []
    for a, b in h.expanded():
        slack = b - dot(a, v)
        slack_rows.append((a, slack))
        slack_rows.append((tuple(-x for x in a), slack))
    for k in range(h.n):
        direction = tuple(Fraction(-1) if j == k else _ZERO for j in range(h.n))
        rows = [*slack_rows, (direction, _ZERO)]
        if _fme.solve(rows, h.n, strict=(len(rows) - 1,), limits=limits).feasible:
            return False
    return True


def edges(h: HRep, limits: Limits | None = None) -> tuple[tuple[Vector, Vector], ...]:
    """Bounded one-dimensional faces of a pointed ``P`` as sorted vertex pairs."""
    rows = h.expanded()
    found = []
    for v, w in itertools.combinations(vertices(h, limits), 2):
        common = set(h.tight_rows(v)) & set(h.tight_rows(w))
        if _face(rows, h.n, common, limits).dim == 1:
            found.append((v, w))
    return tuple(found)


def optimize(h: HRep, c: VectorLike, limits: Limits | None = None) -> OptResult:
    """``max{⟨c, x⟩ : x ∈ P}``.

    Infeasible systems come with their certificate and unbounded problems with
    an improving ray. A nontrivial lineality space makes the problem unbounded
    unless ``c`` is orthogonal to it, in which case ``P`` is intersected with the
    orthogonal complement. The optimum is the best vertex; ties go to the
    lexicographically smallest vertex.
    """
    limits = Limits.resolve(limits)
    c = as_vector(c)
    if len(c) != h.n:
        raise DimensionError(f"Expected an objective of dimension {h.n}")
    result = feasible(h, limits)
    if isinstance(result, Infeasible):
        return OptResult(OptStatus.INFEASIBLE, infeasibility_cert=result.certificate)
    lineality = kernel_basis(h.all_normals())
    for direction in lineality:
        value = dot(c, direction)
        if value:
            ray = direction if value > 0 else tuple(-x for x in direction)
            return OptResult(OptStatus.UNBOUNDED, improving_ray=ray)
    pointed = h.with_rows(eq_rows=[(direction, _ZERO) for direction in lineality])
    for ray in _pointed_rays(pointed, limits):
        if dot(c, ray) > 0:
            return OptResult(OptStatus.UNBOUNDED, improving_ray=ray)
    candidates = _pointed_vertices(pointed, limits)
    best = max(dot(c, x) for x in candidates)
    argmax = min(x for x in candidates if dot(c, x) == best)
    logger.debug("Optimum {} at {}", best, argmax)
    return OptResult(OptStatus.OPTIMAL, value=best, argmax_vertex=argmax)
