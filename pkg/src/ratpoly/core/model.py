"""Outer and inner descriptions of polyhedra and the results computed on them."""
from __future__ import annotations

import enum
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TypeAlias

from ratpoly.errors import ContractViolationError, DimensionError
from ratpoly.linalg import RatMatrix, dot, primitive, rref, zero_vector
from ratpoly.utils import RationalLike, Vector, VectorLike, as_rational, as_vector

__all__ = [
    "Row",
    "RowLike",
    "HRep",
    "VRep",
    "CertificateKind",
    "Certificate",
    "Feasible",
    "Infeasible",
    "FeasibilityResult",
    "Valid",
    "Invalid",
    "ValidityResult",
    "InCone",
    "Separated",
    "SeparationResult",
    "Membership",
]

Row: TypeAlias = tuple[Vector, Fraction]
"""A row ``(a, b)``: ``⟨a, x⟩ ≤ b`` as an inequality, ``⟨a, x⟩ = b`` as an equation."""

RowLike: TypeAlias = tuple[VectorLike, RationalLike]


def _as_row(row: RowLike, n: int) -> Row:
    a, b = row
    a = as_vector(a)
    if len(a) != n:
        raise DimensionError(f"Row {row!r} doesn't have dimension {n}")
    return (a, as_rational(b))


def _primitive_row(a: Vector, b: Fraction) -> Row:
    scaled = primitive((*a, b))
    return (scaled[:-1], scaled[-1])


@dataclass(frozen=True, slots=True)
class HRep:
    """The polyhedron ``{x : ⟨a, x⟩ ≤ b for ineq_rows, ⟨a, x⟩ = b for eq_rows}``.

    Equation rows are a convenience. Operations that need a pure inequality
    system use :py:meth:`expanded`, which turns the equation row ``i`` into the
    inequality pair at positions ``m + 2i`` and ``m + 2i + 1`` (0-based), with
    ``m = len(ineq_rows)``. Certificates always refer to that indexing.

    Rows are coerced on construction, so plain integers, strings and nested
    lists are accepted.
    """

    n: int
    ineq_rows: tuple[Row, ...] = ()
    eq_rows: tuple[Row, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DimensionError("The ambient dimension can't be negative")
        object.__setattr__(
            self, "ineq_rows", tuple(_as_row(r, self.n) for r in self.ineq_rows)
        )
        object.__setattr__(self, "eq_rows", tuple(_as_row(r, self.n) for r in self.eq_rows))

    @classmethod
    def from_matrix(
        cls,
        A: RatMatrix,
        b: Sequence[RationalLike],
        eq_matrix: RatMatrix | None = None,
        eq_rhs: Sequence[RationalLike] = (),
    ) -> HRep:
        """Build ``P≤(A, b)`` (optionally with equations ``A' x = b'``)."""
        if len(b) != A.nrows:
            raise DimensionError("The right-hand side must have one entry per row")
        eqs: tuple[Row, ...] = ()
        if eq_matrix is not None:
            if eq_matrix.ncols != A.ncols or len(eq_rhs) != eq_matrix.nrows:
                raise DimensionError("The equation system doesn't match the inequalities")
            eqs = tuple(zip(eq_matrix.rows, eq_rhs, strict=True))
        return cls(A.ncols, tuple(zip(A.rows, b, strict=True)), eqs)

    @classmethod
    def infeasible(cls, n: int) -> HRep:
        """The canonical empty system ``⟨𝟘, x⟩ ≤ -1``."""
        return cls(n, ((zero_vector(n), Fraction(-1)),))

    @property
    def m(self) -> int:
        return len(self.ineq_rows)

    @property
    def num_expanded(self) -> int:
        return len(self.ineq_rows) + 2 * len(self.eq_rows)

    def expanded(self) -> tuple[Row, ...]:
        """All rows as inequalities in certificate order."""
        pairs = tuple(
            row for a, b in self.eq_rows for row in ((a, b), (tuple(-v for v in a), -b))
        )
        return self.ineq_rows + pairs

    def matrix(self) -> tuple[RatMatrix, Vector]:
        """``(A, b)`` of the expanded inequality system."""
        rows = self.expanded()
        return RatMatrix((a for a, _ in rows), ncols=self.n), tuple(b for _, b in rows)

    def all_normals(self) -> RatMatrix:
        """Matrix of every row normal, inequalities first, then equations."""
        return RatMatrix(
            (a for a, _ in self.ineq_rows + self.eq_rows), ncols=self.n
        )

    def satisfied_by(self, x: VectorLike) -> bool:
        x = as_vector(x)
        if len(x) != self.n:
            raise DimensionError(f"Expected a point of dimension {self.n}")
        return all(dot(a, x) <= b for a, b in self.ineq_rows) and all(
            dot(a, x) == b for a, b in self.eq_rows
        )

    def tight_rows(self, x: Vector) -> tuple[int, ...]:
        """Indices of the expanded rows tight at ``x``."""
        return tuple(i for i, (a, b) in enumerate(self.expanded()) if dot(a, x) == b)

    def with_rows(
        self, ineq_rows: Iterable[RowLike] = (), eq_rows: Iterable[RowLike] = ()
    ) -> HRep:
        """Return a copy with extra rows appended."""
        return HRep(
            self.n, self.ineq_rows + tuple(ineq_rows), self.eq_rows + tuple(eq_rows)
        )

    def homogeneous(self) -> HRep:
        """The same rows with right-hand sides set to zero."""
        return HRep(
            self.n,
            tuple((a, Fraction(0)) for a, _ in self.ineq_rows),
            tuple((a, Fraction(0)) for a, _ in self.eq_rows),
        )

    def canonical(self) -> HRep:
        """A normal form of this system, representing the same set.

        Equations are brought to reduced row echelon form, inequalities are
        reduced modulo the equations, every row is scaled to a primitive integer
        row, trivial rows are dropped, parallel inequalities keep the tightest
        bound and the rows are sorted. A system detected to be empty on the way
        becomes :py:meth:`infeasible`.

        Redundant rows are *not* removed here; that needs validity checks (see
        :py:func:`ratpoly.projection.prune_redundant`).
        """
        n = self.n
        equations: list[Row] = []
        pivots: tuple[int, ...] = ()
        if self.eq_rows:
            reduced, pivots = rref(RatMatrix((a + (b,) for a, b in self.eq_rows), ncols=n + 1))
            if pivots and pivots[-1] == n:
                return HRep.infeasible(n)
            equations = [(row[:-1], row[-1]) for row in reduced.rows[: len(pivots)]]
        tightest: dict[Vector, Fraction] = {}
        for a, b in self.ineq_rows:
            a, b = list(a), b
            for (ea, eb), p in zip(equations, pivots, strict=True):
                if a[p]:
                    factor = a[p]
                    a = [x - factor * y for x, y in zip(a, ea, strict=True)]
                    b -= factor * eb
            if not any(a):
                if b < 0:
                    return HRep.infeasible(n)
                continue
            direction = primitive(tuple(a))
            k = next(i for i, v in enumerate(a) if v)
            rhs = b * direction[k] / a[k]
            if direction not in tightest or rhs < tightest[direction]:
                tightest[direction] = rhs
        ineqs = sorted(_primitive_row(a, b) for a, b in tightest.items())
        eqs = sorted(_primitive_row(a, b) for a, b in equations)
        return HRep(n, tuple(ineqs), tuple(eqs))

    def __str__(self) -> str:
        from ratpoly.io import emit_poly

        return emit_poly(self)


@dataclass(frozen=True, slots=True)
class VRep:
    """The polyhedron ``conv(points) + ccone(rays)``.

    Rays are stored primitive-normalized and may not be zero. The represented
    set is empty iff there are no points; a cone is stored with the apex
    ``points = (𝟘,)`` (see :py:meth:`cone`).
    """

    n: int
    points: tuple[Vector, ...] = ()
    rays: tuple[Vector, ...] = ()

    def __post_init__(self) -> None:
        if self.n < 0:
            raise DimensionError("The ambient dimension can't be negative")
        points = tuple(as_vector(p) for p in self.points)
        rays = tuple(as_vector(r) for r in self.rays)
        for v in points + rays:
            if len(v) != self.n:
                raise DimensionError(f"Generator {v!r} doesn't have dimension {self.n}")
        if any(not any(r) for r in rays):
            raise ContractViolationError("Rays must be nonzero")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "rays", tuple(primitive(r) for r in rays))

    @classmethod
    def empty(cls, n: int) -> VRep:
        return cls(n)

    @classmethod
    def cone(cls, rays: Iterable[VectorLike], n: int | None = None) -> VRep:
        """``ccone(rays)`` stored with the apex ``𝟘`` as its single point."""
        rays = [as_vector(r) for r in rays]
        if n is None:
            if not rays:
                raise DimensionError("The dimension of a cone without rays is required")
            n = len(rays[0])
        return cls(n, (zero_vector(n),), tuple(r for r in rays if any(r)))

    @property
    def is_empty(self) -> bool:
        return not self.points

    def generators(self) -> tuple[Vector, ...]:
        """Homogenized generators ``(x, 1)`` for points and ``(y, 0)`` for rays."""
        one, zero = Fraction(1), Fraction(0)
        return tuple((*x, one) for x in self.points) + tuple((*y, zero) for y in self.rays)

    def canonical(self) -> VRep:
        """Deduplicated generators, points and rays sorted lexicographically."""
        if self.is_empty:
            return VRep.empty(self.n)
        return VRep(self.n, tuple(sorted(set(self.points))), tuple(sorted(set(self.rays))))

    def __str__(self) -> str:
        from ratpoly.io import emit_poly

        return emit_poly(self)


class CertificateKind(enum.Enum):
    INFEASIBILITY = "infeasibility"
    VALIDITY = "validity"
    SEPARATION = "separation"


@dataclass(frozen=True, slots=True)
class Certificate:
    """Exactly checkable evidence for a verdict.

    * ``INFEASIBILITY``: ``λ ≥ 0``, ``λᵗA = 𝟘`` and ``⟨λ, b⟩ < 0``.
    * ``VALIDITY``: ``λ ≥ 0``, ``λᵗA = aᵗ`` and ``⟨λ, b⟩ ≤ β``; ``bound`` is ``β``.
    * ``SEPARATION``: ``⟨a, x⟩ ≤ 0`` on every generator and ``⟨a, y⟩ > 0`` for the
      separated point; ``separating_normal`` is ``a``.

    Multipliers are indexed like :py:meth:`HRep.expanded`.
    """

    kind: CertificateKind
    multipliers: Vector = ()
    separating_normal: Vector | None = None
    bound: Fraction | None = None


@dataclass(frozen=True, slots=True)
class Feasible:
    point: Vector


@dataclass(frozen=True, slots=True)
class Infeasible:
    certificate: Certificate


FeasibilityResult: TypeAlias = Feasible | Infeasible


@dataclass(frozen=True, slots=True)
class Valid:
    certificate: Certificate


@dataclass(frozen=True, slots=True)
class Invalid:
    witness: Vector


ValidityResult: TypeAlias = Valid | Invalid


@dataclass(frozen=True, slots=True)
class InCone:
    coefficients: Vector


@dataclass(frozen=True, slots=True)
class Separated:
    normal: Vector


SeparationResult: TypeAlias = InCone | Separated


@dataclass(frozen=True, slots=True)
class Membership:
    """Outcome of a membership test.

    For a :py:class:`VRep`, ``coefficients`` holds the convex coefficients on
    the points followed by the conic coefficients on the rays when ``x`` is
    contained; otherwise ``certificate`` separates ``(x, 1)`` from the
    homogenized cone. For an :py:class:`HRep`, ``violated_rows`` lists the
    expanded rows violated by ``x``.
    """

    contained: bool
    coefficients: Vector | None = None
    certificate: Certificate | None = None
    violated_rows: tuple[int, ...] = field(default=())

    def __bool__(self) -> bool:
        return self.contained
