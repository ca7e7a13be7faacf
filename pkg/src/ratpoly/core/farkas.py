"""Feasibility, membership and validity with Farkas certificates.

Everything here reduces to the elimination engine in :py:mod:`ratpoly.core._fme`:
feasibility directly, validity as infeasibility of ``P ∩ {⟨a, x⟩ > β}`` and
membership in a finitely generated set as feasibility of a standard form
system. Certificates are indexed like :py:meth:`HRep.expanded`.
"""
from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction

from loguru import logger

from ratpoly.config import Limits
from ratpoly.core import _fme
from ratpoly.core.model import (
    Certificate,
    CertificateKind,
    FeasibilityResult,
    Feasible,
    HRep,
    InCone,
    Infeasible,
    Invalid,
    Membership,
    SeparationResult,
    Separated,
    Valid,
    ValidityResult,
    VRep,
)
from ratpoly.errors import ContractViolationError, DimensionError, EmptyPolyhedronError
from ratpoly.linalg import (
    MatrixLike,
    RatMatrix,
    dot,
    kernel_basis,
    primitive,
    unit_vector,
)
from ratpoly.utils import RationalLike, Vector, VectorLike, as_rational, as_vector

__all__ = [
    "feasible",
    "feasible_standard_form",
    "contains",
    "is_valid",
    "separate_from_cone",
    "caratheodory_reduce",
    "verify_infeasibility",
    "verify_standard_form_infeasibility",
    "verify_validity",
    "verify_separation",
]

_ZERO = Fraction(0)


def _check_dimension(n: int, x: Vector, what: str = "point") -> None:
    if len(x) != n:
        raise DimensionError(f"Expected a {what} of dimension {n}, got {len(x)}")


def feasible(h: HRep, limits: Limits | None = None) -> FeasibilityResult:
    """Decide whether ``P = {x : rows of h}`` is nonempty.

    Returns
    -------
    Feasible or Infeasible
        A point satisfying every row exactly, or an infeasibility certificate
        ``λ ≥ 0`` with ``λᵗA = 𝟘`` and ``⟨λ, b⟩ < 0`` over the expanded rows.
    """
    outcome = _fme.solve(h.expanded(), h.n, limits=limits)
    if outcome.point is not None:
        logger.debug("System with {} rows in dimension {} is feasible", h.num_expanded, h.n)
        return Feasible(outcome.point)
    logger.debug("System with {} rows in dimension {} is infeasible", h.num_expanded, h.n)
    return Infeasible(Certificate(CertificateKind.INFEASIBILITY, outcome.multipliers))


def _standard_form(A: RatMatrix, b: Vector) -> HRep:
    n = A.ncols
    nonnegativity = tuple((tuple(-v for v in unit_vector(n, j)), _ZERO) for j in range(n))
    return HRep(n, nonnegativity, tuple(zip(A.rows, b, strict=True)))


def feasible_standard_form(
    A: MatrixLike, b: VectorLike, limits: Limits | None = None
) -> FeasibilityResult:
    """Decide ``Ax = b, x ≥ 𝟘``.

    The infeasibility certificate is a free-sign ``λ`` (one entry per row of
    ``A``) with ``λᵗA ≥ 𝟘`` and ``⟨λ, b⟩ < 0``.
    """
    A = RatMatrix.create(A)
    b = as_vector(b)
    _check_dimension(A.nrows, b, "right-hand side")
    result = feasible(_standard_form(A, b), limits)
    if isinstance(result, Feasible):
        return result
    mu = result.certificate.multipliers[A.ncols :]
    free = tuple(mu[2 * i] - mu[2 * i + 1] for i in range(A.nrows))
    return Infeasible(Certificate(CertificateKind.INFEASIBILITY, free))


def contains(p: HRep | VRep, x: VectorLike, limits: Limits | None = None) -> Membership:
    """Decide ``x ∈ P``.

    For an :py:class:`HRep` this is a row-by-row check. For a :py:class:`VRep`
    the coefficients of ``x`` as a convex combination of the points plus a conic
    combination of the rays are searched; on failure the certificate holds a
    normal ``a ∈ ℝⁿ⁺¹`` separating ``(x, 1)`` from the homogenized cone
    ``ccone({(p, 1)} ∪ {(r, 0)})``.
    """
    x = as_vector(x)
    _check_dimension(p.n, x)
    if isinstance(p, HRep):
        violated = tuple(i for i, (a, b) in enumerate(p.expanded()) if dot(a, x) > b)
        return Membership(contained=not violated, violated_rows=violated)
    generators = p.generators()
    columns = (
        RatMatrix.from_columns(generators, p.n + 1)
        if generators
        else RatMatrix.zeros(p.n + 1, 0)
    )
    result = feasible_standard_form(columns, (*x, Fraction(1)), limits)
    if isinstance(result, Feasible):
        return Membership(contained=True, coefficients=result.point)
    normal = primitive(tuple(-v for v in result.certificate.multipliers))
    return Membership(
        contained=False,
        certificate=Certificate(CertificateKind.SEPARATION, separating_normal=normal),
    )


def _validity(
    h: HRep, a: Vector, beta: Fraction, limits: Limits | None
) -> ValidityResult | None:
    """Validity test without the nonemptiness check; ``None`` means ``P = ∅``."""
    rows = (*h.expanded(), (tuple(-v for v in a), -beta))
    outcome = _fme.solve(rows, h.n, strict=(len(rows) - 1,), limits=limits)
    if outcome.point is not None:
        return Invalid(outcome.point)
    mu = outcome.multipliers
    t = mu[-1]
    if t == 0:
        return None
    multipliers = tuple(v / t for v in mu[:-1])
    return Valid(Certificate(CertificateKind.VALIDITY, multipliers, bound=beta))


def is_valid(
    h: HRep, a: VectorLike, beta: RationalLike, limits: Limits | None = None
) -> ValidityResult:
    """Decide whether ``⟨a, x⟩ ≤ β`` holds on all of ``P``.

    Returns
    -------
    Valid or Invalid
        ``λ ≥ 0`` with ``λᵗA = aᵗ`` and ``⟨λ, b⟩ ≤ β``, or a point of ``P``
        violating the inequality.

    Raises
    ------
    EmptyPolyhedronError
        If ``P`` is empty. Emptiness can be decided with :py:func:`feasible`.
    """
    a = as_vector(a)
    beta = as_rational(beta)
    _check_dimension(h.n, a, "normal")
    if isinstance(feasible(h, limits), Infeasible):
        raise EmptyPolyhedronError(
            "Validity certificates need a nonempty polyhedron; check it with feasible()"
        )
    result = _validity(h, a, beta, limits)
    if result is None:  # pragma: no cover - excluded by the feasibility check
        raise EmptyPolyhedronError("The polyhedron is empty")
    return result


def separate_from_cone(
    X: Sequence[VectorLike], y: VectorLike, limits: Limits | None = None
) -> SeparationResult:
    """Decide ``y ∈ ccone(X)``; otherwise find ``a`` with ``⟨a, x⟩ ≤ 0 < ⟨a, y⟩``."""
    y = as_vector(y)
    generators = [as_vector(x) for x in X]
    for x in generators:
        _check_dimension(len(y), x, "generator")
    columns = (
        RatMatrix.from_columns(generators, len(y)) if generators else RatMatrix.zeros(len(y), 0)
    )
    result = feasible_standard_form(columns, y, limits)
    if isinstance(result, Feasible):
        return InCone(result.point)
    return Separated(primitive(tuple(-v for v in result.certificate.multipliers)))


def caratheodory_reduce(
    X: Sequence[VectorLike], y: VectorLike, coefficients: VectorLike
) -> Vector:
    """Rewrite a conic combination of ``X`` over a linearly independent subset.

    Parameters
    ----------
    X
        The generators.
    y
        The combined vector.
    coefficients
        Nonnegative ``α`` with ``y = Σ α_i X_i``.

    Returns
    -------
    Vector
        New nonnegative coefficients (one per generator) reproducing ``y`` whose
        support is linearly independent, hence of size at most ``n``.

    Raises
    ------
    ContractViolationError
        If ``coefficients`` are negative or don't reproduce ``y``.
    """
    generators = [as_vector(x) for x in X]
    y = as_vector(y)
    alpha = list(as_vector(coefficients))
    if len(alpha) != len(generators) or any(v < 0 for v in alpha):
        raise ContractViolationError("Expected one nonnegative coefficient per generator")
    for x in generators:
        _check_dimension(len(y), x, "generator")
    combined = tuple(
        sum((c * x[k] for c, x in zip(alpha, generators, strict=True) if c), _ZERO)
        for k in range(len(y))
    )
    if combined != y:
        raise ContractViolationError("The coefficients don't reproduce the vector")
    while True:
        support = [i for i, c in enumerate(alpha) if c]
        if not support:
            break
        dependence = kernel_basis(
            RatMatrix.from_columns([generators[i] for i in support], len(y))
        )
        if not dependence:
            break
        d = dependence[0]
        if not any(v > 0 for v in d):
            d = tuple(-v for v in d)
        step, leaving = min(
            (alpha[i] / v, i) for i, v in zip(support, d, strict=True) if v > 0
        )
        for i, v in zip(support, d, strict=True):
            alpha[i] -= step * v
        alpha[leaving] = _ZERO
    return tuple(alpha)


def verify_infeasibility(h: HRep, certificate: Certificate) -> bool:
    """Re-check ``λ ≥ 0``, ``λᵗA = 𝟘`` and ``⟨λ, b⟩ < 0`` exactly."""
    if certificate.kind is not CertificateKind.INFEASIBILITY:
        return False
    A, b = h.matrix()
    lam = certificate.multipliers
    if len(lam) != A.nrows or any(v < 0 for v in lam):
        return False
    return not any(A.vecmat(lam)) and dot(lam, b) < 0


def verify_standard_form_infeasibility(
    A: MatrixLike, b: VectorLike, certificate: Certificate
) -> bool:
    """Re-check ``λᵗA ≥ 𝟘`` and ``⟨λ, b⟩ < 0`` exactly."""
    A = RatMatrix.create(A)
    b = as_vector(b)
    lam = certificate.multipliers
    if certificate.kind is not CertificateKind.INFEASIBILITY or len(lam) != A.nrows:
        return False
    return all(v >= 0 for v in A.vecmat(lam)) and dot(lam, b) < 0


def verify_validity(
    h: HRep, a: VectorLike, beta: RationalLike, certificate: Certificate
) -> bool:
    """Re-check ``λ ≥ 0``, ``λᵗA = aᵗ`` and ``⟨λ, b⟩ ≤ β`` exactly."""
    if certificate.kind is not CertificateKind.VALIDITY:
        return False
    A, b = h.matrix()
    lam = certificate.multipliers
    if len(lam) != A.nrows or any(v < 0 for v in lam):
        return False
    return A.vecmat(lam) == as_vector(a) and dot(lam, b) <= as_rational(beta)


def verify_separation(
    X: Sequence[VectorLike], y: VectorLike, certificate: Certificate | Separated
) -> bool:
    """Re-check ``⟨a, x⟩ ≤ 0`` for every generator and ``⟨a, y⟩ > 0`` exactly."""
    if isinstance(certificate, Separated):
        normal = certificate.normal
    elif certificate.kind is CertificateKind.SEPARATION and certificate.separating_normal:
        normal = certificate.separating_normal
    else:
        return False
    y = as_vector(y)
    if len(normal) != len(y):
        return False
    return all(dot(normal, as_vector(x)) <= 0 for x in X) and dot(normal, y) > 0
