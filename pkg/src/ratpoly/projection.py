"""Fourier-Motzkin elimination, projection cones and general linear projections.

Coordinates are 0-based in this API. Every derived row is a nonnegative
combination of the input rows and its multipliers are kept, either in an
:py:class:`EliminationTrace` or in the ``multipliers`` of a
:py:class:`Projection`.
"""
from __future__ import annotations

from collections.abc import Callable, Collection, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import TypeAlias

from loguru import logger

from ratpoly.config import Limits
from ratpoly.core.farkas import _validity, feasible
from ratpoly.core.model import HRep, Infeasible, Row, Valid
from ratpoly.errors import DimensionError, ResourceLimitError
from ratpoly.linalg import (
    MatrixLike,
    RatMatrix,
    inverse,
    kernel_basis,
    primitive,
    primitive_scale,
    rank,
    rref,
    unit_vector,
)
from ratpoly.utils import Vector

__all__ = [
    "Derivation",
    "EliminationTrace",
    "Projection",
    "Pruner",
    "eliminate_last",
    "eliminate_coords",
    "projection_cone_generators",
    "project_general",
    "prune_redundant",
    "facet_pruner",
]

_ZERO = Fraction(0)
_ONE = Fraction(1)

Pruner: TypeAlias = Callable[[HRep, tuple[int, ...]], Sequence[int]]
"""Redundancy filter used between elimination steps.

It receives the current (nonempty) system over the remaining coordinates and
the indices of those coordinates in the working space, and returns the indices
of the inequality rows to keep. Equations are always kept.
"""


@dataclass(frozen=True, slots=True)
class Derivation:
    """A derived row as ``Σ multipliers[i] · row[parents[i]]`` (nonnegative)."""

    parents: tuple[int, ...]
    multipliers: tuple[Fraction, ...]


@dataclass(frozen=True, slots=True)
class EliminationTrace:
    """How every output row of :py:func:`eliminate_last` was obtained.

    Parent indices refer to :py:meth:`HRep.expanded` of the input system.
    """

    derivations: tuple[Derivation, ...]

    def replay(self, h: HRep) -> tuple[Row, ...]:
        """Recompute the output rows from ``h``, dropping the last coordinate."""
        rows = h.expanded()
        replayed = []
        for derivation in self.derivations:
            a = [_ZERO] * h.n
            b = _ZERO
            for parent, coefficient in zip(
                derivation.parents, derivation.multipliers, strict=True
            ):
                pa, pb = rows[parent]
                a = [x + coefficient * y for x, y in zip(a, pa, strict=True)]
                b += coefficient * pb
            replayed.append((tuple(a[:-1]), b))
        return tuple(replayed)


@dataclass(frozen=True, slots=True)
class Projection:
    """Outcome of :py:func:`project_general`.

    ``hrep`` describes ``π(Q)`` including the equations of ``π(ℝᵈ)``. The
    ``i``-th inequality row of ``hrep`` equals ``L_i·D`` (composed with ``T``)
    with right-hand side ``L_i·g`` where ``L_i = multipliers[i]`` is indexed like
    the expanded rows of ``Q``. ``subspace`` holds the equations of ``π(ℝᵈ)``
    alone.
    """

    hrep: HRep
    multipliers: tuple[Vector, ...]
    subspace: tuple[Row, ...]


# Row bookkeeping ----------------------------------------------------------


@dataclass(slots=True)
class _Tracked:
    a: Vector
    b: Fraction
    history: dict[int, Fraction]


def _normalized(a: Vector, b: Fraction, history: dict[int, Fraction]) -> _Tracked:
    factor = primitive_scale((*a, b))
    if factor == 1:
        return _Tracked(a, b, history)
    return _Tracked(
        tuple(v * factor for v in a), b * factor, {i: v * factor for i, v in history.items()}
    )


def _merge(
    first: dict[int, Fraction], p: Fraction, second: dict[int, Fraction], q: Fraction
) -> dict[int, Fraction]:
    merged = {i: p * v for i, v in first.items()}
    for i, v in second.items():
        merged[i] = merged.get(i, _ZERO) + q * v
    return {i: v for i, v in merged.items() if v}


def _combine(pos: _Tracked, neg: _Tracked, j: int) -> _Tracked:
    p, q = -neg.a[j], pos.a[j]
    a = tuple(p * x + q * y for x, y in zip(pos.a, neg.a, strict=True))
    return _normalized(a, p * pos.b + q * neg.b, _merge(pos.history, p, neg.history, q))


def _substitute(row: _Tracked, pivot: _Tracked, j: int) -> _Tracked:
    if not row.a[j]:
        return row
    f = row.a[j] / pivot.a[j]
    a = tuple(x - f * y for x, y in zip(row.a, pivot.a, strict=True))
    return _normalized(a, row.b - f * pivot.b, _merge(row.history, _ONE, pivot.history, -f))


def _expanded_history(history: dict[int, Fraction], m: int, size: int) -> Vector:
    """Dense nonnegative multipliers; signed equation keys become row pairs."""
    dense = [_ZERO] * size
    for key, value in history.items():
        if key >= m and value < 0:
            dense[key + 1] += -value
        else:
            dense[key] += value
    return tuple(dense)


def _restrict(a: Vector, coords: Sequence[int]) -> Vector:
    return tuple(a[c] for c in coords)


# Pruning ------------------------------------------------------------------


def _redundancy_scan(h: HRep, limits: Limits | None) -> list[int]:
    """Indices of the inequality rows of a nonempty ``h`` left by an ascending scan."""
    candidates = []
    seen: set[Vector] = set()
    for i, (a, b) in enumerate(h.ineq_rows):
        if not any(a) and b >= 0:
            continue
        key = primitive((*a, b))
        if key in seen:
            continue
        seen.add(key)
        candidates.append(i)
    kept = list(candidates)
    for i in candidates:
        rest = HRep(h.n, tuple(h.ineq_rows[k] for k in kept if k != i), h.eq_rows)
        a, b = h.ineq_rows[i]
        if isinstance(_validity(rest, a, b, limits), Valid):
            kept.remove(i)
    logger.trace("Pruning kept {} of {} rows", len(kept), h.m)
    return kept


def _validity_pruner(limits: Limits | None) -> Pruner:
    def prune(h: HRep, coords: tuple[int, ...]) -> Sequence[int]:  # noqa: ARG001
        return _redundancy_scan(h, limits)

    return prune


def facet_pruner(generators: Sequence[Vector]) -> Pruner:
    """Pruner for projections of the full-dimensional cone ``ccone(generators)``.

    The projection of a full-dimensional cone to ``k`` coordinates is again
    full-dimensional, so a valid homogeneous row is irredundant iff the projected
    generators tight on it have rank ``k - 1``. Every row produced by elimination
    is valid, which leaves a rank test per row instead of a validity test.
    """

    def prune(h: HRep, coords: tuple[int, ...]) -> Sequence[int]:
        projected = [_restrict(g, coords) for g in generators]
        k = len(coords)
        kept = []
        seen: set[Vector] = set()
        for i, (a, b) in enumerate(h.ineq_rows):
            if not any(a):
                continue
            key = primitive((*a, b))
            if key in seen:
                continue
            seen.add(key)
            tight = [g for g in projected if sum(x * y for x, y in zip(a, g, strict=True)) == b]
            if len(tight) >= k - 1 and rank(RatMatrix(tight, ncols=k)) == k - 1:
                kept.append(i)
        logger.trace("Facet test kept {} of {} rows", len(kept), h.m)
        return kept

    return prune


def prune_redundant(h: HRep, limits: Limits | None = None) -> HRep:
    """Remove every inequality row that is implied by the remaining rows.

    Trivial rows ``0 ≤ b`` with ``b ≥ 0`` and duplicates (up to positive scaling)
    go first, then the rows are scanned in ascending order and a row is dropped
    when it is certified valid for the rows still kept. An empty polyhedron
    becomes :py:meth:`HRep.infeasible`. Equations are kept.
    """
    if isinstance(feasible(h, limits), Infeasible):
        return HRep.infeasible(h.n)
    kept = _redundancy_scan(h, limits)
    return HRep(h.n, tuple(h.ineq_rows[i] for i in kept), h.eq_rows)


# Elimination engine -------------------------------------------------------


def _keep_rows(
    ineqs: list[_Tracked],
    eqs: list[_Tracked],
    alive: list[int],
    pruner: Pruner,
) -> list[_Tracked]:
    ineqs = [r for r in ineqs if any(r.a[c] for c in alive) or r.b < 0]
    system = HRep(
        len(alive),
        tuple((_restrict(r.a, alive), r.b) for r in ineqs),
        tuple((_restrict(r.a, alive), r.b) for r in eqs),
    )
    return [ineqs[i] for i in pruner(system, tuple(alive))]


def _eliminate(
    h: HRep, targets: Collection[int], pruner: Pruner, limits: Limits
) -> tuple[list[int], list[_Tracked], list[_Tracked]]:
    """Eliminate ``targets`` from a nonempty ``h``.

    Returns the surviving coordinates, inequality rows and equation rows (both
    still over all ``h.n`` coordinates, zero outside the survivors).
    """
    m = h.m
    ineqs = [_Tracked(a, b, {i: _ONE}) for i, (a, b) in enumerate(h.ineq_rows)]
    eqs = [_Tracked(a, b, {m + 2 * i: _ONE}) for i, (a, b) in enumerate(h.eq_rows)]
    alive = [c for c in range(h.n)]
    pending = sorted(targets, reverse=True)
    for j in list(pending):
        pivot = next((e for e in eqs if e.a[j]), None)
        if pivot is None:
            continue
        eqs = [_substitute(e, pivot, j) for e in eqs if e is not pivot]
        ineqs = [_substitute(r, pivot, j) for r in ineqs]
        pending.remove(j)
        alive.remove(j)
        logger.trace("Coordinate {} substituted by an equation", j + 1)
    eqs = [e for e in eqs if any(e.a)]
    ineqs = _keep_rows(ineqs, eqs, alive, pruner)
    for step, j in enumerate(pending, start=1):
        positive = [r for r in ineqs if r.a[j] > 0]
        negative = [r for r in ineqs if r.a[j] < 0]
        zero = [r for r in ineqs if not r.a[j]]
        size = len(zero) + len(positive) * len(negative)
        if size > limits.max_rows:
            raise ResourceLimitError(
                f"Elimination step {step} of {len(pending)} (coordinate {j + 1}) would "
                f"create {size} rows (max_rows={limits.max_rows})"
            )
        zero.extend(_combine(p, q, j) for p in positive for q in negative)
        alive.remove(j)
        ineqs = _keep_rows(zero, eqs, alive, pruner)
        logger.debug(
            "Eliminated coordinate {}: {} rows before pruning, {} after",
            j + 1,
            size,
            len(ineqs),
        )
    return alive, ineqs, eqs


def _infeasible_multipliers(h: HRep, certificate_multipliers: Vector) -> Vector:
    """Scale an infeasibility certificate so that it derives ``0 ≤ -1``."""
    _, b = h.matrix()
    value = sum((x * y for x, y in zip(certificate_multipliers, b, strict=True)), _ZERO)
    return tuple(v / -value for v in certificate_multipliers)


def eliminate_last(
    h: HRep, *, prune: bool = True, limits: Limits | None = None
) -> tuple[HRep, EliminationTrace]:
    """One Fourier-Motzkin step: project ``P ⊆ ℝᵈ`` to the first ``d - 1`` coordinates.

    Equations are used as their two inequality halves. The output holds the
    rows with a zero last coefficient and one primitive-normalized combination
    per pair of rows with a positive and a negative last coefficient, followed
    by :py:func:`prune_redundant` when ``prune`` is set.

    Raises
    ------
    DimensionError
        If ``d = 0``.
    """
    if h.n == 0:
        raise DimensionError("There is no coordinate to eliminate")
    limits = Limits.resolve(limits)
    d = h.n
    rows = h.expanded()
    output: list[Row] = []
    derivations: list[Derivation] = []
    positive = [i for i, (a, _) in enumerate(rows) if a[-1] > 0]
    negative = [i for i, (a, _) in enumerate(rows) if a[-1] < 0]
    size = len(rows) - len(positive) - len(negative) + len(positive) * len(negative)
    if size > limits.max_rows:
        raise ResourceLimitError(
            f"Eliminating coordinate {d} would create {size} rows (max_rows={limits.max_rows})"
        )
    for i, (a, b) in enumerate(rows):
        if not a[-1]:
            output.append((a[:-1], b))
            derivations.append(Derivation((i,), (_ONE,)))
    for k in positive:
        for l in negative:  # noqa: E741
            (ak, bk), (al, bl) = rows[k], rows[l]
            p, q = -al[-1], ak[-1]
            a = tuple(p * x + q * y for x, y in zip(ak[:-1], al[:-1], strict=True))
            b = p * bk + q * bl
            factor = primitive_scale((*a, b))
            output.append((tuple(v * factor for v in a), b * factor))
            derivations.append(Derivation((k, l), (p * factor, q * factor)))
    projected = HRep(d - 1, tuple(output))
    if prune:
        result = feasible(h, limits)
        if isinstance(result, Infeasible):
            multipliers = _infeasible_multipliers(h, result.certificate.multipliers)
            support = tuple(i for i, v in enumerate(multipliers) if v)
            derivation = Derivation(support, tuple(multipliers[i] for i in support))
            return HRep.infeasible(d - 1), EliminationTrace((derivation,))
        kept = _redundancy_scan(projected, limits)
        projected = HRep(d - 1, tuple(output[i] for i in kept))
        derivations = [derivations[i] for i in kept]
    logger.debug("Eliminated coordinate {}: {} rows", d, projected.m)
    return projected, EliminationTrace(tuple(derivations))


def eliminate_coords(
    h: HRep,
    coords: Collection[int],
    *,
    pruner: Pruner | None = None,
    limits: Limits | None = None,
) -> HRep:
    """Project ``P`` onto the coordinates not in ``coords``.

    Equations involving eliminated coordinates are used first for exact
    substitution; the remaining coordinates are eliminated by Fourier-Motzkin
    steps in descending index order with ``pruner`` (by default
    :py:func:`prune_redundant`'s scan) applied after every step.

    Returns
    -------
    HRep
        The projection, over the surviving coordinates in their original order.

    Raises
    ------
    DimensionError
        If a coordinate is out of range.
    ResourceLimitError
        If an intermediate system exceeds ``limits.max_rows`` rows; the message
        names the step reached.
    """
    targets = set(coords)
    if any(not 0 <= c < h.n for c in targets):
        raise DimensionError(f"Coordinates must lie in [0, {h.n})")
    limits = Limits.resolve(limits)
    if isinstance(feasible(h, limits), Infeasible):
        return HRep.infeasible(h.n - len(targets))
    alive, ineqs, eqs = _eliminate(h, targets, pruner or _validity_pruner(limits), limits)
    return HRep(
        len(alive),
        tuple((_restrict(r.a, alive), r.b) for r in ineqs),
        tuple((_restrict(e.a, alive), e.b) for e in eqs),
    )


def projection_cone_generators(
    D: MatrixLike, n: int, limits: Limits | None = None
) -> tuple[Vector, ...]:
    """Generators of ``{λ ≥ 𝟘 : ⟨D_{⋆,j}, λ⟩ = 0 for j ≥ n}``.

    With a single eliminated column ``δ`` the generators are the unit vectors of
    rows with ``δ_i = 0`` and ``|δ_l|·e_k + δ_k·e_l`` for every ``δ_k > 0 > δ_l``.
    Otherwise they are the extreme rays of the cone computed by
    :py:func:`ratpoly.convert.h_to_v`.
    """
    from ratpoly.convert import h_to_v

    D = RatMatrix.create(D)
    q, d = D.shape
    if not 0 <= n <= d:
        raise DimensionError(f"The number of kept coordinates must lie in [0, {d}]")
    eliminated = list(range(n, d))
    if not eliminated:
        return tuple(unit_vector(q, i) for i in range(q))
    if len(eliminated) == 1:
        delta = D.column(d - 1)
        generators = [unit_vector(q, i) for i in range(q) if not delta[i]]
        for k in (i for i in range(q) if delta[i] > 0):
            for l in (i for i in range(q) if delta[i] < 0):  # noqa: E741
                g = [_ZERO] * q
                g[k], g[l] = -delta[l], delta[k]
                generators.append(primitive(g))
        return tuple(sorted(generators))
    nonnegativity = tuple(
        (tuple(-v for v in unit_vector(q, i)), _ZERO) for i in range(q)
    )
    cone = HRep(q, nonnegativity, tuple((D.column(j), _ZERO) for j in eliminated))
    return h_to_v(cone, limits).rays


def project_general(
    h: HRep,
    T: MatrixLike,
    *,
    generators: Sequence[Vector] | None = None,
    limits: Limits | None = None,
) -> Projection:
    """Outer description of ``π(Q)`` for the linear map ``π(y) = Ty``.

    With ``ñ = rank(T)``, ``T_R`` a row basis of ``T`` and ``C`` the columns of
    a regular ``ñ × ñ`` block of ``T_R``, the regular matrix ``T̃`` stacks
    ``T_R`` over the unit rows ``e_i`` for ``i ∉ C``. In the coordinates
    ``z = T̃y`` the first ``ñ`` coordinates are ``T_R y``, so eliminating the
    others and lifting through the row basis gives ``π(Q)`` inside ``π(ℝᵈ)``.

    Parameters
    ----------
    h
        ``Q ⊆ ℝᵈ``.
    T
        An ``n × d`` matrix.
    generators
        Generators of ``Q`` when ``Q`` is the full-dimensional cone they span
        (as for the nonnegative orthant). Pruning then uses
        :py:func:`facet_pruner` instead of validity checks.
    limits
        Resource caps.

    Returns
    -------
    Projection
        The image, the multipliers ``L`` with ``A·T = L·D`` and ``b = L·g``, and
        the equations of ``π(ℝᵈ)`` (a basis of ``ker(Tᵗ)``).
    """
    T = RatMatrix.create(T)
    limits = Limits.resolve(limits)
    n, d = T.shape
    if h.n != d:
        raise DimensionError(f"Can't apply a {n}x{d} matrix to a polyhedron in dimension {h.n}")
    subspace = tuple((k, _ZERO) for k in kernel_basis(T.transpose()))
    size = h.num_expanded
    result = feasible(h, limits)
    if isinstance(result, Infeasible):
        multipliers = _infeasible_multipliers(h, result.certificate.multipliers)
        return Projection(HRep.infeasible(n), (multipliers,), subspace)

    _, basis_rows = rref(T.transpose())
    T_R = T.select_rows(basis_rows)
    _, basis_cols = rref(T_R)
    others = [i for i in range(d) if i not in basis_cols]
    T_tilde = T_R.vstack(RatMatrix((unit_vector(d, i) for i in others), ncols=d))
    T_inv = inverse(T_tilde)
    changed = HRep(
        d,
        tuple((T_inv.vecmat(a), b) for a, b in h.ineq_rows),
        tuple((T_inv.vecmat(a), b) for a, b in h.eq_rows),
    )
    if generators is not None:
        pruner = facet_pruner([T_tilde.matvec(g) for g in generators])
    else:
        pruner = _validity_pruner(limits)
    rank_T = len(basis_rows)
    alive, ineqs, eqs = _eliminate(changed, range(rank_T, d), pruner, limits)

    def lift(a: Vector) -> Vector:
        lifted = [_ZERO] * n
        for position, c in zip(basis_rows, alive, strict=True):
            lifted[position] = a[c]
        return tuple(lifted)

    image = HRep(
        n,
        tuple((lift(r.a), r.b) for r in ineqs),
        tuple((lift(e.a), e.b) for e in eqs) + subspace,
    )
    multipliers = tuple(_expanded_history(r.history, h.m, size) for r in ineqs)
    logger.debug(
        "Projected {} rows in dimension {} to {} rows in dimension {}",
        size,
        d,
        image.m,
        n,
    )
    return Projection(image, multipliers, subspace)
