"""Multiplier-tracking Fourier-Motzkin engine behind the feasibility tests.

Every row carries its combination multipliers over the input rows, so a
contradictory row ``0 ≤ c`` (``c < 0``, or ``c = 0`` for a strict row) turns
directly into an infeasibility certificate. Variables are eliminated in
increasing index order and the intermediate systems are kept for
back-substitution when the system is feasible.
"""
from __future__ import annotations

import math
from collections.abc import Collection, Sequence
from dataclasses import dataclass
from fractions import Fraction

from loguru import logger

from ratpoly.config import Limits
from ratpoly.errors import ResourceLimitError
from ratpoly.linalg import primitive_scale
from ratpoly.utils import Vector

__all__ = ["Outcome", "solve"]

_ZERO = Fraction(0)


@dataclass(slots=True)
class _Row:
    a: Vector
    b: Fraction
    strict: bool
    history: dict[int, Fraction]

    def is_contradiction(self) -> bool:
        return self.b < 0 or (self.b == 0 and self.strict)


@dataclass(frozen=True, slots=True)
class Outcome:
    """Either a point satisfying every row or multipliers of a contradiction."""

    point: Vector | None = None
    multipliers: Vector | None = None

    @property
    def feasible(self) -> bool:
        return self.point is not None


def _normalized(a: Vector, b: Fraction, strict: bool, history: dict[int, Fraction]) -> _Row:
    if not any(a):
        return _Row(a, b, strict, history)
    factor = primitive_scale(a)
    if factor == 1:
        return _Row(a, b, strict, history)
    return _Row(
        tuple(v * factor for v in a),
        b * factor,
        strict,
        {i: v * factor for i, v in history.items()},
    )


def _combine(pos: _Row, neg: _Row, j: int) -> _Row:
    p, q = -neg.a[j], pos.a[j]
    a = tuple(p * x + q * y for x, y in zip(pos.a, neg.a, strict=True))
    history = {i: p * v for i, v in pos.history.items()}
    for i, v in neg.history.items():
        history[i] = history.get(i, _ZERO) + q * v
    return _normalized(a, p * pos.b + q * neg.b, pos.strict or neg.strict, history)


def _dense(history: dict[int, Fraction], size: int) -> Vector:
    return tuple(history.get(i, _ZERO) for i in range(size))


class _Contradiction(Exception):  # noqa: N818
    def __init__(self, row: _Row) -> None:
        super().__init__()
        self.row = row


def _reduce(rows: list[_Row], eliminated: int | None) -> list[_Row]:
    """Drop trivial, dominated and (non-strict) Chernikov-redundant rows.

    ``eliminated`` is the number of eliminated variables, or ``None`` to skip the
    history-size rule.
    """
    best: dict[Vector, _Row] = {}
    for row in rows:
        if not any(row.a):
            if row.is_contradiction():
                raise _Contradiction(row)
            continue
        if eliminated is not None and not row.strict and len(row.history) > eliminated + 1:
            continue
        current = best.get(row.a)
        if (
            current is None
            or row.b < current.b
            or (row.b == current.b and row.strict and not current.strict)
        ):
            best[row.a] = row
    return list(best.values())


def _choose(lower: tuple[Fraction, bool] | None, upper: tuple[Fraction, bool] | None) -> Fraction:
    """A value strictly/weakly between the bounds, as close to zero as practical."""

    def fits(v: Fraction) -> bool:
        if lower is not None and (v < lower[0] or (lower[1] and v == lower[0])):
            return False
        return not (upper is not None and (v > upper[0] or (upper[1] and v == upper[0])))

    if fits(_ZERO):
        return _ZERO
    candidates = []
    if lower is not None:
        candidates.append(lower[0] if not lower[1] else Fraction(math.floor(lower[0]) + 1))
    if upper is not None:
        candidates.append(upper[0] if not upper[1] else Fraction(math.ceil(upper[0]) - 1))
    for v in sorted(candidates, key=abs):
        if fits(v):
            return v
    # both bounds present and strict on a narrow interval
    return (lower[0] + upper[0]) / 2  # type: ignore[index]


def _satisfies(
    rows: Sequence[tuple[Vector, Fraction]], strict: frozenset[int], x: Vector
) -> bool:
    for i, (a, b) in enumerate(rows):
        value = sum((u * v for u, v in zip(a, x, strict=True) if u), _ZERO)
        if value > b or (i in strict and value == b):
            return False
    return True


def _back_substitute(levels: list[list[_Row]], n: int) -> Vector:
    x = [_ZERO] * n
    for j in range(n - 1, -1, -1):
        lower: tuple[Fraction, bool] | None = None
        upper: tuple[Fraction, bool] | None = None
        for row in levels[j]:
            coefficient = row.a[j]
            if not coefficient:
                continue
            rest = sum((row.a[k] * x[k] for k in range(j + 1, n) if row.a[k]), _ZERO)
            bound = (row.b - rest) / coefficient
            if coefficient > 0:
                if upper is None or bound < upper[0] or (bound == upper[0] and row.strict):
                    upper = (bound, row.strict)
            elif lower is None or bound > lower[0] or (bound == lower[0] and row.strict):
                lower = (bound, row.strict)
        x[j] = _choose(lower, upper)
    return tuple(x)


def solve(
    rows: Sequence[tuple[Vector, Fraction]],
    n: int,
    strict: Collection[int] = (),
    limits: Limits | None = None,
    *,
    chernikov: bool = True,
) -> Outcome:
    """Decide the system ``⟨a_i, x⟩ ≤ b_i`` (``<`` for the indices in ``strict``).

    Returns
    -------
    Outcome
        A point satisfying every row, or multipliers ``λ ≥ 0`` over ``rows`` with
        ``Σ λ_i a_i = 𝟘`` and either ``Σ λ_i b_i < 0`` or ``Σ λ_i b_i = 0`` with a
        positive multiplier on a strict row.

    Raises
    ------
    ResourceLimitError
        If an intermediate system exceeds ``limits.max_rows`` rows.
    """
    limits = Limits.resolve(limits)
    strict = frozenset(strict)
    current = [
        _normalized(tuple(a), b, i in strict, {i: Fraction(1)})
        for i, (a, b) in enumerate(rows)
    ]
    levels: list[list[_Row]] = []
    try:
        current = _reduce(current, 0 if chernikov else None)
        for j in range(n):
            levels.append(current)
            positive = [r for r in current if r.a[j] > 0]
            negative = [r for r in current if r.a[j] < 0]
            derived = [r for r in current if not r.a[j]]
            if len(derived) + len(positive) * len(negative) > limits.max_rows:
                raise ResourceLimitError(
                    f"Elimination of variable {j + 1} would create "
                    f"{len(derived) + len(positive) * len(negative)} rows "
                    f"(max_rows={limits.max_rows})"
                )
            derived.extend(_combine(p, q, j) for p in positive for q in negative)
            current = _reduce(derived, j + 1 if chernikov else None)
            logger.trace("FME step {}: {} rows", j + 1, len(current))
    except _Contradiction as contradiction:
        return Outcome(multipliers=_dense(contradiction.row.history, len(rows)))
    point = _back_substitute(levels, n)
    if chernikov and not _satisfies(rows, strict, point):
        logger.debug("History-size pruning lost a row, eliminating again without it")
        return solve(rows, n, strict, limits, chernikov=False)
    return Outcome(point=point)
