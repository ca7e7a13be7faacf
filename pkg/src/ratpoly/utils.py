"""Coercion, parsing and formatting of exact rationals."""
from __future__ import annotations

import re
from collections.abc import Iterable, Sequence
from fractions import Fraction
from numbers import Integral
from typing import TypeAlias

import numpy as np

__all__ = [
    "RationalLike",
    "Vector",
    "VectorLike",
    "as_rational",
    "as_vector",
    "parse_rational",
    "parse_vector",
    "format_rational",
    "format_vector",
    "is_integral",
]

RationalLike: TypeAlias = Fraction | int | str
"""Anything :py:func:`as_rational` converts into a :py:class:`~fractions.Fraction`."""

Vector: TypeAlias = tuple[Fraction, ...]
"""An exact rational vector. Vectors are plain immutable tuples of fractions."""

VectorLike: TypeAlias = Sequence[RationalLike] | np.ndarray

_RATIONAL_PATTERN = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse the rational text syntax used everywhere in the package.

    The accepted syntax is an optional sign, an integer and optionally ``/``
    followed by a positive integer, e.g. ``-3/7`` or ``5``. Decimal points and
    exponents are rejected so that no floating point value can sneak in.

    Parameters
    ----------
    text
        The text to parse. Surrounding whitespace is ignored.

    Returns
    -------
    Fraction
        The parsed value in lowest terms.

    Raises
    ------
    ValueError
        If ``text`` doesn't follow the syntax or the denominator is zero.
    """
    token = text.strip()
    if _RATIONAL_PATTERN.fullmatch(token) is None:
        raise ValueError(f"Invalid rational: '{text}'")
    numerator, _, denominator = token.partition("/")
    if denominator and int(denominator) == 0:
        raise ValueError(f"Zero denominator in rational: '{text}'")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def as_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` into an exact :py:class:`~fractions.Fraction`.

    The following values are accepted:

    * A :py:class:`~fractions.Fraction`, returned unchanged.
    * An :external:py:class:`int` (or any integral number such as a numpy integer).
    * A :external:py:class:`str` in the syntax of :py:func:`parse_rational`.

    Raises
    ------
    TypeError
        If ``value`` is a float (or any other inexact type).
    ValueError
        If ``value`` is a string that isn't a valid rational.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("Booleans are not rationals")
    if isinstance(value, Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"Can't create an exact rational from '{value!r}'")


def as_vector(values: VectorLike | Iterable[RationalLike]) -> Vector:
    """Convert a sequence (or a one dimensional numpy array) into a vector."""
    if isinstance(values, np.ndarray):
        if values.ndim != 1:
            raise ValueError("Only one dimensional arrays can be converted to vectors")
        if values.dtype.kind == "f":
            raise TypeError("Floating point arrays are not accepted")
        values = values.tolist()
    return tuple(as_rational(v) for v in values)


def parse_vector(text: str) -> Vector:
    """Parse whitespace (or comma) separated rationals, e.g. ``"1 -1/2 3"``."""
    return tuple(parse_rational(token) for token in text.replace(",", " ").split())


def format_rational(value: Fraction) -> str:
    return str(value)


def format_vector(vector: Iterable[Fraction]) -> str:
    return " ".join(format_rational(v) for v in vector)


def is_integral(vector: Iterable[Fraction]) -> bool:
    return all(v.denominator == 1 for v in vector)
