"""Resource caps shared by every enumeration and elimination routine."""
from __future__ import annotations

from typing import final

__all__ = ["Limits"]


@final
class Limits:
    """Configurable caps for the exact (and worst-case exponential) algorithms.

    Every operation that enumerates rows, subsets, lattice points or faces takes a
    ``limits`` argument. Exceeding a cap raises
    :py:class:`~ratpoly.errors.ResourceLimitError`; nothing is ever truncated
    silently.

    Parameters
    ----------
    max_rows
        Maximal number of rows of any intermediate system during elimination.
    max_subsets
        Maximal number of row/column subsets an exhaustive oracle may visit.
    max_lattice
        Maximal number of lattice points a box enumeration may visit.
    max_faces
        Maximal number of faces a face enumeration may produce.
    window
        Half-width of the box ``‖z‖∞ ≤ window`` used when Hilbert and monoid
        identities are verified on a finite window.
    c_box
        Half-width of the objective box ``‖c‖∞ ≤ c_box`` used by the
        definitional TDI check.

    Raises
    ------
    ValueError
        If any of the values is not a positive integer.
    """

    __slots__ = (
        "_max_rows",
        "_max_subsets",
        "_max_lattice",
        "_max_faces",
        "_window",
        "_c_box",
    )

    _max_rows: int
    _max_subsets: int
    _max_lattice: int
    _max_faces: int
    _window: int
    _c_box: int

    def __init__(  # noqa: PLR0913
        self,
        *,
        max_rows: int = 100_000,
        max_subsets: int = 1_000_000,
        max_lattice: int = 1_000_000,
        max_faces: int = 10_000,
        window: int = 10,
        c_box: int = 3,
    ) -> None:
        self.max_rows = max_rows
        self.max_subsets = max_subsets
        self.max_lattice = max_lattice
        self.max_faces = max_faces
        self.window = window
        self.c_box = c_box

    @staticmethod
    def _positive(name: str, value: int) -> int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise TypeError(f"{name} must be an integer")
        if value <= 0:
            raise ValueError(f"{name} must be positive")
        return value

    @property
    def max_rows(self) -> int:
        return self._max_rows

    @max_rows.setter
    def max_rows(self, value: int) -> None:
        self._max_rows = self._positive("max_rows", value)

    @property
    def max_subsets(self) -> int:
        return self._max_subsets

    @max_subsets.setter
    def max_subsets(self, value: int) -> None:
        self._max_subsets = self._positive("max_subsets", value)

    @property
    def max_lattice(self) -> int:
        return self._max_lattice

    @max_lattice.setter
    def max_lattice(self, value: int) -> None:
        self._max_lattice = self._positive("max_lattice", value)

    @property
    def max_faces(self) -> int:
        return self._max_faces

    @max_faces.setter
    def max_faces(self, value: int) -> None:
        self._max_faces = self._positive("max_faces", value)

    @property
    def window(self) -> int:
        return self._window

    @window.setter
    def window(self, value: int) -> None:
        self._window = self._positive("window", value)

    @property
    def c_box(self) -> int:
        return self._c_box

    @c_box.setter
    def c_box(self, value: int) -> None:
        self._c_box = self._positive("c_box", value)

    def replace(self, **changes: int) -> Limits:
        """Return a copy of these limits with some values replaced."""
        values = {name.removeprefix("_"): getattr(self, name) for name in self.__slots__}
        unknown = set(changes) - set(values)
        if unknown:
            raise TypeError(f"Unknown limits: {', '.join(sorted(unknown))}")
        values.update(changes)
        return Limits(**values)

    def __repr__(self) -> str:
        values = ", ".join(
            f"{name.removeprefix('_')}={getattr(self, name)}" for name in self.__slots__
        )
        return f"{type(self).__name__}({values})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Limits):
            return NotImplemented
        return all(getattr(self, n) == getattr(other, n) for n in self.__slots__)

    @classmethod
    def resolve(cls, limits: Limits | None) -> Limits:
        """Return ``limits`` or the default limits when ``limits`` is ``None``."""
        return cls() if limits is None else limits
