"""Text formats for polyhedra, matrices, graphs and certificates.

Lines starting with ``#`` (or the part of a line after one) are comments and
tokens are separated by whitespace. Graph files number nodes from 1.

Polyhedra::

    hrep                 vrep
    m n                  m n
    linearity k i1 ...   t x_1 ... x_n     (t = 1 point, t = 0 ray)
    a_1 ... a_n b

Emission is canonical: inequalities before equations, points before rays,
single spaces and a trailing newline.
"""
from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass

from ratpoly.core.model import Certificate, CertificateKind, HRep, VRep
from ratpoly.errors import ParseError, RatPolyError
from ratpoly.linalg import RatMatrix
from ratpoly.unimodularity import Digraph, Graph
from ratpoly.utils import Vector, format_rational, format_vector, parse_rational

__all__ = [
    "parse_poly",
    "emit_poly",
    "parse_matrix",
    "emit_matrix",
    "parse_graph",
    "emit_graph",
    "parse_certificate",
    "emit_certificate",
]


@dataclass(frozen=True, slots=True)
class _Line:
    number: int
    tokens: list[str]


def _lines(text: str) -> Iterator[_Line]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield _Line(number, tokens)


class _Reader:
    def __init__(self, text: str) -> None:
        self._lines = list(_lines(text))
        self._position = 0

    @property
    def exhausted(self) -> bool:
        return self._position >= len(self._lines)

    def peek(self) -> _Line | None:
        return None if self.exhausted else self._lines[self._position]

    def next(self, what: str) -> _Line:
        if self.exhausted:
            last = self._lines[-1].number if self._lines else None
            raise ParseError(f"Unexpected end of input, expected {what}", last)
        line = self._lines[self._position]
        self._position += 1
        return line

    def finish(self) -> None:
        if (line := self.peek()) is not None:
            raise ParseError("Unexpected trailing data", line.number)


def _int(token: str, line: _Line) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"Invalid integer: '{token}'", line.number) from None


def _rationals(line: _Line, count: int) -> Vector:
    if len(line.tokens) != count:
        raise ParseError(f"Expected {count} entries, got {len(line.tokens)}", line.number)
    try:
        return tuple(parse_rational(t) for t in line.tokens)
    except ValueError as e:
        raise ParseError(str(e), line.number) from None


def _shape(reader: _Reader) -> tuple[int, int]:
    line = reader.next("the dimensions line")
    if len(line.tokens) != 2:
        raise ParseError("The dimensions line must hold two integers", line.number)
    m, n = (_int(t, line) for t in line.tokens)
    if m < 0 or n < 0:
        raise ParseError("Dimensions must be nonnegative", line.number)
    return m, n


def _header(reader: _Reader, expected: tuple[str, ...]) -> str:
    line = reader.next("a header")
    if len(line.tokens) != 1 or line.tokens[0] not in expected:
        raise ParseError(
            f"Unknown header '{' '.join(line.tokens)}', expected {' or '.join(expected)}",
            line.number,
        )
    return line.tokens[0]


def _parse_hrep(reader: _Reader) -> HRep:
    m, n = _shape(reader)
    linearity: set[int] = set()
    if (line := reader.peek()) is not None and line.tokens[0] == "linearity":
        reader.next("linearity")
        indices = [_int(t, line) for t in line.tokens[1:]]
        if not indices or indices[0] != len(indices) - 1:
            raise ParseError("The linearity line must start with its count", line.number)
        linearity = set(indices[1:])
        if any(not 1 <= i <= m for i in linearity) or len(linearity) != indices[0]:
            raise ParseError("Linearity indices must be distinct rows", line.number)
    ineqs, eqs = [], []
    for i in range(1, m + 1):
        values = _rationals(reader.next(f"row {i}"), n + 1)
        (eqs if i in linearity else ineqs).append((values[:-1], values[-1]))
    return HRep(n, tuple(ineqs), tuple(eqs))


def _parse_vrep(reader: _Reader) -> VRep:
    m, n = _shape(reader)
    points, rays = [], []
    for i in range(1, m + 1):
        line = reader.next(f"row {i}")
        values = _rationals(line, n + 1)
        if values[0] == 1:
            points.append(values[1:])
        elif values[0] == 0:
            if not any(values[1:]):
                raise ParseError("A ray must be nonzero", line.number)
            rays.append(values[1:])
        else:
            raise ParseError("The type flag must be 1 (point) or 0 (ray)", line.number)
    return VRep(n, tuple(points), tuple(rays))


def parse_poly(text: str) -> HRep | VRep:
    """Parse an ``hrep`` or ``vrep`` file.

    Raises
    ------
    ParseError
        On malformed rationals, wrong row arity, unknown headers or trailing data.
    """
    reader = _Reader(text)
    header = _header(reader, ("hrep", "vrep"))
    poly = _parse_hrep(reader) if header == "hrep" else _parse_vrep(reader)
    reader.finish()
    return poly


def emit_poly(poly: HRep | VRep) -> str:
    if isinstance(poly, HRep):
        lines = ["hrep", f"{poly.m + len(poly.eq_rows)} {poly.n}"]
        if poly.eq_rows:
            positions = range(poly.m + 1, poly.m + len(poly.eq_rows) + 1)
            lines.append(" ".join(["linearity", str(len(poly.eq_rows)), *map(str, positions)]))
        lines.extend(format_vector((*a, b)) for a, b in (*poly.ineq_rows, *poly.eq_rows))
    else:
        lines = ["vrep", f"{len(poly.points) + len(poly.rays)} {poly.n}"]
        lines.extend(format_vector((1, *p)) for p in poly.points)
        lines.extend(format_vector((0, *r)) for r in poly.rays)
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> RatMatrix:
    reader = _Reader(text)
    _header(reader, ("matrix",))
    m, n = _shape(reader)
    rows = [_rationals(reader.next(f"row {i}"), n) for i in range(1, m + 1)]
    reader.finish()
    return RatMatrix(rows, ncols=n)


def emit_matrix(matrix: RatMatrix) -> str:
    lines = ["matrix", f"{matrix.nrows} {matrix.ncols}"]
    lines.extend(format_vector(row) for row in matrix.rows)
    return "\n".join(lines) + "\n"


def parse_graph(text: str) -> Digraph | Graph:
    """Parse a ``digraph`` (``arc u v`` lines) or ``graph`` (``edge u v`` lines) file."""
    reader = _Reader(text)
    header = _header(reader, ("digraph", "graph"))
    line = reader.next("the nodes line")
    if len(line.tokens) != 2 or line.tokens[0] != "nodes":
        raise ParseError("Expected 'nodes k'", line.number)
    num_nodes = _int(line.tokens[1], line)
    keyword = "arc" if header == "digraph" else "edge"
    pairs = []
    while not reader.exhausted:
        line = reader.next(keyword)
        if len(line.tokens) != 3 or line.tokens[0] != keyword:
            raise ParseError(f"Expected '{keyword} u v'", line.number)
        u, v = (_int(t, line) for t in line.tokens[1:])
        if not (1 <= u <= num_nodes and 1 <= v <= num_nodes):
            raise ParseError(f"Nodes must lie in 1..{num_nodes}", line.number)
        pairs.append((u - 1, v - 1))
    try:
        if header == "digraph":
            return Digraph(num_nodes, tuple(pairs))
        return Graph(num_nodes, tuple(pairs))
    except RatPolyError as e:
        raise ParseError(str(e)) from e


def emit_graph(graph: Digraph | Graph) -> str:
    if isinstance(graph, Digraph):
        header, keyword, pairs = "digraph", "arc", graph.arcs
    else:
        header, keyword, pairs = "graph", "edge", graph.edges
    lines = [header, f"nodes {graph.num_nodes}"]
    lines.extend(f"{keyword} {u + 1} {v + 1}" for u, v in pairs)
    return "\n".join(lines) + "\n"


_CERTIFICATE_HEADERS = {
    CertificateKind.INFEASIBILITY: "INFEASIBLE",
    CertificateKind.VALIDITY: "VALID",
    CertificateKind.SEPARATION: "SEPARATED",
}


def emit_certificate(certificate: Certificate) -> str:
    """A header line followed by one rational per line.

    Multipliers follow :py:meth:`HRep.expanded`; separations list the normal.
    """
    values = (
        certificate.separating_normal
        if certificate.kind is CertificateKind.SEPARATION
        else certificate.multipliers
    )
    lines = [_CERTIFICATE_HEADERS[certificate.kind], *map(format_rational, values or ())]
    return "\n".join(lines) + "\n"


def parse_certificate(text: str) -> Certificate:
    reader = _Reader(text)
    header = _header(reader, tuple(_CERTIFICATE_HEADERS.values()))
    kind = next(k for k, v in _CERTIFICATE_HEADERS.items() if v == header)
    values = []
    while not reader.exhausted:
        values.extend(_rationals(reader.next("a value"), 1))
    reader.finish()
    if kind is CertificateKind.SEPARATION:
        return Certificate(kind, separating_normal=tuple(values))
    return Certificate(kind, tuple(values))
