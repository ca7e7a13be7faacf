from fractions import Fraction

import pytest

from ratpoly.core import Certificate, CertificateKind, HRep, VRep
from ratpoly.corpus import complete_bipartite, path_digraph, unit_cube
from ratpoly.errors import ParseError
from ratpoly.io import (
    emit_certificate,
    emit_graph,
    emit_matrix,
    emit_poly,
    parse_certificate,
    parse_graph,
    parse_matrix,
    parse_poly,
)
from ratpoly.linalg import RatMatrix
from ratpoly.unimodularity import Digraph, Graph

HALF = Fraction(1, 2)


@pytest.mark.parametrize(
    ("text", "expected"),
    [
        ("hrep\n1 1\n1 1\n", HRep(1, (((1,), 1),))),
        ("hrep\n0 3\n", HRep(3)),
        ("vrep\n2 2\n1 0 0\n1 1 1\n", VRep(2, ((0, 0), (1, 1)))),
        ("vrep\n1 2\n0 1 0\n", VRep(2, (), ((1, 0),))),
        ("hrep # header\n\n1 2\n  1/2   -3 7/4 # a row\n", HRep(2, (((HALF, -3), "7/4"),))),
    ],
)
def test_parse_poly(text: str, expected: HRep | VRep) -> None:
    assert parse_poly(text) == expected


def test_parse_linearity() -> None:
    h = parse_poly("hrep\n3 1\nlinearity 1 2\n1 1\n1 0\n-1 0\n")
    assert h.ineq_rows == (((1,), 1), ((-1,), 0))
    assert h.eq_rows == (((1,), 0),)


def test_emit_poly() -> None:
    h = HRep(2, (((1, 0), HALF),), (((0, 1), -2),))
    assert emit_poly(h) == "hrep\n2 2\nlinearity 1 2\n1 0 1/2\n0 1 -2\n"
    v = VRep(1, ((3,),), ((-1,),))
    assert emit_poly(v) == "vrep\n2 1\n1 3\n0 -1\n"
    assert emit_poly(HRep(2)) == "hrep\n0 2\n"


def test_emitted_polyhedra_parse_back() -> None:
    for poly in (
        unit_cube(3),
        HRep(2, (((1, 0), HALF),), (((0, 1), -2), ((1, 1), 0))),
        VRep(2, ((0, HALF),), ((1, 1), (0, -1))),
        VRep.empty(4),
    ):
        assert parse_poly(emit_poly(poly)) == poly


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("", "Unexpected end of input, expected a header"),
        ("polytope\n", "line 1: Unknown header 'polytope', expected hrep or vrep"),
        ("hrep\n1\n", "line 2: The dimensions line must hold two integers"),
        ("hrep\n1 x\n", "line 2: Invalid integer: 'x'"),
        ("hrep\n-1 2\n", "line 2: Dimensions must be nonnegative"),
        ("hrep\n2 1\n1 1\n", "line 3: Unexpected end of input, expected row 2"),
        ("hrep\n1 2\n1 1\n", "line 3: Expected 3 entries, got 2"),
        ("hrep\n1 1\n1 0.5\n", "line 3: Invalid rational: '0.5'"),
        ("hrep\n1 1\n1 1/0\n", "line 3: Zero denominator"),
        ("hrep\n1 1\n1 1\n1 1\n", "line 4: Unexpected trailing data"),
        ("hrep\n2 1\nlinearity 2 1\n1 1\n-1 0\n", "line 3: The linearity line must start"),
        ("hrep\n2 1\nlinearity 1 3\n1 1\n-1 0\n", "line 3: Linearity indices must be"),
        ("vrep\n1 1\n2 1\n", "line 3: The type flag must be 1 (point) or 0 (ray)"),
        ("vrep\n1 2\n0 0 0\n", "line 3: A ray must be nonzero"),
    ],
)
def test_parse_poly_errors(text: str, message: str) -> None:
    with pytest.raises(ParseError, match=message.replace("(", r"\(").replace(")", r"\)")):
        parse_poly(text)


def test_parse_error_carries_the_line() -> None:
    with pytest.raises(ParseError) as e:
        parse_poly("# a comment\nhrep\n1 1\n1 x\n")
    assert e.value.line == 4


def test_matrices() -> None:
    A = RatMatrix.create([[1, -HALF], [0, 2]])
    assert emit_matrix(A) == "matrix\n2 2\n1 -1/2\n0 2\n"
    assert parse_matrix(emit_matrix(A)) == A
    assert parse_matrix("matrix\n0 3\n").shape == (0, 3)
    with pytest.raises(ParseError, match="line 3: Expected 2 entries"):
        parse_matrix("matrix\n1 2\n1 2 3\n")
    with pytest.raises(ParseError, match="expected matrix"):
        parse_matrix("hrep\n0 1\n")


def test_graphs_are_numbered_from_one() -> None:
    d = parse_graph("digraph\nnodes 3\narc 1 2\narc 2 3\n")
    assert d == path_digraph(3)
    assert emit_graph(d) == "digraph\nnodes 3\narc 1 2\narc 2 3\n"
    g = parse_graph("graph\nnodes 2\nedge 2 1\n")
    assert g == Graph(2, ((0, 1),))
    assert emit_graph(g) == "graph\nnodes 2\nedge 1 2\n"
    assert parse_graph(emit_graph(complete_bipartite(2, 3))) == complete_bipartite(2, 3)
    assert parse_graph("digraph\nnodes 4\n") == Digraph(4)


@pytest.mark.parametrize(
    ("text", "message"),
    [
        ("graph\n3\n", "line 2: Expected 'nodes k'"),
        ("graph\nnodes 2\narc 1 2\n", "line 3: Expected 'edge u v'"),
        ("digraph\nnodes 2\narc 1 3\n", r"line 3: Nodes must lie in 1\.\.2"),
        ("graph\nnodes 2\nedge 1 1\n", "Loop at node 0"),
    ],
)
def test_parse_graph_errors(text: str, message: str) -> None:
    with pytest.raises(ParseError, match=message):
        parse_graph(text)


def test_certificates() -> None:
    infeasible = Certificate(CertificateKind.INFEASIBILITY, (Fraction(1), HALF))
    assert emit_certificate(infeasible) == "INFEASIBLE\n1\n1/2\n"
    assert parse_certificate(emit_certificate(infeasible)) == infeasible
    valid = Certificate(CertificateKind.VALIDITY, (Fraction(0), Fraction(2)))
    assert parse_certificate(emit_certificate(valid)) == valid
    separated = Certificate(CertificateKind.SEPARATION, separating_normal=(Fraction(-1), HALF))
    assert emit_certificate(separated) == "SEPARATED\n-1\n1/2\n"
    assert parse_certificate(emit_certificate(separated)) == separated
    with pytest.raises(ParseError, match="Unknown header 'FEASIBLE'"):
        parse_certificate("FEASIBLE\n1\n")
    with pytest.raises(ParseError, match="line 2: Expected 1 entries, got 2"):
        parse_certificate("INFEASIBLE\n1 2\n")
