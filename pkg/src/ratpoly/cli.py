"""The ``ratpoly`` command line.

stdout carries the results in the formats of :py:mod:`ratpoly.io`; stderr
carries diagnostics. Exit codes: 0 when a result (including a negative
verdict) was computed, 2 for usage and parse errors, 3 for violated
preconditions and 4 when a resource limit was hit.
"""
from __future__ import annotations

import argparse
import sys
from argparse import ArgumentParser
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path

from loguru import logger
from rich.console import Console
from rich.markup import escape
from rich_argparse import RichHelpFormatter

import ratpoly
from ratpoly import convert, integrality, io, projection, structure, unimodularity
from ratpoly.config import Limits
from ratpoly.core import farkas
from ratpoly.core.model import Certificate, CertificateKind, HRep, Infeasible, Valid, VRep
from ratpoly.errors import (
    ContractViolationError,
    DimensionError,
    ParseError,
    PreconditionError,
    ResourceLimitError,
    SingularMatrixError,
)
from ratpoly.linalg import RatMatrix
from ratpoly.utils import Vector, format_rational, format_vector, parse_vector

__all__ = ["get_parser", "run", "main"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PRECONDITION = 3
EXIT_RESOURCE = 4

_LOG_LEVELS = ("WARNING", "DEBUG", "TRACE")

_stderr = Console(stderr=True)


class _UsageError(Exception):
    pass


def _write(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _read(path: Path) -> str:
    try:
        return path.read_text()
    except OSError as e:
        raise _UsageError(f"Can't read {path}: {e.strerror}") from e


def _read_poly(path: Path) -> HRep | VRep:
    return io.parse_poly(_read(path))


def _read_hrep(path: Path, limits: Limits) -> HRep:
    poly = _read_poly(path)
    return poly if isinstance(poly, HRep) else convert.v_to_h(poly, limits)


def _read_digraph(path: Path) -> unimodularity.Digraph:
    graph = io.parse_graph(_read(path))
    if not isinstance(graph, unimodularity.Digraph):
        raise _UsageError(f"{path} holds an undirected graph, expected a digraph")
    return graph


def _read_graph(path: Path) -> unimodularity.Graph:
    graph = io.parse_graph(_read(path))
    if not isinstance(graph, unimodularity.Graph):
        raise _UsageError(f"{path} holds a digraph, expected an undirected graph")
    return graph


def _vector(text: str, what: str) -> Vector:
    try:
        return parse_vector(text)
    except ValueError as e:
        raise _UsageError(f"Invalid {what}: {e}") from e


def _indices(text: str, what: str) -> list[int]:
    """Parse a comma separated list of 1-based indices into 0-based ones."""
    try:
        values = [int(token) for token in text.replace(",", " ").split()]
    except ValueError as e:
        raise _UsageError(f"Invalid {what}: '{text}'") from e
    if any(v < 1 for v in values):
        raise _UsageError(f"{what.capitalize()} are numbered from 1")
    return [v - 1 for v in values]


def _row(text: str, n: int) -> tuple[Vector, Fraction]:
    values = _vector(text, "row")
    if len(values) != n + 1:
        raise _UsageError(f"A row needs {n + 1} entries (a_1 ... a_n b)")
    return values[:-1], values[-1]


def _one_based(indices: Sequence[int]) -> str:
    return " ".join(str(i + 1) for i in indices)


def _emit_vectors(vectors: Sequence[Vector], n: int) -> str:
    return io.emit_matrix(RatMatrix(vectors, ncols=n))


# Polyhedra


def cmd_convert(file: Path, to: str, limits: Limits) -> int:
    poly = _read_poly(file)
    if to == "h":
        result = poly.canonical() if isinstance(poly, HRep) else convert.v_to_h(poly, limits)
    else:
        result = poly.canonical() if isinstance(poly, VRep) else convert.h_to_v(poly, limits)
    _write(io.emit_poly(result))
    return EXIT_OK


def cmd_project(
    file: Path, eliminate: str | None, matrix: Path | None, limits: Limits
) -> int:
    h = _read_hrep(file, limits)
    if matrix is not None:
        transform = io.parse_matrix(_read(matrix))
        result = projection.project_general(h, transform, limits=limits).hrep
    else:
        coords = _indices(eliminate or "", "coordinates")
        result = projection.eliminate_coords(h, coords, limits=limits)
    _write(io.emit_poly(result))
    return EXIT_OK


def cmd_feasible(file: Path, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    result = farkas.feasible(h, limits)
    if isinstance(result, Infeasible):
        _write(io.emit_certificate(result.certificate))
    else:
        _write(f"FEASIBLE\n{format_vector(result.point)}")
    return EXIT_OK


def cmd_valid(file: Path, row: str, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    a, beta = _row(row, h.n)
    result = farkas.is_valid(h, a, beta, limits)
    if isinstance(result, Valid):
        _write(io.emit_certificate(result.certificate))
    else:
        _write(f"INVALID\n{format_vector(result.witness)}")
    return EXIT_OK


def cmd_optimize(file: Path, objective: str, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    result = structure.optimize(h, _vector(objective, "objective"), limits)
    if result.status is structure.OptStatus.INFEASIBLE:
        _write(io.emit_certificate(result.infeasibility_cert))
    elif result.status is structure.OptStatus.UNBOUNDED:
        _write(f"UNBOUNDED\nray {format_vector(result.improving_ray)}")
    else:
        _write(
            f"OPTIMAL\nvalue {format_rational(result.value)}\n"
            f"point {format_vector(result.argmax_vertex)}"
        )
    return EXIT_OK


def cmd_vertices(file: Path, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    _write(io.emit_poly(VRep(h.n, structure.vertices(h, limits))))
    return EXIT_OK


def cmd_facets(file: Path, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    rows = h.expanded()
    for index, _ in structure.facets(h, limits):
        a, b = rows[index]
        _write(f"{index + 1}: {format_vector((*a, b))}")
    return EXIT_OK


def cmd_irredundant(file: Path, limits: Limits) -> int:
    poly = _read_poly(file)
    if isinstance(poly, HRep):
        verdict = structure.certify_irredundant_h(poly, limits)
    else:
        verdict = structure.certify_irredundant_v(poly, limits)
    _write("IRREDUNDANT" if verdict else f"REDUNDANT\n{verdict.reason}")
    return EXIT_OK


def cmd_dim(file: Path, limits: Limits) -> int:
    _write(str(structure.dimension(_read_hrep(file, limits), limits)))
    return EXIT_OK


def cmd_lineality(file: Path, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    _write(_emit_vectors(structure.lineality_space(h, limits), h.n))
    return EXIT_OK


def cmd_recession(file: Path, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    _write(io.emit_poly(structure.char_cone(h, limits).canonical()))
    return EXIT_OK


# Integrality


def cmd_integer_hull(file: Path, limits: Limits) -> int:
    _write(io.emit_poly(integrality.integer_hull(_read_hrep(file, limits), limits)))
    return EXIT_OK


def cmd_integral(file: Path, limits: Limits) -> int:
    verdict = integrality.is_integral(_read_hrep(file, limits), limits)
    _write("INTEGRAL" if verdict else f"NOT_INTEGRAL\n{format_vector(verdict.witness)}")
    return EXIT_OK


def cmd_hilbert(file: Path, limits: Limits) -> int:
    generators = io.parse_matrix(_read(file))
    basis = integrality.hilbert_basis(generators.rows, generators.ncols, limits)
    _write(_emit_vectors(basis.basis, generators.ncols))
    return EXIT_OK


def cmd_lattice_decompose(file: Path, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    decomposition = integrality.lattice_decomposition(h, limits)
    lines = [f"X {len(decomposition.X)}", *map(format_vector, decomposition.X)]
    lines += [f"Y {len(decomposition.Y)}", *map(format_vector, decomposition.Y)]
    _write("\n".join(lines))
    return EXIT_OK


def cmd_tdi(file: Path, *, definitional: bool, cbox: int | None, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    if definitional:
        verdict = integrality.is_tdi_definitional(h, cbox, limits)
    else:
        verdict = integrality.is_tdi(h, limits)
    if verdict:
        box = limits.c_box if cbox is None else cbox
        _write("TDI" if verdict.complete else f"TDI up to c_box {box}")
    else:
        _write(
            f"NOT_TDI\nface {_one_based(sorted(verdict.face))}\n"
            f"witness {format_vector(verdict.witness)}"
        )
    return EXIT_OK


def cmd_make_tdi(file: Path, limits: Limits) -> int:
    _write(io.emit_poly(integrality.make_tdi(_read_hrep(file, limits), limits)))
    return EXIT_OK


def cmd_duality(file: Path, objective: str, limits: Limits) -> int:
    h = _read_hrep(file, limits)
    report = integrality.verify_strong_duality(h, _vector(objective, "objective"), limits)
    dual = "none" if report.dual_value is None else format_rational(report.dual_value)
    lines = [
        f"primal {format_rational(report.primal_value)}",
        f"point {format_vector(report.primal_point)}",
        f"dual {dual}",
    ]
    if report.dual_multipliers is not None:
        lines.append(f"multipliers {format_vector(report.dual_multipliers)}")
    lines.append("EQUAL" if report.equal else "NOT_EQUAL")
    _write("\n".join(lines))
    return EXIT_OK


# Unimodularity


def cmd_tu(file: Path, method: str, limits: Limits) -> int:
    matrix = io.parse_matrix(_read(file))
    if method == "det":
        verdict = unimodularity.is_tu_determinant(matrix, limits)
    else:
        verdict = unimodularity.is_tu_ghouila_houri(matrix, limits)
    if verdict:
        _write("TU")
    elif verdict.violating_submatrix is not None:
        sub = verdict.violating_submatrix
        _write(
            f"NOT_TU\nrows {_one_based(sub.rows)}\ncolumns {_one_based(sub.columns)}\n"
            f"det {format_rational(sub.determinant)}"
        )
    else:
        _write(f"NOT_TU\nunsignable {verdict.axis} {_one_based(verdict.unsignable)}")
    return EXIT_OK


def cmd_incidence(digraph: Path | None, graph: Path | None, limits: Limits) -> int:  # noqa: ARG001
    if digraph is not None:
        matrix = unimodularity.node_arc_incidence(_read_digraph(digraph))
    else:
        matrix = unimodularity.node_edge_incidence(_read_graph(graph))
    _write(io.emit_matrix(matrix))
    return EXIT_OK


def cmd_network_matrix(file: Path, tree: str, limits: Limits) -> int:  # noqa: ARG001
    d = _read_digraph(file)
    _write(io.emit_matrix(unimodularity.network_matrix(d, _indices(tree, "tree arcs"))))
    return EXIT_OK


def cmd_matching_polytope(file: Path, limits: Limits) -> int:  # noqa: ARG001
    _write(io.emit_poly(unimodularity.matching_polytope_bipartite(_read_graph(file))))
    return EXIT_OK


def cmd_circulation(file: Path, lower: str, upper: str, limits: Limits) -> int:  # noqa: ARG001
    d = _read_digraph(file)
    h = unimodularity.circulation_polytope(
        d, _vector(lower, "lower bounds"), _vector(upper, "upper bounds")
    )
    _write(io.emit_poly(h))
    return EXIT_OK


# Certificates


def _check(h: HRep, certificate: Certificate, row: str | None) -> bool:
    if certificate.kind is CertificateKind.INFEASIBILITY:
        return farkas.verify_infeasibility(h, certificate)
    if certificate.kind is CertificateKind.VALIDITY:
        if row is None:
            raise _UsageError("Checking a validity certificate needs --row")
        a, beta = _row(row, h.n)
        return farkas.verify_validity(h, a, beta, certificate)
    raise _UsageError("Separation certificates are checked against a vrep file")


def cmd_check_cert(file: Path, cert: Path, row: str | None, limits: Limits) -> int:  # noqa: ARG001
    poly = _read_poly(file)
    certificate = io.parse_certificate(_read(cert))
    if isinstance(poly, VRep):
        if certificate.kind is not CertificateKind.SEPARATION or row is None:
            raise _UsageError("A vrep file is checked with a SEPARATED certificate and --row x")
        point = _vector(row, "point")
        lifted = [*((*p, 1) for p in poly.points), *((*r, 0) for r in poly.rays)]
        ok = farkas.verify_separation(lifted, (*point, 1), certificate)
    else:
        ok = _check(poly, certificate, row)
    if ok:
        logger.success("Certificate verified")
    _write("VERIFIED" if ok else "REJECTED")
    return EXIT_OK


def _add_file(parser: ArgumentParser, help_: str = "Polyhedron file (hrep or vrep)") -> None:
    parser.add_argument("file", type=Path, help=help_)


def _add_command(
    subparsers: argparse._SubParsersAction,
    name: str,
    command: Callable[..., int],
    help_: str,
    description: str | None = None,
) -> ArgumentParser:
    parser = subparsers.add_parser(
        name,
        description=description or help_,
        help=help_,
        formatter_class=RichHelpFormatter,
    )
    parser.set_defaults(command=command)
    return parser


def get_parser() -> ArgumentParser:
    parser = ArgumentParser(
        prog="ratpoly",
        description=(
            "Exact rational polyhedral computations. Every verdict comes with a "
            "certificate that can be re-checked with [blue]check-cert[/]."
        ),
        formatter_class=RichHelpFormatter,
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {ratpoly.__version__}"
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log progress to stderr (-v for debug, -vv for trace messages)",
    )
    defaults = Limits()
    parser.add_argument(
        "--max-rows",
        type=int,
        default=defaults.max_rows,
        help=f"Cap on intermediate elimination rows (Defaults to {defaults.max_rows})",
    )
    parser.add_argument(
        "--max-lattice",
        type=int,
        default=defaults.max_lattice,
        help=f"Cap on enumerated lattice points (Defaults to {defaults.max_lattice})",
    )
    parser.add_argument(
        "--max-subsets",
        type=int,
        default=defaults.max_subsets,
        help=f"Cap on enumerated row subsets (Defaults to {defaults.max_subsets})",
    )
    subparsers = parser.add_subparsers(required=True, title="commands")

    # polyhedra
    p = _add_command(subparsers, "convert", cmd_convert, "Convert between hrep and vrep")
    _add_file(p)
    p.add_argument("--to", choices=("h", "v"), required=True, help="Target description")

    p = _add_command(
        subparsers,
        "project",
        cmd_project,
        "Project a polyhedron",
        "Eliminate coordinates (numbered from 1) or map the polyhedron through the "
        "matrix of a matrix file.",
    )
    _add_file(p)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--eliminate", help="Comma separated coordinates, e.g. 2,3")
    group.add_argument("--matrix", type=Path, help="Matrix file of the linear map")

    p = _add_command(subparsers, "feasible", cmd_feasible, "Decide feasibility")
    _add_file(p)

    p = _add_command(subparsers, "valid", cmd_valid, "Decide validity of an inequality")
    _add_file(p)
    p.add_argument("--row", required=True, help='The inequality "a_1 ... a_n b"')

    p = _add_command(subparsers, "optimize", cmd_optimize, "Maximize a linear objective")
    _add_file(p)
    p.add_argument("--objective", required=True, help='The objective "c_1 ... c_n"')

    for name, command, help_ in (
        ("vertices", cmd_vertices, "List the vertices of a pointed polyhedron"),
        ("facets", cmd_facets, "List the rows defining facets"),
        ("irredundant", cmd_irredundant, "Certify irredundancy of a description"),
        ("dim", cmd_dim, "Print the dimension"),
        ("lineality", cmd_lineality, "Print a basis of the lineality space"),
        ("recession", cmd_recession, "Print the characteristic cone"),
        ("integer-hull", cmd_integer_hull, "Integer hull of a bounded polyhedron"),
        ("integral", cmd_integral, "Decide integrality of a pointed polyhedron"),
        ("lattice-decompose", cmd_lattice_decompose, "Decompose the lattice points"),
        ("make-tdi", cmd_make_tdi, "Build an equivalent integral TDI system"),
    ):
        _add_file(_add_command(subparsers, name, command, help_))

    p = _add_command(
        subparsers, "hilbert", cmd_hilbert, "Hilbert basis of the cone spanned by matrix rows"
    )
    _add_file(p, "Matrix file whose rows generate a pointed cone")

    p = _add_command(subparsers, "tdi", cmd_tdi, "Decide total dual integrality")
    _add_file(p)
    p.add_argument(
        "--definitional",
        action="store_true",
        help="Search objectives for a missing integral dual solution instead",
    )
    p.add_argument(
        "--cbox",
        type=int,
        default=None,
        help=f"Objective box for --definitional (Defaults to {defaults.c_box})",
    )

    p = _add_command(subparsers, "duality", cmd_duality, "Integral strong duality")
    _add_file(p)
    p.add_argument("--objective", required=True, help='Integral objective "c_1 ... c_n"')

    # unimodularity
    p = _add_command(subparsers, "tu", cmd_tu, "Decide total unimodularity")
    _add_file(p, "Matrix file")
    p.add_argument(
        "--method",
        choices=("det", "gh"),
        default="det",
        help="Square submatrices (det) or row signings (gh) (Defaults to det)",
    )

    p = _add_command(subparsers, "incidence", cmd_incidence, "Print an incidence matrix")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--digraph", type=Path, help="Digraph file")
    group.add_argument("--graph", type=Path, help="Graph file")

    p = _add_command(
        subparsers, "network-matrix", cmd_network_matrix, "Print a network matrix"
    )
    _add_file(p, "Digraph file")
    p.add_argument("--tree", required=True, help="Comma separated tree arcs, from 1")

    p = _add_command(
        subparsers, "matching-polytope", cmd_matching_polytope, "Bipartite matching system"
    )
    _add_file(p, "Graph file")

    p = _add_command(subparsers, "circulation", cmd_circulation, "Circulation polytope")
    _add_file(p, "Digraph file")
    p.add_argument("--lower", required=True, help="Integral lower bounds per arc")
    p.add_argument("--upper", required=True, help="Integral upper bounds per arc")

    # certificates
    p = _add_command(
        subparsers,
        "check-cert",
        cmd_check_cert,
        "Re-check a certificate",
        "Re-check an INFEASIBLE or VALID certificate against an hrep file, or a "
        "SEPARATED certificate against a vrep file, with exact arithmetic only.",
    )
    _add_file(p)
    p.add_argument("cert", type=Path, help="Certificate file")
    p.add_argument("--row", help='The inequality "a_1 ... a_n b" (or the point for vrep)')

    return parser


def _configure_logging(verbosity: int) -> None:
    logger.enable("ratpoly")
    logger.remove()
    level = _LOG_LEVELS[min(verbosity, len(_LOG_LEVELS) - 1)]
    logger.add(sys.stderr, level=level)


def _error(message: str) -> None:
    _stderr.print(f"[red]error:[/] {escape(message)}")


def run(args: Sequence[str] | None = None) -> int:
    """Parse ``args``, run the command and return the exit code."""
    parser = get_parser()
    try:
        namespace = vars(parser.parse_args(args))
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    _configure_logging(namespace.pop("verbose"))
    command = namespace.pop("command")
    try:
        limits = Limits(
            max_rows=namespace.pop("max_rows"),
            max_lattice=namespace.pop("max_lattice"),
            max_subsets=namespace.pop("max_subsets"),
        )
    except ValueError as e:
        _error(str(e))
        return EXIT_USAGE
    logger.info("Running {}", command.__name__.removeprefix("cmd_"))
    try:
        return command(**namespace, limits=limits)
    except (ParseError, _UsageError) as e:
        _error(str(e))
        return EXIT_USAGE
    except (
        PreconditionError,
        DimensionError,
        SingularMatrixError,
        ContractViolationError,
    ) as e:
        _error(str(e))
        return EXIT_PRECONDITION
    except ResourceLimitError as e:
        _error(str(e))
        return EXIT_RESOURCE


def main(args: Sequence[str] | None = None) -> None:
    sys.exit(run(args))
