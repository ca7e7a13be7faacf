import os
import shutil
import subprocess
import sys
from argparse import REMAINDER, ArgumentParser, _SubParsersAction
from collections.abc import Callable, Sequence
from contextlib import suppress
from pathlib import Path

import pytest
from rich import print
from rich_argparse import RichHelpFormatter

PROJECT_ROOT: Path = Path(__file__).resolve().parent

SOURCE_DIR: Path = PROJECT_ROOT.joinpath("docs", "source")
BUILD_RELATIVE_PATH: Path = Path("./docs/build/")
BUILD_DIR: Path = PROJECT_ROOT.joinpath(BUILD_RELATIVE_PATH)

AVAILABLE_BUILDERS: tuple[str, ...] = ("html", "dirhtml", "singlehtml", "latex", "man", "text")
BUILD_HELP: str = (
    "Builder to pass to `sphinx-build` (Defaults to html). The available builders are: "
    f"{', '.join(f'[green]{b}[/]' for b in AVAILABLE_BUILDERS)}."
)


def clean_docs() -> int:
    print("Removing", BUILD_DIR)
    shutil.rmtree(BUILD_DIR, ignore_errors=True)
    return 0


def build_docs(builder: str) -> int:
    with suppress(KeyboardInterrupt):
        res = subprocess.run(["sphinx-build", SOURCE_DIR, BUILD_DIR / builder, "-b", builder])
        return res.returncode
    return 1


def serve_docs(builder: str, *, open_browser: bool) -> int:
    cmd = ["sphinx-autobuild", SOURCE_DIR, BUILD_DIR / builder, "--watch", "src", "-b", builder]
    if open_browser:
        cmd.append("--open-browser")
    with suppress(KeyboardInterrupt):
        return subprocess.run(cmd).returncode
    return 1


def run_tests(pytest_args: list[str]) -> int:
    return pytest.main(pytest_args)


def lint(*, fix: bool) -> int:
    check = ["ruff", "check", "src", "tests", "manage.py"]
    if fix:
        check.append("--fix")
    return subprocess.run(check).returncode


def write_corpus(directory: Path) -> int:
    """Write the round-trip corpus as ``hrep``/``vrep`` files for use with the CLI."""
    from ratpoly.corpus import round_trip_corpus
    from ratpoly.io import emit_poly

    directory.mkdir(parents=True, exist_ok=True)
    for name, poly in round_trip_corpus().items():
        path = directory / f"{name}.txt"
        path.write_text(emit_poly(poly))
        print(f"Wrote [blue]{path}[/]")
    return 0


def setup(*, dry_run: bool) -> int:
    if dry_run:
        print("Steps to setup the project:")
        print("  1. Install `pre-commit` hooks: `pre-commit install`")
        return 0
    print("Installing `pre-commit` hooks", end="\n\n")
    res = subprocess.run(["pre-commit", "install"])
    if res.returncode != 0:
        print("[red]Couldn't install `pre-commit` hooks. Aborting setup.[/]", file=sys.stderr)
        return res.returncode
    print("[green]Done![/]")
    return 0


def _command(
    subparsers: _SubParsersAction,
    name: str,
    command: Callable[..., int] | None,
    help_: str,
    description: str,
) -> ArgumentParser:
    parser = subparsers.add_parser(
        name, description=description, help=help_, formatter_class=RichHelpFormatter
    )
    if command is not None:
        parser.set_defaults(command=command)
    return parser


def _add_builder(parser: ArgumentParser) -> None:
    parser.add_argument(
        "-b",
        "--builder",
        default="html",
        choices=AVAILABLE_BUILDERS,
        metavar="BUILDER",
        help=BUILD_HELP,
    )


def get_parser() -> ArgumentParser:
    RichHelpFormatter.highlights.append(r"\b(?P<metavar>BUILDER|DIRECTORY)\b")
    parser = ArgumentParser(
        description="Utility scripts and commands to manage the project's development.",
        formatter_class=RichHelpFormatter,
    )
    commands = parser.add_subparsers(required=True, title="commands")

    docs = _command(
        commands, "docs", None, "Documentation management", "Build or serve the documentation."
    ).add_subparsers(required=True, title="commands")
    _command(docs, "clean", clean_docs, "Remove built documentation", f"Delete {BUILD_DIR}.")
    _add_builder(
        _command(
            docs,
            "build",
            build_docs,
            "Build documentation",
            "Build the documentation using `sphinx-build` into "
            f"{BUILD_RELATIVE_PATH.joinpath('BUILDER')}.",
        )
    )
    serve = _command(
        docs,
        "serve",
        serve_docs,
        "Serve documentation with live reloading",
        "Serve the documentation with `sphinx-autobuild`; changes under src/ trigger a rebuild.",
    )
    _add_builder(serve)
    serve.add_argument("-o", "--open-browser", action="store_true", help="Open the browser")

    test = _command(
        commands,
        "test",
        run_tests,
        "Run tests",
        "Run the test suite with `pytest`. Extra arguments are passed on to pytest.",
    )
    test.add_argument("pytest_args", nargs=REMAINDER, help="Arguments for pytest")

    lint_parser = _command(commands, "lint", lint, "Lint the sources", "Check with `ruff`.")
    lint_parser.add_argument("--fix", action="store_true", help="Apply safe fixes")

    corpus = _command(
        commands,
        "corpus",
        write_corpus,
        "Write sample polyhedron files",
        "Write the round-trip corpus (cubes, simplices, cross-polytopes, cones and an "
        "empty system) as hrep/vrep files into DIRECTORY.",
    )
    corpus.add_argument(
        "directory",
        type=Path,
        nargs="?",
        default=Path("corpus"),
        metavar="DIRECTORY",
        help="Output directory (Defaults to ./corpus)",
    )

    setup_parser = _command(
        commands,
        "setup",
        setup,
        "Initial setup of the project when start developing",
        "Install the `pre-commit` hooks. Run this first after cloning the repository.",
    )
    setup_parser.add_argument(
        "-d",
        "--dry-run",
        action="store_true",
        help="Print what running the setup command would do without doing it",
    )

    return parser


def main(args: Sequence[str] | None = None) -> None:
    parser = get_parser()
    args = vars(parser.parse_args(args))
    os.chdir(PROJECT_ROOT)
    command = args.pop("command")
    sys.exit(command(**args))


if __name__ == "__main__":
    main()
