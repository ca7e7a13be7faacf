# Sphinx configuration of the ratpoly documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html
import inspect
from importlib import import_module
from pathlib import Path

from sphinx.application import Sphinx

import ratpoly
from ratpoly.config import Limits

REPO_DIR = Path(__file__).resolve().parent.parent.parent
CODE_URL = ratpoly.REPOSITORY.removesuffix("/")

project = "ratpoly"
author = "Shai Avraham"
copyright = f"2023, {author}"  # noqa: A001
release = ratpoly.__version__

extensions = [
    "sphinx.ext.duration",
    "sphinx.ext.intersphinx",
    "sphinx.ext.napoleon",
    "sphinx.ext.linkcode",
    "sphinx_copybutton",
    "autoapi.extension",
    "notfound.extension",
]
exclude_patterns = []

html_theme = "pydata_sphinx_theme"
html_theme_options = {
    "icon_links": [
        {
            "name": "GitHub",
            "url": ratpoly.REPOSITORY,
            "icon": "fa-brands fa-github",
            "type": "fontawesome",
        },
    ],
}
_DEFAULT_LIMITS = Limits()
html_context = {
    "default_limits": {
        name.removeprefix("_"): getattr(_DEFAULT_LIMITS, name) for name in Limits.__slots__
    },
}


def render_limits_table(app: Sphinx, _: str, source: list[str]) -> None:
    """Render pages as jinja templates so the limits table follows the code."""
    if app.builder.format != "html":
        return
    source[0] = app.builder.templates.render_string(source[0], app.config.html_context)


def setup(app: Sphinx) -> None:
    app.connect("source-read", render_limits_table)


def linkcode_resolve(domain: str, info: dict[str, str]) -> str | None:
    if domain != "py":
        return None
    try:
        obj = import_module(info["module"])
    except ModuleNotFoundError:
        return None
    for part in info["fullname"].split("."):
        obj = getattr(obj, part, None)
        if obj is None:
            return None
    try:
        path = Path(inspect.getsourcefile(obj)).resolve().relative_to(REPO_DIR).as_posix()
        lines, start = inspect.getsourcelines(obj)
    except Exception:
        return None
    return f"{CODE_URL}/blob/master/{path}#L{start}-L{start + len(lines) - 1}"


intersphinx_mapping = {"python": ("https://docs.python.org/3/", None)}

napoleon_google_docstring = False
napoleon_numpy_docstring = True
napoleon_attr_annotations = True

copybutton_exclude = ".linenos, .gp, .go"

autoapi_dirs = ["../../src"]
autoapi_options = ["members", "show-inheritance", "show-module-summary", "undoc-members"]
