"""Access to the packaged example bundles.

Every fixture is a canonical bundle file under ``homalg/fixtures/``; the
files are committed artifacts regenerated by ``scripts/make_fixtures.py``.
"""
from __future__ import annotations

from importlib import resources

from .bundle import Bundle, BundleError, loads_bundle


def _root():
    return resources.files(__package__) / "fixtures"


def fixture_names() -> tuple[str, ...]:
    return tuple(sorted(
        entry.name[:-len(".json")]
        for entry in _root().iterdir()
        if entry.name.endswith(".json")
    ))


def _node(name: str):
    node = _root() / f"{name}.json"
    if not node.is_file():
        raise BundleError(
            f"unknown fixture {name!r}; available: {list(fixture_names())}"
        )
    return node


def fixture_text(name: str) -> str:
    return _node(name).read_text(encoding="utf-8")


def fixture_path(name: str) -> str:
    """Filesystem path of a fixture (the package is installed from plain
    directories, so resources are real files)."""
    return str(_node(name))


def load_fixture(name: str) -> Bundle:
    return loads_bundle(fixture_text(name))
