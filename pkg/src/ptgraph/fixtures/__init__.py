"""Bundled example graphs, shared by docs, tests, and the CLI."""

from importlib import resources

NAMES = ("fig1", "fig2", "fig3", "fig4", "medicaid")


def load(name: str) -> str:
    """DSL text of a bundled graph (one of NAMES)."""
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {NAMES}")
    return (resources.files(__package__) / f"{name}.dag").read_text(encoding="utf-8")


def path(name: str):
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}; choose from {NAMES}")
    return resources.files(__package__) / f"{name}.dag"
