"""Command-line interface.

All subcommands read a graph file in the DSL, report results on stdout,
and exit 0 on success, 2 on bad input (syntax, validation, completion cap),
and 1 on any other failure. With ``--json`` errors are also emitted as
JSON on stdout so scripted callers never have to parse prose.
"""

from __future__ import annotations

import sys
from typing import Optional

import click

from . import api, completion, dsl
from .errors import PtGraphError
from .verdict import NOT_REJECTED


def _read_graph(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return dsl.parse(fh.read())


def _run(ctx, as_json: bool, fn):
    """Execute ``fn`` and map failures onto the exit-code contract."""
    try:
        fn()
    except PtGraphError as exc:
        if as_json:
            click.echo(api.to_json(api.error_payload(exc)), nl=False)
        else:
            click.echo(f"error: {exc}", err=True)
        ctx.exit(api.exit_code(exc))
    except OSError as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(1)


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(","))
    except ValueError:
        raise click.BadParameter("expected LO,HI (two floats)")
    return lo, hi


@click.group()
@click.version_option(package_name="ptgraph")
def main() -> None:
    """Decide whether a causal diagram refutes parallel trends."""


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--json/--text", "as_json", default=True, show_default=True,
              help="Machine-readable verdict vs. a short human summary.")
@click.option("--cap", type=int, default=None,
              help="Override the undirected-edge completion cap.")
@click.pass_context
def analyze(ctx, graph_file: str, as_json: bool, cap: Optional[int]) -> None:
    """Evaluate the three graphical conditions and print the verdict."""

    def run():
        payload = api.analyze_graph(_read_graph(graph_file), completion_cap=cap)
        if as_json:
            click.echo(api.to_json(payload), nl=False)
        else:
            _print_verdict(payload)

    _run(ctx, as_json, run)


def _print_verdict(payload: dict) -> None:
    click.echo(f"verdict: {payload['overall']}")
    click.echo(f"completions analyzed: {payload['completions_analyzed']}")
    for cond in payload["conditions"]:
        click.echo(f"  {cond['condition']}: {cond['aggregate']}")
        for per in cond["per_completion"]:
            note = f" ({per['note']})" if per.get("note") else ""
            click.echo(
                f"    completion {per['completion'] or ['-']}: {per['status']}{note}"
            )
    if payload["overall"] == NOT_REJECTED:
        obligation = payload["obligation"]
        shown = "{" + ", ".join(obligation) + "}" if obligation else "none found"
        click.echo(f"obligation (common sufficient set): {shown}")
        click.echo(f"  {payload['obligation_note']}")
    if payload.get("caveat"):
        click.echo(f"caveat: {payload['caveat']}")


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--outcome", type=click.Choice(["Y0", "Y1"], case_sensitive=False),
              required=True)
@click.option("--cap", type=int, default=None)
@click.pass_context
def minsets(ctx, graph_file: str, outcome: str, cap: Optional[int]) -> None:
    """Minimally sufficient adjustment sets, per completion."""

    def run():
        payload = api.minsets_payload(_read_graph(graph_file), outcome, cap)
        click.echo(api.to_json(payload), nl=False)

    _run(ctx, True, run)


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--cap", type=int, default=None)
@click.pass_context
def completions(ctx, graph_file: str, cap: Optional[int]) -> None:
    """List every valid directed completion of a partially directed graph."""

    def run():
        g = _read_graph(graph_file)
        entries = [
            {"completion": [c.value for c in choices],
             "text": dsl.serialize(completed)}
            for choices, completed in completion.enumerate_completions(g, cap)
        ]
        undirected = [[e.tail, e.head] for e in g.undirected_edges]
        click.echo(api.to_json({
            "schema": "ptgraph/v1",
            "undirected_edges": undirected,
            "count": len(entries),
            "completions": entries,
        }), nl=False)

    _run(ctx, True, run)


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--seeds", type=int, default=200, show_default=True)
@click.option("--range", "coeff_range", default="0.2,1.5", show_default=True,
              help="Coefficient magnitude range LO,HI.")
@click.option("--seed-start", type=int, default=0, show_default=True)
@click.pass_context
def simulate(ctx, graph_file: str, seeds: int, coeff_range: str,
             seed_start: int) -> None:
    """Draw random linear models on the graph and report the trend gap."""
    lo_hi = _parse_range(coeff_range)

    def run():
        payload = api.simulate_payload(
            _read_graph(graph_file), seeds, lo_hi, seed_start
        )
        click.echo(api.to_json(payload), nl=False)

    _run(ctx, True, run)


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--intervention", type=int, default=0, show_default=True)
@click.pass_context
def swig(ctx, graph_file: str, intervention: int) -> None:
    """Print the split-treatment (intervened) form of a directed graph."""

    def run():
        click.echo(api.swig_text(_read_graph(graph_file), intervention), nl=False)

    _run(ctx, False, run)


@main.command()
@click.argument("graph_file", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def fmt(ctx, graph_file: str) -> None:
    """Reprint a graph file in canonical form."""

    def run():
        click.echo(dsl.serialize(_read_graph(graph_file)), nl=False)

    _run(ctx, False, run)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8787, show_default=True)
def serve(host: str, port: int) -> None:
    """Run the HTTP service."""
    import uvicorn

    from .service import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
