"""Shared request handling for the CLI and the HTTP service.

Both front ends funnel through the payload builders here so that the JSON
they emit is byte-identical for the same input.
"""

from __future__ import annotations

import dataclasses
import json
from typing import Optional

from . import adjustment, completion, dsl, sem, swig, verdict
from .errors import (
    ParseError,
    PtGraphError,
    TooManyUndirectedEdges,
    ValidationError,
)
from .graph import CausalGraph


def to_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def error_payload(exc: Exception) -> dict:
    entry: dict = {"type": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, ParseError):
        entry["span"] = [exc.span.start, exc.span.end]
    if isinstance(exc, ValidationError):
        entry["violations"] = [
            {"code": v.code, "message": v.message} for v in exc.report
        ]
    return {"schema": "ptgraph/v1", "error": entry}


def analyze_graph(
    g: CausalGraph,
    completion_cap: Optional[int] = None,
    c1_conditioning: str = "y0",
) -> dict:
    return verdict.analyze(g, completion_cap, c1_conditioning).to_dict()


def minsets_payload(
    g: CausalGraph, outcome: str, completion_cap: Optional[int] = None
) -> dict:
    """Per-completion minimally sufficient families for one outcome, plus
    the sets shared by every completion and the pool of all sets seen."""
    period = {"Y0": 0, "Y1": 1}.get(outcome.upper())
    if period is None:
        raise PtGraphError(f"outcome must be Y0 or Y1, not {outcome!r}")
    per = []
    families = []
    for choices, completed in completion.enumerate_completions(g, completion_cap):
        s = swig.build_swig(completed)
        family = adjustment.minimal_sufficient_sets(s, period)
        families.append(family.as_sets())
        per.append(
            {
                "completion": [c.value for c in choices],
                "sets": [list(members) for members in family.sets],
            }
        )
    shared = set.intersection(*(set(f) for f in families)) if families else set()
    seen = set().union(*families) if families else set()
    as_lists = lambda col: sorted(sorted(m) for m in col)  # noqa: E731
    return {
        "schema": "ptgraph/v1",
        "outcome": f"Y{period}",
        "per_completion": per,
        "in_every_completion": as_lists(shared),
        "in_any_completion": as_lists(seen),
    }


def simulate_payload(
    g: CausalGraph,
    seeds: int,
    coeff_range: tuple[float, float] = (0.2, 1.5),
    seed_start: int = 0,
) -> dict:
    """Gap report over ``seeds`` seeded random coefficient draws.

    A partially directed input is resolved to its first completion; the
    choice is recorded in the payload.
    """
    note = None
    chosen = None
    if g.undirected_edges:
        chosen, g = next(completion.enumerate_completions(g))
        note = "input had undirected edges; simulated the first completion"
    records = sem.gap_report(g, range(seed_start, seed_start + seeds), coeff_range)
    return {
        "schema": "ptgraph/v1",
        "seeds": seeds,
        "coeff_range": list(coeff_range),
        "completion": [c.value for c in chosen] if chosen else None,
        "note": note,
        "records": records,
    }


def swig_text(g: CausalGraph, intervention: int = 0) -> str:
    """Serialized split-treatment form of a fully directed graph."""
    s = swig.build_swig(g, intervention)
    metadata = {
        k: v for k, v in s.graph.metadata.items() if k != "split"
    }
    nodes = []
    for node in s.base.nodes:
        if node.name in s.relabeled and node.display is None:
            node = dataclasses.replace(node, display=f"{node.name}^{intervention}")
        nodes.append(node)
    annotated = CausalGraph(nodes, s.base.edges, s.base.tiers, metadata)
    return dsl.serialize(annotated)


def exit_code(exc: Exception) -> int:
    """2 for input the caller can fix, 1 for everything else."""
    if isinstance(exc, (ParseError, ValidationError, TooManyUndirectedEdges)):
        return 2
    return 1
