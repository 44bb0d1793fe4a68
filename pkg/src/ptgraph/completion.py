"""Enumerate directed acyclic completions of a partially directed graph.

Each undirected edge stands for an unknown mechanism and expands to one of
three readings: causation one way, causation the other way, or an
unmeasured common cause. The common-cause reading introduces an explicit
fresh latent node flagged ``synthetic`` — it participates fully in
separation but is excluded from candidate adjustment sets, since an
analyst cannot condition on a mechanism nobody has named.
"""

from __future__ import annotations

import enum
import itertools
import os
from typing import Iterator, Optional

from .errors import TooManyUndirectedEdges
from .graph import CausalGraph, Edge, Node

DEFAULT_CAP = 12


class Choice(enum.Enum):
    """Reading assigned to one undirected edge {a, b} (a < b)."""

    FORWARD = "forward"        # a -> b
    BACKWARD = "backward"      # b -> a
    LATENT = "latent"          # fresh L with L -> a, L -> b

    def __lt__(self, other):
        order = (Choice.FORWARD, Choice.BACKWARD, Choice.LATENT)
        return order.index(self) < order.index(other)


def completion_cap(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get("PTGRAPH_COMPLETION_CAP")
    return int(env) if env else DEFAULT_CAP


def _fresh_latent_name(g: CausalGraph, a: str, b: str) -> str:
    name = f"L_{a}_{b}"
    while name in g:
        name += "_"
    return name


def enumerate_completions(
    g: CausalGraph, cap: Optional[int] = None
) -> Iterator[tuple[tuple[Choice, ...], CausalGraph]]:
    """Yield every valid directed completion, in lexicographic choice order.

    Expansions that introduce a directed cycle, break tiers, or otherwise
    fail validation are skipped; for a fully directed input the graph
    itself is the single completion.
    """
    undirected = g.undirected_edges
    k = len(undirected)
    limit = completion_cap(cap)
    if k > limit:
        raise TooManyUndirectedEdges(k, limit)
    for choices in itertools.product(
        (Choice.FORWARD, Choice.BACKWARD, Choice.LATENT), repeat=k
    ):
        completed = _apply(g, undirected, choices)
        if not completed.validate():
            yield choices, completed


def _apply(g: CausalGraph, undirected, choices) -> CausalGraph:
    edges = [e for e in g.edges if e.directed]
    nodes = list(g.nodes)
    for e, choice in zip(undirected, choices):
        if choice is Choice.FORWARD:
            edges.append(Edge(e.tail, e.head, True))
        elif choice is Choice.BACKWARD:
            edges.append(Edge(e.head, e.tail, True))
        else:
            latent = _fresh_latent_name(g, e.tail, e.head)
            nodes.append(Node(latent, latent=True, synthetic=True))
            edges.append(Edge(latent, e.tail, True))
            edges.append(Edge(latent, e.head, True))
    return CausalGraph(nodes, edges, g.tiers, g.metadata)


def count_completions(g: CausalGraph, cap: Optional[int] = None) -> int:
    return sum(1 for _ in enumerate_completions(g, cap))
