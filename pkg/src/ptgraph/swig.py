"""Split-treatment graph transform (intervention on the treatment node).

Splitting replaces the treatment with a random half (keeping all incoming
edges) and a fixed intervened half (taking all outgoing edges). The fixed
half is a degenerate constant, so for separation queries it carries no
incident edges at all: the working graph is simply the input with the
treatment's out-edges deleted. Descendants of the fixed half are recorded
as relabeled potential-outcome nodes.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import NoTreatment, PtGraphError, UndirectedEdgesPresent
from .graph import CausalGraph


@dataclass(frozen=True)
class Swig:
    base: CausalGraph
    graph: CausalGraph  # treatment out-edges removed; used for separation
    treatment: str
    intervention: int
    relabeled: frozenset  # nodes that became potential outcomes under the split

    def outcome_node(self, period: int) -> str:
        name = self.base.outcome(period)
        if name is None:
            raise PtGraphError(f"graph has no period-{period} outcome")
        return name

    def display_outcome(self, period: int) -> str:
        """Rendering label: relabeled nodes carry the intervention superscript."""
        name = self.outcome_node(period)
        if name in self.relabeled:
            return f"{name}^{self.intervention}"
        return name


def build_swig(g: CausalGraph, intervention: int = 0) -> Swig:
    """Split the treatment node of a fully directed graph.

    The input must have no undirected edges (run completion first) and must
    carry a treatment role. Building a split graph from an already-split
    graph is rejected.
    """
    if g.metadata.get("split") == "1":
        raise PtGraphError("graph is already split; refusing to split again")
    if g.undirected_edges:
        raise UndirectedEdgesPresent(g.undirected_edges)
    treatment = g.treatment()
    if treatment is None:
        raise NoTreatment()
    out_edges = [e for e in g.directed_edges if e.tail == treatment]
    relabeled = frozenset(g.descendants(treatment) - {treatment})
    metadata = dict(g.metadata)
    metadata["split"] = "1"
    metadata["swig"] = "1"
    metadata["intervention"] = str(intervention)
    mutilated = CausalGraph(g.nodes, [e for e in g.edges if e not in set(out_edges)],
                            g.tiers, metadata)
    return Swig(
        base=g,
        graph=mutilated,
        treatment=treatment,
        intervention=intervention,
        relabeled=relabeled,
    )
