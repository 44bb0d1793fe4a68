"""Immutable partially directed causal graphs with DID role annotations.

A graph holds observed and latent nodes, directed and undirected edges, and
designates one treatment node and one outcome node per period (0 = pre,
1 = post). All values are immutable after construction; operations are pure
functions, so instances can be shared freely across threads.

Validation never raises: :func:`validate` returns the full list of invariant
violations as data, and an empty report means the graph is valid.
"""

from __future__ import annotations

import enum
import heapq
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

from .errors import CyclicGraph, UnknownNode

_IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def is_identifier(name: str) -> bool:
    """True if ``name`` matches the node identifier grammar."""
    return bool(_IDENT_RE.match(name))


class Role(enum.Enum):
    TREATMENT = "treatment"
    OUTCOME0 = "outcome0"
    OUTCOME1 = "outcome1"
    COVARIATE = "covariate"


def outcome_role(period: int) -> Role:
    if period == 0:
        return Role.OUTCOME0
    if period == 1:
        return Role.OUTCOME1
    raise ValueError(f"outcome period must be 0 or 1, got {period}")


@dataclass(frozen=True)
class Node:
    """A graph node.

    ``display`` is an optional rendering alias (e.g. a superscripted label)
    that never participates in identification; ``name`` is the identifier.
    ``synthetic`` marks latent nodes invented while expanding undirected
    edges; analysts cannot name them, so they are excluded from candidate
    adjustment sets.
    """

    name: str
    latent: bool = False
    role: Role = Role.COVARIATE
    position: Optional[tuple[float, float]] = None
    display: Optional[str] = None
    synthetic: bool = False
    attrs: tuple[tuple[str, str], ...] = ()

    def replace(self, **kw) -> "Node":
        from dataclasses import replace

        return replace(self, **kw)


@dataclass(frozen=True, order=True)
class Edge:
    tail: str
    head: str
    directed: bool = True

    def __post_init__(self):
        if not self.directed and self.tail > self.head:
            # Canonical endpoint order for undirected edges.
            t, h = self.tail, self.head
            object.__setattr__(self, "tail", h)
            object.__setattr__(self, "head", t)

    @property
    def pair(self) -> frozenset:
        return frozenset((self.tail, self.head))


def directed(tail: str, head: str) -> Edge:
    return Edge(tail, head, directed=True)


def undirected(a: str, b: str) -> Edge:
    a, b = sorted((a, b))
    return Edge(a, b, directed=False)


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self):
        return f"{self.code}: {self.message}"


class CausalGraph:
    """Partially directed graph over named nodes.

    Construction is permissive (so that invalid graphs can be represented
    and reported on); call :meth:`validate` to obtain violations.
    """

    def __init__(
        self,
        nodes: Iterable[Node],
        edges: Iterable[Edge] = (),
        tiers: Optional[Mapping[str, int]] = None,
        metadata: Optional[Mapping[str, str]] = None,
    ):
        node_list = sorted(nodes, key=lambda n: n.name)
        self._nodes: dict[str, Node] = {n.name: n for n in node_list}
        self._edges: tuple[Edge, ...] = tuple(
            sorted(set(edges), key=lambda e: (e.tail, e.head, not e.directed))
        )
        self.tiers: dict[str, int] = dict(tiers or {})
        self.metadata: dict[str, str] = dict(metadata or {})
        self._parents: dict[str, frozenset] = {}
        self._children: dict[str, frozenset] = {}
        pa: dict[str, set] = {n: set() for n in self._nodes}
        ch: dict[str, set] = {n: set() for n in self._nodes}
        for e in self._edges:
            if e.directed and e.tail in pa and e.head in pa:
                pa[e.head].add(e.tail)
                ch[e.tail].add(e.head)
        self._parents = {k: frozenset(v) for k, v in pa.items()}
        self._children = {k: frozenset(v) for k, v in ch.items()}

    # -- basic access ---------------------------------------------------

    @property
    def nodes(self) -> tuple[Node, ...]:
        return tuple(self._nodes.values())

    @property
    def node_names(self) -> tuple[str, ...]:
        return tuple(self._nodes)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self._edges

    @property
    def directed_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self._edges if e.directed)

    @property
    def undirected_edges(self) -> tuple[Edge, ...]:
        return tuple(e for e in self._edges if not e.directed)

    def __contains__(self, name: str) -> bool:
        return name in self._nodes

    def node(self, name: str) -> Node:
        try:
            return self._nodes[name]
        except KeyError:
            raise UnknownNode(name) from None

    def parents(self, name: str) -> frozenset:
        if name not in self._nodes:
            raise UnknownNode(name)
        return self._parents[name]

    def children(self, name: str) -> frozenset:
        if name not in self._nodes:
            raise UnknownNode(name)
        return self._children[name]

    def has_directed_edge(self, tail: str, head: str) -> bool:
        return head in self._children.get(tail, ())

    def nodes_with_role(self, role: Role) -> tuple[Node, ...]:
        return tuple(n for n in self._nodes.values() if n.role is role)

    def treatment(self) -> Optional[str]:
        found = self.nodes_with_role(Role.TREATMENT)
        return found[0].name if found else None

    def outcome(self, period: int) -> Optional[str]:
        found = self.nodes_with_role(outcome_role(period))
        return found[0].name if found else None

    def __eq__(self, other):
        if not isinstance(other, CausalGraph):
            return NotImplemented
        return (
            self._nodes == other._nodes
            and self._edges == other._edges
            and self.tiers == other.tiers
        )

    def __hash__(self):
        return hash((tuple(self._nodes.items()), self._edges))

    def __repr__(self):
        return (
            f"CausalGraph({len(self._nodes)} nodes, "
            f"{len(self.directed_edges)} directed, "
            f"{len(self.undirected_edges)} undirected)"
        )

    # -- derived structure ----------------------------------------------

    def descendants(self, name: str) -> frozenset:
        """Reflexive-transitive closure of ``name`` under directed edges."""
        if name not in self._nodes:
            raise UnknownNode(name)
        seen = {name}
        stack = [name]
        while stack:
            for c in self._children[stack.pop()]:
                if c not in seen:
                    seen.add(c)
                    stack.append(c)
        return frozenset(seen)

    def ancestors(self, name: str) -> frozenset:
        """Reflexive-transitive closure of ``name`` under reversed edges."""
        if name not in self._nodes:
            raise UnknownNode(name)
        seen = {name}
        stack = [name]
        while stack:
            for p in self._parents[stack.pop()]:
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return frozenset(seen)

    def topological_order(self) -> tuple[str, ...]:
        """Deterministic topological order; ties broken by (tier, name)."""
        indeg = {n: len(self._parents[n]) for n in self._nodes}
        def key(n):
            return (self.tiers.get(n, 0), n)
        heap = [key(n) for n in self._nodes if indeg[n] == 0]
        heapq.heapify(heap)
        order = []
        while heap:
            _, name = heapq.heappop(heap)
            order.append(name)
            for c in sorted(self._children[name]):
                indeg[c] -= 1
                if indeg[c] == 0:
                    heapq.heappush(heap, key(c))
        if len(order) != len(self._nodes):
            raise CyclicGraph(self._find_cycle())
        return tuple(order)

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
            return True
        except CyclicGraph:
            return False

    def _find_cycle(self):
        color: dict[str, int] = {}
        parent: dict[str, str] = {}

        def dfs(u):
            color[u] = 1
            for v in sorted(self._children[u]):
                if color.get(v, 0) == 0:
                    parent[v] = u
                    found = dfs(v)
                    if found:
                        return found
                elif color.get(v) == 1:
                    cycle = [v, u]
                    w = u
                    while w != v:
                        w = parent[w]
                        cycle.append(w)
                    return list(reversed(cycle))
            color[u] = 2
            return None

        for n in self._nodes:
            if color.get(n, 0) == 0:
                found = dfs(n)
                if found:
                    return found
        return None

    # -- validation ------------------------------------------------------

    def validate(self) -> list[Violation]:
        """Full list of invariant violations; empty means valid."""
        out: list[Violation] = []
        for name in self._nodes:
            if not is_identifier(name):
                out.append(
                    Violation("NameViolation", f"node name {name!r} is not an identifier")
                )
        seen_pairs: set[frozenset] = set()
        for e in self._edges:
            if e.tail == e.head:
                out.append(Violation("EdgeViolation", f"self loop on {e.tail}"))
                continue
            if e.tail not in self._nodes or e.head not in self._nodes:
                out.append(
                    Violation("EdgeViolation", f"edge {e.tail}->{e.head} references unknown node")
                )
                continue
            if e.pair in seen_pairs:
                out.append(
                    Violation(
                        "EdgeViolation",
                        f"more than one edge between {e.tail} and {e.head}",
                    )
                )
            seen_pairs.add(e.pair)
        for role, label in (
            (Role.TREATMENT, "treatment"),
            (Role.OUTCOME0, "period-0 outcome"),
            (Role.OUTCOME1, "period-1 outcome"),
        ):
            found = self.nodes_with_role(role)
            if len(found) != 1:
                out.append(
                    Violation(
                        "RoleCardinalityViolation",
                        f"expected exactly one {label} node, found {len(found)}",
                    )
                )
            for n in found:
                if n.latent:
                    out.append(
                        Violation(
                            "ObservabilityViolation",
                            f"{label} node {n.name} must be observed",
                        )
                    )
        if not self.is_acyclic():
            cycle = self._find_cycle() or ()
            out.append(
                Violation("CycleViolation", "directed cycle: " + " -> ".join(cycle))
            )
        if self.tiers:
            for e in self.directed_edges:
                t_tail = self.tiers.get(e.tail)
                t_head = self.tiers.get(e.head)
                if t_tail is not None and t_head is not None and t_tail > t_head:
                    out.append(
                        Violation(
                            "TierViolation",
                            f"edge {e.tail}->{e.head} goes backwards in time "
                            f"(tier {t_tail} > {t_head})",
                        )
                    )
        y0 = self.outcome(0)
        a = self.treatment()
        y1 = self.outcome(1)
        if y0 is not None:
            for bad in (a, y1):
                if bad is not None and self.has_directed_edge(bad, y0):
                    out.append(
                        Violation(
                            "TimeOrderViolation",
                            f"directed edge {bad}->{y0} points into the pre-period outcome",
                        )
                    )
        if a is not None and y1 is not None and self.has_directed_edge(y1, a):
            out.append(
                Violation(
                    "TimeOrderViolation",
                    f"directed edge {y1}->{a} points from the post-period outcome "
                    "into treatment",
                )
            )
        return out

    def is_valid(self) -> bool:
        return not self.validate()

    # -- structural editing (returns new graphs) -------------------------

    def with_edges(self, add=(), remove=()) -> "CausalGraph":
        removed = set(remove)
        edges = [e for e in self._edges if e not in removed]
        edges.extend(add)
        return CausalGraph(self.nodes, edges, self.tiers, self.metadata)

    def with_nodes(self, add=()) -> "CausalGraph":
        return CausalGraph(
            list(self.nodes) + list(add), self._edges, self.tiers, self.metadata
        )

    def without_node(self, name: str) -> "CausalGraph":
        if name not in self._nodes:
            raise UnknownNode(name)
        nodes = [n for n in self.nodes if n.name != name]
        edges = [e for e in self._edges if name not in (e.tail, e.head)]
        tiers = {k: v for k, v in self.tiers.items() if k != name}
        return CausalGraph(nodes, edges, tiers, self.metadata)
