"""Separation queries and open-path witnesses on directed graphs.

Decisions run through a bitmask reachability kernel; the compiled kernel is
preferred when the extension built, with a pure-Python twin selected at
import (or via ``PTGRAPH_DSEP_KERNEL=python|cython``). Witness extraction
enumerates explicit paths — graphs here are desk-scale — and every witness
doubles as a machine-checkable openness certificate.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Optional, Union

from . import _dsep_py
from .errors import PtGraphError, UndirectedEdgesPresent, UnknownNode
from .graph import CausalGraph
from .swig import Swig

try:
    from . import _dsep_core
except ImportError:  # extension not built; pure-Python twin takes over
    _dsep_core = None

_KERNELS = {"python": _dsep_py.reachable}
if _dsep_core is not None:
    _KERNELS["cython"] = _dsep_core.reachable

DEFAULT_KERNEL = os.environ.get("PTGRAPH_DSEP_KERNEL") or (
    "cython" if _dsep_core is not None else "python"
)


def available_kernels() -> tuple[str, ...]:
    return tuple(sorted(_KERNELS))


def _resolve_kernel(name, n_nodes):
    name = name or DEFAULT_KERNEL
    if name not in _KERNELS:
        raise PtGraphError(f"unknown separation kernel {name!r}")
    if name == "cython" and n_nodes > 64:
        return _KERNELS["python"]
    return _KERNELS[name]


def _working_graph(g: Union[CausalGraph, Swig]) -> CausalGraph:
    if isinstance(g, Swig):
        return g.graph
    return g


class _Index:
    """Bitmask adjacency for one graph."""

    def __init__(self, g: CausalGraph):
        if g.undirected_edges:
            raise UndirectedEdgesPresent(g.undirected_edges)
        self.names = g.node_names
        self.pos = {name: i for i, name in enumerate(self.names)}
        self.parents = [0] * len(self.names)
        self.children = [0] * len(self.names)
        for e in g.directed_edges:
            t, h = self.pos[e.tail], self.pos[e.head]
            self.children[t] |= 1 << h
            self.parents[h] |= 1 << t

    def mask(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            if name not in self.pos:
                raise UnknownNode(name)
            m |= 1 << self.pos[name]
        return m


def _check_query(g: CausalGraph, x, y, z):
    for name in (x, y, *z):
        if name not in g:
            raise UnknownNode(name)
    if x == y:
        raise PtGraphError("query endpoints must differ")
    if x in z or y in z:
        raise PtGraphError("query endpoints may not appear in the conditioning set")


def d_separated(
    g: Union[CausalGraph, Swig],
    x: str,
    y: str,
    z: Iterable[str] = (),
    kernel: Optional[str] = None,
) -> bool:
    """True iff every path between x and y is blocked given z."""
    graph = _working_graph(g)
    z = frozenset(z)
    _check_query(graph, x, y, z)
    idx = _Index(graph)
    reach = _resolve_kernel(kernel, len(idx.names))
    reached = reach(len(idx.names), idx.parents, idx.children, idx.pos[x], idx.mask(z))
    return not (reached >> idx.pos[y]) & 1


@dataclass(frozen=True)
class Path:
    """A simple path with per-step arrow orientation.

    ``arrows[i]`` is "->" if the i-th edge is directed from ``nodes[i]`` to
    ``nodes[i+1]``, "<-" otherwise. Interior nodes are colliders when both
    incident arrows point into them.
    """

    nodes: tuple[str, ...]
    arrows: tuple[str, ...]

    def __post_init__(self):
        assert len(self.arrows) == len(self.nodes) - 1
        assert len(set(self.nodes)) == len(self.nodes)

    def __len__(self):
        return len(self.arrows)

    def colliders(self) -> tuple[bool, ...]:
        out = []
        for i in range(1, len(self.nodes) - 1):
            out.append(self.arrows[i - 1] == "->" and self.arrows[i] == "<-")
        return tuple(out)

    def is_open(self, g: Union[CausalGraph, Swig], z: Iterable[str]) -> bool:
        """Certificate check: verify openness given z directly from the rules."""
        graph = _working_graph(g)
        z = frozenset(z)
        for i, name in enumerate(self.nodes[1:-1], start=1):
            is_collider = self.arrows[i - 1] == "->" and self.arrows[i] == "<-"
            if is_collider:
                if not (graph.descendants(name) & z):
                    return False
            elif name in z:
                return False
        return True

    def render(self) -> str:
        parts = [self.nodes[0]]
        for arrow, node in zip(self.arrows, self.nodes[1:]):
            parts.append(f" {arrow} {node}")
        return "".join(parts)


def _iter_simple_paths(g: CausalGraph, x: str, y: str):
    adjacency: dict[str, list[tuple[str, str]]] = {n: [] for n in g.node_names}
    for e in g.directed_edges:
        adjacency[e.tail].append((e.head, "->"))
        adjacency[e.head].append((e.tail, "<-"))
    for nbrs in adjacency.values():
        nbrs.sort()

    path = [x]
    arrows: list[str] = []
    on_path = {x}

    def dfs():
        node = path[-1]
        for nxt, arrow in adjacency[node]:
            if nxt in on_path:
                continue
            path.append(nxt)
            arrows.append(arrow)
            if nxt == y:
                yield Path(tuple(path), tuple(arrows))
            else:
                on_path.add(nxt)
                yield from dfs()
                on_path.discard(nxt)
            path.pop()
            arrows.pop()

    yield from dfs()


def open_paths(
    g: Union[CausalGraph, Swig], x: str, y: str, z: Iterable[str] = ()
) -> list[Path]:
    """All open simple paths, sorted by (length, node sequence)."""
    graph = _working_graph(g)
    z = frozenset(z)
    _check_query(graph, x, y, z)
    found = [p for p in _iter_simple_paths(graph, x, y) if p.is_open(graph, z)]
    found.sort(key=lambda p: (len(p), p.nodes))
    return found


def open_path_witness(
    g: Union[CausalGraph, Swig], x: str, y: str, z: Iterable[str] = ()
) -> Optional[Path]:
    """Shortest open path when the pair is d-connected, else None."""
    paths = open_paths(g, x, y, z)
    return paths[0] if paths else None


def backdoor_open(s: Swig, z: Iterable[str] = (), kernel: Optional[str] = None) -> bool:
    """True iff the treatment is d-connected to the post-period potential
    outcome given z. The split graph has no treatment out-edges, so every
    such connection is a backdoor path."""
    y1 = s.outcome_node(1)
    return not d_separated(s, s.treatment, y1, z, kernel=kernel)
