"""Independent oracles and random-instance generators for the test suite.

Everything here is deliberately naive: separation by enumerating every
simple path, covariances by summing treks, graphs drawn edge-by-edge.
Slow and obviously correct, so the fast implementations can be checked
against them.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

import numpy as np

from ptgraph.graph import CausalGraph, Edge, Node, Role, directed


# -- brute-force d-separation --------------------------------------------


def _simple_paths(g: CausalGraph, x: str, y: str):
    """All simple paths x..y over the directed skeleton, as edge lists of
    (node, node, points_forward) triples."""
    adj: dict[str, list[tuple[str, bool]]] = {n: [] for n in g.node_names}
    for e in g.directed_edges:
        adj[e.tail].append((e.head, True))
        adj[e.head].append((e.tail, False))

    def walk(node, seen, steps):
        if node == y:
            yield list(steps)
            return
        for nxt, fwd in adj[node]:
            if nxt in seen:
                continue
            steps.append((node, nxt, fwd))
            yield from walk(nxt, seen | {nxt}, steps)
            steps.pop()

    yield from walk(x, {x}, [])


def _path_open(g: CausalGraph, steps, z: frozenset) -> bool:
    for i in range(len(steps) - 1):
        mid = steps[i][1]
        collider = steps[i][2] and not steps[i + 1][2]
        if collider:
            if not (g.descendants(mid) & z):
                return False
        elif mid in z:
            return False
    if len(steps) >= 1:
        # endpoints themselves may not be conditioned on; callers ensure it
        pass
    return True


def dsep_oracle(g: CausalGraph, x: str, y: str, z: Iterable[str]) -> bool:
    """d-separation by enumerating every simple path and testing openness."""
    zset = frozenset(z)
    for steps in _simple_paths(g, x, y):
        if _path_open(g, steps, zset):
            return False
    return True


# -- trek-rule covariance oracle -----------------------------------------


def _directed_paths_from(g: CausalGraph, src: str):
    """All directed paths src -> ... -> t (including the trivial path),
    as node tuples, with their coefficient products filled in later."""
    out: list[tuple[str, ...]] = []

    def walk(node, path):
        out.append(tuple(path))
        for child in sorted(g.children(node)):
            path.append(child)
            walk(child, path)
            path.pop()

    walk(src, [src])
    return out


def trek_cov(sem, x: str, y: str) -> float:
    """Covariance by the trek rule: sum over common sources s and pairs of
    directed paths s->x, s->y of var(eps_s) times both path products."""
    g = sem.graph
    total = 0.0

    def product(path):
        p = 1.0
        for a, b in zip(path, path[1:]):
            p *= sem.coeff[(a, b)]
        return p

    for s in g.node_names:
        to_x = [p for p in _directed_paths_from(g, s) if p[-1] == x]
        to_y = [p for p in _directed_paths_from(g, s) if p[-1] == y]
        if not to_x or not to_y:
            continue
        total += sem.noise_var[s] * sum(product(p) for p in to_x) * sum(
            product(q) for q in to_y
        )
    return total


# -- random instances ----------------------------------------------------


def random_dag(
    rng: np.random.Generator,
    n_nodes: int,
    edge_prob: float = 0.35,
) -> CausalGraph:
    """A random DAG over X0..X{n-1}; edges respect the index order."""
    names = [f"X{i}" for i in range(n_nodes)]
    edges = [
        directed(names[i], names[j])
        for i in range(n_nodes)
        for j in range(i + 1, n_nodes)
        if rng.random() < edge_prob
    ]
    return CausalGraph([Node(name) for name in names], edges)


def random_did_graph(
    rng: np.random.Generator,
    n_covariates: int = 3,
    edge_prob: float = 0.5,
    allow_y0_to_a: bool = False,
    allow_carryover: bool = True,
) -> CausalGraph:
    """A random fully directed DID graph: covariates U1..Uk come first,
    then Y0, then A, then Y1, with edges respecting that time order."""
    covs = [f"U{i + 1}" for i in range(n_covariates)]
    nodes = [Node(c, latent=True) for c in covs] + [
        Node("Y0", role=Role.OUTCOME0),
        Node("A", role=Role.TREATMENT),
        Node("Y1", role=Role.OUTCOME1),
    ]
    edges = [directed("A", "Y1")]
    for i, a in enumerate(covs):
        for b in covs[i + 1:] + ["Y0", "A", "Y1"]:
            if rng.random() < edge_prob:
                edges.append(directed(a, b))
    if allow_y0_to_a and rng.random() < 0.5:
        edges.append(directed("Y0", "A"))
    if allow_carryover and rng.random() < 0.3:
        edges.append(directed("Y0", "Y1"))
    return CausalGraph(nodes, edges)


def brute_minimal_sets(s, period: int, eligible: Iterable[str]):
    """Minimal sufficient sets by checking every subset, then dropping
    any set that contains a strictly smaller sufficient set."""
    from ptgraph.adjustment import is_sufficient

    pool = sorted(eligible)
    sufficient = [
        frozenset(c)
        for r in range(len(pool) + 1)
        for c in itertools.combinations(pool, r)
        if is_sufficient(s, c, period)
    ]
    return sorted(
        (
            tuple(sorted(m))
            for m in sufficient
            if not any(other < m for other in sufficient)
        ),
    )
