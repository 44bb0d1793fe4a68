"""Pure-Python separation kernel over bitmask adjacency.

Twin of the compiled kernel in ``_dsep_core.pyx``; this one works for any
node count (Python ints are unbounded) and is the fallback selected at
import when the extension is unavailable.
"""

from __future__ import annotations


def reachable(n: int, parents: list, children: list, source: int, zmask: int) -> int:
    """Bitmask of nodes d-connected to ``source`` given the blocked set.

    ``parents[i]`` / ``children[i]`` are bitmasks of node ``i``'s directed
    neighbours. Standard active-trail reachability: a node is explored in an
    "up" state (entered against an edge, or the source itself) or a "down"
    state (entered along an edge); colliders pass only when they have a
    descendant in the conditioning set. Nodes are marked visited per state
    when scheduled, so the stack holds at most 2n entries.
    """
    # Ancestor closure of the conditioning set (including it).
    anz = zmask
    frontier = zmask
    while frontier:
        gathered = 0
        rest = frontier
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            gathered |= parents[i]
        frontier = gathered & ~anz
        anz |= frontier

    visited = [0, 0]  # [down, up]
    reached = 0
    visited[1] = 1 << source
    stack = [(source, True)]
    while stack:
        node, up = stack.pop()
        bit = 1 << node
        blocked = bool(zmask & bit)
        if not blocked:
            reached |= bit
        go_up = 0
        go_down = 0
        if up:
            if not blocked:
                go_up = parents[node]
                go_down = children[node]
        else:
            if not blocked:
                go_down = children[node]
            if anz & bit:
                go_up = parents[node]
        rest = go_up & ~visited[1]
        visited[1] |= rest
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            stack.append((i, True))
        rest = go_down & ~visited[0]
        visited[0] |= rest
        while rest:
            i = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            stack.append((i, False))
    return reached
