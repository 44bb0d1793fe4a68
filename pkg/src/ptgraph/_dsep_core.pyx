# cython: boundscheck=False, wraparound=False, language_level=3
"""Compiled separation kernel over uint64 bitmask adjacency (n <= 64).

Mirrors ``_dsep_py.reachable`` exactly; the dispatcher falls back to the
Python twin for larger graphs.
"""

from libc.stdint cimport uint64_t


def reachable(int n, parents, children, int source, unsigned long long zmask):
    cdef uint64_t pa[64]
    cdef uint64_t ch[64]
    cdef int i
    if n > 64:
        raise ValueError("compiled kernel supports at most 64 nodes")
    for i in range(n):
        pa[i] = parents[i]
        ch[i] = children[i]
    return _reach(n, pa, ch, source, zmask)


cdef inline int _ctz(uint64_t x):
    cdef int c = 0
    while not (x & 1):
        x >>= 1
        c += 1
    return c


cdef uint64_t _reach(int n, uint64_t *pa, uint64_t *ch,
                     int source, uint64_t zmask):
    cdef uint64_t anz = zmask
    cdef uint64_t frontier = zmask
    cdef uint64_t gathered, rest, bit, go_up, go_down
    cdef uint64_t visited_up = 0, visited_down = 0, reached = 0
    # Visited is marked when a state is scheduled, so <= 2n entries ever.
    cdef int stack_node[128]
    cdef bint stack_up[128]
    cdef int top
    cdef int node, i
    cdef bint up, blocked

    while frontier:
        gathered = 0
        rest = frontier
        while rest:
            i = _ctz(rest)
            rest &= rest - 1
            gathered |= pa[i]
        frontier = gathered & ~anz
        anz |= frontier

    visited_up = (<uint64_t> 1) << source
    stack_node[0] = source
    stack_up[0] = True
    top = 1
    while top > 0:
        top -= 1
        node = stack_node[top]
        up = stack_up[top]
        bit = (<uint64_t> 1) << node
        blocked = (zmask & bit) != 0
        if not blocked:
            reached |= bit
        go_up = 0
        go_down = 0
        if up:
            if not blocked:
                go_up = pa[node]
                go_down = ch[node]
        else:
            if not blocked:
                go_down = ch[node]
            if anz & bit:
                go_up = pa[node]
        rest = go_up & ~visited_up
        visited_up |= rest
        while rest:
            i = _ctz(rest)
            rest &= rest - 1
            stack_node[top] = i
            stack_up[top] = True
            top += 1
        rest = go_down & ~visited_down
        visited_down |= rest
        while rest:
            i = _ctz(rest)
            rest &= rest - 1
            stack_node[top] = i
            stack_up[top] = False
            top += 1
    return reached
