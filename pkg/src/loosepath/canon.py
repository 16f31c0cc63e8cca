"""Canonical forms for small 3-graphs.

The canonical form is the lexicographically smallest edge bit vector, read
from rank 0 upwards, over all relabelings that respect an ordered vertex
partition.  The partition is an isomorphism invariant (degree, refined by the
colours of co-occurring pairs), so two graphs get the same form iff they are
isomorphic.  Labels are handed out in increasing order; since the triples on
labels ``0..k`` are exactly the ranks below ``C(k+1,3)``, each new label fixes
the next block of bits and a prefix that is already too large is cut off.
Interchangeable vertices (twins, whose transposition is an automorphism) are
tried only once per branch point.
"""

from __future__ import annotations

from math import comb

from .errors import CapabilityError
from .graph import ThreeGraph, triple_rank

DEFAULT_MAX_N = 13


def refine_partition(h: ThreeGraph) -> list[int]:
    """Invariant colour per vertex; colours are ranked so 0 is the smallest class."""
    n = h.n
    edges = h.edges()
    colour = h.degrees()
    ncol = len(set(colour))
    while True:
        sig = []
        for v in range(n):
            pairs = []
            for e in edges:
                if v in e:
                    a, b = (colour[u] for u in e if u != v)
                    pairs.append((a, b) if a <= b else (b, a))
            pairs.sort()
            sig.append((colour[v], tuple(pairs)))
        ranks = {s: i for i, s in enumerate(sorted(set(sig)))}
        colour = [ranks[s] for s in sig]
        if len(ranks) == ncol:
            return colour
        ncol = len(ranks)


def twin_classes(h: ThreeGraph) -> list[int]:
    """``rep[v]`` is the smallest vertex u such that swapping u and v is an automorphism."""
    n = h.n
    link = [set() for _ in range(n)]
    for a, b, c in h.edges():
        link[a].add((b, c))
        link[b].add((a, c))
        link[c].add((a, b))
    rep = list(range(n))
    for v in range(n):
        if rep[v] != v:
            continue
        for u in range(v + 1, n):
            if rep[u] != u:
                continue
            lv = {p for p in link[v] if u not in p}
            lu = {p for p in link[u] if v not in p}
            if {_swap(p, u, v) for p in lv} == lu:
                rep[u] = v
    return rep


def _swap(pair, u, v):
    a, b = (v if x == u else u if x == v else x for x in pair)
    return (a, b) if a < b else (b, a)


def canonical_labeling(h: ThreeGraph, max_n: int = DEFAULT_MAX_N) -> tuple[int, list[int]]:
    """Returns ``(canonical_bits, labels)`` with ``labels[v]`` the new label of vertex v."""
    n = h.n
    if n > max_n:
        raise CapabilityError(f"canonical form limited to n <= {max_n}, got {n}")
    colour = refine_partition(h)
    cell_of_pos = sorted(colour)
    rep = twin_classes(h)
    adj = [[0] * n for _ in range(n)]  # adj[a][b]: vertex mask of c with {a,b,c} an edge
    for a, b, c in h.edges():
        adj[a][b] |= 1 << c
        adj[b][a] |= 1 << c
        adj[a][c] |= 1 << b
        adj[c][a] |= 1 << b
        adj[b][c] |= 1 << a
        adj[c][b] |= 1 << a

    best: list[int] = []
    best_order: list[int] = []
    order: list[int] = []
    placed = 0

    def chunk(v: int) -> int:
        # bits {i, j, k} for placed positions i < j < k=len(order), read low pair-rank first
        k = len(order)
        width = comb(k, 2)
        out = 0
        for j in range(1, k):
            row = adj[order[j]]
            base = comb(j, 2)
            for i in range(j):
                if row[order[i]] >> v & 1:
                    out |= 1 << (width - 1 - (base + i))
        return out

    def rec() -> None:
        nonlocal placed, best, best_order
        k = len(order)
        if k == n:
            if len(best_order) < n:
                best_order = list(order)
            return
        want = cell_of_pos[k]
        options: dict[int, int] = {}
        for v in range(n):
            if placed >> v & 1 or colour[v] != want:
                continue
            r = rep[v]
            if r in options:
                continue
            # a twin class can be represented by any unplaced member
            options[r] = v
        scored = [(chunk(v), v) for v in options.values()]
        low = min(s for s, _ in scored)
        if k < len(best):
            if low > best[k]:
                return
            if low < best[k]:
                del best[k:]
                best_order = []
        if k == len(best):
            best.append(low)
        for s, v in scored:
            if s != low:
                continue
            if k < len(best) and s > best[k]:
                return
            order.append(v)
            placed |= 1 << v
            rec()
            placed &= ~(1 << v)
            order.pop()

    rec()
    labels = [0] * n
    for pos, v in enumerate(best_order):
        labels[v] = pos
    bits = 0
    for a, b, c in h.edges():
        x, y, z = sorted((labels[a], labels[b], labels[c]))
        bits |= 1 << triple_rank(x, y, z)
    return bits, labels


def canonical_form(h: ThreeGraph, max_n: int = DEFAULT_MAX_N) -> int:
    return canonical_labeling(h, max_n)[0]


def canonical_graph(h: ThreeGraph, max_n: int = DEFAULT_MAX_N) -> ThreeGraph:
    return ThreeGraph(h.n, canonical_form(h, max_n))


def are_isomorphic(a: ThreeGraph, b: ThreeGraph) -> bool:
    if a.n != b.n or len(a) != len(b) or sorted(a.degrees()) != sorted(b.degrees()):
        return False
    return canonical_form(a, max(DEFAULT_MAX_N, a.n)) == canonical_form(b, max(DEFAULT_MAX_N, b.n))
