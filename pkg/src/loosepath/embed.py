"""Containment of one 3-graph in another (non-induced, injective on vertices).

``find_embedding`` is the generic backtracking search and the reference for
everything else here.  ``find_P``, ``find_C`` and ``find_M`` are direct scans
for the three patterns that dominate the workload; they work on edge bit
masks and return witnesses in the pattern's own vertex order.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Optional, Sequence

from .errors import DimensionError
from .graph import ThreeGraph, iter_bits, rank_table, triples, vertex_masks
from .patterns import Pattern

Embedding = dict  # pattern vertex -> host vertex


def _edge_lookup(h: ThreeGraph) -> list[bool]:
    n = h.n
    table = [False] * (n * n * n)
    for a, b, c in h.edges():
        for x, y, z in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
            table[(x * n + y) * n + z] = True
    return table


def _shadow(h: ThreeGraph) -> list[int]:
    """Vertex bitmask of the 2-shadow: bit u of result[v] iff u, v share an edge."""
    adj = [0] * h.n
    for a, b, c in h.edges():
        adj[a] |= (1 << b) | (1 << c)
        adj[b] |= (1 << a) | (1 << c)
        adj[c] |= (1 << a) | (1 << b)
    return adj


def _search_order(pattern: ThreeGraph) -> list[int]:
    deg = pattern.degrees()
    edges = pattern.edges()
    active = [v for v in range(pattern.n) if deg[v] > 0]
    order: list[int] = []
    placed: set[int] = set()
    while len(order) < len(active):
        best, best_key = None, None
        for v in active:
            if v in placed:
                continue
            closed = sum(1 for e in edges if v in e and all(u in placed or u == v for u in e))
            touching = sum(1 for e in edges if v in e and any(u in placed for u in e))
            key = (closed, touching, deg[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed.add(best)
    return order


def find_embedding(host: ThreeGraph, pattern: ThreeGraph) -> Optional[Embedding]:
    """An injective, edge-preserving map from ``pattern`` into ``host``, or None."""
    if pattern.n > host.n:
        return None
    if len(pattern) > len(host):
        return None
    order = _search_order(pattern)
    pdeg = pattern.degrees()
    hdeg = host.degrees()
    n = host.n
    lookup = _edge_lookup(host)
    hshadow = _shadow(host)
    pshadow = _shadow(pattern)
    index = {v: i for i, v in enumerate(order)}
    # per position: pattern edges closed by this vertex, as pairs of earlier positions
    checks: list[list[tuple[int, int]]] = [[] for _ in order]
    for a, b, c in pattern.edges():
        last = max((a, b, c), key=index.__getitem__)
        others = [index[u] for u in (a, b, c) if u != last]
        checks[index[last]].append((others[0], others[1]))
    neighbours = [[index[u] for u in iter_bits(pshadow[v]) if index[u] < i] for i, v in enumerate(order)]

    image = [0] * len(order)
    used = 0
    all_host = (1 << n) - 1

    def extend(i: int) -> bool:
        nonlocal used
        if i == len(order):
            return True
        cand = all_host & ~used
        for j in neighbours[i]:
            cand &= hshadow[image[j]]
        need = pdeg[order[i]]
        for h in iter_bits(cand):
            if hdeg[h] < need:
                continue
            ok = True
            for j, k in checks[i]:
                if not lookup[(image[j] * n + image[k]) * n + h]:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = h
            used |= 1 << h
            if extend(i + 1):
                return True
            used &= ~(1 << h)
        return False

    if not extend(0):
        return None
    emb = {v: image[i] for i, v in enumerate(order)}
    spare = iter(h for h in range(n) if not used >> h & 1)
    for v in range(pattern.n):
        if v not in emb:
            emb[v] = next(spare)
    return emb


def contains_pattern(host: ThreeGraph, pattern: ThreeGraph | Pattern) -> Optional[Embedding]:
    if isinstance(pattern, Pattern):
        pattern = pattern.graph
    return find_embedding(host, pattern)


def is_embedding(host: ThreeGraph, pattern: ThreeGraph, emb: Embedding) -> bool:
    if sorted(emb) != list(range(pattern.n)) or len(set(emb.values())) != pattern.n:
        return False
    if any(not 0 <= x < host.n for x in emb.values()):
        return False
    return all(host.has_edge(emb[a], emb[b], emb[c]) for a, b, c in pattern.edges())


def is_subgraph_upto_iso(small: ThreeGraph, big: ThreeGraph, same_n: bool = False) -> bool:
    """Whether some injective vertex map carries every edge of ``small`` into ``big``.

    With ``same_n`` the graphs must have equal order and the map is a bijection.
    """
    if same_n and small.n != big.n:
        raise DimensionError(f"same_n comparison of graphs on {small.n} and {big.n} vertices")
    return find_embedding(big, small) is not None


def brute_force_contains(host: ThreeGraph, pattern: ThreeGraph) -> bool:
    """Enumerates every injective map; only for tiny instances (test oracle)."""
    if pattern.n > host.n:
        return False
    pe = pattern.edges()
    for img in permutations(range(host.n), pattern.n):
        if all(host.has_edge(img[a], img[b], img[c]) for a, b, c in pe):
            return True
    return False


# ---------------------------------------------------------------------------
# fast paths


def find_M(h: ThreeGraph) -> Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Two disjoint edges, if any."""
    vm = vertex_masks(h.n)
    tr = triples(h.n)
    bits = h.bits
    for r in iter_bits(bits):
        a, b, c = tr[r]
        other = bits & ~(vm[a] | vm[b] | vm[c])
        if other:
            return tr[r], tr[(other & -other).bit_length() - 1]
    return None


def find_P(h: ThreeGraph) -> Optional[tuple[int, ...]]:
    """Vertices ``(a, b, c, d, e, f, g)`` of a loose path abc, cde, efg, if any."""
    vm = vertex_masks(h.n)
    tr = triples(h.n)
    bits = h.bits
    for r in iter_bits(bits):
        mid = tr[r]
        for c, e, t in ((mid[0], mid[1], mid[2]), (mid[0], mid[2], mid[1]), (mid[1], mid[2], mid[0])):
            left = bits & vm[c] & ~vm[e] & ~vm[t]
            if not left:
                continue
            right = bits & vm[e] & ~vm[c] & ~vm[t]
            if not right:
                continue
            for r1 in iter_bits(left):
                p, q = (u for u in tr[r1] if u != c)
                far = right & ~vm[p] & ~vm[q]
                if far:
                    f, g = (u for u in tr[(far & -far).bit_length() - 1] if u != e)
                    return (p, q, c, t, e, f, g)
    return None


def find_C(h: ThreeGraph) -> Optional[tuple[int, ...]]:
    """Vertices ``(a, b, c, d, e, f)`` of a triangle abc, cde, efa, if any."""
    vm = vertex_masks(h.n)
    tr = triples(h.n)
    bits = h.bits
    for r in iter_bits(bits):
        x, y, z = tr[r]
        for a, c, b in ((x, y, z), (x, z, y), (y, z, x)):
            second = bits & vm[c] & ~vm[a] & ~vm[b]
            for r2 in iter_bits(second):
                d, e = (u for u in tr[r2] if u != c)
                third = bits & vm[a] & ~vm[b] & ~vm[c] & (vm[d] ^ vm[e])
                if third:
                    t3 = tr[(third & -third).bit_length() - 1]
                    meet = d if d in t3 else e
                    other = e if meet == d else d
                    f = next(u for u in t3 if u not in (a, meet))
                    return (a, b, c, other, meet, f)
    return None


def find_P2(h: ThreeGraph) -> Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Two edges sharing exactly one vertex, if any."""
    vm = vertex_masks(h.n)
    tr = triples(h.n)
    bits = h.bits
    for r in iter_bits(bits):
        a, b, c = tr[r]
        for v, o1, o2 in ((a, b, c), (b, a, c), (c, a, b)):
            other = bits & vm[v] & ~vm[o1] & ~vm[o2]
            if other:
                return tr[r], tr[(other & -other).bit_length() - 1]
    return None


_FAST = {"P": find_P, "C": find_C, "M": find_M, "P2": find_P2}


def has_pattern(h: ThreeGraph, pattern: Pattern) -> bool:
    """Containment test, using a direct scan when one exists for ``pattern``."""
    fast = _FAST.get(pattern.name)
    if fast is not None:
        return fast(h) is not None
    return find_embedding(h, pattern.graph) is not None


def is_free(h: ThreeGraph, forbidden: Sequence[Pattern]) -> bool:
    return not any(has_pattern(h, p) for p in forbidden)


# ---------------------------------------------------------------------------
# labelled copies, used to precompute the search tables


@lru_cache(maxsize=None)
def labelled_copies(pattern: ThreeGraph, n: int) -> tuple[tuple[int, ...], ...]:
    """Every copy of ``pattern`` in ``K_n`` as a sorted tuple of edge ranks."""
    if pattern.n > n:
        return ()
    rt = rank_table(n)
    pe = pattern.edges()
    active = sorted({v for e in pe for v in e})
    seen = set()
    for img in permutations(range(n), len(active)):
        m = dict(zip(active, img))
        seen.add(tuple(sorted(rt[tuple(sorted((m[a], m[b], m[c])))] for a, b, c in pe)))
    return tuple(sorted(seen))
