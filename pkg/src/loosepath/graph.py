"""Bit-vector 3-graphs over colex-ranked triples.

Triple ``{a < b < c}`` has rank ``C(c,3) + C(b,2) + a``.  Triples on the
vertex set ``{0..n-1}`` are exactly the ranks ``0..C(n,3)-1``, so the layout
does not depend on ``n`` and a graph on ``n`` vertices is also a graph on
``n + 1`` vertices with the same bits.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .errors import CapabilityError, DimensionError, FormatError, InvalidTripleError

# The acceptance sweep builds constructions up to n = 30.
MAX_N = 32

Triple = tuple[int, int, int]


def triple_rank(a: int, b: int, c: int) -> int:
    if not (0 <= a < b < c):
        raise InvalidTripleError(f"triple must satisfy 0 <= a < b < c, got {(a, b, c)}")
    return comb(c, 3) + comb(b, 2) + a


def _largest_below(r: int, k: int) -> int:
    # largest x with C(x, k) <= r
    x = k - 1
    while comb(x + 1, k) <= r:
        x += 1
    return x


def triple_unrank(rank: int) -> Triple:
    if rank < 0:
        raise InvalidTripleError(f"negative rank {rank}")
    c = _largest_below(rank, 3)
    rank -= comb(c, 3)
    b = _largest_below(rank, 2)
    rank -= comb(b, 2)
    return (rank, b, c)


@lru_cache(maxsize=None)
def triples(n: int) -> tuple[Triple, ...]:
    """All triples on ``n`` vertices indexed by rank."""
    out = [None] * comb(n, 3)
    for t in combinations(range(n), 3):
        out[triple_rank(*t)] = t
    return tuple(out)


@lru_cache(maxsize=None)
def rank_table(n: int) -> dict[Triple, int]:
    return {t: i for i, t in enumerate(triples(n))}


@lru_cache(maxsize=None)
def vertex_masks(n: int) -> tuple[int, ...]:
    """``vertex_masks(n)[v]`` has bit ``r`` set iff triple ``r`` contains ``v``."""
    masks = [0] * n
    for r, (a, b, c) in enumerate(triples(n)):
        bit = 1 << r
        masks[a] |= bit
        masks[b] |= bit
        masks[c] |= bit
    return tuple(masks)


def full_mask(n: int) -> int:
    return (1 << comb(n, 3)) - 1


def iter_bits(x: int) -> Iterator[int]:
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def _check_n(n: int) -> None:
    if not 1 <= n <= MAX_N:
        raise CapabilityError(f"vertex count {n} outside supported range 1..{MAX_N}")


@dataclass(frozen=True, slots=True)
class ThreeGraph:
    """An ``n``-vertex 3-graph; bit ``i`` of ``bits`` is the triple of rank ``i``."""

    n: int
    bits: int = 0

    def __post_init__(self):
        _check_n(self.n)
        if self.bits < 0 or self.bits >> comb(self.n, 3):
            raise InvalidTripleError(f"edge bits exceed C({self.n},3)")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "ThreeGraph":
        _check_n(n)
        bits = 0
        for e in edges:
            a, b, c = sorted(e)
            if len({a, b, c}) != 3 or c >= n:
                raise InvalidTripleError(f"bad edge {tuple(e)} for n={n}")
            bits |= 1 << triple_rank(a, b, c)
        return cls(n, bits)

    @classmethod
    def complete(cls, n: int) -> "ThreeGraph":
        return cls(n, full_mask(n))

    @classmethod
    def empty(cls, n: int) -> "ThreeGraph":
        return cls(n, 0)

    def __len__(self) -> int:
        return self.bits.bit_count()

    @property
    def num_edges(self) -> int:
        return self.bits.bit_count()

    def edges(self) -> list[Triple]:
        tr = triples(self.n)
        return [tr[r] for r in iter_bits(self.bits)]

    def edge_ranks(self) -> list[int]:
        return list(iter_bits(self.bits))

    def has_edge(self, a: int, b: int, c: int) -> bool:
        a, b, c = sorted((a, b, c))
        return bool(self.bits >> triple_rank(a, b, c) & 1)

    def degree(self, v: int) -> int:
        return (self.bits & vertex_masks(self.n)[v]).bit_count()

    def degrees(self) -> list[int]:
        return [(self.bits & m).bit_count() for m in vertex_masks(self.n)]

    def isolated_vertices(self) -> list[int]:
        return [v for v, d in enumerate(self.degrees()) if d == 0]

    def link(self, v: int) -> list[tuple[int, int]]:
        """Pairs ``{a, b}`` with ``{a, b, v}`` an edge."""
        return [tuple(u for u in e if u != v) for e in self.edges() if v in e]

    def relabel(self, perm: Sequence[int]) -> "ThreeGraph":
        """Image under the vertex map ``v -> perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise DimensionError("perm must be a permutation of range(n)")
        return ThreeGraph.from_edges(self.n, ((perm[a], perm[b], perm[c]) for a, b, c in self.edges()))

    def induced(self, vertices: Iterable[int]) -> "ThreeGraph":
        """Sub-3-graph spanned by ``vertices``, relabelled 0..k-1 in increasing order."""
        vs = sorted(set(vertices))
        pos = {v: i for i, v in enumerate(vs)}
        keep = [(pos[a], pos[b], pos[c]) for a, b, c in self.edges() if a in pos and b in pos and c in pos]
        return ThreeGraph.from_edges(len(vs), keep)

    def union_edges(self, other: "ThreeGraph") -> "ThreeGraph":
        if other.n != self.n:
            raise DimensionError("edge union needs equal vertex counts")
        return ThreeGraph(self.n, self.bits | other.bits)

    def extend(self, n: int) -> "ThreeGraph":
        """Same edges on a larger vertex set (new vertices isolated)."""
        if n < self.n:
            raise DimensionError("cannot shrink with extend()")
        return ThreeGraph(n, self.bits)

    def __repr__(self) -> str:
        return f"ThreeGraph(n={self.n}, m={len(self)})"


def degree_sum(h: ThreeGraph) -> int:
    return sum(h.degrees())


def delete_vertex(h: ThreeGraph, v: int) -> ThreeGraph:
    if not 0 <= v < h.n:
        raise DimensionError(f"vertex {v} not in graph on {h.n} vertices")
    if h.n == 1:
        raise DimensionError("cannot delete the only vertex")
    return h.induced(u for u in range(h.n) if u != v)


def disjoint_union(*parts: ThreeGraph) -> ThreeGraph:
    total = sum(p.n for p in parts)
    if total > MAX_N:
        raise CapabilityError(f"union has {total} vertices, more than {MAX_N}")
    edges = []
    shift = 0
    for p in parts:
        edges.extend((a + shift, b + shift, c + shift) for a, b, c in p.edges())
        shift += p.n
    return ThreeGraph.from_edges(total, edges)


def is_connected(h: ThreeGraph) -> bool:
    """Weak connectivity; an isolated vertex disconnects any graph with n >= 2."""
    if h.n == 1:
        return True
    edges = h.edges()
    if not edges:
        return False
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in edges:
        ra = find(a)
        parent[find(b)] = ra
        parent[find(c)] = ra
    if any(d == 0 for d in h.degrees()):
        return False
    root = find(0)
    return all(find(v) == root for v in range(h.n))


def components(h: ThreeGraph) -> list[list[int]]:
    """Vertex sets of the weak components (isolated vertices are singletons)."""
    parent = list(range(h.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b, c in h.edges():
        ra = find(a)
        parent[find(b)] = ra
        parent[find(c)] = ra
    groups: dict[int, list[int]] = {}
    for v in range(h.n):
        groups.setdefault(find(v), []).append(v)
    return sorted(groups.values())


# ---------------------------------------------------------------------------
# .3g files

def format_3g(h: ThreeGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"{h.n} {len(h)}")
    lines.extend(f"{a} {b} {c}" for a, b, c in h.edges())
    return "\n".join(lines) + "\n"


def parse_3g(text: str) -> ThreeGraph:
    rows = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append(line.split())
    if not rows:
        raise FormatError("empty .3g input")
    try:
        n, m = (int(x) for x in rows[0])
    except ValueError as exc:
        raise FormatError(f"bad header {rows[0]!r}") from exc
    body = rows[1:]
    if len(body) != m:
        raise FormatError(f"header announces {m} edges, found {len(body)}")
    seen = set()
    edges = []
    for row in body:
        if len(row) != 3:
            raise FormatError(f"edge line needs 3 integers: {row!r}")
        try:
            a, b, c = (int(x) for x in row)
        except ValueError as exc:
            raise FormatError(f"non-integer edge {row!r}") from exc
        if not (0 <= a < b < c < n):
            raise FormatError(f"edge {(a, b, c)} must satisfy 0 <= a < b < c < {n}")
        if (a, b, c) in seen:
            raise FormatError(f"duplicate edge {(a, b, c)}")
        seen.add((a, b, c))
        edges.append((a, b, c))
    return ThreeGraph.from_edges(n, edges)


def read_3g(path: str | Path) -> ThreeGraph:
    return parse_3g(Path(path).read_text())


def write_3g(h: ThreeGraph, path: str | Path, comment: str | None = None) -> None:
    Path(path).write_text(format_3g(h, comment))
