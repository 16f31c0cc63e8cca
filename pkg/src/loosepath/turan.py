"""Exact maximum-edge search for forbidden-pattern-free 3-graphs.

Every constraint the engine supports besides freeness (not embeddable in an
excluded host, containing an anchor, connectivity) survives adding edges.  A
maximiser therefore cannot take another edge without creating a forbidden
pattern: it is edge-maximal among free graphs.  The search only visits
edge-maximal graphs.  It decides triples in decreasing colex rank, includes
before excluding, and cuts a branch when

* the triple would complete a forbidden copy (it is *blocked*),
* current edges + still-addable triples cannot reach the incumbent,
* an excluded triple can no longer become blocked (the leaf could not be maximal),
* the degree sequence can no longer be non-decreasing in the vertex label
  (each isomorphism class has a labelling with sorted degrees).

Leaves are deduplicated by canonical form, and each reported graph is checked
again with the generic embedding search.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterable, Optional, Sequence

from . import reference
from .canon import canonical_form
from .constructions import RocketDefinition, parse_name
from .embed import find_embedding, has_pattern, is_subgraph_upto_iso, labelled_copies
from .errors import IncompleteSearchError, InvalidParameterError
from .graph import ThreeGraph, is_connected, iter_bits, vertex_masks
from .patterns import Pattern, get_pattern

Anchor = ThreeGraph | Pattern


@dataclass(frozen=True)
class Budget:
    nodes: Optional[int] = None
    seconds: Optional[float] = None

    @classmethod
    def from_env(cls) -> "Budget":
        nodes = os.environ.get("LOOSEPATH_BUDGET_NODES")
        secs = os.environ.get("LOOSEPATH_BUDGET_SECS")
        return cls(int(nodes) if nodes else None, float(secs) if secs else None)


@dataclass
class TuranQuery:
    n: int
    forbidden: tuple[Pattern, ...]
    order: int = 1
    must_contain: tuple[Anchor, ...] = ()
    connected_only: bool = False
    excluded_hosts: tuple[ThreeGraph, ...] = ()

    def __post_init__(self):
        self.forbidden = tuple(get_pattern(p) for p in self.forbidden)
        self.must_contain = tuple(get_pattern(a) if isinstance(a, str) else a for a in self.must_contain)
        self.excluded_hosts = tuple(self.excluded_hosts)
        if not self.forbidden:
            raise InvalidParameterError("at least one forbidden pattern is required")
        for p in self.forbidden:
            if len(p.graph) not in (2, 3):
                raise InvalidParameterError(f"pattern {p.name} has {len(p.graph)} edges; only 2 or 3 supported")
        for h in self.excluded_hosts:
            if h.n != self.n:
                raise InvalidParameterError("excluded hosts must have the query's vertex count")


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    pruned_bound: int = 0
    pruned_maximality: int = 0
    pruned_symmetry: int = 0
    forced_excludes: int = 0
    rejected_leaves: int = 0
    wall_time: float = 0.0

    def merge(self, other: "SearchStats") -> None:
        for k in ("nodes", "leaves", "pruned_bound", "pruned_maximality", "pruned_symmetry",
                  "forced_excludes", "rejected_leaves"):
            setattr(self, k, getattr(self, k) + getattr(other, k))


@dataclass
class TuranResult:
    value: Optional[int]
    extremal: list[ThreeGraph]
    stats: SearchStats = field(default_factory=SearchStats)
    query: Optional[TuranQuery] = None

    def canonical_set(self) -> set[int]:
        return {g.bits for g in self.extremal}


@dataclass
class TuranLadder:
    n: int
    forbidden: tuple[Pattern, ...]
    results: list[TuranResult]
    reference: list[Optional[int]] = field(default_factory=list)

    @property
    def values(self) -> list[Optional[int]]:
        return [r.value for r in self.results]

    def strictly_decreasing(self) -> bool:
        return reference.strictly_decreasing(self.values)


# ---------------------------------------------------------------------------
# tables


@dataclass(frozen=True)
class _Tables:
    n: int
    size: int
    single: tuple[int, ...]              # partners completing a 2-edge pattern
    pair_keys: tuple[int, ...]           # mask of u with a 3-edge copy {t, u, *}
    pair: tuple[dict[int, int], ...]     # pair[t][u] = mask of w with {t, u, w} a copy
    vm: tuple[int, ...]


@lru_cache(maxsize=32)
def _tables(n: int, forbidden: tuple[Pattern, ...]) -> _Tables:
    size = comb(n, 3)
    single = [0] * size
    pair: list[dict[int, int]] = [dict() for _ in range(size)]
    for p in forbidden:
        for copy in labelled_copies(p.graph, n):
            if len(copy) == 2:
                a, b = copy
                single[a] |= 1 << b
                single[b] |= 1 << a
            else:
                a, b, c = copy
                for t, u, w in ((a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)):
                    pair[t][u] = pair[t].get(u, 0) | (1 << w)
    keys = tuple(sum(1 << u for u in d) for d in pair)
    return _Tables(n, size, tuple(single), keys, tuple(pair), vertex_masks(n))


# ---------------------------------------------------------------------------
# the search


class _Search:
    def __init__(self, query: TuranQuery, budget: Budget, target: Optional[int], enumerate_all: bool):
        self.q = query
        self.tb = _tables(query.n, query.forbidden)
        self.budget = budget
        self.enumerate_all = enumerate_all
        # max mode: incumbent value; enumerate mode: fixed threshold
        self.best = target if target is not None else 0
        self.found: dict[int, ThreeGraph] = {}
        self.stats = SearchStats()
        self.deadline = time.monotonic() + budget.seconds if budget.seconds else None
        self.host_canon = [(len(h), canonical_form(h, max(13, h.n)), h) for h in query.excluded_hosts]

    # -- leaves -------------------------------------------------------------

    def _accept(self, cur: int) -> None:
        q = self.q
        self.stats.leaves += 1
        m = cur.bit_count()
        if m < self.best:
            return
        g = ThreeGraph(q.n, cur)
        if q.connected_only and not is_connected(g):
            self.stats.rejected_leaves += 1
            return
        for a in q.must_contain:
            if not _contains(g, a):
                self.stats.rejected_leaves += 1
                return
        if self.host_canon:
            key = None
            for hm, hc, h in self.host_canon:
                if m > hm:
                    continue
                if m == hm:
                    if key is None:
                        key = canonical_form(g, max(13, q.n))
                    if key == hc:
                        self.stats.rejected_leaves += 1
                        return
                elif find_embedding(h, g) is not None:
                    self.stats.rejected_leaves += 1
                    return
        if not self.enumerate_all and m > self.best:
            self.best = m
            self.found.clear()
        key = canonical_form(g, max(13, q.n))
        self.found.setdefault(key, ThreeGraph(q.n, key))

    # -- interior -----------------------------------------------------------

    def run(self, start=None) -> None:
        tb = self.tb
        n = tb.n
        size = tb.size
        single, pair, pair_keys, vm = tb.single, tb.pair, tb.pair_keys, tb.vm
        full = (1 << size) - 1
        stats = self.stats
        node_cap = self.budget.nodes
        deadline = self.deadline

        def pending_ok(pending, pot):
            for t in pending:
                if single[t] & pot:
                    continue
                d = pair[t]
                for u in iter_bits(pair_keys[t] & pot):
                    if d[u] & pot:
                        break
                else:
                    return False
            return True

        def degrees_ok(cur, avail):
            run_max = -1
            for v in range(n):
                m = vm[v]
                lo = (cur & m).bit_count()
                if lo > run_max:
                    run_max = lo
                if run_max > lo + (avail & m).bit_count():
                    return False
            return True

        def rec(r, cur, blk, pending):
            stats.nodes += 1
            if node_cap is not None and stats.nodes > node_cap:
                raise _Budget("node budget exhausted")
            if deadline is not None and stats.nodes & 1023 == 0 and time.monotonic() > deadline:
                raise _Budget("time budget exhausted")
            # skip triples already blocked: they are excluded and count as maximal
            while r >= 0 and blk >> r & 1:
                stats.forced_excludes += 1
                r -= 1
            if r < 0:
                if (full & ~cur & ~blk) == 0:
                    self._accept(cur)
                else:
                    stats.pruned_maximality += 1
                return
            below = (1 << (r + 1)) - 1
            avail = below & ~blk
            if cur.bit_count() + avail.bit_count() < self.best:
                stats.pruned_bound += 1
                return
            if pending:
                pending = [t for t in pending if not blk >> t & 1]
                if not pending_ok(pending, cur | avail):
                    stats.pruned_maximality += 1
                    return
            if not degrees_ok(cur, avail):
                stats.pruned_symmetry += 1
                return
            bit = 1 << r
            # include
            nblk = blk | single[r]
            d = pair[r]
            for u in iter_bits(cur & pair_keys[r]):
                nblk |= d[u]
            rec(r - 1, cur | bit, nblk, pending)
            # exclude: r is unblocked now, so it must be blocked later
            rec(r - 1, cur, blk, pending + [r])

        if start is None:
            rec(size - 1, 0, 0, [])
        else:
            rec(*start)

    def frontier(self, depth: int) -> list[tuple]:
        """Subproblems after the first ``depth`` branching decisions (no pruning)."""
        tb = self.tb
        out = []

        def walk(r, cur, blk, pending, k):
            while r >= 0 and blk >> r & 1:
                r -= 1
            if k == depth or r < 0:
                out.append((r, cur, blk, list(pending)))
                return
            nblk = blk | tb.single[r]
            for u in iter_bits(cur & tb.pair_keys[r]):
                nblk |= tb.pair[r][u]
            walk(r - 1, cur | (1 << r), nblk, pending, k + 1)
            walk(r - 1, cur, blk, pending + [r], k + 1)

        walk(tb.size - 1, 0, 0, [], 0)
        return out


class _Budget(Exception):
    pass


def _contains(g: ThreeGraph, anchor: Anchor) -> bool:
    if isinstance(anchor, Pattern):
        return has_pattern(g, anchor)
    return find_embedding(g, anchor) is not None


def _certify(result: TuranResult) -> None:
    q = result.query
    for g in result.extremal:
        assert len(g) == result.value
        for p in q.forbidden:
            assert find_embedding(g, p.graph) is None, f"extremal graph contains {p.name}"
        for h in q.excluded_hosts:
            assert not is_subgraph_upto_iso(g, h, same_n=True), "extremal graph embeds in an excluded host"
        for a in q.must_contain:
            assert _contains(g, a)
        if q.connected_only:
            assert is_connected(g)


def _solve_chunk(args):
    query, budget, target, enumerate_all, start = args
    s = _Search(query, budget, target, enumerate_all)
    try:
        s.run(start)
    except _Budget as exc:
        return None, s.best, s.found, s.stats, str(exc)
    return True, s.best, s.found, s.stats, None


def search(query: TuranQuery, budget: Budget = Budget(), *, target: Optional[int] = None,
           enumerate_all: bool = False, workers: int = 1, split_depth: int = 6) -> TuranResult:
    """Run one exact search.

    In the default mode the result holds the maximum edge count and all maximisers
    up to isomorphism.  With ``enumerate_all`` every qualifying edge-maximal graph
    with at least ``target`` edges is collected, and ``value`` is the largest count.
    """
    t0 = time.monotonic()
    if workers <= 1:
        s = _Search(query, budget, target, enumerate_all)
        try:
            s.run()
        except _Budget as exc:
            s.stats.wall_time = time.monotonic() - t0
            raise IncompleteSearchError(f"{exc} (n={query.n}, order={query.order})",
                                        best=s.best if s.found else None, stats=s.stats) from None
        best, found, stats = s.best, s.found, s.stats
    else:
        seed = _Search(query, budget, target, enumerate_all)
        jobs = [(query, budget, target, enumerate_all, st) for st in seed.frontier(split_depth)]
        stats = SearchStats()
        found = {}
        results = []
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_solve_chunk, jobs))
        incomplete = None
        for done, b, f, st, msg in results:
            stats.merge(st)
            if done is None:
                incomplete = msg
            found.update(f)
        if incomplete:
            stats.wall_time = time.monotonic() - t0
            raise IncompleteSearchError(f"{incomplete} (n={query.n}, order={query.order})", stats=stats)
        if found and not enumerate_all:
            top = max(len(g) for g in found.values())
            found = {k: g for k, g in found.items() if len(g) == top}
        best = max((len(g) for g in found.values()), default=0)
    stats.wall_time = time.monotonic() - t0
    extremal = sorted(found.values(), key=lambda g: (-len(g), g.bits))
    value = max((len(g) for g in extremal), default=None)
    if not enumerate_all and extremal:
        extremal = [g for g in extremal if len(g) == value]
    result = TuranResult(value, extremal, stats, query)
    if not enumerate_all:
        _certify(result)
    return result


# ---------------------------------------------------------------------------
# public operations


def _patterns(forbidden) -> tuple[Pattern, ...]:
    if isinstance(forbidden, (str, Pattern)):
        forbidden = [forbidden]
    return tuple(sorted((get_pattern(p) for p in forbidden), key=lambda p: p.name))


def max_free(n: int, forbidden, *, must_contain: Sequence[Anchor] = (), connected_only: bool = False,
             excluded_hosts: Sequence[ThreeGraph] = (), order: int = 1, budget: Budget = Budget(),
             workers: int = 1) -> TuranResult:
    q = TuranQuery(n, _patterns(forbidden), order, tuple(must_contain), connected_only, tuple(excluded_hosts))
    return search(q, budget, workers=workers)


def ladder(n: int, forbidden, max_order: int, *, must_contain: Sequence[Anchor] = (),
           connected_only: bool = False, budget: Budget = Budget(), workers: int = 1) -> TuranLadder:
    """Orders 1..max_order, each excluding the extremal families of the lower orders."""
    pats = _patterns(forbidden)
    hosts: list[ThreeGraph] = []
    results = []
    for s in range(1, max_order + 1):
        q = TuranQuery(n, pats, s, tuple(must_contain), connected_only, tuple(hosts))
        res = search(q, budget, workers=workers)
        results.append(res)
        if res.value is None:
            break
        hosts.extend(res.extremal)
    ref = []
    if [p.name for p in pats] == ["P"] and not must_contain and not connected_only:
        ref = [reference.p_value(s, n) for s in range(1, max_order + 1)]
    return TuranLadder(n, pats, results, ref)


def conditional(n: int, forbidden, anchor, *, connected_only: bool = False, order: int = 1,
                budget: Budget = Budget(), workers: int = 1) -> TuranResult:
    """ex(n; F | anchor), optionally connected, optionally of higher order."""
    if anchor is None:
        anchor = []
    anchors = anchor if isinstance(anchor, (list, tuple)) else [anchor]
    anchors = tuple(get_pattern(a) if isinstance(a, str) else a for a in anchors)
    pats = _patterns(forbidden)
    for a in anchors:
        g = a.graph if isinstance(a, Pattern) else a
        if any(find_embedding(g, p.graph) is not None for p in pats):
            raise InvalidParameterError(f"anchor {getattr(a, 'name', a)} is not free of the forbidden family")
    lad = ladder(n, pats, order, must_contain=anchors, connected_only=connected_only,
                 budget=budget, workers=workers)
    if len(lad.results) < order:
        return TuranResult(None, [], lad.results[-1].stats, lad.results[-1].query)
    return lad.results[order - 1]


def enumerate_maximal(n: int, forbidden, *, must_contain: Sequence[Anchor] = (), connected_only: bool = False,
                      min_edges: int = 0, budget: Budget = Budget()) -> list[ThreeGraph]:
    """All edge-maximal free graphs (up to isomorphism) meeting the constraints."""
    q = TuranQuery(n, _patterns(forbidden), 1, tuple(must_contain), connected_only, ())
    return search(q, budget, target=min_edges, enumerate_all=True).extremal


# ---------------------------------------------------------------------------
# reference comparison


@dataclass
class ReferenceEntry:
    n: int
    order: int
    reference: Optional[int]
    computed: Optional[int]
    status: str  # value: match | mismatch | reference-only | incomplete
    family: str = "unchecked"  # match | mismatch | unchecked
    detail: str = ""


@dataclass
class ReferenceReport:
    entries: list[ReferenceEntry]

    @property
    def values_ok(self) -> bool:
        return all(e.status != "mismatch" for e in self.entries)

    @property
    def families_ok(self) -> bool:
        return all(e.family != "mismatch" for e in self.entries)

    @property
    def ok(self) -> bool:
        return self.values_ok and self.families_ok

    def table(self) -> str:
        lines = ["n\torder\treference\tcomputed\tvalue\tfamily\tdetail"]
        for e in self.entries:
            ref = "-" if e.reference is None else e.reference
            comp = "-" if e.computed is None else e.computed
            lines.append(f"{e.n}\t{e.order}\t{ref}\t{comp}\t{e.status}\t{e.family}\t{e.detail}")
        return "\n".join(lines) + "\n"


def family_graphs(order: int, n: int, rocket_def: Optional[RocketDefinition] = None,
                  ex4_m7: Optional[list[ThreeGraph]] = None) -> Optional[list[ThreeGraph]]:
    """Reference family as graphs; None if some member cannot be built here."""
    out = []
    for expr in reference.p_family(order, n):
        if expr == reference.ENGINE_EX4_M7 and ex4_m7 is not None:
            out.extend(ex4_m7)
            continue
        if not reference.is_buildable(expr, rocket_def):
            return None
        out.append(parse_name(expr, rocket_def))
    return out


def check_reference_tables(max_n: int, computed_max_n: int = 8, *, budget: Budget = Budget(),
                           ladders: Optional[dict[int, TuranLadder]] = None) -> ReferenceReport:
    """Compare exact ladders (n <= computed_max_n) with the tables; check the rest for consistency."""
    entries = []
    ladders = dict(ladders or {})
    ex4_m7 = None
    for n in range(7, max_n + 1):
        refs = reference.p_row(n)
        lad = None
        if n <= computed_max_n:
            lad = ladders.get(n)
            if lad is None:
                try:
                    lad = ladder(n, "P", 5, budget=budget)
                except IncompleteSearchError as exc:
                    for s in range(1, 6):
                        entries.append(ReferenceEntry(n, s, refs[s - 1], exc.best, "incomplete", detail=str(exc)))
                    continue
        if lad is not None:
            if n == 7 and ex4_m7 is None:
                ex4_m7 = ladder(7, "M", 4, budget=budget).results[3].extremal
            for s in range(1, 6):
                res = lad.results[s - 1] if s <= len(lad.results) else None
                comp = res.value if res else None
                status = "match" if comp == refs[s - 1] else "mismatch"
                family, detail = "unchecked", ""
                fam = family_graphs(s, n, ex4_m7=ex4_m7)
                if res is not None and fam is not None:
                    want = {canonical_form(g) for g in fam}
                    got = res.canonical_set()
                    if want != got:
                        family = "mismatch"
                        detail = f"reference family has {len(want)} graphs, computed {len(got)}"
                    else:
                        family = "match"
                        detail = f"{len(want)} graphs"
                entries.append(ReferenceEntry(n, s, refs[s - 1], comp, status, family, detail))
        else:
            dec = reference.strictly_decreasing(refs)
            for s in range(1, 6):
                entries.append(ReferenceEntry(n, s, refs[s - 1], None,
                                              "reference-only" if dec else "mismatch",
                                              detail="" if dec else "reference row not strictly decreasing"))
    return ReferenceReport(entries)
