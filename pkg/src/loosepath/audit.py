"""Structural decomposition around a copy of P2 u K3, and the inequalities it carries.

For a {P,C}-free 3-graph H containing M and P2 u K3, fix a copy Q of P2 that
sits in a copy of P2 u K3, with x the vertex shared by its two edges.  With
U = V(Q) and W the rest, W0 collects the vertices isolated in H[W] and
W1 = W - W0.  Edges meeting U split into H0 / H1 (by whether they meet W0 or
W1) and into F0 / F1 / F2 by |h n (U - x)|.  ``audit_inequalities`` evaluates
the bounds the extremal argument rests on, each under its own side condition.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from typing import Optional

from .constructions import k5_plus
from .embed import find_C, find_P, has_pattern, is_subgraph_upto_iso
from .errors import InvalidParameterError, NotDecomposableError
from .graph import ThreeGraph, is_connected, iter_bits, triples
from .patterns import C, M, P, P2K3
from .turan import Budget, _tables, enumerate_maximal


@dataclass(frozen=True)
class Decomposition:
    host: ThreeGraph
    Q: tuple[int, int]
    x: int
    U: frozenset[int]
    W: frozenset[int]
    W0: frozenset[int]
    W1: frozenset[int]
    HU: tuple[tuple, ...]
    HW: tuple[tuple, ...]
    H0: tuple[tuple, ...]
    H1: tuple[tuple, ...]
    F: tuple[tuple[tuple, ...], ...]  # F[k], k = 0, 1, 2
    mixed: tuple[tuple, ...]          # edges meeting U, W0 and W1 (must be empty)

    def Fik(self, i: int, k: int) -> list[tuple]:
        Hi = set(self.H0 if i == 0 else self.H1)
        return [h for h in self.F[k] if h in Hi]

    def at(self, edges, v: int) -> list[tuple]:
        return [h for h in edges if v in h]

    def sizes(self) -> dict[str, int]:
        out = {
            "n": self.host.n, "edges": len(self.host), "|W0|": len(self.W0), "|W1|": len(self.W1),
            "|H[U]|": len(self.HU), "|H[W]|": len(self.HW), "|H0|": len(self.H0), "|H1|": len(self.H1),
        }
        for k in range(3):
            out[f"|F{k}|"] = len(self.F[k])
            for i in range(2):
                out[f"|F{k}_{i}|"] = len(self.Fik(i, k))
        return out


def _p2k3_copies(h: ThreeGraph):
    """Copies of P2 u K3 as (rank triple, P2 ranks, x), in lexicographic order of sorted ranks."""
    tr = triples(h.n)
    ranks = h.edge_ranks()
    for r1, r2, r3 in combinations(ranks, 3):
        es = {r: set(tr[r]) for r in (r1, r2, r3)}
        for a, b, c in ((r1, r2, r3), (r1, r3, r2), (r2, r3, r1)):
            shared = es[a] & es[b]
            if len(shared) == 1 and not (es[c] & (es[a] | es[b])):
                yield (r1, r2, r3), (a, b), next(iter(shared))


def _check_preconditions(h: ThreeGraph) -> None:
    if has_pattern(h, P):
        raise NotDecomposableError("P-free", "host contains P")
    if has_pattern(h, C):
        raise NotDecomposableError("C-free", "host contains C")
    if not has_pattern(h, M):
        raise NotDecomposableError("contains M", "host has no two disjoint edges")
    if not has_pattern(h, P2K3):
        raise NotDecomposableError("contains P2uK3", "host has no copy of P2 u K3")


def _build(h: ThreeGraph, q: tuple[int, int], x: int) -> Decomposition:
    tr = triples(h.n)
    U = frozenset(tr[q[0]]) | frozenset(tr[q[1]])
    W = frozenset(range(h.n)) - U
    edges = h.edges()
    HW = tuple(e for e in edges if set(e) <= W)
    covered = {v for e in HW for v in e}
    W1 = frozenset(covered)
    W0 = W - W1
    HU = tuple(e for e in edges if set(e) <= U)
    H0, H1, mixed = [], [], []
    F = ([], [], [])
    for e in edges:
        s = set(e)
        if not s & U or s <= U:
            continue
        m0, m1 = bool(s & W0), bool(s & W1)
        if m0 and m1:
            mixed.append(e)
            continue
        (H0 if m0 else H1).append(e)
        F[len((s & U) - {x})].append(e)
    return Decomposition(h, tuple(q), x, U, W, W0, W1, HU, HW, tuple(H0), tuple(H1),
                         tuple(tuple(f) for f in F), tuple(mixed))


def decompose(h: ThreeGraph) -> Decomposition:
    """Decompose around the lexicographically first copy of P2 u K3."""
    _check_preconditions(h)
    _, q, x = next(_p2k3_copies(h))
    return _build(h, q, x)


def decompose_all(h: ThreeGraph) -> list[Decomposition]:
    """One decomposition per distinct admissible choice of Q."""
    _check_preconditions(h)
    seen, out = set(), []
    for _, q, x in _p2k3_copies(h):
        key = tuple(sorted(q))
        if key not in seen:
            seen.add(key)
            out.append(_build(h, key, x))
    return out


# ---------------------------------------------------------------------------
# the audit


@dataclass
class AuditEntry:
    name: str
    left: Optional[int]
    right: Optional[int]
    applicable: bool
    passed: bool
    where: str = ""

    @property
    def status(self) -> str:
        if not self.applicable:
            return "n/a"
        return "pass" if self.passed else "FAIL"


@dataclass
class AuditReport:
    entries: list[AuditEntry]
    sizes: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(e.passed for e in self.entries if e.applicable)

    @property
    def failures(self) -> list[AuditEntry]:
        return [e for e in self.entries if e.applicable and not e.passed]

    def table(self) -> str:
        lines = ["check\tleft\tright\tstatus\twhere"]
        for e in self.entries:
            left = "-" if e.left is None else e.left
            right = "-" if e.right is None else e.right
            lines.append(f"{e.name}\t{left}\t{right}\t{e.status}\t{e.where}")
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"ok": self.ok, "sizes": self.sizes,
                "entries": [{**asdict(e), "status": e.status} for e in self.entries]}


def _e4_bound(w0: int) -> int:
    if w0 == 1:
        return 8
    if 2 <= w0 <= 4:
        return 3 * w0 + 7
    return comb(w0 + 2, 2) + 1


def _is_star(edges) -> bool:
    if not edges:
        return True
    common = set(edges[0])
    for e in edges[1:]:
        common &= set(e)
    return bool(common)


def audit_inequalities(d: Decomposition) -> AuditReport:
    out: list[AuditEntry] = []

    def add(name, left, right, applicable, where=""):
        ok = (left <= right) if applicable and left is not None else True
        out.append(AuditEntry(name, left, right, applicable, ok, where))

    def flag(name, good, applicable=True, where=""):
        out.append(AuditEntry(name, None, None, applicable, bool(good) or not applicable, where))

    h = d.host
    w0, w1 = len(d.W0), len(d.W1)
    HU, HW, H0, H1 = len(d.HU), len(d.HW), len(d.H0), len(d.H1)
    F = d.F
    F01, F11, F21 = d.Fik(1, 0), d.Fik(1, 1), d.Fik(1, 2)
    huw0 = HU + H0

    # structure
    flag("partition", HU + HW + H0 + H1 == len(h) and not d.mixed)
    flag("no U-W0-W1 edge", not d.mixed, where=" ".join(map(str, d.mixed[:3])))
    flag("F cover", sum(len(f) for f in F) == H0 + H1)
    qpairs = [set(e) for e in (triples(h.n)[r] for r in d.Q)]
    bad_single = [e for e in d.H0 + d.H1 if len(set(e) & d.U) == 1 and set(e) & d.U != {d.x}]
    flag("F0 meets U in x", not bad_single, where=" ".join(map(str, bad_single[:3])))
    bad_pair = [e for e in d.H0 + d.H1 if len(set(e) & d.U) == 2 and not any(set(e) & d.U <= q for q in qpairs)]
    flag("U-pair in Q edge", not bad_pair, where=" ".join(map(str, bad_pair[:3])))
    flag("F1_1 empty", not F11, where=" ".join(map(str, F11[:3])))

    # (uwstar), (hwstar)
    add("uwstar", huw0, comb(w0 + 4, 2), w0 >= 1)
    add("hwstar", HW, comb(w1 - 1, 2), w1 >= 6)

    # (r2), (r3), per vertex of W
    r2_bad = [v for v in sorted(d.W) if d.at(F[0], v) and d.at(F[2], v)]
    flag("r2", not r2_bad, where=",".join(map(str, r2_bad)))
    worst1 = max((len(d.at(F[1], v)) for v in d.W), default=0)
    worst2 = max((len(d.at(F[2], v)) for v in d.W), default=0)
    add("r3 |F1(v)|", worst1, 4, bool(d.W))
    add("r3 |F2(v)|", worst2, 2, bool(d.W))

    # (hv) on W0
    worst_hv = max((sum(1 for e in h.edges() if v in e) for v in d.W0), default=0)
    add("hv", worst_hv, 4 + max(2, w0 - 1), w0 >= 1)

    # (hu1): forced by an edge of H1
    add("hu1", HU, 6, H1 > 0)

    add("r5", len(F21), 2 * w1 - 4, w1 >= 4)
    add("r4", H1, 2 * w1 - 3, w1 >= 3)
    add("r1", len(F01), w1, w1 >= 3)
    add("r7", HU + H1, 2 * w1 - 1, w1 >= 7)
    add("e4", huw0, _e4_bound(w0) if w0 else None, bool(F21) and w0 >= 1)

    # nonseparability of e n W in H[W] for e in F0
    bad = []
    for e in F[0]:
        pair = set(e) & d.W
        for f in d.HW:
            if len(set(f) & pair) not in (0, 2):
                bad.append((e, f))
    flag("nonseparable", not bad, where=" ".join(f"{e}/{f}" for e, f in bad[:3]))

    # opportunistic: |H[W]| <= C(n-8,2)+1 when W0 is empty, H[W] is no star and F0_1 is non-empty
    n = h.n
    cond = n >= 13 and w0 == 0 and H1 > 0 and not _is_star(list(d.HW)) and bool(F01)
    add("hw nonsep", HW, comb(n - 8, 2) + 1 if n >= 8 else None, cond)
    return AuditReport(out, d.sizes())


def audit(h: ThreeGraph, *, all_q: bool = False) -> list[AuditReport]:
    ds = decompose_all(h) if all_q else [decompose(h)]
    return [audit_inequalities(d) for d in ds]


# ---------------------------------------------------------------------------
# sweeps


@dataclass
class StructureSweepReport:
    n: int
    graphs: int
    embedded: int
    max_edges: int
    offenders: list[list[tuple]] = field(default_factory=list)
    decomposable: int = 0
    rejected: dict[str, int] = field(default_factory=dict)
    audit_failures: int = 0

    @property
    def ok(self) -> bool:
        return self.embedded == self.graphs and not self.offenders and self.audit_failures == 0

    def to_dict(self) -> dict:
        return {**asdict(self), "ok": self.ok}


def k5plus_structure_sweep(n: int = 7, budget: Budget = Budget()) -> tuple[StructureSweepReport, list[ThreeGraph]]:
    """Every maximal connected P-free graph containing C and M embeds in K5+(n-5)."""
    graphs = enumerate_maximal(n, "P", must_contain=(C, M), connected_only=True, budget=budget)
    host = k5_plus(n - 5)
    rep = StructureSweepReport(n, len(graphs), 0, max((len(g) for g in graphs), default=0))
    for g in graphs:
        if is_subgraph_upto_iso(g, host, same_n=True):
            rep.embedded += 1
        else:
            rep.offenders.append(g.edges())
        try:
            reports = audit(g)
        except NotDecomposableError as exc:
            rep.rejected[exc.predicate] = rep.rejected.get(exc.predicate, 0) + 1
            continue
        rep.decomposable += 1
        rep.audit_failures += sum(not r.ok for r in reports)
    return rep, graphs


# name used by the operation's published interface
lemma_2_11_sweep = k5plus_structure_sweep


@dataclass
class SweepReport:
    n: int
    trials: int
    seed: int
    audited: int = 0
    passed: int = 0
    skipped: int = 0
    starved: int = 0
    connected: int = 0
    failures: list[dict] = field(default_factory=list)
    per_check: dict[str, list[int]] = field(default_factory=dict)  # name -> [applicable, failed]

    @property
    def ok(self) -> bool:
        return not self.failures and self.starved == 0

    def to_dict(self) -> dict:
        return {**asdict(self), "ok": self.ok}

    def table(self) -> str:
        lines = ["check\tapplicable\tfailed"]
        for name, (app, bad) in self.per_check.items():
            lines.append(f"{name}\t{app}\t{bad}")
        lines.append(f"audited\t{self.audited}\t{self.audited - self.passed}")
        lines.append(f"skipped\t{self.skipped}\t-")
        lines.append(f"starved\t{self.starved}\t-")
        return "\n".join(lines) + "\n"



_TABLE_MAX_N = 12  # completion tables get expensive beyond this


def random_pc_free(n: int, rng: random.Random) -> ThreeGraph:
    """Random greedy {P,C}-free graph; half of the time thinned afterwards."""
    order = list(range(comb(n, 3)))
    rng.shuffle(order)
    cur = 0
    if n <= _TABLE_MAX_N:
        tb = _tables(n, tuple(sorted((P, C), key=lambda p: p.name)))
        blk = 0
        for t in order:
            if blk >> t & 1:
                continue
            d = tb.pair[t]
            for u in iter_bits(cur & tb.pair_keys[t]):
                blk |= d[u]
            blk |= tb.single[t]
            cur |= 1 << t
    else:
        for t in order:
            g = ThreeGraph(n, cur | 1 << t)
            if find_P(g) is None and find_C(g) is None:
                cur = g.bits
    if rng.random() < 0.5:
        keep = rng.uniform(0.6, 1.0)
        cur = sum(1 << t for t in iter_bits(cur) if rng.random() < keep)
    return ThreeGraph(n, cur)


def random_sweep(n: int, trials: int, seed: int, *, retries: int = 50, all_q: bool = False,
                 connected_only: bool = False) -> SweepReport:
    """Audit ``trials`` random qualifying graphs; attempts that miss the preconditions count as skipped."""
    if not 8 <= n <= 16:
        raise InvalidParameterError(f"random sweep needs 8 <= n <= 16, got {n}")
    rep = SweepReport(n, trials, seed)
    for i in range(trials):
        rng = random.Random(seed * 1_000_003 + i)
        for _ in range(retries):
            g = random_pc_free(n, rng)
            if connected_only and not is_connected(g):
                rep.skipped += 1
                continue
            try:
                reports = audit(g, all_q=all_q)
            except NotDecomposableError:
                rep.skipped += 1
                continue
            break
        else:
            rep.starved += 1
            continue
        rep.audited += 1
        rep.connected += is_connected(g)
        good = True
        for r in reports:
            for e in r.entries:
                slot = rep.per_check.setdefault(e.name, [0, 0])
                if e.applicable:
                    slot[0] += 1
                    if not e.passed:
                        slot[1] += 1
            if not r.ok:
                good = False
                rep.failures.append({"trial": i, "edges": g.edges(),
                                     "failed": [e.name for e in r.failures], "sizes": r.sizes})
        rep.passed += good
    return rep


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=list)
