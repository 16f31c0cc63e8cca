"""Colourings of complete 3-graphs and monochromatic loose paths.

``reduction_trace`` replays the vertex/colour reduction behind R(P;10) <= 16
on a concrete colouring: at every stage it either exhibits a monochromatic P
or finds a colour class that sits inside a star-like host, deletes the host's
centre (and the few edges of that colour that avoid it), and moves to one
vertex and one colour fewer, checking the total-edge schedule on the way.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import asdict, dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Optional, Sequence

from . import reference
from .constructions import RocketDefinition
from .embed import find_embedding, find_P
from .errors import FormatError, IncompleteSearchError, InvalidInputError
from .graph import ThreeGraph, iter_bits, rank_table, triple_rank, triples, vertex_masks
from .patterns import P
from .turan import Budget, _tables


@dataclass(frozen=True)
class Coloring:
    n: int
    r: int
    assignment: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "assignment", tuple(int(c) for c in self.assignment))
        if len(self.assignment) != comb(self.n, 3):
            raise InvalidInputError(f"colouring of K_{self.n} needs {comb(self.n, 3)} entries, got {len(self.assignment)}")
        if self.r < 1:
            raise InvalidInputError("need at least one colour")
        bad = [c for c in self.assignment if not 0 <= c < self.r]
        if bad:
            raise InvalidInputError(f"colour {bad[0]} outside 0..{self.r - 1}")

    def color_masks(self) -> list[int]:
        masks = [0] * self.r
        for i, c in enumerate(self.assignment):
            masks[c] |= 1 << i
        return masks

    def color_class(self, c: int) -> ThreeGraph:
        return ThreeGraph(self.n, self.color_masks()[c])

    @classmethod
    def random(cls, n: int, r: int, rng: random.Random) -> "Coloring":
        return cls(n, r, tuple(rng.randrange(r) for _ in range(comb(n, 3))))

    @classmethod
    def constant(cls, n: int, r: int, color: int = 0) -> "Coloring":
        return cls(n, r, (color,) * comb(n, 3))


@dataclass(frozen=True)
class MonoPCertificate:
    color: int
    vertices: tuple[int, ...]  # a, b, c, d, e, f, g
    edges: tuple[int, int, int]  # ranks of abc, cde, efg

    @classmethod
    def from_path(cls, color: int, path: Sequence[int]) -> "MonoPCertificate":
        a, b, c, d, e, f, g = path
        ranks = tuple(triple_rank(*sorted(t)) for t in ((a, b, c), (c, d, e), (e, f, g)))
        return cls(color, tuple(path), ranks)

    def to_json(self) -> str:
        return json.dumps({"color": self.color, "vertices": list(self.vertices), "edges": list(self.edges)})

    @classmethod
    def from_json(cls, text: str) -> "MonoPCertificate":
        try:
            d = json.loads(text)
            return cls(int(d["color"]), tuple(int(v) for v in d["vertices"]), tuple(int(e) for e in d["edges"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise FormatError(f"bad certificate JSON: {exc}") from exc


def find_mono_P(c: Coloring) -> Optional[MonoPCertificate]:
    for color, mask in enumerate(c.color_masks()):
        path = find_P(ThreeGraph(c.n, mask))
        if path is not None:
            return MonoPCertificate.from_path(color, path)
    return None


def verify_certificate(c: Coloring, cert: MonoPCertificate) -> bool:
    vs = cert.vertices
    if len(vs) != 7 or len(set(vs)) != 7 or any(not 0 <= v < c.n for v in vs):
        return False
    if len(cert.edges) != 3 or not 0 <= cert.color < c.r:
        return False
    a, b, cc, d, e, f, g = vs
    want = [(a, b, cc), (cc, d, e), (e, f, g)]
    size = comb(c.n, 3)
    tr = triples(c.n)
    for rank, t in zip(cert.edges, want):
        if not 0 <= rank < size or tr[rank] != tuple(sorted(t)):
            return False
        if c.assignment[rank] != cert.color:
            return False
    return True


# ---------------------------------------------------------------------------
# host classifiers on a colour class living on the vertex set ``alive``


def _vertices_of(edges) -> set[int]:
    return {v for e in edges for v in e}


def classify_star(edges: list[tuple], alive: Sequence[int]) -> Optional[int]:
    """Centre of a star containing every edge, if any."""
    if not edges:
        return min(alive)
    common = set(edges[0])
    for e in edges[1:]:
        common &= set(e)
        if not common:
            return None
    return min(common)


def classify_comet(edges: list[tuple], alive: Sequence[int]) -> Optional[tuple[int, tuple]]:
    """``(centre, head)`` of a comet containing the class (head is the one edge avoiding the centre)."""
    for c in sorted(alive):
        rest = [e for e in edges if c not in e]
        if len(rest) != 1:
            continue
        head = set(rest[0])
        if all(len(head & set(e)) in (0, 2) for e in edges if c in e):
            return c, rest[0]
    return None


def classify_clique_star(edges: list[tuple], alive: Sequence[int], k: int) -> Optional[tuple[int, tuple]]:
    """``(centre, clique)`` for a K_k u S host: every edge lies in the k-set or holds the centre and avoids the k-set."""
    alive_set = set(alive)
    for c in sorted(alive):
        rest = [e for e in edges if c not in e]
        if not rest:
            continue
        core = _vertices_of(rest)
        if len(core) > k or c in core:
            continue
        link = _vertices_of(e for e in edges if c in e) - {c}
        if core & link:
            continue
        spare = sorted(alive_set - core - link - {c})
        need = k - len(core)
        if need > len(spare):
            continue
        return c, tuple(sorted(core | set(spare[:need])))
    return None


def is_k6_star10(edges: list[tuple], alive: Sequence[int]) -> bool:
    if len(edges) != 56:
        return False
    hit = classify_clique_star(edges, alive, 6)
    if hit is None:
        return False
    c, core = hit
    inside = sum(1 for e in edges if set(e) <= set(core))
    return inside == 20


# ---------------------------------------------------------------------------
# the trace


@dataclass
class TraceStep:
    n: int
    r: int
    color_edges: dict[int, int]
    total_edges: int
    required_total: Optional[int]
    colors_with_P: list[int]
    chosen_color: Optional[int] = None
    host: Optional[str] = None
    removed_vertex: Optional[int] = None
    removed_extra_edges: list[int] = field(default_factory=list)
    note: str = ""


@dataclass
class ProofGap:
    n: int
    assertion: str
    detail: str


@dataclass
class ReductionTrace:
    steps: list[TraceStep]
    certificate: Optional[MonoPCertificate] = None
    gap: Optional[ProofGap] = None
    logged_gaps: list[str] = field(default_factory=list)
    seed: Optional[int] = None

    @property
    def ok(self) -> bool:
        return self.gap is None and self.certificate is not None

    def to_dict(self) -> dict:
        d = asdict(self)
        if self.certificate is not None:
            d["certificate"] = json.loads(self.certificate.to_json())
        return d


# hosts the argument allows at each order; (name, extra edges allowed)
def _allowed_hosts(n: int) -> tuple[str, ...]:
    if n == 16:
        return ("star", "comet", "K4uS", "rocket")
    if n in (15, 14):
        return ("star", "comet")
    return ("star",)


_EXTRA_LIMIT = {"star": 0, "comet": 1, "K4uS": 4, "rocket": 4}


def reduction_trace(c: Coloring, *, early_exit: bool = True, rocket_def: Optional[RocketDefinition] = None,
                    seed: Optional[int] = None) -> ReductionTrace:
    """Replay the reduction argument on ``c`` (a colouring of K_{r+6}, r <= 10)."""
    if not isinstance(c, Coloring):
        raise InvalidInputError("reduction_trace needs a Coloring")
    if c.n != c.r + 6 or not 2 <= c.r <= 10:
        raise InvalidInputError(f"reduction needs n = r + 6 with 2 <= r <= 10, got n={c.n}, r={c.r}")
    N = c.n
    tr = triples(N)
    vm = vertex_masks(N)
    masks = dict(enumerate(c.color_masks()))
    alive = list(range(N))
    trace = ReductionTrace([], seed=seed)

    def path_in(mask):
        return find_P(ThreeGraph(N, mask))

    while True:
        n, r = len(alive), len(masks)
        total = sum(m.bit_count() for m in masks.values())
        paths = {col: path_in(m) for col, m in sorted(masks.items())}
        with_p = [col for col, p in paths.items() if p is not None]
        step = TraceStep(n, r, {col: m.bit_count() for col, m in sorted(masks.items())}, total,
                         reference.RAMSEY_SCHEDULE.get(n), with_p)
        trace.steps.append(step)
        need = reference.RAMSEY_SCHEDULE.get(n)
        if need is not None and total < need:
            trace.gap = ProofGap(n, "total-edge schedule", f"|H({n})| = {total} < {need}")
            return trace

        def certify():
            col = with_p[0]
            trace.certificate = MonoPCertificate.from_path(col, paths[col])
            step.note = f"monochromatic P in colour {col}"
            return trace

        if with_p and early_exit:
            return certify()
        if n <= 8:
            # |H(8)| >= 50 with two colours leaves one with > 21 = ex(8;P) edges
            if with_p:
                return certify()
            trace.gap = ProofGap(n, "pigeonhole endgame", f"no colour contains P with {total} edges on {n} vertices")
            return trace

        free = [col for col in sorted(masks) if col not in with_p]
        all_free = not with_p
        if all_free:
            # averaging: some colour is heavier than the lower-order hosts allow
            heaviest = max(masks[col].bit_count() for col in free)
            step.note = f"heaviest colour has {heaviest} edges"

        choice = None
        for name in _allowed_hosts(n):
            if name == "rocket" and rocket_def is None:
                msg = f"n={n}: rocket host check skipped (no rocket definition configured)"
                if msg not in trace.logged_gaps:
                    trace.logged_gaps.append(msg)
                continue
            ranked = sorted(free, key=lambda col: (-masks[col].bit_count(), col))
            for col in ranked:
                edges = [tr[i] for i in iter_bits(masks[col])]
                hit = _classify(name, edges, alive, rocket_def, N)
                if hit is not None:
                    choice = (col, name, hit)
                    break
            if choice is not None:
                break

        if choice is None:
            if with_p:
                return certify()
            trace.gap = _explain_failure(n, masks, alive, tr)
            return trace

        col, name, centre = choice
        gone = masks[col] & ~vm[centre]
        extra = list(iter_bits(gone))
        if len(extra) > _EXTRA_LIMIT[name]:
            trace.gap = ProofGap(n, "removal size", f"{name} host left {len(extra)} edges outside its centre")
            return trace
        step.chosen_color = col
        step.host = name
        step.removed_vertex = centre
        step.removed_extra_edges = extra
        kill = vm[centre] | gone
        del masks[col]
        for k in masks:
            masks[k] &= ~kill
        alive.remove(centre)


def _classify(name, edges, alive, rocket_def, N) -> Optional[int]:
    if name == "star":
        return classify_star(edges, alive)
    if name == "comet":
        hit = classify_comet(edges, alive)
        return None if hit is None else hit[0]
    if name == "K4uS":
        hit = classify_clique_star(edges, alive, 4)
        return None if hit is None else hit[0]
    if name == "rocket":
        n = len(alive)
        host = rocket_def.build(n)
        pos = {v: i for i, v in enumerate(sorted(alive))}
        g = ThreeGraph.from_edges(n, ((pos[a], pos[b], pos[c]) for a, b, c in edges))
        emb = find_embedding(host, g)
        if emb is None:
            return None
        deg = host.degrees()
        centre = max(range(n), key=lambda v: (deg[v], -v))
        inv = {h: v for v, h in emb.items()}
        back = sorted(alive)
        # the class vertex sitting on the rocket's centre; if none, any unused vertex works
        if centre in inv:
            return back[inv[centre]]
        used = set(emb.values())
        return back[min(h for h in range(n) if h not in used)] if len(used) < n else None
    raise ValueError(name)


def _explain_failure(n, masks, alive, tr) -> ProofGap:
    if n == 16:
        classes = [[tr[i] for i in iter_bits(m)] for m in masks.values()]
        if all(is_k6_star10(e, alive) for e in classes):
            return ProofGap(n, "parity", "every colour is K6 u S10, but deg_K16(v) = 105 is odd and host degrees are even")
        return ProofGap(n, "host classification", "no P-free colour lies in S16, Co(16), K4 u S12 (rocket unchecked)")
    if n == 13:
        return ProofGap(n, "star fallback", "no colour lies in S13; the comet/2K6 u K1 degree count should exclude this")
    return ProofGap(n, "host classification", f"no P-free colour with an allowed host on {n} vertices")


# ---------------------------------------------------------------------------
# trials


@dataclass
class TrialSummary:
    n: int
    r: int
    count: int
    seed: int
    certificates: int = 0
    verified: int = 0
    trace_ok: int = 0
    gaps: list[dict] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.certificates == self.count == self.verified == self.trace_ok and not self.gaps


def trial_seed(seed: int, i: int) -> int:
    return seed * 1_000_003 + i


def run_trials(n: int, r: int, count: int, seed: int, *, early_exit: bool = True,
               rocket_def: Optional[RocketDefinition] = None) -> TrialSummary:
    summary = TrialSummary(n, r, count, seed)
    for i in range(count):
        s = trial_seed(seed, i)
        col = Coloring.random(n, r, random.Random(s))
        cert = find_mono_P(col)
        if cert is not None:
            summary.certificates += 1
            summary.verified += verify_certificate(col, cert)
        if n == r + 6 and 2 <= r <= 10:
            tr = reduction_trace(col, early_exit=early_exit, rocket_def=rocket_def, seed=s)
            if tr.ok and verify_certificate(col, tr.certificate):
                summary.trace_ok += 1
            if tr.gap is not None:
                summary.gaps.append({"trial": i, "seed": s, **asdict(tr.gap)})
        else:
            summary.trace_ok += 1
    return summary


# ---------------------------------------------------------------------------
# lower-bound witnesses


def search_lower_bound(n: int, r: int, budget: Budget = Budget()) -> Optional[Coloring]:
    """A colouring of K_n with r colours and no monochromatic P, or None if none exists.

    Triples are coloured in increasing rank; a colour may only be opened after
    all smaller colours are in use, which fixes the first triple to colour 0.
    """
    tb = _tables(n, (P,))
    size = tb.size
    single, pair, pair_keys = tb.single, tb.pair, tb.pair_keys
    assign = [0] * size
    cls = [0] * r
    blk = [0] * r
    nodes = 0
    deadline = time.monotonic() + budget.seconds if budget.seconds else None

    def rec(i: int, used: int) -> bool:
        nonlocal nodes
        nodes += 1
        if budget.nodes is not None and nodes > budget.nodes:
            raise IncompleteSearchError("node budget exhausted", stats={"nodes": nodes})
        if deadline is not None and nodes & 1023 == 0 and time.monotonic() > deadline:
            raise IncompleteSearchError("time budget exhausted", stats={"nodes": nodes})
        if i == size:
            return True
        if used == r:
            dead = blk[0]
            for k in range(1, r):
                dead &= blk[k]
            if dead >> i:
                return False
        for col in range(min(used + 1, r)):
            if blk[col] >> i & 1:
                continue
            old_blk, old_cls = blk[col], cls[col]
            nb = old_blk | single[i]
            d = pair[i]
            for u in iter_bits(old_cls & pair_keys[i]):
                nb |= d[u]
            blk[col] = nb
            cls[col] = old_cls | (1 << i)
            assign[i] = col
            if rec(i + 1, max(used, col + 1)):
                return True
            blk[col], cls[col] = old_blk, old_cls
        return False

    if size == 0:
        return Coloring(n, r, ())
    if not rec(0, 0):
        return None
    witness = Coloring(n, r, tuple(assign))
    assert find_mono_P(witness) is None
    return witness


# ---------------------------------------------------------------------------
# .col files


def format_col(c: Coloring) -> str:
    return f"{c.n} {c.r}\n" + " ".join(str(x) for x in c.assignment) + "\n"


def parse_col(text: str) -> Coloring:
    lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise FormatError("empty .col input")
    try:
        n, r = (int(x) for x in lines[0].split())
        values = [int(x) for ln in lines[1:] for x in ln.split()]
    except ValueError as exc:
        raise FormatError(f"bad .col content: {exc}") from exc
    try:
        return Coloring(n, r, tuple(values))
    except InvalidInputError as exc:
        raise FormatError(str(exc)) from exc


def read_col(path: str | Path) -> Coloring:
    return parse_col(Path(path).read_text())


def write_col(c: Coloring, path: str | Path) -> None:
    Path(path).write_text(format_col(c))
