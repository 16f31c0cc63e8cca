"""Named 3-graphs under a fixed labelling convention.

Distinguished vertices take the smallest labels:

* star ``S(n)``: centre 0
* comet ``Co(n)``: centre 0, head {1, 2, 3}; the star part lives on {0, 4, .., n-1}
* ``G1(n)``: v = 0, {x, y, z} = {1, 2, 3}
* ``G2(n)``: {x, y, z} = {0, 1, 2}
* ``G3(n)``: x = 0, y1, y2 = 1, 2, z1, z2 = 3, 4
* ``K5+t``: K5 on 0..4, a = 0, b = 1, pendant vertices 5..4+t

Unions are written ``"K6 u S10"``, ``"2K6 u K1"`` and so on (see ``parse_name``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from pathlib import Path
from typing import Callable, Optional

from .embed import find_P, has_pattern
from .errors import ConstructionUndefinedError, InvalidParameterError
from .graph import ThreeGraph, disjoint_union, read_3g
from .patterns import PATTERNS, P


def complete(n: int) -> ThreeGraph:
    _need(n >= 1, f"K_n needs n >= 1, got {n}")
    return ThreeGraph.complete(n)


def empty(n: int) -> ThreeGraph:
    _need(n >= 1, f"empty graph needs n >= 1, got {n}")
    return ThreeGraph.empty(n)


def star(n: int) -> ThreeGraph:
    _need(n >= 3, f"S_n needs n >= 3, got {n}")
    return ThreeGraph.from_edges(n, ((0, a, b) for a, b in combinations(range(1, n), 2)))


def comet(n: int) -> ThreeGraph:
    _need(n >= 4, f"Co(n) needs n >= 4, got {n}")
    edges = list(combinations(range(4), 3))
    edges += [(0, a, b) for a, b in combinations(range(4, n), 2)]
    return ThreeGraph.from_edges(n, edges)


def g1(n: int) -> ThreeGraph:
    _need(n >= 4, f"G1(n) needs n >= 4, got {n}")
    xyz = {1, 2, 3}
    edges = [(1, 2, 3)]
    edges += [(0, a, b) for a, b in combinations(range(1, n), 2) if a in xyz or b in xyz]
    return ThreeGraph.from_edges(n, edges)


def g2(n: int) -> ThreeGraph:
    _need(n >= 4, f"G2(n) needs n >= 4, got {n}")
    xyz = {0, 1, 2}
    edges = [h for h in combinations(range(n), 3) if len(xyz.intersection(h)) >= 2]
    return ThreeGraph.from_edges(n, edges)


def g3(n: int) -> ThreeGraph:
    _need(n >= 5, f"G3(n) needs n >= 5, got {n}")
    edges = [h for h in combinations(range(5), 3) if h not in ((1, 2, 3), (1, 2, 4))]
    edges += [(0, z, v) for z in (3, 4) for v in range(5, n)]
    return ThreeGraph.from_edges(n, edges)


def k5_plus(t: int) -> ThreeGraph:
    _need(t >= 0, f"K5+t needs t >= 0, got {t}")
    edges = list(combinations(range(5), 3)) + [(0, 1, v) for v in range(5, 5 + t)]
    return ThreeGraph.from_edges(5 + t, edges)


def _need(cond: bool, msg: str) -> None:
    if not cond:
        raise InvalidParameterError(msg)


# ---------------------------------------------------------------------------
# the rocket is defined outside this package; it can only be supplied


@dataclass
class RocketDefinition:
    """User-supplied rocket: explicit graphs per order and/or a generator."""

    graphs: dict[int, ThreeGraph] = field(default_factory=dict)
    generator: Optional[Callable[[int], ThreeGraph]] = None

    @classmethod
    def from_paths(cls, *paths: str | Path) -> "RocketDefinition":
        graphs = {}
        for p in paths:
            p = Path(p)
            files = sorted(p.glob("*.3g")) if p.is_dir() else [p]
            for f in files:
                g = read_3g(f)
                graphs[g.n] = g
        return cls(graphs=graphs)

    def build(self, n: int) -> ThreeGraph:
        if n in self.graphs:
            g = self.graphs[n]
        elif self.generator is not None:
            g = self.generator(n)
        else:
            raise ConstructionUndefinedError(f"rocket definition has no graph for n={n}")
        validate_rocket(g, n)
        return g


def rocket_edge_count(n: int) -> int:
    return 3 + comb(n - 5, 2)


def validate_rocket(g: ThreeGraph, n: int) -> None:
    if g.n != n:
        raise InvalidParameterError(f"rocket for n={n} has {g.n} vertices")
    if len(g) != rocket_edge_count(n):
        raise InvalidParameterError(
            f"rocket for n={n} has {len(g)} edges, expected 3 + C(n-5,2) = {rocket_edge_count(n)}"
        )
    if find_P(g) is not None:
        raise InvalidParameterError(f"rocket for n={n} contains P")


def rocket(n: int, definition: Optional[RocketDefinition] = None) -> ThreeGraph:
    if definition is None:
        raise ConstructionUndefinedError(
            "Ro(n) has no built-in definition; supply one with a RocketDefinition (--rocket)"
        )
    return definition.build(n)


# ---------------------------------------------------------------------------
# names

_SIMPLE = {
    "K": complete,
    "S": star,
    "Co": comet,
    "G1": g1,
    "G2": g2,
    "G3": g3,
    "E": empty,
}

_TERM = re.compile(
    r"^(?P<mult>\d+)?\s*(?:"
    r"(?P<kplus>K5\+)(?P<t>\d+)"
    r"|(?P<fam>Co|G1|G2|G3|Ro|K|S|E)\s*\(?\s*(?P<n>\d+)\s*\)?"
    r"|(?P<pat>P2K3|P2UK3|P2|P|C|M)"
    r")$"
)


def parse_name(expr: str, rocket_def: Optional[RocketDefinition] = None) -> ThreeGraph:
    """Build a graph from a name such as ``"Co(13)"``, ``"K5+2"``, ``"2K6 u K1"``."""
    parts = re.split(r"\s*(?:∪|\bu\b|\bU\b|\|)\s*", expr.strip())
    graphs = []
    for part in parts:
        m = _TERM.match(part.replace("₂", "2").replace("₃", "3"))
        if not m:
            raise InvalidParameterError(f"cannot parse construction term {part!r}")
        mult = int(m.group("mult") or 1)
        if m.group("kplus"):
            g = k5_plus(int(m.group("t")))
        elif m.group("fam"):
            fam, n = m.group("fam"), int(m.group("n"))
            g = rocket(n, rocket_def) if fam == "Ro" else _SIMPLE[fam](n)
        else:
            key = m.group("pat").upper().replace("P2UK3", "P2K3")
            g = PATTERNS[key].graph
        graphs.extend([g] * mult)
    return graphs[0] if len(graphs) == 1 else disjoint_union(*graphs)


_BUILDERS = {
    "complete": complete,
    "k": complete,
    "empty": empty,
    "star": star,
    "s": star,
    "comet": comet,
    "co": comet,
    "g1": g1,
    "g2": g2,
    "g3": g3,
}


def build(name: str, n: Optional[int] = None, t: Optional[int] = None,
          rocket_def: Optional[RocketDefinition] = None) -> ThreeGraph:
    """Build by family name and parameters, or by expression when no parameter is given."""
    key = name.lower()
    if key in ("rocket", "ro"):
        if n is None:
            raise InvalidParameterError("rocket needs --n")
        return rocket(n, rocket_def)
    if key in ("k5plus", "k5+", "k5+t"):
        if t is None:
            if n is None:
                raise InvalidParameterError("K5+t needs t (or n = t + 5)")
            t = n - 5
        return k5_plus(t)
    if key in _BUILDERS:
        if n is None:
            raise InvalidParameterError(f"{name} needs n")
        return _BUILDERS[key](n)
    if key.upper() in PATTERNS or key.upper().replace("UK3", "K3") in PATTERNS:
        return parse_name(name.upper())
    return parse_name(name, rocket_def)


# ---------------------------------------------------------------------------
# formula sweep


@dataclass
class CheckEntry:
    construction: str
    n: int
    prop: str
    expected: object
    actual: object

    @property
    def ok(self) -> bool:
        return self.expected == self.actual


@dataclass
class CheckReport:
    entries: list[CheckEntry]

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.entries)

    @property
    def failures(self) -> list[CheckEntry]:
        return [e for e in self.entries if not e.ok]

    def table(self) -> str:
        lines = ["construction\tn\tproperty\texpected\tactual\tstatus"]
        for e in self.entries:
            lines.append(f"{e.construction}\t{e.n}\t{e.prop}\t{e.expected}\t{e.actual}\t{'ok' if e.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def check_formulas(max_n: int, rocket_def: Optional[RocketDefinition] = None) -> CheckReport:
    """Edge counts and freeness of every named construction and every tabulated extremal graph."""
    from . import reference  # local import: reference builds on this module

    entries: list[CheckEntry] = []

    def add(name, n, prop, expected, actual):
        entries.append(CheckEntry(name, n, prop, expected, actual))

    M, C = PATTERNS["M"], PATTERNS["C"]
    for n in range(3, max_n + 1):
        s = star(n)
        add("S", n, "edges", comb(n - 1, 2), len(s))
        add("S", n, "P-free", True, not has_pattern(s, P))
        add("S", n, "M-free", True, not has_pattern(s, M))
        add("S", n, "C-free", True, not has_pattern(s, C))
    for n in range(4, max_n + 1):
        co = comet(n)
        add("Co", n, "edges", 4 + comb(n - 4, 2), len(co))
        add("Co", n, "P-free", True, not has_pattern(co, P))
        add("Co", n, "C-free", True, not has_pattern(co, C))
        if n >= 6:
            add("Co", n, "contains M", True, has_pattern(co, M))
        for label, fn in (("G1", g1), ("G2", g2)):
            g = fn(n)
            add(label, n, "edges", 3 * n - 8, len(g))
            add(label, n, "M-free", True, not has_pattern(g, M))
            if n >= 7:
                add(label, n, "P-free", True, not has_pattern(g, P))
                add(label, n, "contains C", True, has_pattern(g, C))
    for n in range(5, max_n + 1):
        g = g3(n)
        add("G3", n, "edges", 2 * n - 2, len(g))
        add("G3", n, "M-free", True, not has_pattern(g, M))
        add("G3", n, "P-free", True, not has_pattern(g, P))
        t = n - 5
        k = k5_plus(t)
        add("K5+t", n, "edges", n + 5, len(k))
        add("K5+t", n, "P-free", True, not has_pattern(k, P))
        if t >= 1:
            add("K5+t", n, "contains C", True, has_pattern(k, C))
            add("K5+t", n, "contains M", True, has_pattern(k, M))
    for n in range(1, 7):
        add("K", n, "P-free", True, not has_pattern(complete(n), P))

    # every member of every tabulated extremal family
    for s in range(1, 6):
        for n in range(7, max_n + 1):
            value = reference.p_value(s, n)
            for expr in reference.p_family(s, n):
                if not reference.is_buildable(expr, rocket_def):
                    continue
                g = parse_name(expr, rocket_def)
                add(expr, n, f"order-{s} edges", value, len(g))
                add(expr, n, f"order-{s} vertices", n, g.n)
                add(expr, n, f"order-{s} P-free", True, not has_pattern(g, P))
    return CheckReport(entries)
