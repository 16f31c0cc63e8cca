"""The small forbidden configurations, built at their minimal vertex counts."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import ThreeGraph
from .errors import InvalidParameterError


@dataclass(frozen=True)
class Pattern:
    name: str
    graph: ThreeGraph

    @property
    def num_edges(self) -> int:
        return len(self.graph)

    def __str__(self) -> str:
        return self.name


# loose path a-b-c-d-e-f-g with edges abc, cde, efg
P = Pattern("P", ThreeGraph.from_edges(7, [(0, 1, 2), (2, 3, 4), (4, 5, 6)]))
# triangle abc, cde, efa
C = Pattern("C", ThreeGraph.from_edges(6, [(0, 1, 2), (2, 3, 4), (4, 5, 0)]))
M = Pattern("M", ThreeGraph.from_edges(6, [(0, 1, 2), (3, 4, 5)]))
P2 = Pattern("P2", ThreeGraph.from_edges(5, [(0, 1, 2), (2, 3, 4)]))
P2K3 = Pattern("P2K3", ThreeGraph.from_edges(8, [(0, 1, 2), (2, 3, 4), (5, 6, 7)]))

PATTERNS = {p.name: p for p in (P, C, M, P2, P2K3)}
_ALIASES = {"P2UK3": "P2K3", "P2∪K3": "P2K3", "P2+K3": "P2K3", "P₂∪K₃": "P2K3", "P₂": "P2"}


def get_pattern(name: str | Pattern) -> Pattern:
    if isinstance(name, Pattern):
        return name
    key = _ALIASES.get(name, name)
    key = _ALIASES.get(key.upper(), key.upper())
    if key not in PATTERNS:
        raise InvalidParameterError(f"unknown pattern {name!r}; known: {sorted(PATTERNS)}")
    return PATTERNS[key]
