"""Published Turán values and extremal families, as closed-form evaluators.

Keys are (table, n, order).  Families are construction expressions understood
by ``constructions.parse_name``; two families are only described, not listed,
and are marked with the ``ENGINE_*`` tokens below: the search engine produces
them.
"""

from __future__ import annotations

from math import comb
from typing import Optional

from .constructions import RocketDefinition

VERSION = "2024-ex5-v1"

ENGINE_EX4_M7 = "Ex4(7;M)"
ENGINE_PC_M9 = "Ex(9;{P,C}|M)"


def _ex1(n):
    if n <= 6:
        return comb(n, 3), [f"K{n}"]
    if n == 7:
        return 20, ["K6 u K1"]
    return comb(n - 1, 2), [f"S{n}"]


def _ex2(n):
    if n == 7:
        return 15, ["S7"]
    if 8 <= n <= 12:
        return 20 + comb(n - 6, 3), [f"K6 u K{n - 6}"]
    if n == 13:
        return 40, ["2K6 u K1", "Co13"]
    return 4 + comb(n - 4, 2), [f"Co{n}"]


def _ex3(n):
    if 7 <= n <= 10:
        return 3 * n - 8, [f"G1({n})", f"G2({n})"]
    if n == 11:
        return 25, ["G1(11)", "G2(11)", "Co11"]
    if n == 12:
        return 32, ["Co12"]
    if n in (13, 14):
        return 20 + comb(n - 7, 2), [f"K6 u S{n - 6}"]
    return 4 + comb(n - 5, 2), [f"K4 u S{n - 4}"]


def _ex4(n):
    table = {
        7: (12, ["G3(7)", "K5+2"]),
        10: (20, ["K5 u K5"]),
        11: (20, ["G3(11)"]),
        12: (28, ["G1(12)", "G2(12)"]),
        13: (33, ["K6 u G1(7)", "K6 u G2(7)"]),
        14: (40, ["2K6 u 2K1", "K4 u S10"]),
        15: (48, ["Ro15", "K6 u S9"]),
    }
    if n in table:
        return table[n]
    if n in (8, 9):
        return 2 * n - 2, [f"G3({n})"]
    return 3 + comb(n - 5, 2), [f"Ro{n}"]


def _ex5(n):
    table = {
        7: (11, [ENGINE_EX4_M7]),
        8: (13, ["K5+3"]),
        9: (14, ["K5+4", "K5 u K4", ENGINE_PC_M9]),
        10: (19, ["Co10"]),
        11: (19, ["K4 u S7"]),
        12: (25, ["K5 u S7", "K4 u S8"]),
        13: (32, ["K4 u S9", "K6 u K5+2", "K6 u G3(7)"]),
        14: (39, ["Ro14"]),
        15: (46, ["K5 u S10"]),
        16: (56, ["K6 u S10"]),
        17: (65, ["K5 u S12", "K6 u S11"]),
    }
    if n in table:
        return table[n]
    return 10 + comb(n - 6, 2), [f"K5 u S{n - 5}"]


_P_TABLES = {1: _ex1, 2: _ex2, 3: _ex3, 4: _ex4, 5: _ex5}


def p_value(order: int, n: int) -> Optional[int]:
    """ex^(order)(n; P); None where the order does not exist (n <= 6, order >= 2)."""
    if order == 1:
        return _ex1(n)[0]
    if n < 7:
        return None
    return _P_TABLES[order](n)[0]


def p_family(order: int, n: int) -> list[str]:
    if order > 1 and n < 7:
        return []
    return list(_P_TABLES[order](n)[1])


def p_row(n: int) -> list[Optional[int]]:
    return [p_value(s, n) for s in range(1, 6)]


# M: Erdős–Ko–Rado, Hilton–Milner, Han–Kohayakawa, order 4; valid for n >= 7
def m_value(order: int, n: int) -> int:
    return {1: comb(n - 1, 2), 2: 3 * n - 8, 3: 2 * n - 2, 4: n + 4}[order]


def m_family(order: int, n: int) -> list[str]:
    return {1: [f"S{n}"], 2: [f"G1({n})", f"G2({n})"], 3: [f"G3({n})"], 4: []}[order]


def c_value(n: int) -> int:
    return comb(n - 1, 2)


# conditional numbers
def conn_p_given_c(n: int) -> int:
    return 3 * n - 8


def conn_p_given_cm(n: int) -> int:
    return n + 5


def pc_given_m(n: int) -> int:
    if 6 <= n <= 9:
        return 2 * n - 4
    if n == 10:
        return 20
    return 4 + comb(n - 4, 2)


def pc_p2k3_given_m(n: int) -> int:
    return 2 * n - 4


def mc_order2(n: int) -> int:
    return max(10, n)


# stated without proof; recorded, not recomputed
UNVERIFIED = {
    ("conn {P,C}|M", 10, 1): (19, ["Co10"]),
    ("conn {P,C}|M", 11, 2): (18, []),
}

# three-edge schedule used in the R(P;10) <= 16 argument, total edges of H(n)
RAMSEY_SCHEDULE = {16: 560, 15: 451, 14: 359, 13: 280, 12: 214, 11: 159, 10: 114, 9: 78, 8: 50}


def is_buildable(expr: str, rocket_def: Optional[RocketDefinition] = None) -> bool:
    if expr in (ENGINE_EX4_M7, ENGINE_PC_M9):
        return False
    if "Ro" in expr:
        if rocket_def is None:
            return False
        n = int(expr.replace("Ro", ""))
        return n in rocket_def.graphs or rocket_def.generator is not None
    return True


def strictly_decreasing(values) -> bool:
    vals = [v for v in values if v is not None]
    return all(a > b for a, b in zip(vals, vals[1:]))
