"""Shared fixtures and independent oracles.

The oracles here deliberately avoid the package's ranking, bitsets and search:
graphs are plain sets of frozensets and containment is decided by trying
every injective vertex map.
"""

from itertools import combinations, permutations

import pytest

from loosepath import turan


def edge_set(edges):
    return {frozenset(e) for e in edges}


def oracle_contains(host_edges, host_n, pat_edges, pat_n):
    """Some injective map sends every pattern edge onto a host edge."""
    if pat_n > host_n:
        return False
    host = edge_set(host_edges)
    pat = [tuple(e) for e in pat_edges]
    for img in permutations(range(host_n), pat_n):
        if all(frozenset((img[a], img[b], img[c])) in host for a, b, c in pat):
            return True
    return False


def oracle_canonical(edges, n):
    """Smallest sorted edge list over all n! relabelings."""
    best = None
    for perm in permutations(range(n)):
        key = tuple(sorted(tuple(sorted(perm[v] for v in e)) for e in edges))
        if best is None or key < best:
            best = key
    return best


def all_triples(n):
    return list(combinations(range(n), 3))


@pytest.fixture(scope="session")
def p_ladder_7():
    return turan.ladder(7, "P", 5)


@pytest.fixture(scope="session")
def p_ladder_8():
    return turan.ladder(8, "P", 5)


@pytest.fixture(scope="session")
def m_ladder_7():
    return turan.ladder(7, "M", 4)
