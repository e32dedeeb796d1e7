"""Shared fixtures and brute-force oracles.

The oracles below use plain ``itertools`` enumeration and dense
``numpy.linalg`` eigensolvers, so they share no code path with the
bitmask enumeration or the power iteration they check.
"""

import itertools
from fractions import Fraction

import numpy as np
import pytest

from hardcut.graph import complete_graph, cycle_graph, disjoint_union, generate_regular
from hardcut.handlebody import build_model


def boundary_oracle(edges, subset):
    s = set(subset)
    return sum((u in s) != (v in s) for u, v in edges)


def expansion_oracle(m, edges):
    """(ratio, witness) with ties by size then lexicographic membership vector."""
    best = None
    for k in range(1, m // 2 + 1):
        for combo in itertools.combinations(range(m), k):
            ratio = Fraction(boundary_oracle(edges, combo), k)
            vec = tuple(int(i in combo) for i in range(m))
            key = (ratio, k, vec)
            if best is None or key < best:
                best = key
    ratio, _, vec = best
    return ratio, tuple(i for i in range(m) if vec[i])


def balanced_min_cut_oracle(m, edges, eps):
    """Minimum boundary over subsets with eps*m < |S| < m - eps*m."""
    best = None
    for k in range(1, m):
        if not (k > eps * m and m - k > eps * m):
            continue
        for combo in itertools.combinations(range(m), k):
            b = boundary_oracle(edges, combo)
            if best is None or b < best:
                best = b
    return best


def all_subset_boundaries(m, edges):
    """Boundary size of every subset, indexed by bitmask (bit i = vertex i)."""
    masks = np.arange(1 << m, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(m)) & 1).astype(bool)
    out = np.zeros(1 << m, dtype=np.int64)
    for u, v in edges:
        out += bits[:, u] ^ bits[:, v]
    return out, bits.sum(axis=1)


def mu2_oracle(graph):
    return float(np.sort(np.linalg.eigvalsh(graph.adjacency_matrix().astype(float)))[-2])


_CRITERIA = pytest.StashKey[list]()


@pytest.fixture
def criterion(request):
    """``criterion(k, ok, detail)`` records one acceptance line for the summary."""
    lines = request.config.stash.setdefault(_CRITERIA, [])

    def record(k, ok, detail):
        line = f"criterion {k}: {'PASS' if ok else 'FAIL'}  {detail}"
        lines.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_CRITERIA, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def c6():
    return cycle_graph(6)


@pytest.fixture
def two_k4():
    return disjoint_union(complete_graph(4), complete_graph(4))


@pytest.fixture
def cubic8():
    return generate_regular(8, 3, 7)


@pytest.fixture
def model8(cubic8):
    return build_model(cubic8, 2)


@pytest.fixture(params=[(8, 0), (8, 3), (10, 1), (12, 2), (16, 5)], ids=lambda p: f"m{p[0]}s{p[1]}")
def small_model(request):
    m, seed = request.param
    return build_model(generate_regular(m, 3, seed), 2)
