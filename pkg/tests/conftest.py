from __future__ import annotations

import random

import pytest
from hypothesis import strategies as st

from twoomega.graphs import Graph, bits


def rand_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner, name="petersen")


def all_graphs(n: int):
    """Every labeled graph on n vertices."""
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(pairs)):
        edges = [pairs[t] for t in range(len(pairs)) if mask >> t & 1]
        yield Graph.from_edges(n, edges)


# -- naive oracles (independent of the library's solvers) ---------------------


def naive_k_colorable(g: Graph, k: int) -> bool:
    """Plain backtracking over vertices 0..n-1 with colors 1..k; no bounds,
    no ordering heuristics, no symmetry breaking."""
    colors = [0] * g.n

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        below = g.adj[i] & ((1 << i) - 1)
        for c in range(1, k + 1):
            if all(colors[w] != c for w in bits(below)):
                colors[i] = c
                if rec(i + 1):
                    return True
        colors[i] = 0
        return False

    return rec(0)


def naive_chromatic(g: Graph) -> int:
    """Exhaustive k-ascending search."""
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        if naive_k_colorable(g, k):
            return k
    raise AssertionError("unreachable: n colors always suffice")


@st.composite
def graph_strategy(draw, max_n: int = 8):
    n = draw(st.integers(min_value=0, max_value=max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    picks = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [pairs[t] for t in range(len(pairs)) if picks[t]]
    return Graph.from_edges(n, edges)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(0xC0FFEE)
