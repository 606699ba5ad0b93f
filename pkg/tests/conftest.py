import math

import networkx as nx
import numpy as np
import pytest

from logdiam import EmbeddedGraph, build_gk


def k4_planar() -> EmbeddedGraph:
    """Tetrahedron with vertex 3 in the middle of triangle 0, 1, 2."""
    pos = {0: (0.0, 1.0), 1: (-1.0, -0.6), 2: (1.0, -0.6), 3: (0.0, 0.0)}
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    return geometric_embedding(4, edges, pos)


def geometric_embedding(n, edges, pos, infinity=None):
    """Rotations from sorting straight-line edge directions counterclockwise.

    ``infinity`` names a vertex drawn at infinity (its ``pos`` is ignored):
    every neighbour sees it straight outwards from the origin, and it sees
    its neighbours in clockwise order.
    """
    g = EmbeddedGraph(n)
    for u, v in edges:
        g.add_edge(u, v)
    for v in range(n):
        x0, y0 = pos[v]

        def angle(d):
            w = g.head(d)
            if v == infinity:
                x1, y1 = pos[w]
                return -math.atan2(y1, x1)
            if w == infinity:
                return math.atan2(y0, x0)
            x1, y1 = pos[w]
            return math.atan2(y1 - y0, x1 - x0)

        g.set_rotation(v, sorted(g.darts_at(v), key=angle))
    return g.freeze()


def trace_faces(g: EmbeddedGraph) -> list[int]:
    """Face lengths by walking rotations directly (no cached permutation)."""
    rot = {v: list(g.rotation(v)) for v in range(g.vertex_count)}
    where = {d: (v, i) for v, r in rot.items() for i, d in enumerate(r)}
    seen = set()
    lengths = []
    for start in range(g.dart_count):
        if start in seen:
            continue
        d, n = start, 0
        while d not in seen:
            seen.add(d)
            n += 1
            v, i = where[d ^ 1]
            d = rot[v][(i + 1) % len(rot[v])]
        lengths.append(n)
    return lengths


def to_nx(g: EmbeddedGraph) -> nx.Graph:
    G = nx.Graph()
    G.add_nodes_from(range(g.vertex_count))
    G.add_edges_from(g.edges())
    return G


def random_cubic(n: int, seed: int) -> EmbeddedGraph:
    """Connected random cubic graph with insertion-order rotations."""
    s = seed
    while True:
        G = nx.random_regular_graph(3, n, seed=s)
        if nx.is_connected(G):
            return EmbeddedGraph.from_edges(n, sorted(G.edges()))
        s += 10_000


def cycle(n: int) -> EmbeddedGraph:
    return EmbeddedGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> EmbeddedGraph:
    return EmbeddedGraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> EmbeddedGraph:
    return EmbeddedGraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


_GK_CACHE = {}


def gk(k: int):
    if k not in _GK_CACHE:
        _GK_CACHE[k] = build_gk(k)
    return _GK_CACHE[k]


@pytest.fixture
def g2():
    return gk(2)


@pytest.fixture
def g3():
    return gk(3)


@pytest.fixture
def rng():
    return np.random.default_rng(20261016)
