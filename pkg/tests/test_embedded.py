from collections import Counter

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import gk, k4_planar, path, random_cubic, to_nx, trace_faces
from logdiam import build_gk
from logdiam.embedded import EmbeddedGraph, EmbeddingError, FrozenGraphError, new_graph, twin


def test_empty_graph():
    g = new_graph(0).freeze()
    assert (g.vertex_count, g.edge_count, g.face_count()) == (0, 0, 0)
    assert g.euler_genus() == 0


def test_isolated_vertices_are_components():
    g = new_graph(5).freeze()
    assert g.component_count() == 5
    assert g.euler_genus() == 0


def test_dart_numbering():
    g = new_graph(3)
    assert g.add_edge(0, 1) == 0
    assert g.add_edge(1, 2) == 1
    assert g.dart_count == 4
    assert [g.origin(d) for d in range(4)] == [0, 1, 1, 2]
    assert all(twin(twin(d)) == d and twin(d) != d for d in range(4))


def test_add_edge_range_check():
    g = new_graph(2)
    with pytest.raises(IndexError):
        g.add_edge(0, 2)


def test_set_rotation_validates_darts():
    g = new_graph(2)
    g.add_edge(0, 1)
    g.set_rotation(0, [0])
    with pytest.raises(EmbeddingError):
        g.set_rotation(1, [0])
    with pytest.raises(EmbeddingError):
        g.set_rotation(1, [1, 1])


def test_frozen_graph_rejects_mutation():
    g = EmbeddedGraph.from_edges(2, [(0, 1)])
    with pytest.raises(FrozenGraphError):
        g.add_edge(0, 1)
    with pytest.raises(FrozenGraphError):
        g.set_rotation(0, [0])


def test_unplaced_darts_detected():
    g = new_graph(3)
    g.add_edge(0, 1)
    g.add_edge(1, 2)
    g.set_rotation(0, [0])
    g.set_rotation(1, [1, 2])
    with pytest.raises(EmbeddingError):
        g.face_orbits()


def test_k2_single_face():
    g = EmbeddedGraph.from_edges(2, [(0, 1)])
    assert [f.length for f in g.face_orbits()] == [2]
    assert g.euler_genus() == 0


def test_triangle_two_faces():
    g = EmbeddedGraph.from_edges(3, [(0, 1), (1, 2), (2, 0)])
    assert sorted(f.length for f in g.face_orbits()) == [3, 3]


def test_k4_planar_faces_and_genus():
    g = k4_planar()
    assert sorted(f.length for f in g.face_orbits()) == [3, 3, 3, 3]
    assert g.euler_genus() == 0
    assert g.is_regular(3)


def test_k4_transposed_rotation_has_genus_one():
    base = k4_planar()
    g = EmbeddedGraph(4)
    for u, v in base.edges():
        g.add_edge(u, v)
    for v in range(4):
        rot = list(base.rotation(v))
        if v == 3:
            rot[0], rot[1] = rot[1], rot[0]
        g.set_rotation(v, rot)
    g.freeze()
    assert g.face_count() == 2
    assert g.euler_genus() == 1


def test_face_orbits_order_and_partition(g3):
    g = g3.graph
    orbits = g.face_orbits()
    firsts = [o.darts[0] for o in orbits]
    assert firsts == sorted(firsts)
    all_darts = sorted(d for o in orbits for d in o.darts)
    assert all_darts == list(range(g.dart_count))
    assert [o.length for o in orbits] == g.face_lengths().tolist()


def test_face_lengths_match_direct_trace(g3):
    assert sorted(trace_faces(g3.graph)) == sorted(g3.graph.face_lengths().tolist())


def test_clockwise_convention_same_multiset():
    for k in (2, 3, 5):
        g = gk(k).graph
        ccw = Counter(o.length for o in g.face_orbits())
        cw = Counter(o.length for o in g.face_orbits(clockwise=True))
        assert ccw == cw


def test_alpha_is_permutation():
    g = gk(4).graph
    alpha = g._face_successor()
    assert sorted(alpha.tolist()) == list(range(g.dart_count))


def test_bfs_path():
    g = path(3)
    assert g.bfs(0).tolist() == [0, 1, 2]
    assert g.bfs(1)[1] == 0


def test_bfs_unreached_sentinel():
    g = EmbeddedGraph.from_edges(3, [(0, 1)])
    assert g.bfs(0).tolist() == [0, 1, -1]


def test_bfs_matches_networkx(rng):
    g = random_cubic(120, seed=3)
    G = to_nx(g)
    for s in rng.integers(0, 120, size=5):
        ref = nx.single_source_shortest_path_length(G, int(s))
        assert g.bfs(int(s)).tolist() == [ref[v] for v in range(120)]


@pytest.mark.parametrize("k", [2, 4, 6])
def test_bfs_symmetry(k, rng):
    g = gk(k).graph
    pairs = rng.integers(0, g.vertex_count, size=(100, 2))
    cache = {}
    for u, v in pairs.tolist():
        du = cache.setdefault(u, g.bfs(u))
        dv = cache.setdefault(v, g.bfs(v))
        assert du[v] == dv[u]


def test_degrees_and_components():
    g = EmbeddedGraph.from_edges(5, [(0, 1), (1, 2), (3, 4)])
    assert g.degrees().tolist() == [1, 2, 1, 1, 1]
    assert g.connected_components().tolist() == [0, 0, 0, 1, 1]
    assert not g.is_regular(1)


def test_simple_detection():
    assert not EmbeddedGraph.from_edges(2, [(0, 1), (1, 0)]).is_simple()
    assert not EmbeddedGraph.from_edges(1, [(0, 0)]).is_simple()
    loop = EmbeddedGraph.from_edges(1, [(0, 0)])
    assert loop.euler_genus() == 0


def test_determinism():
    a, b = gk(4).graph, build_gk(4).graph
    assert a.edges() == b.edges()
    assert a.rotations() == b.rotations()
    assert [o.darts for o in a.face_orbits()] == [o.darts for o in b.face_orbits()]


@st.composite
def rotated_graphs(draw):
    n = draw(st.integers(2, 12))
    m = draw(st.integers(1, 24))
    edges = [
        (draw(st.integers(0, n - 1)), draw(st.integers(0, n - 1))) for _ in range(m)
    ]
    g = EmbeddedGraph(n)
    for u, v in edges:
        g.add_edge(u, v)
    for v in range(n):
        darts = g.darts_at(v)
        g.set_rotation(v, draw(st.permutations(darts)))
    return g.freeze()


@settings(max_examples=150, deadline=None)
@given(rotated_graphs())
def test_euler_identity_random_rotations(g):
    faces = g.face_count()
    isolated = int(np.sum(g.degrees() == 0))
    assert sum(g.face_lengths()) == g.dart_count
    genus = g.euler_genus()
    assert genus >= 0
    assert g.vertex_count - g.edge_count + faces + isolated == 2 * g.component_count() - 2 * genus
