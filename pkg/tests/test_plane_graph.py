import math

import networkx as nx
import pytest
from hypothesis import given

import oracles
from degen2.plane_graph import (
    ContractionWarning,
    EmbeddingError,
    PlaneGraph,
    build_from_rotation,
    contract_edge,
    delete_vertices,
    face_distances,
    face_vertex_distance,
    is_triangle_free,
    vertex_distances,
)
from degen2.toolkit import generators as gen
from strategies import mixed_face_graphs, sparse_plane_graphs

V1 = 4  # cube label v1


def c4():
    return build_from_rotation({0: [1, 3], 1: [2, 0], 2: [3, 1], 3: [0, 2]})


def dart_sets(G):
    return sorted(sorted(f.darts) for f in G.faces if f.darts)


def oracle_dart_sets(rotation):
    out = []
    for walk in oracles.faces_by_rotation(rotation):
        if len(walk) == 1 and not rotation[walk[0]]:
            continue
        out.append(sorted(zip(walk, walk[1:] + walk[:1])))
    return sorted(out)


def test_c4_faces():
    G = c4()
    assert (G.n, G.m) == (4, 4)
    assert sorted(f.length for f in G.faces) == [4, 4]


def test_cube_faces():
    G = gen.gen_cube()
    assert (G.n, G.m) == (8, 12)
    assert [f.length for f in G.faces] == [4] * 6


def test_single_edge_walks_bridge_twice():
    G = build_from_rotation({0: [1], 1: [0]})
    assert len(G.faces) == 1
    assert G.faces[0].length == 2


def test_isolated_vertex_has_own_face():
    G = build_from_rotation({5: []})
    assert len(G.faces) == 1
    assert G.faces[0].walk == (5,)
    assert G.faces[0].length == 0


def test_list_rotation_input():
    assert build_from_rotation([[1, 3], [2, 0], [3, 1], [0, 2]]).m == 4


def test_rejects_asymmetric_rotation():
    with pytest.raises(EmbeddingError):
        build_from_rotation({0: [1], 1: []})


def test_rejects_non_planar_rotation():
    # K4 with a rotation of genus 1
    with pytest.raises(EmbeddingError):
        build_from_rotation({0: [1, 2, 3], 1: [0, 2, 3], 2: [0, 1, 3], 3: [0, 1, 2]})


def test_triangle_free_examples():
    assert is_triangle_free(gen.gen_cube())
    assert is_triangle_free(gen.gen_cycle(5))
    k4 = build_from_rotation({0: [1, 2, 3], 1: [0, 3, 2], 2: [0, 1, 3], 3: [0, 2, 1]})
    assert not is_triangle_free(k4)


def test_delete_vertices_examples():
    cube = gen.gen_cube()
    H = delete_vertices(cube, {V1})
    assert (H.n, H.m) == (7, 9)
    same = delete_vertices(cube, set())
    assert same.rotation == cube.rotation


def test_delete_bridge_endpoints_of_two_cubes():
    G = gen.gen_difficult({"block": "cube", "children": [
        {"block": "edge", "at": 0, "children": [{"block": "cube", "at": 1}]}]})
    assert (G.n, G.m) == (16, 25)
    (a, b), = list(nx.bridges(oracles.to_nx(G)))
    R = delete_vertices(G, {a, b})
    assert R.n == 14
    assert len(R.components()) == 2


def test_contract_path():
    P = gen.gen_path(3)
    a, b = 0, 1
    R, w = contract_edge(P, a, b)
    assert R.n == 2 and R.m == 1 and w not in P.rotation


def test_contract_c5_gives_c4():
    R, _ = contract_edge(gen.gen_cycle(5), 0, 1)
    assert (R.n, R.m) == (4, 4)
    assert R.is_triangle_free()
    assert sorted(f.length for f in R.faces) == [4, 4]


def on_four_cycle(H, u, v):
    return any(H.has_edge(a, b) for a in H[u] if a != v for b in H[v] if b != u and b != a)


def test_contract_c6_with_chord():
    # 6-cycle 0..5 with chord 0-3: two 4-faces plus the outer 6-face
    rot = {0: [1, 3, 5], 1: [2, 0], 2: [3, 1], 3: [4, 0, 2], 4: [5, 3], 5: [0, 4]}
    G = build_from_rotation(rot)
    assert sorted(f.length for f in G.faces) == [4, 4, 6]
    H = oracles.to_nx(G)
    # here every edge lies on a 4-cycle, and each contraction makes a triangle
    assert all(on_four_cycle(H, u, v) for u, v in H.edges)
    R, _ = contract_edge(G, 4, 5)
    assert sum(nx.triangles(oracles.to_nx(R)).values()) > 0


def test_contract_edge_off_four_cycles_keeps_triangle_free():
    # 8-cycle with chord 0-3: edges 4-5, 5-6, 6-7 lie on no 4-cycle
    rot = {i: [(i + 1) % 8, (i - 1) % 8] for i in range(8)}
    rot[0] = [1, 3, 7]
    rot[3] = [4, 0, 2]
    G = build_from_rotation(rot)
    H = oracles.to_nx(G)
    assert not on_four_cycle(H, 5, 6)
    R, _ = contract_edge(G, 5, 6)
    assert sum(nx.triangles(oracles.to_nx(R)).values()) == 0
    assert R.is_triangle_free()


@given(sparse_plane_graphs(min_n=4))
def test_contraction_off_four_cycles_property(G):
    H = oracles.to_nx(G)
    for u, v in list(H.edges)[:6]:
        R, _ = G.contract_edge(u, v)
        R.check_euler()
        assert R.is_triangle_free() == (not on_four_cycle(H, u, v))


def test_contract_common_neighbour_warns():
    tri, _ = c4().contract_edge(0, 1)
    assert (tri.n, tri.m) == (3, 3)
    a, b = tri.edges()[0]
    with pytest.warns(ContractionWarning):
        R, _ = tri.contract_edge(a, b)
    assert (R.n, R.m) == (2, 1)


def test_contract_rejects_non_edge():
    with pytest.raises(ValueError):
        c4().contract_edge(0, 2)


def test_json_round_trip():
    G = gen.gen_cylindrical_grid(5, 3)
    assert PlaneGraph.from_json(G.to_json()).rotation == G.rotation
    odd = G.relabel({v: 100 + 3 * v for v in G.vertices})
    assert PlaneGraph.from_json(odd.to_json()).rotation == odd.rotation


def test_cube_face_distances():
    G = gen.gen_cube()
    f = G.faces[0]
    assert face_vertex_distance(G, f, f) == 0
    d = face_distances(G, 0)
    for g in G.faces[1:]:
        shared = f.vertex_set & g.vertex_set
        assert d[g.id] == (1 if shared else 2)
    assert sorted(d) == [0, 1, 1, 1, 1, 2]


def test_unreachable_distance_is_infinite():
    G = build_from_rotation({0: [1], 1: [0], 2: [3], 3: [2]})
    d = face_distances(G, 0)
    assert math.isinf(max(d))
    far = 2 if 2 not in G.faces[0].walk else 0
    assert math.isinf(face_vertex_distance(G, 0, far))


@given(sparse_plane_graphs())
def test_faces_match_oracle(G):
    assert dart_sets(G) == oracle_dart_sets(G.rotation)
    G.check_euler()


def oracle_index(G, f):
    target = sorted(f.darts)
    for i, walk in enumerate(oracles.faces_by_rotation(G.rotation)):
        if sorted(zip(walk, walk[1:] + walk[:1])) == target or (not f.darts and walk == list(f.walk)):
            return i
    raise AssertionError("face not found")


@given(mixed_face_graphs())
def test_distances_match_incidence_bfs(G):
    for f in G.faces[:3]:
        idx = oracle_index(G, f)
        assert vertex_distances(G, f) == oracles.face_vertex_distances(G.rotation, idx)
        fd = face_distances(G, f)
        ofd = oracles.face_face_distances(G.rotation, idx)
        for g in G.faces:
            assert fd[g.id] == ofd[oracle_index(G, g)]
