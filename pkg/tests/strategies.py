from hypothesis import strategies as st

from degen2.toolkit import generators as gen


@st.composite
def quadrangulations(draw, min_n=4, max_n=16):
    seed = draw(st.integers(0, 10_000))
    n = draw(st.integers(min_n, max_n))
    return gen.gen_quadrangulation(seed, n)


@st.composite
def min_degree3_quadrangulations(draw, max_n=24):
    seed = draw(st.integers(0, 10_000))
    n = draw(st.sampled_from([8] + list(range(10, max_n + 1))))
    return gen.gen_quadrangulation(seed, n, min_degree3=True)


@st.composite
def sparse_plane_graphs(draw, min_n=2, max_n=14):
    """Connected triangle-free plane graphs of mixed kinds."""
    seed = draw(st.integers(0, 10_000))
    n = draw(st.integers(min_n, max_n))
    kind = draw(st.sampled_from(["quad", "quad-del", "tree", "greedy"]))
    if kind == "tree":
        return gen.gen_tree(n, seed)
    if kind == "greedy":
        G = gen.gen_greedy_planar(seed, n)
        big = max(G.components(), key=len)
        return G.induced(big)
    Q = gen.gen_quadrangulation(seed, max(n, 4))
    if kind == "quad-del":
        return gen.connected_edge_deletions(Q, draw(st.integers(1, 4)), seed)
    return Q


@st.composite
def mixed_face_graphs(draw):
    return gen.gen_mixed_faces(draw(st.integers(0, 10_000)), draw(st.integers(0, 25)))
