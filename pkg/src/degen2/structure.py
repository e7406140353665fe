"""Structural recognisers: blocks, cubes, difficult graphs, short separating cycles."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Mapping

from .plane_graph import PlaneGraph

CUBE_LABELS = ("u1", "u2", "u3", "u4", "v1", "v2", "v3", "v4")
# edges of the labelled cube: two 4-cycles u1u2u3u4, v1v2v3v4 and the rungs ui-vi
CUBE_EDGES = (
    ("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u1"),
    ("v1", "v2"), ("v2", "v3"), ("v3", "v4"), ("v4", "v1"),
    ("u1", "v1"), ("u2", "v2"), ("u3", "v3"), ("u4", "v4"),
)


class SpecialVertexError(RuntimeError):
    """A min-degree-3 triangle-free plane graph had no special vertex."""

    def __init__(self, message: str, graph: PlaneGraph):
        super().__init__(message)
        self.graph = graph
        self.dump = graph.to_json()


@dataclass(frozen=True)
class BlockDecomposition:
    blocks: tuple[frozenset[int], ...]
    cut_vertices: frozenset[int]
    # (block index, cut vertex) incidences of the block-cut tree
    block_tree: tuple[tuple[int, int], ...]

    def blocks_at(self, v: int) -> list[int]:
        return [i for i, b in enumerate(self.blocks) if v in b]


@dataclass(frozen=True)
class CubeOccurrence:
    vertex_map: dict[str, int]
    leaving_edges: tuple[tuple[int, int], ...]

    @property
    def vertices(self) -> frozenset[int]:
        return frozenset(self.vertex_map.values())

    @property
    def leaving(self) -> int:
        return len(self.leaving_edges)


@dataclass(frozen=True)
class ShortCycle:
    cycle: tuple[int, ...]
    inside: int
    outside: int

    @property
    def separating(self) -> bool:
        return self.inside > 0 and self.outside > 0

    def __len__(self) -> int:
        return len(self.cycle)


def blocks(G: PlaneGraph | Mapping[int, Iterable[int]]) -> BlockDecomposition:
    """Biconnected components (cut edges and isolated vertices included).

    Iterative Hopcroft-Tarjan over edges, roots taken in increasing id.
    """
    adj = G.adj if isinstance(G, PlaneGraph) else {v: frozenset(w) for v, w in G.items()}
    nbrs = {v: sorted(ws) for v, ws in adj.items()}
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    found: list[frozenset[int]] = []
    cuts: set[int] = set()
    clock = 0
    for root in sorted(adj):
        if root in disc:
            continue
        if not adj[root]:
            disc[root] = clock
            clock += 1
            found.append(frozenset([root]))
            continue
        disc[root] = low[root] = clock
        clock += 1
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(nbrs[root]))]
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if w == parent:
                    continue
                if w not in disc:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(nbrs[w])))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if disc[w] < disc[v]:
                    edge_stack.append((v, w))
                    low[v] = min(low[v], disc[w])
            if advanced:
                continue
            stack.pop()
            if not stack:
                break
            u = stack[-1][0]
            low[u] = min(low[u], low[v])
            if low[v] >= disc[u]:
                if u != root:
                    cuts.add(u)
                comp: set[int] = set()
                while True:
                    a, b = edge_stack.pop()
                    comp.update((a, b))
                    if (a, b) == (u, v):
                        break
                found.append(frozenset(comp))
        if root_children > 1:
            cuts.add(root)
    found.sort(key=lambda b: (min(b), len(b)))
    tree = tuple((i, c) for i, b in enumerate(found) for c in sorted(b & cuts))
    return BlockDecomposition(tuple(found), frozenset(cuts), tree)


def is_cube(G: PlaneGraph | Mapping[int, Iterable[int]], vertices: Iterable[int] | None = None) -> dict[str, int] | None:
    """Label ``G[vertices]`` as the cube of the figure, or return None.

    The first vertex (lowest id) becomes ``u1``; the labelling returned is the
    lexicographically first valid choice for ``u2, u4, v1``.
    """
    adj = G.adj if isinstance(G, PlaneGraph) else {v: frozenset(w) for v, w in G.items()}
    vs = sorted(adj if vertices is None else vertices)
    if len(vs) != 8:
        return None
    X = set(vs)
    local = {v: adj[v] & X for v in vs}
    if any(len(ws) != 3 for ws in local.values()):
        return None
    return _label_cube(local, vs[0])


def _label_cube(local: Mapping[int, frozenset[int] | set[int]], a: int) -> dict[str, int] | None:
    for u2, u4, v1 in permutations(sorted(local[a]), 3):
        lab = _extend_labelling(local, a, u2, u4, v1)
        if lab is not None:
            return lab
    return None


def _extend_labelling(adj, u1, u2, u4, v1) -> dict[str, int] | None:
    def common(x, y, *exclude):
        return sorted((adj[x] & adj[y]) - set(exclude))

    for u3 in common(u2, u4, u1):
        for v2 in common(u2, v1, u1):
            for v4 in common(u4, v1, u1):
                for v3 in common(v2, v4, v1):
                    lab = dict(zip(CUBE_LABELS, (u1, u2, u3, u4, v1, v2, v3, v4)))
                    if len(set(lab.values())) != 8:
                        continue
                    if all(lab[b] in adj[lab[a]] for a, b in CUBE_EDGES):
                        return lab
    return None


def count_difficult(G: PlaneGraph) -> tuple[int, list[bool]]:
    """Number of difficult components and a flag per component.

    A component is difficult when each block is a vertex, an edge or a cube
    and no two cube blocks share a vertex.  Flags follow ``G.components()``.
    """
    dec = blocks(G)
    comps = G.components()
    comp_of = {v: i for i, c in enumerate(comps) for v in c}
    ok = [True] * len(comps)
    cube_vertices: list[set[int]] = [set() for _ in comps]
    adj = G.adj
    for b in dec.blocks:
        ci = comp_of[next(iter(b))]
        if not ok[ci] or len(b) <= 2:
            continue
        if len(b) != 8 or is_cube(adj, b) is None or cube_vertices[ci] & b:
            ok[ci] = False
            continue
        cube_vertices[ci] |= b
    return sum(ok), ok


def is_difficult(G: PlaneGraph) -> bool:
    lam, flags = count_difficult(G)
    return G.n > 0 and G.is_connected() and flags[0]


def _leaving_edges(adj: Mapping[int, frozenset[int]], X: frozenset[int]) -> tuple[tuple[int, int], ...]:
    return tuple(sorted((x, y) for x in X for y in adj[x] if y not in X))


def cube_subgraphs(G: PlaneGraph) -> list[frozenset[int]]:
    """Vertex sets of all subgraphs isomorphic to the cube, sorted."""
    adj = G.adj
    found: set[frozenset[int]] = set()
    for b in blocks(G).blocks:
        if len(b) < 8:
            continue
        local = {v: adj[v] & b for v in b}
        for a in sorted(b):
            # a is the smallest vertex of the occurrence and plays u1
            cand = sorted(w for w in local[a] if w > a and len(local[w]) >= 3)
            if len(local[a]) < 3 or len(cand) < 3:
                continue
            for u2, u4, v1 in permutations(cand, 3):
                if u2 > u4:
                    continue
                for X in _cubes_from(local, a, u2, u4, v1):
                    found.add(X)
    return sorted(found, key=lambda s: tuple(sorted(s)))


def _cubes_from(adj, u1, u2, u4, v1):
    def common(x, y, *exclude):
        return [z for z in adj[x] & adj[y] if z > u1 and z not in exclude]

    for u3 in common(u2, u4, u1):
        for v2 in common(u2, v1, u1, u3):
            for v4 in common(u4, v1, u1, u3, v2):
                for v3 in common(v2, v4, v1, u1, u2, u4):
                    if u3 in adj[v3]:
                        X = frozenset((u1, u2, u3, u4, v1, v2, v3, v4))
                        if len(X) == 8:
                            yield X


def cubes_with_few_leaving_edges(G: PlaneGraph, threshold: int = 5) -> list[CubeOccurrence]:
    """Cube subgraphs with at most ``threshold`` edges leaving them."""
    adj = G.adj
    out = []
    for X in cube_subgraphs(G):
        leaving = _leaving_edges(adj, X)
        if len(leaving) <= threshold:
            lab = _label_cube({v: adj[v] & X for v in X}, min(X))
            out.append(CubeOccurrence(lab, leaving))
    return out


def short_cycles(G: PlaneGraph | Mapping[int, Iterable[int]], max_len: int = 5) -> list[tuple[int, ...]]:
    """All cycles with at most ``max_len`` vertices.

    Each cycle starts at its smallest vertex and runs towards the smaller of
    that vertex's two cycle neighbours.
    """
    adj = G.adj if isinstance(G, PlaneGraph) else {v: frozenset(w) for v, w in G.items()}
    nbrs = {v: sorted(ws) for v, ws in adj.items()}
    out = []
    for s in sorted(adj):
        path = [s]
        on_path = {s}

        def extend(v):
            for w in nbrs[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in on_path and len(path) < max_len:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def _face_sides(G: PlaneGraph, cycle: tuple[int, ...]) -> list[int]:
    """Union faces across every edge not on ``cycle``; returns a root per face."""
    parent = list(range(len(G.faces)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    on_cycle = set()
    for i, a in enumerate(cycle):
        b = cycle[(i + 1) % len(cycle)]
        on_cycle.add((a, b))
        on_cycle.add((b, a))
    df = G.dart_face
    for (a, b), f in df.items():
        if a < b and (a, b) not in on_cycle:
            ra, rb = find(f), find(df[b, a])
            if ra != rb:
                parent[ra] = rb
    return [find(f) for f in range(len(G.faces))]


def classify_cycle(G: PlaneGraph, cycle: tuple[int, ...], outer_face: int | None = None) -> ShortCycle:
    """Count vertices strictly inside and outside ``cycle``.

    The two sides come from two-colouring faces across edges that are not on
    the cycle; a vertex off the cycle lies on the side of any face at it.
    "Outside" is the side holding ``outer_face`` (``G.outer_face`` or face 0).
    Only the component containing the cycle is considered.
    """
    root = _face_sides(G, cycle)
    C = set(cycle)
    comp = next(c for c in G.components() if cycle[0] in c)
    if outer_face is None:
        outer_face = G.outer_face
    if outer_face is None or G.faces[outer_face].walk[0] not in comp:
        outer_face = min(f.id for f in G.faces if f.walk[0] in comp)
    out_side = root[outer_face]
    inside = outside = 0
    for v in comp:
        if v in C:
            continue
        if root[G.vertex_faces[v][0]] == out_side:
            outside += 1
        else:
            inside += 1
    return ShortCycle(tuple(cycle), inside, outside)


def classify_short_cycles(G: PlaneGraph, max_len: int = 5, outer_face: int | None = None) -> list[ShortCycle]:
    return [classify_cycle(G, c, outer_face) for c in short_cycles(G, max_len)]


def separating_cycles(G: PlaneGraph, max_len: int = 5, outer_face: int | None = None) -> list[ShortCycle]:
    """Cycles of length at most ``max_len`` with vertices on both sides."""
    return [c for c in classify_short_cycles(G, max_len, outer_face) if c.separating]


def _facial_vertex_sets(G: PlaneGraph) -> set[frozenset[int]]:
    return {f.vertex_set for f in G.faces if len(f.vertex_set) == f.length}


def vertices_on_separating_short_cycles(G: PlaneGraph, max_len: int = 5) -> set[int]:
    """Vertices lying on a separating cycle of length 4..max_len.

    In a connected triangle-free plane graph a cycle of length at most five has
    no chords, so one of its sides is free of vertices exactly when that side
    is a single face bounded by the cycle.  Such a cycle is then identified by
    its vertex set, which makes the test a set lookup.
    """
    facial = _facial_vertex_sets(G)
    covered: set[int] = set()
    for c in short_cycles(G, max_len):
        if len(c) >= 4 and frozenset(c) not in facial:
            covered.update(c)
    return covered


def find_special_vertex(G: PlaneGraph) -> int | None:
    """Lowest-id degree-3 vertex on no separating cycle of length four or five.

    Components are treated as separately embedded.  When the minimum degree is
    exactly three such a vertex must exist; failing that raises
    :class:`SpecialVertexError` carrying a JSON dump of ``G``.
    """
    deg3 = [v for v in G.vertices if G.degree(v) == 3]
    if not deg3:
        return None
    covered: set[int] = set()
    for comp in G.components():
        H = G if len(comp) == G.n else G.induced(comp)
        covered |= vertices_on_separating_short_cycles(H)
    for v in deg3:
        if v not in covered:
            return v
    if G.min_degree() == 3 and G.is_triangle_free():
        raise SpecialVertexError("no special vertex in a min-degree-3 triangle-free plane graph", G)
    return None
