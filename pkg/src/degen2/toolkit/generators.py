"""Generators for triangle-free plane graphs.

All generators return :class:`PlaneGraph` values with a valid rotation system
and are deterministic for a given seed.
"""

from __future__ import annotations

import itertools
import math
import random
from typing import Iterable, Mapping, Sequence

from ..plane_graph import PlaneGraph

# Figure-style coordinates: inner square u1..u4, outer square v1..v4, ui-vi rungs.
_CUBE_POINTS = {
    0: (0.0, 0.0),
    1: (1.0, 0.0),
    2: (1.0, -1.0),
    3: (0.0, -1.0),
    4: (-math.sqrt(0.5), math.sqrt(0.5)),
    5: (1 + math.sqrt(0.5), math.sqrt(0.5)),
    6: (1 + math.sqrt(0.5), -1 - math.sqrt(0.5)),
    7: (-math.sqrt(0.5), -1 - math.sqrt(0.5)),
}
_CUBE_EDGES = [(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 7), (7, 4), (0, 4), (1, 5), (2, 6), (3, 7)]
CUBE_NAMES = {0: "u1", 1: "u2", 2: "u3", 3: "u4", 4: "v1", 5: "v2", 6: "v3", 7: "v4"}


def rotation_from_points(points: Mapping[int, tuple[float, float]], edges: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    """Clockwise rotations of a straight-line drawing.

    Only used to write down embeddings of small hand-made graphs; the drawing
    must be crossing-free, which is not checked here (Euler is, later).
    """
    nbrs: dict[int, list[int]] = {v: [] for v in points}
    for u, v in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)

    def angle(v, w):
        (x0, y0), (x1, y1) = points[v], points[w]
        return math.atan2(y1 - y0, x1 - x0)

    return {v: sorted(ws, key=lambda w: -angle(v, w)) for v, ws in nbrs.items()}


def gen_cube() -> PlaneGraph:
    """The cube with ids 0..7 standing for u1..u4, v1..v4 (see ``CUBE_NAMES``)."""
    return PlaneGraph(rotation_from_points(_CUBE_POINTS, _CUBE_EDGES))


def gen_cycle(c: int) -> PlaneGraph:
    return gen_cylindrical_grid(c, 1)


def gen_cylindrical_grid(c: int, k: int) -> PlaneGraph:
    """Cartesian product of a ``c``-cycle and a ``k``-vertex path.

    Vertex ``i * c + j`` is position ``j`` on layer ``i``; layers are drawn as
    concentric circles, layer 0 innermost.
    """
    if c < 3 or k < 1:
        raise ValueError("need c >= 3 and k >= 1")
    pts = {}
    edges = []
    for i in range(k):
        for j in range(c):
            t = 2 * math.pi * j / c
            pts[i * c + j] = ((i + 1) * math.cos(t), (i + 1) * math.sin(t))
            edges.append((i * c + j, i * c + (j + 1) % c))
            if i + 1 < k:
                edges.append((i * c + j, (i + 1) * c + j))
    return PlaneGraph(rotation_from_points(pts, edges))


def gen_pseudo_double_wheel(k: int) -> PlaneGraph:
    """Cycle ``c_0..c_{2k-1}`` plus a hub on even and a hub on odd positions.

    A min-degree-3 quadrangulation on ``2k + 2`` vertices; ``k = 3`` is the cube.
    Cycle vertices are ``0..2k-1``, the inner hub ``2k`` and the outer hub ``2k+1``.
    """
    if k < 2:
        raise ValueError("need k >= 2")
    c = 2 * k
    a, b = c, c + 1
    rot: dict[int, list[int]] = {}
    for i in range(c):
        prev, nxt = (i - 1) % c, (i + 1) % c
        rot[i] = [prev, a, nxt] if i % 2 == 0 else [b, prev, nxt]
    rot[a] = [i for i in range(c - 2, -1, -2)]
    rot[b] = [i for i in range(1, c, 2)]
    return PlaneGraph(rot)


def gen_tree(n: int, seed: int = 0) -> PlaneGraph:
    """Random labelled tree from a Pruefer sequence."""
    if n <= 0:
        return PlaneGraph({})
    if n == 1:
        return PlaneGraph({0: []})
    rng = random.Random(seed)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    edges = []
    for x in seq:
        leaf = min(i for i in range(n) if degree[i] == 1)
        edges.append((leaf, x))
        degree[leaf] -= 1
        degree[x] -= 1
    u, v = [i for i in range(n) if degree[i] == 1]
    edges.append((u, v))
    rot: dict[int, list[int]] = {i: [] for i in range(n)}
    for u, v in edges:
        rot[u].append(v)
        rot[v].append(u)
    return PlaneGraph({v: sorted(ws) for v, ws in rot.items()})


def gen_path(n: int) -> PlaneGraph:
    rot = {i: [j for j in (i - 1, i + 1) if 0 <= j < n] for i in range(n)}
    return PlaneGraph(rot)


def gen_star(leaves: int) -> PlaneGraph:
    rot = {0: list(range(1, leaves + 1))}
    rot.update({i: [0] for i in range(1, leaves + 1)})
    return PlaneGraph(rot)


def gen_complete_bipartite_2(t: int) -> PlaneGraph:
    """K_{2,t}, drawn with both hubs on the outside of a fan."""
    a, b = 0, 1
    leaves = list(range(2, t + 2))
    rot = {a: leaves[:], b: leaves[::-1]}
    for x in leaves:
        rot[x] = [a, b]
    return PlaneGraph(rot)


def gen_dodecahedron() -> PlaneGraph:
    """The dodecahedron as three concentric rings (5, 10, 5)."""
    pts = {}
    edges = []
    for j in range(5):
        t = 2 * math.pi * j / 5
        pts[j] = (math.cos(t), math.sin(t))
        edges.append((j, (j + 1) % 5))
        edges.append((j, 5 + 2 * j))
    for j in range(10):
        t = 2 * math.pi * j / 10
        pts[5 + j] = (2 * math.cos(t), 2 * math.sin(t))
        edges.append((5 + j, 5 + (j + 1) % 10))
        if j % 2 == 1:
            edges.append((5 + j, 15 + j // 2))
    for j in range(5):
        t = 2 * math.pi * (2 * j + 1) / 10
        pts[15 + j] = (3 * math.cos(t), 3 * math.sin(t))
        edges.append((15 + j, 15 + (j + 1) % 5))
    return PlaneGraph(rotation_from_points(pts, edges))


# -- difficult graphs --------------------------------------------------------

def gen_difficult(spec: Mapping) -> PlaneGraph:
    """Glue blocks along a tree to get a difficult graph.

    ``spec`` is a nested mapping ``{"block": "cube"|"edge"|"vertex",
    "at": local vertex of the parent to attach to, "children": [...]}``.
    A child shares one vertex with its parent block.  Only the root may be a
    ``"vertex"`` block.  Local vertices: an edge has 0 (shared with its parent)
    and 1; a cube has 0..7 labelled as in :func:`gen_cube`, 0 being shared.

    Raises:
        ValueError: when two cube blocks would share a vertex, or on a
            malformed spec.
    """
    rot: dict[int, list[int]] = {}
    in_cube: set[int] = set()
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def place(node: Mapping, anchor: int | None) -> list[int]:
        kind = node.get("block")
        if kind == "vertex":
            if anchor is not None:
                raise ValueError("a vertex block can only be the root")
            v = fresh()
            rot[v] = []
            return [v]
        if kind == "edge":
            local = [fresh() if anchor is None else anchor, fresh()]
            block_rot = {local[0]: [local[1]], local[1]: [local[0]]}
        elif kind == "cube":
            cube = gen_cube()
            local = [anchor if (anchor is not None and i == 0) else fresh() for i in range(8)]
            if anchor is not None and anchor in in_cube:
                raise ValueError(f"cube blocks would share vertex {anchor}")
            block_rot = {local[v]: [local[w] for w in r] for v, r in cube.rotation.items()}
            in_cube.update(local)
        else:
            raise ValueError(f"unknown block type {kind!r}")
        for v, r in block_rot.items():
            if v in rot and rot[v]:
                # the child block sits in the corner after the first neighbour
                rot[v][1:1] = r
            else:
                rot[v] = list(r)
        return local

    def build(node: Mapping, anchor: int | None) -> None:
        local = place(node, anchor)
        used = 0
        for child in node.get("children", ()):
            if "at" in child:
                at = int(child["at"])
            elif node.get("block") == "edge":
                at = 1
            elif node.get("block") == "cube":
                used += 1
                at = used % 8
            else:
                at = 0
            if not 0 <= at < len(local):
                raise ValueError(f"attachment index {at} out of range")
            build(child, local[at])

    build(spec, None)
    return PlaneGraph(rot)


# -- random quadrangulations --------------------------------------------------

def _insert_after(seq: list[int], anchor: int, items: Sequence[int]) -> None:
    i = seq.index(anchor)
    seq[i + 1:i + 1] = items


def _add_diagonal_vertex(rot: dict[int, list[int]], walk: Sequence[int], start: int, x: int) -> None:
    """Put a degree-2 vertex ``x`` in the 4-face ``walk`` joined to walk[start] and walk[start+2]."""
    a, b, c, d = (walk[(start + i) % 4] for i in range(4))
    _insert_after(rot[a], d, [x])
    _insert_after(rot[c], b, [x])
    rot[x] = [a, c]


def _split_vertex(rot: dict[int, list[int]], v: int, start: int, s: int, v2: int) -> None:
    """Split ``v`` along the new 4-face ``v, w0, v2, ws``.

    ``v`` keeps neighbours ``w0..ws`` (clockwise from position ``start``) and
    ``v2`` takes ``ws..w(d-1), w0``.
    """
    r = rot[v]
    d = len(r)
    w = [r[(start + i) % d] for i in range(d)]
    rot[v] = w[:s + 1]
    rot[v2] = w[s:] + [w[0]]
    for i, x in enumerate(w):
        rx = rot[x]
        j = rx.index(v)
        if i == 0:
            rx[j:j + 1] = [v, v2]
        elif i == s:
            rx[j:j + 1] = [v2, v]
        elif i > s:
            rx[j] = v2


def gen_quadrangulation(seed: int, target_n: int, min_degree3: bool = False) -> PlaneGraph:
    """Random simple quadrangulation grown by local expansions.

    Two moves are used: adding a degree-2 vertex across a diagonal of a face,
    and splitting a vertex into two joined through a new 4-face.  With
    ``min_degree3`` the growth starts at a pseudo-double wheel and only uses
    splits that leave both halves with degree at least three.
    """
    if target_n < 4:
        raise ValueError("quadrangulations need at least 4 vertices")
    rng = random.Random(seed)
    if min_degree3:
        if target_n == 8:
            return gen_cube()
        if target_n < 10:
            raise ValueError("no min-degree-3 quadrangulation on 9 or fewer vertices except the cube")
        k = rng.randint(4, max(4, min(target_n // 2 - 1, 8)))
        G = gen_pseudo_double_wheel(k)
    else:
        G = gen_cycle(4)
    rot = {v: list(r) for v, r in G.rotation.items()}
    while len(rot) < target_n:
        x = max(rot) + 1
        if min_degree3:
            cands = sorted(v for v, r in rot.items() if len(r) >= 4)
            v = rng.choice(cands)
            d = len(rot[v])
            _split_vertex(rot, v, rng.randrange(d), rng.randint(2, d - 2), x)
        elif rng.random() < 0.5:
            faces = PlaneGraph(rot, check=False).faces
            f = rng.choice(faces)
            _add_diagonal_vertex(rot, f.walk, rng.randrange(2), x)
        else:
            v = rng.choice(sorted(rot))
            d = len(rot[v])
            _split_vertex(rot, v, rng.randrange(d), rng.randint(1, d - 1), x)
    Q = PlaneGraph(rot)
    if not Q.is_triangle_free() or any(f.length != 4 for f in Q.faces):
        raise AssertionError("quadrangulation generator produced a bad face")
    return Q


def connected_edge_deletions(G: PlaneGraph, count: int, seed: int) -> PlaneGraph:
    """Delete up to ``count`` random edges, never disconnecting the graph."""
    rng = random.Random(seed)
    H = G
    for _ in range(count):
        edges = H.edges()
        rng.shuffle(edges)
        for e in edges:
            cand = H.delete_edges([e])
            if cand.is_connected():
                H = cand
                break
        else:
            break
    return H


def _cross(p, q, r) -> float:
    return (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])


def _segments_cross(a, b, c, d) -> bool:
    d1, d2 = _cross(c, d, a), _cross(c, d, b)
    d3, d4 = _cross(a, b, c), _cross(a, b, d)
    return d1 * d2 < 0 and d3 * d4 < 0


def greedy_planar_drawing(seed: int, n: int) -> tuple[dict[int, tuple[float, float]], list[tuple[int, int]]]:
    """Points and segments behind :func:`gen_greedy_planar`."""
    rng = random.Random(seed)
    pts = {i: (rng.random(), rng.random()) for i in range(n)}
    pairs = sorted(itertools.combinations(range(n), 2), key=lambda e: math.dist(pts[e[0]], pts[e[1]]))
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    chosen: list[tuple[int, int]] = []
    for u, v in pairs:
        if adj[u] & adj[v]:
            continue
        if any(_segments_cross(pts[u], pts[v], pts[a], pts[b]) for a, b in chosen if len({a, b, u, v}) == 4):
            continue
        chosen.append((u, v))
        adj[u].add(v)
        adj[v].add(u)
    return pts, chosen


def gen_greedy_planar(seed: int, n: int, core: int = 0) -> PlaneGraph:
    """Random triangle-free straight-line graph on ``n`` random points.

    Candidate segments are added shortest first unless they cross an earlier
    one or close a triangle.  Faces of every length show up, unlike in
    quadrangulations.  With ``core`` > 0 the result is cut down to its
    ``core``-core (possibly empty).
    """
    pts, chosen = greedy_planar_drawing(seed, n)
    G = PlaneGraph(rotation_from_points(pts, chosen))
    if core:
        while True:
            low = [v for v in G.vertices if G.degree(v) < core]
            if not low:
                break
            G = G.delete_vertices(low)
    return G


def _face_insert_vertex(rot: dict[int, list[int]], walk: Sequence[int], picks: Sequence[int], z: int) -> bool:
    """Put ``z`` inside a face, joined to the walk positions ``picks``."""
    L = len(walk)
    for order in (list(picks), list(picks)[::-1]):
        trial = {v: list(r) for v, r in rot.items()}
        for i in picks:
            _insert_after(trial[walk[i]], walk[(i - 1) % L], [z])
        trial[z] = [walk[i] for i in order]
        try:
            PlaneGraph(trial)
        except ValueError:
            continue
        rot.clear()
        rot.update(trial)
        return True
    return False


def gen_mixed_faces(seed: int, steps: int = 20, start: PlaneGraph | None = None) -> PlaneGraph:
    """Random triangle-free plane graph with minimum degree 3 and mixed face lengths.

    Starting from a short cylindrical grid with long end cycles (or
    ``start``), repeatedly either deletes
    an edge between two vertices of degree at least four, or puts a new
    degree-3 vertex into a face of length at least six.
    """
    rng = random.Random(seed)
    G = gen_cylindrical_grid(rng.randint(6, 9), rng.randint(2, 3)) if start is None else start
    for _ in range(steps):
        rot = {v: list(r) for v, r in G.rotation.items()}
        if rng.random() < 0.4:
            cands = [(u, v) for u, v in G.edges() if G.degree(u) >= 4 and G.degree(v) >= 4]
            rng.shuffle(cands)
            for e in cands:
                H = G.delete_edges([e])
                if H.is_connected():
                    G = H
                    break
            continue
        faces = [f for f in G.faces if f.length >= 6 and len(set(f.walk)) == f.length]
        if not faces:
            # open up a big face by removing a low-risk edge
            cands = [(u, v) for u, v in G.edges() if G.degree(u) >= 4 and G.degree(v) >= 4]
            if cands:
                H = G.delete_edges([rng.choice(cands)])
                if H.is_connected():
                    G = H
            continue
        f = rng.choice(faces)
        L = f.length
        for _ in range(20):
            picks = sorted(rng.sample(range(L), 3))
            ws = [f.walk[i] for i in picks]
            if any(G.has_edge(a, b) for a, b in itertools.combinations(ws, 2)):
                continue
            if _face_insert_vertex(rot, f.walk, picks, max(rot) + 1):
                G = PlaneGraph(rot)
                break
    if not G.is_triangle_free():
        raise AssertionError("mixed-face generator made a triangle")
    return G


def gen_spoked_prism(c: int = 12) -> PlaneGraph:
    """Prism over a ``c``-cycle plus a hub (vertex 0) inside the inner cycle.

    The hub is joined to three inner vertices spread evenly, so its edges
    lie on no 4-cycle.  Needs ``c`` divisible by 3 and at least 12.
    """
    if c < 12 or c % 3:
        raise ValueError("need c >= 12 divisible by 3")
    pts = {0: (0.0, 0.0)}
    edges = []
    for r in (1, 2):
        for j in range(c):
            t = 2 * math.pi * j / c
            pts[(r - 1) * c + 1 + j] = (r * math.cos(t), r * math.sin(t))
    for j in range(c):
        edges += [(1 + j, 1 + (j + 1) % c), (c + 1 + j, c + 1 + (j + 1) % c), (1 + j, c + 1 + j)]
    edges += [(0, 1 + i * c // 3) for i in range(3)]
    return PlaneGraph(rotation_from_points(pts, edges))
