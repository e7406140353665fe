"""Plane graphs stored as rotation systems.

A plane graph here is a simple graph together with a clockwise cyclic order of
the neighbours around every vertex.  Faces are the orbits of the permutation
``(u, v) -> (v, succ_v(u))`` on darts (directed edges).  Nothing in this module
computes an embedding; rotations are always supplied by the caller.

Isolated vertices get a face with an empty boundary walk so that every
connected component satisfies ``n - m + f = 2``.
"""

from __future__ import annotations

import json
import warnings
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

INF = float("inf")

Dart = tuple[int, int]


class EmbeddingError(ValueError):
    """The supplied rotation system is not a simple plane embedding."""


class ContractionWarning(UserWarning):
    """An edge contraction produced parallel edges that had to be merged."""


@dataclass(frozen=True)
class Face:
    """A face of a plane graph.

    ``walk`` lists the vertices met along the boundary walk (a vertex on a
    bridge or at a cut vertex shows up more than once).  ``length`` is the
    number of darts in the walk, so bridges count twice.
    """

    id: int
    walk: tuple[int, ...]
    darts: tuple[Dart, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.walk)

    def __len__(self) -> int:
        return len(self.darts)


class PlaneGraph:
    """An immutable simple graph with a combinatorial planar embedding.

    Args:
        rotation: maps every vertex id to its neighbours in clockwise order.
        outer_face: optional id of a designated outer face.
        check: verify simplicity, symmetry and Euler's formula per component.

    Raises:
        EmbeddingError: if ``check`` is set and the rotation is not a simple
            plane embedding.
    """

    def __init__(
        self,
        rotation: Mapping[int, Sequence[int]],
        outer_face: int | None = None,
        check: bool = True,
    ):
        self.rotation: dict[int, tuple[int, ...]] = {
            int(v): tuple(int(w) for w in rotation[v]) for v in sorted(rotation)
        }
        self.outer_face = outer_face
        if check:
            self._validate()

    # -- basic structure -------------------------------------------------

    @cached_property
    def vertices(self) -> tuple[int, ...]:
        return tuple(self.rotation)

    @property
    def n(self) -> int:
        return len(self.rotation)

    @cached_property
    def m(self) -> int:
        return sum(len(r) for r in self.rotation.values()) // 2

    @cached_property
    def adj(self) -> dict[int, frozenset[int]]:
        return {v: frozenset(r) for v, r in self.rotation.items()}

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def degrees(self) -> dict[int, int]:
        return {v: len(r) for v, r in self.rotation.items()}

    def min_degree(self) -> int:
        return min((len(r) for r in self.rotation.values()), default=0)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, w) for u, r in self.rotation.items() for w in r if u < w]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.rotation and v in self.adj[u]

    def __contains__(self, v: object) -> bool:
        return v in self.rotation

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PlaneGraph):
            return NotImplemented
        return self.rotation == other.rotation

    def __hash__(self) -> int:
        return hash(tuple(self.rotation.items()))

    def __repr__(self) -> str:
        return f"PlaneGraph(n={self.n}, m={self.m}, faces={len(self.faces)})"

    # -- rotation navigation ---------------------------------------------

    @cached_property
    def _position(self) -> dict[Dart, int]:
        return {(v, w): i for v, r in self.rotation.items() for i, w in enumerate(r)}

    def succ(self, v: int, u: int) -> int:
        """Neighbour of ``v`` following ``u`` clockwise."""
        r = self.rotation[v]
        return r[(self._position[v, u] + 1) % len(r)]

    def pred(self, v: int, u: int) -> int:
        """Neighbour of ``v`` preceding ``u`` clockwise."""
        r = self.rotation[v]
        return r[(self._position[v, u] - 1) % len(r)]

    def next_dart(self, dart: Dart) -> Dart:
        u, v = dart
        return (v, self.succ(v, u))

    # -- faces -------------------------------------------------------------

    @cached_property
    def faces(self) -> tuple[Face, ...]:
        seen: set[Dart] = set()
        faces: list[Face] = []
        for v, r in self.rotation.items():
            if not r:
                faces.append(Face(len(faces), (v,), ()))
                continue
            for w in r:
                if (v, w) in seen:
                    continue
                darts = []
                d = (v, w)
                while d not in seen:
                    seen.add(d)
                    darts.append(d)
                    d = self.next_dart(d)
                faces.append(Face(len(faces), tuple(x for x, _ in darts), tuple(darts)))
        return tuple(faces)

    @cached_property
    def dart_face(self) -> dict[Dart, int]:
        return {d: f.id for f in self.faces for d in f.darts}

    @cached_property
    def vertex_faces(self) -> dict[int, tuple[int, ...]]:
        inc: dict[int, list[int]] = {v: [] for v in self.rotation}
        for f in self.faces:
            for v in dict.fromkeys(f.walk):
                inc[v].append(f.id)
        return {v: tuple(ids) for v, ids in inc.items()}

    def face(self, fid: int) -> Face:
        return self.faces[fid]

    # -- connectivity -------------------------------------------------------

    @cached_property
    def _components(self) -> tuple[frozenset[int], ...]:
        seen: set[int] = set()
        comps = []
        for s in self.rotation:
            if s in seen:
                continue
            comp = {s}
            queue = deque([s])
            while queue:
                x = queue.popleft()
                for y in self.rotation[x]:
                    if y not in comp:
                        comp.add(y)
                        queue.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    def components(self) -> list[frozenset[int]]:
        """Vertex sets of connected components, ordered by smallest vertex."""
        return list(self._components)

    def is_connected(self) -> bool:
        return len(self._components) <= 1

    # -- validation ---------------------------------------------------------

    def _validate(self) -> None:
        for v, r in self.rotation.items():
            if len(set(r)) != len(r):
                raise EmbeddingError(f"vertex {v} lists a neighbour twice: {list(r)}")
            for w in r:
                if w == v:
                    raise EmbeddingError(f"loop at vertex {v}")
                if w not in self.rotation:
                    raise EmbeddingError(f"vertex {v} lists unknown neighbour {w}")
                if v not in self.rotation[w]:
                    raise EmbeddingError(f"edge {v}-{w} is not symmetric")
        self.check_euler()

    def euler_characteristics(self) -> list[int]:
        """``n - m + f`` for every connected component (2 for a plane embedding)."""
        comp_of = {v: i for i, c in enumerate(self._components) for v in c}
        counts = [[len(c), 0, 0] for c in self._components]
        for v, r in self.rotation.items():
            counts[comp_of[v]][1] += len(r)
        for f in self.faces:
            counts[comp_of[f.walk[0]]][2] += 1
        return [nv - de // 2 + nf for nv, de, nf in counts]

    def check_euler(self) -> None:
        chars = self.euler_characteristics()
        bad = [i for i, x in enumerate(chars) if x != 2]
        if bad:
            raise EmbeddingError(
                f"rotation is not planar: n - m + f = {chars[bad[0]]} on component "
                f"{sorted(self._components[bad[0]])[:10]}"
            )

    # -- predicates -----------------------------------------------------------

    def is_triangle_free(self) -> bool:
        adj = self.adj
        for u, v in self.edges():
            if adj[u] & adj[v]:
                return False
        return True

    # -- mutation (returns new graphs) ----------------------------------------

    def delete_vertices(self, xs: Iterable[int]) -> PlaneGraph:
        drop = set(xs)
        rot = {
            v: tuple(w for w in r if w not in drop)
            for v, r in self.rotation.items()
            if v not in drop
        }
        return PlaneGraph(rot, check=False)

    def delete_edges(self, edges: Iterable[tuple[int, int]]) -> PlaneGraph:
        drop = set()
        for u, v in edges:
            drop.add((u, v))
            drop.add((v, u))
        rot = {v: tuple(w for w in r if (v, w) not in drop) for v, r in self.rotation.items()}
        return PlaneGraph(rot, check=False)

    def induced(self, keep: Iterable[int]) -> PlaneGraph:
        keep = set(keep)
        return self.delete_vertices(v for v in self.rotation if v not in keep)

    def contract_edge(self, u: int, v: int, new_id: int | None = None) -> tuple[PlaneGraph, int]:
        """Contract ``uv`` into a fresh vertex, splicing the two rotations.

        The merged vertex sees ``u``'s neighbours clockwise after ``v`` and then
        ``v``'s neighbours clockwise after ``u``.  Common neighbours of ``u``
        and ``v`` would give parallel edges; the copy coming from ``v`` is
        dropped on both ends and a :class:`ContractionWarning` is issued.

        Returns:
            The contracted graph and the id of the merged vertex.
        """
        if not self.has_edge(u, v):
            raise ValueError(f"{u}-{v} is not an edge")
        w = max(self.rotation) + 1 if new_id is None else new_id
        if w in self.rotation:
            raise ValueError(f"vertex id {w} already in use")
        ru, rv = self.rotation[u], self.rotation[v]
        iu, iv = ru.index(v), rv.index(u)
        part_u = [ru[(iu + i) % len(ru)] for i in range(1, len(ru))]
        part_v = [rv[(iv + i) % len(rv)] for i in range(1, len(rv))]
        common = set(part_u) & set(part_v)
        if common:
            warnings.warn(
                f"contracting {u}-{v} merges parallel edges to {sorted(common)}",
                ContractionWarning,
                stacklevel=2,
            )
        merged = part_u + [x for x in part_v if x not in common]
        rot: dict[int, tuple[int, ...]] = {}
        for x, r in self.rotation.items():
            if x in (u, v):
                continue
            if x in common:
                rot[x] = tuple(w if y == u else y for y in r if y != v)
            else:
                rot[x] = tuple(w if y in (u, v) else y for y in r)
        rot[w] = tuple(merged)
        return PlaneGraph(rot), w

    def relabel(self, mapping: Mapping[int, int]) -> PlaneGraph:
        rot = {mapping[v]: tuple(mapping[w] for w in r) for v, r in self.rotation.items()}
        return PlaneGraph(rot, check=False)

    # -- serialisation ----------------------------------------------------------

    def to_dict(self) -> dict:
        verts = self.vertices
        index = {v: i for i, v in enumerate(verts)}
        out: dict = {
            "n": len(verts),
            "rotation": [[index[w] for w in self.rotation[v]] for v in verts],
        }
        if verts != tuple(range(len(verts))):
            out["labels"] = list(verts)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: Mapping) -> PlaneGraph:
        n = int(data["n"])
        rotation = data["rotation"]
        if len(rotation) != n:
            raise EmbeddingError(f"expected {n} rotation lists, got {len(rotation)}")
        labels = data.get("labels")
        ids = list(range(n)) if labels is None else [int(x) for x in labels]
        if len(ids) != n or len(set(ids)) != n:
            raise EmbeddingError("labels must be n distinct integers")
        for r in rotation:
            for i in r:
                if not 0 <= int(i) < n:
                    raise EmbeddingError(f"neighbour index {i} out of range")
        return cls({ids[i]: [ids[int(j)] for j in r] for i, r in enumerate(rotation)})

    @classmethod
    def from_json(cls, text: str) -> PlaneGraph:
        return cls.from_dict(json.loads(text))


def build_from_rotation(rotation: Mapping[int, Sequence[int]] | Sequence[Sequence[int]]) -> PlaneGraph:
    """Build a :class:`PlaneGraph` from per-vertex clockwise neighbour lists.

    A plain list is read as ``rotation[i]`` for vertex ``i``.
    """
    if not isinstance(rotation, Mapping):
        rotation = dict(enumerate(rotation))
    return PlaneGraph(rotation)


def is_triangle_free(G: PlaneGraph) -> bool:
    return G.is_triangle_free()


def delete_vertices(G: PlaneGraph, xs: Iterable[int]) -> PlaneGraph:
    return G.delete_vertices(xs)


def contract_edge(G: PlaneGraph, u: int, v: int, new_id: int | None = None) -> tuple[PlaneGraph, int]:
    return G.contract_edge(u, v, new_id)


# -- face/vertex distance -------------------------------------------------------

def face_distances(G: PlaneGraph, f: int | Face) -> list[float]:
    """Distance from face ``f`` to every face.

    A curve may wander freely inside a face and pays one unit for every vertex
    it passes through, so this is a BFS over faces where two faces are
    adjacent when they share a boundary vertex.  Unreachable faces get ``inf``.
    """
    fid = f.id if isinstance(f, Face) else f
    dist: list[float] = [INF] * len(G.faces)
    dist[fid] = 0
    queue = deque([fid])
    seen_v: set[int] = set()
    vf = G.vertex_faces
    while queue:
        g = queue.popleft()
        for v in G.faces[g].walk:
            if v in seen_v:
                continue
            seen_v.add(v)
            for h in vf[v]:
                if dist[h] == INF:
                    dist[h] = dist[g] + 1
                    queue.append(h)
    return dist


def vertex_distances(G: PlaneGraph, f: int | Face, face_dist: list[float] | None = None) -> dict[int, float]:
    """``d(f, v)`` for every vertex: the least distance of a face incident with ``v``."""
    fd = face_distances(G, f) if face_dist is None else face_dist
    return {v: min((fd[h] for h in G.vertex_faces[v]), default=INF) for v in G.vertices}


def face_vertex_distance(G: PlaneGraph, f: int | Face, target: Face | int, *, vertex: bool | None = None) -> float:
    """Distance from face ``f`` to a face or a vertex.

    ``target`` is a :class:`Face`, or an int.  A bare int names a vertex unless
    ``vertex=False`` is passed, in which case it is a face id.
    """
    fd = face_distances(G, f)
    if isinstance(target, Face):
        return fd[target.id]
    if vertex is False:
        return fd[target]
    return min((fd[h] for h in G.vertex_faces[target]), default=INF)
