"""Layers C_k = {v : d(f, v) = k} around a face and their counting identities."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..plane_graph import Face, PlaneGraph, face_distances, vertex_distances
from .constants import (
    BASIC_LAYERS_THRESHOLD,
    DEGENEQ_LAYERS,
    DEGENEQ_THRESHOLD,
    LAYER_UNION_THRESHOLD,
)


@dataclass
class LayerProfile:
    """Per-layer statistics around face ``face``.

    ``n``, ``g`` and ``c`` hold n(f,k), g(f,k), c(f,k) for k = 0..depth.
    ``size_identity[k]`` and ``cumulative_identity[k]`` are None when the
    flags needed for that identity do not hold, else whether it balanced.
    """

    face: int
    depth: int
    layers: list[frozenset[int]]
    is_cycle: list[bool]
    one_below: list[bool]
    annulus_clean: list[bool]
    n: list[int]
    g: list[int]
    c: list[int]
    size_identity: list[bool | None] = field(default_factory=list)
    cumulative_identity: list[bool | None] = field(default_factory=list)
    diagnostics: dict = field(default_factory=dict)

    def layer_sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    @property
    def identities_ok(self) -> bool:
        return all(x is not False for x in self.size_identity + self.cumulative_identity)

    def received_charge(self) -> int:
        """Sum of c(f,k) over k <= 9 plus g(f,k) over k <= 8 (truncated to depth)."""
        return sum(self.c[:DEGENEQ_LAYERS]) + sum(self.g[:DEGENEQ_LAYERS - 1])

    def to_dict(self) -> dict:
        return {
            "face": self.face,
            "depth": self.depth,
            "layer_sizes": self.layer_sizes(),
            "is_cycle": self.is_cycle,
            "one_below": self.one_below,
            "annulus_clean": self.annulus_clean,
            "n": self.n,
            "g": self.g,
            "c": self.c,
            "size_identity": self.size_identity,
            "cumulative_identity": self.cumulative_identity,
            "diagnostics": self.diagnostics,
        }


def _induces_cycle(G: PlaneGraph, vs: frozenset[int]) -> bool:
    if len(vs) < 3:
        return False
    adj = G.adj
    if any(len(adj[v] & vs) != 2 for v in vs):
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x] & vs:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)


def _annulus_clean(G: PlaneGraph, fd: list[float], within: frozenset[int], outer: frozenset[int], k: int) -> bool:
    """Faces of G[W] are the G-faces at distance <= k+1, plus maybe the cycle ``outer``."""
    H = G.induced(within)
    expected = {frozenset(f.darts) for f in G.faces if fd[f.id] <= k + 1}
    extra = [f for f in H.faces if frozenset(f.darts) not in expected]
    got = {frozenset(f.darts) for f in H.faces}
    if not expected <= got:
        return False
    if not extra:
        return True
    if len(extra) > 1:
        return False
    f = extra[0]
    return f.length == len(outer) and f.vertex_set == outer


def layer_profile(G: PlaneGraph, f: int | Face, depth: int = 9) -> LayerProfile:
    """Layers around face ``f`` up to ``depth`` (one extra layer is computed).

    Nothing here fails on graphs that violate the layering hypotheses; the
    flags record which layers are cycles with at most one neighbour below,
    and identities are only evaluated where the flags allow it.
    """
    fid = f.id if isinstance(f, Face) else f
    if not 0 <= fid < len(G.faces):
        raise ValueError(f"no face {fid}")
    fd = face_distances(G, fid)
    vd = vertex_distances(G, fid, fd)
    K = depth
    layers = [frozenset(v for v, d in vd.items() if d == k) for k in range(K + 2)]
    adj = G.adj
    deg = G.degrees()

    is_cycle = [_induces_cycle(G, layers[k]) for k in range(K + 2)]
    one_below = [True] + [all(len(adj[v] & layers[k - 1]) <= 1 for v in layers[k]) for k in range(1, K + 2)]
    annulus = []
    for k in range(K + 1):
        within = frozenset(v for v, d in vd.items() if d <= k + 1)
        annulus.append(_annulus_clean(G, fd, within, layers[k + 1], k))

    n_fk, g_fk, c_fk = [], [], []
    for k in range(K + 1):
        n_fk.append(sum(len(adj[v] & layers[k + 1]) - 1 for v in layers[k]))
        g_fk.append(sum(h.length - 4 for h in G.faces if fd[h.id] == k + 1))
        b = 3 if k == 0 else 4
        c_fk.append(sum(deg[v] - b for v in layers[k]))

    def good(k: int) -> bool:
        return is_cycle[k] and one_below[k]

    size_id: list[bool | None] = []
    cum_id: list[bool | None] = []
    for k in range(K + 1):
        if good(k) and good(k + 1) and annulus[k]:
            size_id.append(len(layers[k + 1]) == len(layers[k]) + 2 * n_fk[k] + g_fk[k])
        else:
            size_id.append(None)
        if all(good(j) for j in range(k + 1)) and all(size_id[j] is not None for j in range(k)):
            cum_id.append(n_fk[k] == sum(c_fk[:k + 1]) + sum(g_fk[:k]))
        else:
            cum_id.append(None)

    prof = LayerProfile(fid, K, layers, is_cycle, one_below, annulus, n_fk, g_fk, c_fk, size_id, cum_id)
    if K >= DEGENEQ_LAYERS - 1:
        s = 8 * sum(n_fk[:DEGENEQ_LAYERS])
        union = sum(len(layers[k]) for k in range(DEGENEQ_LAYERS))
        prof.diagnostics = {
            "degeneq_sum": s,
            "degeneq_holds": s >= DEGENEQ_THRESHOLD,
            "n_f_1": n_fk[1],
            "basic_layers_holds": n_fk[1] >= BASIC_LAYERS_THRESHOLD,
            "layer_union": union,
            "layer_union_holds": union >= LAYER_UNION_THRESHOLD,
        }
    return prof

