"""k-degeneracy certificates and maximum induced k-degenerate subgraphs.

Every function here takes either a :class:`~degen2.plane_graph.PlaneGraph` or
a plain adjacency mapping ``{v: iterable of neighbours}``; embeddings are never
needed, which is what lets graph6 input reach the exact solver.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .plane_graph import PlaneGraph

MAX_EXACT_VERTICES = 128
MAX_ORACLE_VERTICES = 20


@dataclass(frozen=True)
class Solution:
    """A kept vertex set with an elimination order proving k-degeneracy.

    Removing the vertices of ``order`` one at a time, each has at most ``k``
    neighbours among the kept vertices not yet removed.
    """

    kept: frozenset[int]
    order: tuple[int, ...]
    k: int
    optimal: bool | None = field(default=None, compare=False)

    @property
    def size(self) -> int:
        return len(self.kept)

    def to_dict(self) -> dict:
        return {"kept": sorted(self.kept), "order": list(self.order), "k": self.k}

    @classmethod
    def from_dict(cls, data: Mapping) -> Solution:
        return cls(frozenset(data["kept"]), tuple(data["order"]), int(data["k"]))


@dataclass(frozen=True)
class CoreWitness:
    """Certificate of failure: a nonempty subgraph of minimum degree above ``k``."""

    core: frozenset[int]
    k: int

    def __bool__(self) -> bool:
        return False


def adjacency(G: PlaneGraph | Mapping[int, Iterable[int]]) -> dict[int, frozenset[int]]:
    if isinstance(G, PlaneGraph):
        return G.adj
    return {v: frozenset(ws) for v, ws in G.items()}


def _peel(adj: Mapping[int, frozenset[int]], verts: set[int], k: int) -> tuple[list[int], set[int]]:
    """Repeatedly delete the lowest-id vertex of degree <= k.

    Returns the deletion order and whatever is left (the k-core of ``verts``).
    """
    deg = {v: len(adj[v] & verts) for v in verts}
    heap = [v for v, d in deg.items() if d <= k]
    heapq.heapify(heap)
    alive = set(verts)
    order = []
    while heap:
        v = heapq.heappop(heap)
        if v not in alive:
            continue
        alive.discard(v)
        order.append(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == k:
                    heapq.heappush(heap, w)
    return order, alive


def certify_k_degenerate(G, k: int, vertices: Iterable[int] | None = None) -> Solution | CoreWitness:
    """Certify that ``G[vertices]`` is k-degenerate.

    Ties are broken towards the lowest vertex id, so certificates are
    reproducible.  On failure the k-core is returned as a witness; it is
    falsy, so ``if certify_k_degenerate(...)`` reads naturally.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    adj = adjacency(G)
    verts = set(adj) if vertices is None else set(vertices)
    missing = verts - adj.keys()
    if missing:
        raise ValueError(f"vertices not in graph: {sorted(missing)[:5]}")
    order, core = _peel(adj, verts, k)
    if core:
        return CoreWitness(frozenset(core), k)
    return Solution(frozenset(verts), tuple(order), k)


def is_k_degenerate(G, k: int, vertices: Iterable[int] | None = None) -> bool:
    return isinstance(certify_k_degenerate(G, k, vertices), Solution)


def verify_solution(G, sol: Solution) -> bool:
    """Replay ``sol.order`` against ``G`` without trusting anything else in it."""
    adj = adjacency(G)
    if set(sol.order) != set(sol.kept) or len(sol.order) != len(sol.kept):
        return False
    alive = set(sol.kept)
    for v in sol.order:
        if v not in adj or len(adj[v] & alive) > sol.k:
            return False
        alive.discard(v)
    return True


def degeneracy(G) -> int:
    """Smallest k for which ``G`` is k-degenerate (0 for edgeless graphs)."""
    adj = adjacency(G)
    deg = {v: len(ws) for v, ws in adj.items()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    alive = set(adj)
    best = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v not in alive or d != deg[v]:
            continue
        best = max(best, d)
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return best


def max_edges_k_degenerate(s: int, k: int) -> int:
    """Most edges a k-degenerate graph on ``s`` vertices can have."""
    if s <= k + 1:
        return s * (s - 1) // 2
    return k * s - k * (k + 1) // 2


class _BranchAndBound:
    def __init__(self, adj: Mapping[int, frozenset[int]], k: int, budget: int):
        self.verts = sorted(adj)
        self.index = {v: i for i, v in enumerate(self.verts)}
        self.nbr = [0] * len(self.verts)
        for v, ws in adj.items():
            i = self.index[v]
            for w in ws:
                self.nbr[i] |= 1 << self.index[w]
        self.k = k
        self.budget = budget
        self.nodes = 0
        self.exhausted = False
        self.best_mask = 0
        self.best_size = -1

    def _degree(self, i: int, mask: int) -> int:
        return (self.nbr[i] & mask).bit_count()

    def _core(self, mask: int) -> int:
        """k-core of ``mask`` as a bitmask."""
        changed = True
        while changed and mask:
            changed = False
            m = mask
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                if self._degree(i, mask) <= self.k:
                    mask ^= low
                    changed = True
        return mask

    def greedy(self) -> int:
        """Drop max-degree core vertices until the rest is k-degenerate."""
        kept = (1 << len(self.verts)) - 1
        while True:
            core = self._core(kept)
            if not core:
                return kept
            best_i, best_d = -1, -1
            m = core
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                d = self._degree(i, core)
                if d > best_d:
                    best_i, best_d = i, d
            kept &= ~(1 << best_i)

    def _removal_lower_bound(self, active: int, free: int) -> int | None:
        """Fewest free vertices that must leave ``active`` (None if impossible)."""
        size = active.bit_count()
        degs = []
        total = 0
        m = active
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            d = self._degree(i, active)
            total += d
            if free & low:
                degs.append(d)
        edges = total // 2
        degs.sort(reverse=True)
        removed = 0
        for r, d in enumerate(degs, start=1):
            removed += d
            if edges - removed <= max_edges_k_degenerate(size - r, self.k):
                return r
        return None

    def search(self, kept: int, active: int, free: int) -> None:
        if self.exhausted:
            return
        self.nodes += 1
        if self.nodes > self.budget:
            self.exhausted = True
            return
        # vertices of low degree inside ``active`` can always be kept
        changed = True
        while changed:
            changed = False
            m = active
            while m:
                low = m & -m
                i = low.bit_length() - 1
                m ^= low
                if self._degree(i, active) <= self.k:
                    active ^= low
                    free &= ~low
                    kept |= low
                    changed = True
        if not active:
            size = kept.bit_count()
            if size > self.best_size:
                self.best_size, self.best_mask = size, kept
            return
        if not free:
            return
        need = self._removal_lower_bound(active, free)
        if need is None or kept.bit_count() + active.bit_count() - need <= self.best_size:
            return
        pick, pick_deg = -1, -1
        m = free
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            d = self._degree(i, active)
            if d > pick_deg:
                pick, pick_deg = i, d
        bit = 1 << pick
        self.search(kept, active & ~bit, free & ~bit)
        forced = (active & ~free) | bit
        if not self._core(forced):
            self.search(kept, active, free & ~bit)

    def run(self) -> tuple[int, bool]:
        full = (1 << len(self.verts)) - 1
        g = self.greedy()
        self.best_mask, self.best_size = g, g.bit_count()
        self.search(0, full, full)
        return self.best_mask, not self.exhausted

    def mask_to_set(self, mask: int) -> frozenset[int]:
        return frozenset(v for i, v in enumerate(self.verts) if mask >> i & 1)


def max_induced_kdeg_exact(G, k: int = 2, budget: int = 2_000_000) -> Solution:
    """Maximum induced k-degenerate subgraph by branch and bound.

    Branches on the free vertex of highest degree in the unresolved part,
    excluding it before including it.  If the node budget runs out the best
    set found so far is returned with ``optimal=False``.

    Raises:
        ValueError: for graphs with more than 128 vertices.
    """
    adj = adjacency(G)
    if len(adj) > MAX_EXACT_VERTICES:
        raise ValueError(f"exact solver handles at most {MAX_EXACT_VERTICES} vertices, got {len(adj)}")
    bb = _BranchAndBound(adj, k, budget)
    mask, optimal = bb.run()
    sol = certify_k_degenerate(adj, k, bb.mask_to_set(mask))
    if not isinstance(sol, Solution):
        raise AssertionError("branch and bound produced a non-degenerate set")
    return Solution(sol.kept, sol.order, k, optimal=optimal)


def brute_force_oracle(G, k: int) -> int:
    """Size of a maximum induced k-degenerate subgraph, by plain enumeration.

    Subsets are tried from largest to smallest; the first that peels away
    completely wins.  Shares no code with the branch-and-bound solver.
    """
    adj = adjacency(G)
    verts = sorted(adj)
    n = len(verts)
    if n > MAX_ORACLE_VERTICES:
        raise ValueError(f"oracle limited to {MAX_ORACLE_VERTICES} vertices, got {n}")
    pos = {v: i for i, v in enumerate(verts)}
    nbr = [sum(1 << pos[w] for w in adj[v]) for v in verts]

    def degenerate(mask: int) -> bool:
        while mask:
            for i in range(n):
                if mask >> i & 1 and (nbr[i] & mask).bit_count() <= k:
                    mask &= ~(1 << i)
                    break
            else:
                return False
        return True

    for size in range(n, -1, -1):
        for combo in itertools.combinations(range(n), size):
            if degenerate(sum(1 << i for i in combo)):
                return size
    return 0
