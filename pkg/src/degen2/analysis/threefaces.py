"""rho_3: fewest faces touching every vertex of degree at most three."""

from __future__ import annotations

from dataclasses import dataclass

from ..plane_graph import PlaneGraph


@dataclass(frozen=True)
class ThreeFaces:
    rho: int
    faces: tuple[int, ...]
    optimal: bool = True


def degree3_census(G) -> int:
    """Number of vertices of degree at most three."""
    if isinstance(G, PlaneGraph):
        return sum(1 for d in G.degrees().values() if d <= 3)
    return sum(1 for ws in G.values() if len(ws) <= 3)


def _greedy_cover(demand: frozenset[int], covers: dict[int, frozenset[int]]) -> list[int]:
    left = set(demand)
    chosen = []
    while left:
        f = max(sorted(covers), key=lambda g: len(covers[g] & left))
        chosen.append(f)
        left -= covers[f]
    return chosen


def threefaces_exact(G: PlaneGraph, cap: int = 500_000) -> ThreeFaces:
    """Minimum set of faces covering all vertices of degree <= 3.

    Branch and bound over the faces at the uncovered vertex with the fewest
    options.  After ``cap`` search nodes the best cover so far is returned
    with ``optimal=False``.
    """
    deg = G.degrees()
    demand = frozenset(v for v, d in deg.items() if d <= 3)
    if not demand:
        return ThreeFaces(0, ())
    covers = {f.id: frozenset(f.vertex_set) & demand for f in G.faces}
    covers = {f: s for f, s in covers.items() if s}
    # drop faces whose coverage is contained in another's
    ids = sorted(covers, key=lambda f: (-len(covers[f]), f))
    useful: dict[int, frozenset[int]] = {}
    for f in ids:
        if not any(covers[f] <= s for s in useful.values()):
            useful[f] = covers[f]
    at_vertex: dict[int, list[int]] = {v: [] for v in demand}
    for f, s in useful.items():
        for v in s:
            at_vertex[v].append(f)
    biggest = max(len(s) for s in useful.values())

    best = _greedy_cover(demand, useful)
    nodes = 0
    exhausted = False

    def search(left: frozenset[int], chosen: list[int]) -> None:
        nonlocal best, nodes, exhausted
        if exhausted:
            return
        nodes += 1
        if nodes > cap:
            exhausted = True
            return
        if not left:
            if len(chosen) < len(best):
                best = list(chosen)
            return
        if len(chosen) + -(-len(left) // biggest) >= len(best):
            return
        v = min(left, key=lambda x: (len(at_vertex[x]), x))
        for f in sorted(at_vertex[v], key=lambda g: (-len(useful[g] & left), g)):
            chosen.append(f)
            search(left - useful[f], chosen)
            chosen.pop()

    search(demand, [])
    return ThreeFaces(len(best), tuple(sorted(best)), not exhausted)
