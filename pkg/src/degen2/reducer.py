"""Constructive 2-degenerate subgraphs meeting the (6n - m - lambda)/5 bound.

The algorithm repeatedly finds a reducible configuration, recurses on the
smaller graph and lifts the solution back.  Nothing is taken on faith: every
lift is re-certified and every recursion level checks the bound numerically.
"""

from __future__ import annotations

import enum
import itertools
import json
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .degeneracy import Solution, certify_k_degenerate
from .plane_graph import ContractionWarning, PlaneGraph
from .structure import (
    blocks,
    count_difficult,
    cubes_with_few_leaving_edges,
    find_special_vertex,
    is_cube,
)


class ReductionError(RuntimeError):
    """A promised extension or bound failed; carries the trace so far."""

    def __init__(self, message: str, trace: ReductionTrace | None = None, graph: PlaneGraph | None = None):
        super().__init__(message)
        self.trace = trace
        self.graph = graph


class StepKind(str, enum.Enum):
    EMPTY = "Empty"
    SPLIT_COMPONENTS = "SplitComponents"
    DIFFICULT_DIRECT = "DifficultDirect"
    LOW_DEGREE_VERTEX = "LowDegreeVertex"
    CUBE_EXTENSION = "CubeExtension"
    DEGREE3_CLAIM1 = "Degree3Claim1"
    DEGREE3_CLAIM2 = "Degree3Claim2"
    FOUR_CYCLE_CLAIM = "FourCycleClaim"
    CONTRACT_EDGE = "ContractEdge"
    SPECIAL_VERTEX_FINAL = "SpecialVertexFinal"


def bound_value(n: int, m: int, lam: int) -> Fraction:
    """(6n - m - lambda) / 5, exactly."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return Fraction(6 * n - m - lam, 5)


def ceil_fraction(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


@dataclass
class ReductionStep:
    """One reduction: ``graph`` loses ``removed`` and becomes ``reduced``.

    ``added_back`` is the designated extension (``A`` vertices of ``graph``);
    ``slack`` is ``5A - 6dn + dm + lambda - lambda'``, which is nonnegative
    exactly when the local step alone carries the bound.
    """

    kind: StepKind
    graph: PlaneGraph
    removed: frozenset[int] = frozenset()
    added_back: frozenset[int] = frozenset()
    reduced: tuple[PlaneGraph, ...] = ()
    delta_n: int = 0
    delta_m: int = 0
    lam: int = 0
    lam_reduced: int = 0
    contracted: tuple[int, int, int] | None = None
    special: int | None = None
    fallback_used: bool = False
    lifted: frozenset[int] | None = None
    index: int = -1

    @property
    def A(self) -> int:
        return len(self.added_back)

    @property
    def slack(self) -> int:
        return 5 * self.A - 6 * self.delta_n + self.delta_m + self.lam - self.lam_reduced

    def to_dict(self) -> dict:
        d = {
            "index": self.index,
            "kind": self.kind.value,
            "n": self.graph.n,
            "m": self.graph.m,
            "removed": sorted(self.removed),
            "added_back": sorted(self.added_back),
            "delta_n": self.delta_n,
            "delta_m": self.delta_m,
            "lambda": self.lam,
            "lambda_reduced": self.lam_reduced,
            "slack": self.slack,
            "fallback_used": self.fallback_used,
        }
        if self.lifted is not None:
            d["lifted"] = sorted(self.lifted)
        if self.contracted is not None:
            d["contracted"] = list(self.contracted)
        if self.special is not None:
            d["special"] = self.special
        return d


@dataclass
class LedgerEntry:
    step: int
    depth: int
    n: int
    m: int
    lam: int
    bound: Fraction
    size: int
    four_fifths: int | None = None

    @property
    def required(self) -> int:
        return ceil_fraction(self.bound)

    @property
    def ok(self) -> bool:
        if self.size < self.required:
            return False
        return self.four_fifths is None or self.size >= self.four_fifths

    def to_dict(self) -> dict:
        return {
            "step": self.step,
            "depth": self.depth,
            "n": self.n,
            "m": self.m,
            "lambda": self.lam,
            "bound": str(self.bound),
            "required": self.required,
            "four_fifths": self.four_fifths,
            "size": self.size,
            "ok": self.ok,
        }


@dataclass
class ReductionTrace:
    steps: list[ReductionStep] = field(default_factory=list)
    ledger: list[LedgerEntry] = field(default_factory=list)
    solution: Solution | None = None

    @property
    def ok(self) -> bool:
        return all(e.ok for e in self.ledger)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for s in self.steps:
            out[s.kind.value] = out.get(s.kind.value, 0) + 1
        return out

    def fallback_rate(self) -> float:
        lifts = [s for s in self.steps if s.removed]
        if not lifts:
            return 0.0
        return sum(s.fallback_used for s in lifts) / len(lifts)

    def to_dict(self) -> dict:
        return {
            "steps": [s.to_dict() for s in self.steps],
            "ledger": [e.to_dict() for e in self.ledger],
            "solution": None if self.solution is None else self.solution.to_dict(),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)


# -- single steps ------------------------------------------------------------

def difficult_direct(G: PlaneGraph) -> Solution:
    """Keep everything except the lowest-id vertex of each cube block."""
    drop = set()
    for b in blocks(G).blocks:
        if len(b) == 8 and is_cube(G, b) is not None:
            drop.add(min(b))
    sol = certify_k_degenerate(G, 2, set(G.vertices) - drop)
    if not isinstance(sol, Solution):
        raise ReductionError(f"difficult graph not 2-degenerate after dropping {sorted(drop)}", graph=G)
    return sol


def _deletion(kind: StepKind, G: PlaneGraph, X: Iterable[int], add: Iterable[int], special=None) -> ReductionStep:
    X = frozenset(X)
    H = G.delete_vertices(X)
    return ReductionStep(
        kind=kind,
        graph=G,
        removed=X,
        added_back=frozenset(add),
        reduced=(H,),
        delta_n=len(X),
        delta_m=G.m - H.m,
        lam=count_difficult(G)[0],
        lam_reduced=count_difficult(H)[0],
        special=special,
    )


def _common(G: PlaneGraph, a: int, b: int, *exclude: int) -> list[int]:
    return sorted((G.adj[a] & G.adj[b]) - set(exclude))


def reduce_once(G: PlaneGraph, fresh_id: int | None = None) -> ReductionStep:
    """The first applicable reducible configuration, in proof order.

    Within a rule the lowest vertex id wins.  ``fresh_id`` names the merged
    vertex if an edge is contracted (default: one more than the largest id).
    Difficult graphs are accepted too, although the driver never passes them.

    Raises:
        ValueError: if ``G`` is empty or disconnected.
        ReductionError: if no rule applies.
    """
    if G.n == 0 or not G.is_connected():
        raise ValueError("reduce_once needs a nonempty connected graph")
    lam = count_difficult(G)[0]
    deg = G.degrees()

    # 1. low degree vertex
    low = [v for v in G.vertices if deg[v] <= 2]
    if low:
        v = min(low)
        return _deletion(StepKind.LOW_DEGREE_VERTEX, G, {v}, {v})

    # 2. cube with few leaving edges
    cubes = cubes_with_few_leaving_edges(G, 5)
    if cubes:
        X = cubes[0].vertices
        return _deletion(StepKind.CUBE_EXTENSION, G, X, X - {min(X)})

    # 3. special vertex
    v = find_special_vertex(G)
    if v is None:
        raise ReductionError("no special vertex in a min-degree-3 graph", graph=G)
    nbrs = sorted(G.adj[v])

    big = [u for u in nbrs if deg[u] >= 5]
    if big:
        u = big[0]
        return _deletion(StepKind.DEGREE3_CLAIM1, G, {u, v}, {v}, special=v)

    threes = [u for u in nbrs if deg[u] == 3]
    if threes:
        u1 = threes[0]
        fours = [u for u in nbrs if deg[u] >= 4]
        if fours:
            return _deletion(StepKind.DEGREE3_CLAIM2, G, {u1, fours[0], v}, {v, u1}, special=v)
        return _deletion(StepKind.DEGREE3_CLAIM2, G, set(nbrs) | {v}, set(nbrs), special=v)

    for u1, u2 in itertools.combinations(nbrs, 2):
        for w in _common(G, u1, u2, v):
            if deg[w] == 3:
                return _deletion(StepKind.FOUR_CYCLE_CLAIM, G, {u1, u2, v, w}, {u2, v, w}, special=v)

    for u in nbrs:
        in_c4 = any(_common(G, u, x, v) for x in nbrs if x != u)
        if not in_c4:
            new = max(G.vertices) + 1 if fresh_id is None else fresh_id
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", ContractionWarning)
                H, w = G.contract_edge(u, v, new)
            return ReductionStep(
                kind=StepKind.CONTRACT_EDGE,
                graph=G,
                removed=frozenset({u, v}),
                added_back=frozenset({v}),
                reduced=(H,),
                delta_n=1,
                delta_m=G.m - H.m,
                lam=lam,
                lam_reduced=count_difficult(H)[0],
                contracted=(u, v, w),
                special=v,
            )

    for u in nbrs:
        x1, x2 = [x for x in nbrs if x != u]
        c1, c2 = _common(G, u, x1, v), _common(G, u, x2, v)
        if not (c1 and c2):
            continue
        for y1, y2 in itertools.product(c1, c2):
            if y1 != y2:
                X = {v, u, x1, x2, y1, y2}
                return _deletion(StepKind.SPECIAL_VERTEX_FINAL, G, X, {u, v, x1, x2}, special=v)
    raise ReductionError(f"no reducible configuration around special vertex {v}", graph=G)


def lift(step: ReductionStep, sub: Solution) -> Solution:
    """Extend a solution of ``step.reduced`` to one of ``step.graph``.

    The designated extension is tried first (for a cube, all eight ways of
    leaving one vertex out count as designated); for deletions every other
    ``A``-subset of the removed set is tried before giving up.
    """
    G = step.graph
    S = set(sub.kept)
    if step.kind is StepKind.CONTRACT_EDGE:
        u, v, w = step.contracted
        if w in S:
            tries = [(S - {w}) | {u, v}]
        else:
            tries = [S | {v}, S | {u}]
        designated = 1
    elif step.kind is StepKind.CUBE_EXTENSION:
        tries = [S | (step.removed - {x}) for x in sorted(step.removed)]
        designated = len(tries)
    else:
        tries = [S | step.added_back]
        order = sorted(step.removed)
        for cand in itertools.combinations(order, step.A):
            if frozenset(cand) != step.added_back:
                tries.append(S | set(cand))
        designated = 1
    for i, keep in enumerate(tries):
        cert = certify_k_degenerate(G, 2, keep)
        if isinstance(cert, Solution):
            step.fallback_used = i >= designated
            step.lifted = frozenset(keep - S)
            return cert
    raise ReductionError(f"{step.kind.value}: no 2-degenerate extension by {step.A} vertices", graph=G)


# -- driver -------------------------------------------------------------------

@dataclass
class _Frame:
    graph: PlaneGraph
    depth: int
    step: ReductionStep | None = None
    children: list[PlaneGraph] = field(default_factory=list)
    results: list[Solution] = field(default_factory=list)


def construct_2degenerate(G: PlaneGraph) -> tuple[Solution, ReductionTrace]:
    """Build an induced 2-degenerate subgraph of size >= ceil((6n - m - lambda)/5).

    Uses an explicit stack, so deep reductions do not hit the recursion limit.

    Raises:
        ValueError: if ``G`` has a triangle.
        ReductionError: if a lift or the bound fails at some level.
    """
    if not G.is_triangle_free():
        raise ValueError("input graph contains a triangle")
    trace = ReductionTrace()
    next_id = [max(G.vertices, default=-1) + 1]
    stack = [_Frame(G, 0)]
    done: Solution | None = None

    def plan(fr: _Frame) -> Solution | None:
        H = fr.graph
        if H.n == 0:
            fr.step = ReductionStep(StepKind.EMPTY, H)
            return Solution(frozenset(), (), 2)
        comps = H.components()
        if len(comps) > 1:
            fr.step = ReductionStep(StepKind.SPLIT_COMPONENTS, H, lam=count_difficult(H)[0])
            fr.children = [H.induced(c) for c in comps]
            return None
        lam = count_difficult(H)[0]
        if lam:
            fr.step = ReductionStep(StepKind.DIFFICULT_DIRECT, H, lam=lam)
            return difficult_direct(H)
        try:
            fr.step = reduce_once(H, fresh_id=next_id[0])
        except ReductionError as exc:
            exc.trace = trace
            raise
        if fr.step.kind is StepKind.CONTRACT_EDGE:
            next_id[0] += 1
        fr.children = list(fr.step.reduced)
        return None

    def finish(fr: _Frame, sol: Solution) -> Solution:
        H, step = fr.graph, fr.step
        lam = step.lam if step.kind is not StepKind.EMPTY else 0
        ff = math.ceil(4 * H.n / 5) if H.n >= 3 and H.is_connected() else None
        entry = LedgerEntry(step.index, fr.depth, H.n, H.m, lam, bound_value(H.n, H.m, lam), sol.size, ff)
        trace.ledger.append(entry)
        if not entry.ok:
            raise ReductionError(
                f"bound violated at step {step.index}: size {sol.size} < {entry.required}", trace, H
            )
        return sol

    while stack:
        fr = stack[-1]
        if fr.step is None:
            leaf = plan(fr)
            fr.step.index = len(trace.steps)
            trace.steps.append(fr.step)
            if leaf is not None:
                stack.pop()
                done = finish(fr, leaf)
                if stack:
                    stack[-1].results.append(done)
                continue
        if len(fr.results) < len(fr.children):
            stack.append(_Frame(fr.children[len(fr.results)], fr.depth + 1))
            continue
        stack.pop()
        if fr.step.kind is StepKind.SPLIT_COMPONENTS:
            kept = frozenset().union(*(r.kept for r in fr.results))
            sol = certify_k_degenerate(fr.graph, 2, kept)
            if not isinstance(sol, Solution):
                raise ReductionError("union of component solutions failed", trace, fr.graph)
        else:
            try:
                sol = lift(fr.step, fr.results[0])
            except ReductionError as exc:
                exc.trace = trace
                raise
        done = finish(fr, sol)
        if stack:
            stack[-1].results.append(done)
    trace.solution = done
    return done, trace
