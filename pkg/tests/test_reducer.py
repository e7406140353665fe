import json
import math
from fractions import Fraction

import pytest
from hypothesis import given

from degen2.degeneracy import Solution, certify_k_degenerate, max_induced_kdeg_exact, verify_solution
from degen2.plane_graph import PlaneGraph
from degen2.reducer import (
    ReductionError,
    ReductionStep,
    StepKind,
    bound_value,
    ceil_fraction,
    construct_2degenerate,
    difficult_direct,
    lift,
    reduce_once,
)
from degen2.structure import blocks, count_difficult, is_cube
from degen2.toolkit import generators as gen
from strategies import min_degree3_quadrangulations, mixed_face_graphs, sparse_plane_graphs

TWO_CUBES = {"block": "cube", "children": [{"block": "edge", "at": 0, "children": [{"block": "cube", "at": 1}]}]}

# seeds of gen_mixed_faces(seed, 20) whose first step is the given rule
RULE_SEEDS = {
    StepKind.DEGREE3_CLAIM1: 0,
    StepKind.DEGREE3_CLAIM2: 1,
    StepKind.FOUR_CYCLE_CLAIM: 2,
    StepKind.SPECIAL_VERTEX_FINAL: 213,
}


def cube_with_pendant():
    rot = {v: list(r) for v, r in gen.gen_cube().rotation.items()}
    rot[0].append(8)
    rot[8] = [0]
    return PlaneGraph(rot)


def check_run(G):
    sol, trace = construct_2degenerate(G)
    assert verify_solution(G, sol)
    assert trace.ok
    lam = count_difficult(G)[0]
    assert sol.size >= ceil_fraction(bound_value(G.n, G.m, lam))
    if G.is_connected() and G.n >= 3:
        assert sol.size >= math.ceil(4 * G.n / 5)
    return sol, trace


def test_bound_value_examples():
    assert bound_value(8, 12, 1) == 7
    assert bound_value(1, 0, 1) == 1
    assert bound_value(4, 4, 0) == 4
    assert bound_value(40, 76, 0) == Fraction(164, 5)
    assert ceil_fraction(Fraction(164, 5)) == 33
    assert ceil_fraction(Fraction(-3, 2)) == -1


def test_difficult_direct_examples():
    assert difficult_direct(gen.gen_cube()).size == 7
    assert difficult_direct(gen.gen_tree(10, 4)).size == 10
    two = gen.gen_difficult(TWO_CUBES)
    assert difficult_direct(two).size == 14 == ceil_fraction(bound_value(16, 25, 1))


@pytest.mark.parametrize("spec", [
    {"block": "cube"},
    TWO_CUBES,
    {"block": "vertex", "children": [{"block": "edge", "at": 0, "children": [
        {"block": "cube", "at": 1}, {"block": "edge", "at": 1}]}]},
])
def test_difficult_direct_drops_one_per_cube(spec):
    G = gen.gen_difficult(spec)
    cubes = [b for b in blocks(G).blocks if len(b) == 8 and is_cube(G, b)]
    sol = difficult_direct(G)
    assert sol.size == G.n - len(cubes)
    assert verify_solution(G, sol)


def test_reduce_once_low_degree():
    step = reduce_once(gen.gen_path(3))
    assert step.kind is StepKind.LOW_DEGREE_VERTEX
    assert step.removed == {0} and step.A == 1


def test_reduce_once_pendant_on_cube():
    G = cube_with_pendant()
    step = reduce_once(G)
    assert step.kind is StepKind.LOW_DEGREE_VERTEX and step.removed == {8}
    (rest,) = step.reduced
    assert is_cube(rest) is not None
    assert count_difficult(rest)[0] == 1


def test_prism_c4_reduces_by_cube_first():
    # C4 x P6 contains cubes with only four leaving edges, which take priority
    step = reduce_once(gen.gen_cylindrical_grid(4, 6))
    assert step.kind is StepKind.CUBE_EXTENSION
    assert step.removed == frozenset(range(8)) and step.A == 7


def test_prism_c5_reduces_around_end_cycle_vertex():
    G = gen.gen_cylindrical_grid(5, 6)
    step = reduce_once(G)
    assert step.kind in {StepKind.DEGREE3_CLAIM1, StepKind.DEGREE3_CLAIM2,
                         StepKind.FOUR_CYCLE_CLAIM, StepKind.CONTRACT_EDGE, StepKind.SPECIAL_VERTEX_FINAL}
    assert step.special == 0 and G.degree(0) == 3


@pytest.mark.parametrize("kind,seed", list(RULE_SEEDS.items()), ids=[k.value for k in RULE_SEEDS])
def test_each_special_rule_fires(kind, seed):
    G = gen.gen_mixed_faces(seed, 20)
    step = reduce_once(G)
    assert step.kind is kind
    assert G.degree(step.special) == 3
    assert step.added_back <= step.removed
    check_run(G)


def test_contract_edge_on_spoked_prism():
    G = gen.gen_spoked_prism()
    step = reduce_once(G)
    assert step.kind is StepKind.CONTRACT_EDGE
    u, v, w = step.contracted
    (H,) = step.reduced
    assert w in H.rotation and u not in H.rotation and v not in H.rotation
    assert H.is_triangle_free() and H.n == G.n - 1
    sol, trace = check_run(G)
    assert "ContractEdge" in trace.counts()
    assert sol.size == 24 == max_induced_kdeg_exact(G, 2).size


def test_lift_contract_edge_without_merged_vertex():
    G = gen.gen_spoked_prism()
    step = reduce_once(G)
    u, v, w = step.contracted
    (H,) = step.reduced
    sub, _ = construct_2degenerate(H)
    if w in sub.kept:
        sub = Solution(*_drop(H, sub, w))
    out = lift(step, sub)
    assert out.size == sub.size + 1
    assert verify_solution(G, out)


def _drop(H, sol, w):
    cert = certify_k_degenerate(H, 2, sol.kept - {w})
    return cert.kept, cert.order, 2


def test_lift_low_degree_adds_one():
    G = gen.gen_path(3)
    step = reduce_once(G)
    sub, _ = construct_2degenerate(step.reduced[0])
    out = lift(step, sub)
    assert out.size == sub.size + 1 and not step.fallback_used


def test_lift_cube_extension_on_isolated_cube():
    cube = gen.gen_cube()
    step = reduce_once(cube)
    assert step.kind is StepKind.CUBE_EXTENSION
    out = lift(step, Solution(frozenset(), (), 2))
    assert out.size == 7 and not step.fallback_used


def test_lift_failure_is_reported():
    cube = gen.gen_cube()
    # pretend vertex 0 was a low-degree vertex: adding it back closes the cube
    step = ReductionStep(StepKind.LOW_DEGREE_VERTEX, cube, frozenset({0}), frozenset({0}))
    rest = frozenset(range(1, 8))
    sub = Solution(rest, tuple(sorted(rest)), 2)
    with pytest.raises(ReductionError):
        lift(step, sub)


def test_construct_examples():
    sol, trace = check_run(gen.gen_cube())
    assert sol.size == 7
    assert [s.kind for s in trace.steps] == [StepKind.DIFFICULT_DIRECT]
    tree = gen.gen_tree(15, 2)
    assert check_run(tree)[0].size == 15
    grid = gen.gen_cylindrical_grid(4, 10)
    assert (grid.n, grid.m) == (40, 76)
    sol, _ = check_run(grid)
    assert sol.size >= 33


def test_construct_rejects_triangles():
    k3 = PlaneGraph({0: [1, 2], 1: [2, 0], 2: [0, 1]})
    with pytest.raises(ValueError):
        construct_2degenerate(k3)


def test_construct_disconnected_and_empty():
    sol, trace = construct_2degenerate(PlaneGraph({}))
    assert sol.size == 0 and trace.ok
    G = PlaneGraph({**gen.gen_cycle(5).rotation, **gen.gen_cube().relabel({v: v + 10 for v in range(8)}).rotation})
    sol, trace = check_run(G)
    assert trace.steps[0].kind is StepKind.SPLIT_COMPONENTS
    assert sol.size == 12


def test_deep_reduction_uses_no_recursion():
    G = gen.gen_cylindrical_grid(10, 20)
    sol, trace = check_run(G)
    assert max(e.depth for e in trace.ledger) > 10
    assert sol.size >= 160


def test_trace_json_and_determinism():
    G = gen.gen_mixed_faces(5, 15)
    sol1, t1 = construct_2degenerate(G)
    sol2, t2 = construct_2degenerate(PlaneGraph.from_json(G.to_json()))
    assert sol1 == sol2
    assert t1.to_json() == t2.to_json()
    data = json.loads(t1.to_json())
    assert data["solution"]["kept"] == sorted(sol1.kept)
    assert all(e["ok"] for e in data["ledger"])
    assert {s["kind"] for s in data["steps"]} <= {k.value for k in StepKind}


def test_error_carries_trace():
    err = ReductionError("x", None, gen.gen_cube())
    assert err.graph.n == 8 and err.trace is None


@given(sparse_plane_graphs(max_n=12))
def test_construct_between_bound_and_optimum(G):
    sol, trace = check_run(G)
    assert sol.size <= max_induced_kdeg_exact(G, 2).size
    assert trace.fallback_rate() <= 0.01


@given(min_degree3_quadrangulations(max_n=30))
def test_construct_on_min_degree3_quadrangulations(G):
    check_run(G)


@given(mixed_face_graphs())
def test_construct_on_mixed_faces(G):
    _, trace = check_run(G)
    for s in trace.steps:
        if s.removed and s.kind is not StepKind.CONTRACT_EDGE:
            assert s.lifted is not None and len(s.lifted) == s.A
