"""Cylindrical-grid construction and the 7/8 bound report."""

from __future__ import annotations

import math
from fractions import Fraction

from ..degeneracy import MAX_EXACT_VERTICES, Solution, certify_k_degenerate, max_induced_kdeg_exact
from ..plane_graph import PlaneGraph
from ..reducer import construct_2degenerate
from .constants import BIGO_CONSTANT
from .threefaces import degree3_census, threefaces_exact


def cylgrid_solution(c: int, k: int) -> Solution:
    """Certified 2-degenerate set on the c x k cylindrical grid.

    Uses the vertex numbering of ``gen_cylindrical_grid`` (``i * c + j``) and
    drops vertex ``i * c`` from every second cycle layer, ``ck - k//2`` kept.
    """
    if c < 4 or k < 1:
        raise ValueError("need c >= 4 and k >= 1")
    from ..toolkit.generators import gen_cylindrical_grid

    G = gen_cylindrical_grid(c, k)
    drop = {i * c for i in range(1, k, 2)}
    sol = certify_k_degenerate(G, 2, set(G.vertices) - drop)
    if not isinstance(sol, Solution):
        raise AssertionError(f"grid {c}x{k} solution is not 2-degenerate")
    return sol


def seven_eighths_bound(n: int, rho: int) -> Fraction:
    return max(Fraction(0), Fraction(7 * n, 8) - BIGO_CONSTANT * (rho - 2))


def bigO_bound_report(G: PlaneGraph, exact_cap: int = 40, threefaces_cap: int = 500_000) -> dict:
    """Compare the 7n/8 - 18(rho3 - 2) bound with what we can actually build."""
    tf = threefaces_exact(G, cap=threefaces_cap)
    sol, _ = construct_2degenerate(G)
    bound = seven_eighths_bound(G.n, tf.rho)
    report = {
        "n": G.n,
        "m": G.m,
        "n3": degree3_census(G),
        "rho3": tf.rho,
        "rho3_optimal": tf.optimal,
        "rho3_faces": list(tf.faces),
        "bound": bound,
        "bound_ceil": math.ceil(bound),
        "constructive": sol.size,
        "exact": None,
    }
    if G.n <= min(exact_cap, MAX_EXACT_VERTICES):
        ex = max_induced_kdeg_exact(G, 2)
        report["exact"] = ex.size
        report["exact_optimal"] = ex.optimal
    return report
