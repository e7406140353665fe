"""Exact charge ledgers for the two discharging arguments."""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from ..plane_graph import INF, PlaneGraph, face_distances
from .constants import COLLECTION_RADIUS, FAR_APART_DISTANCE
from .layers import layer_profile

Element = tuple[str, int]  # ("v", vertex) or ("f", face id)


class DischargeError(AssertionError):
    pass


class FarApartWarning(UserWarning):
    """Faces handed to the radius-9 rule are closer than expected."""


@dataclass(frozen=True)
class Transfer:
    src: Element
    dst: Element
    amount: Fraction
    rule: str


@dataclass
class ChargeLedger:
    initial: dict[Element, Fraction]
    transfers: list[Transfer] = field(default_factory=list)
    expected_total: Fraction = Fraction(0)
    notes: dict = field(default_factory=dict)

    def send(self, src: Element, dst: Element, amount, rule: str) -> None:
        amount = Fraction(amount)
        if amount:
            self.transfers.append(Transfer(src, dst, amount, rule))

    @property
    def final(self) -> dict[Element, Fraction]:
        out = dict(self.initial)
        for t in self.transfers:
            out[t.src] -= t.amount
            out[t.dst] += t.amount
        return out

    @property
    def total_initial(self) -> Fraction:
        return sum(self.initial.values(), Fraction(0))

    @property
    def total_final(self) -> Fraction:
        return sum(self.final.values(), Fraction(0))

    def received(self, dst: Element, rule: str | None = None) -> Fraction:
        return sum((t.amount for t in self.transfers if t.dst == dst and (rule is None or t.rule == rule)), Fraction(0))

    @property
    def ok(self) -> bool:
        return self.total_initial == self.total_final == self.expected_total

    def to_dict(self) -> dict:
        key = lambda e: f"{e[0]}{e[1]}"
        fin = self.final
        return {
            "initial": {key(e): str(x) for e, x in sorted(self.initial.items())},
            "final": {key(e): str(x) for e, x in sorted(fin.items())},
            "transfers": [[key(t.src), key(t.dst), str(t.amount), t.rule] for t in self.transfers],
            "total_initial": str(self.total_initial),
            "total_final": str(self.total_final),
            "expected_total": str(self.expected_total),
            "notes": self.notes,
        }


def _check(ledger: ChargeLedger) -> ChargeLedger:
    if ledger.total_initial != ledger.expected_total:
        raise DischargeError(f"initial total {ledger.total_initial} != {ledger.expected_total}")
    if ledger.total_final != ledger.total_initial:
        raise DischargeError("charge not conserved")
    return ledger


def _find_cycle_face(H: PlaneGraph, C: Sequence[int]) -> int:
    cs = frozenset(C)
    for f in H.faces:
        if f.length == len(C) and f.vertex_set == cs:
            return f.id
    raise ValueError(f"{list(C)} does not bound a face")


def discharge_section2(H: PlaneGraph, C: Sequence[int]) -> ChargeLedger:
    """Ledger for a graph drawn inside the cycle ``C``.

    ``C`` must be the boundary of a face of the connected graph ``H`` (its
    outer face, after re-choosing the point at infinity).  Interior vertices
    start at deg - 4, cycle vertices at deg - 2, faces at length - 4; each
    cycle vertex then sends 1 to every interior neighbour of degree three.
    """
    if not H.is_connected():
        raise ValueError("H must be connected")
    outer = _find_cycle_face(H, C)
    on_c = frozenset(C)
    deg = H.degrees()
    init: dict[Element, Fraction] = {}
    for v in H.vertices:
        init[("v", v)] = Fraction(deg[v] - (2 if v in on_c else 4))
    for f in H.faces:
        init[("f", f.id)] = Fraction(f.length - 4)
    ledger = ChargeLedger(init, expected_total=Fraction(-8 + 2 * len(on_c)), notes={"outer_face": outer, "cycle": list(C)})
    for v in sorted(on_c):
        for u in sorted(H.adj[v]):
            if u not in on_c and deg[u] == 3:
                ledger.send(("v", v), ("v", u), 1, "cycle-to-3")
    return _check(ledger)


def far_apart_violations(G: PlaneGraph, F: Iterable[int], threshold: int = FAR_APART_DISTANCE) -> list[tuple[int, int, float]]:
    F = sorted(set(F))
    dists = {f: face_distances(G, f) for f in F}
    return [(a, b, dists[a][b]) for a, b in itertools.combinations(F, 2) if dists[a][b] < threshold]


def discharge_section3(G: PlaneGraph, F: Iterable[int], radius: int = COLLECTION_RADIUS) -> ChargeLedger:
    """Two-phase ledger around the face set ``F``.

    Phase 1: each face of F gives 1 to every vertex on it.  Phase 2: every
    other face and every vertex within ``radius`` of some face of F hands
    all its charge to the nearest one (lowest face id on ties).  The total
    is -8 per connected component.  ``notes["received"]`` holds what each
    face of F got in phase 2 and, when F is spread out, whether that equals
    the layer sum of c(f, k) and g(f, k).
    """
    F = sorted(set(F))
    for f in F:
        if not 0 <= f < len(G.faces):
            raise ValueError(f"no face {f}")
    close = far_apart_violations(G, F)
    if close:
        warnings.warn(f"faces closer than {FAR_APART_DISTANCE}: {close[:3]}", FarApartWarning, stacklevel=2)
    deg = G.degrees()
    init: dict[Element, Fraction] = {("v", v): Fraction(deg[v] - 4) for v in G.vertices}
    for f in G.faces:
        init[("f", f.id)] = Fraction(f.length - 4)
    ncomp = len(G.components())
    ledger = ChargeLedger(init, expected_total=Fraction(-8 * ncomp))
    fset = set(F)
    for f in F:
        for v in sorted(G.faces[f].vertex_set):
            ledger.send(("f", f), ("v", v), 1, "phase1")

    fd = {f: face_distances(G, f) for f in F}
    vf = G.vertex_faces

    def nearest(dist_of) -> int | None:
        best, best_d = None, INF
        for f in F:
            d = dist_of(f)
            if d < best_d:
                best, best_d = f, d
        return best if best_d <= radius else None

    current = ledger.final
    for h in G.faces:
        if h.id in fset:
            continue
        tgt = nearest(lambda f: fd[f][h.id])
        if tgt is not None:
            ledger.send(("f", h.id), ("f", tgt), current[("f", h.id)], "phase2")
    for v in G.vertices:
        tgt = nearest(lambda f: min(fd[f][x] for x in vf[v]))
        if tgt is not None:
            ledger.send(("v", v), ("f", tgt), current[("v", v)], "phase2")

    received = {}
    for f in F:
        got = ledger.received(("f", f), "phase2")
        entry = {"received": str(got)}
        if not close:
            expect = layer_profile(G, f, radius).received_charge()
            entry["layer_sum"] = expect
            entry["matches_layers"] = got == expect
        received[f] = entry
    ledger.notes = {"F": F, "close_pairs": [list(x) for x in close], "received": received}
    return _check(ledger)
