"""Command line interface: ``degen2 <command> ...``.

Exit status is 0 when every check passes, 1 when some bound or ledger is
violated, and 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ..degeneracy import max_induced_kdeg_exact
from ..plane_graph import PlaneGraph
from . import generators as gen
from .formats import FormatError, emit_graph6, emit_json, emit_planar_code, read_graphs

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _default(o):
    if isinstance(o, Fraction):
        return str(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    raise TypeError(type(o).__name__)


def _print(obj) -> None:
    print(json.dumps(obj, default=_default))


def _load(args) -> list:
    return read_graphs(args.input, args.format)


def _embedded(graphs) -> list[PlaneGraph]:
    if any(not isinstance(G, PlaneGraph) for G in graphs):
        raise UsageError("this command needs embedded graphs (planar_code or JSON), not graph6")
    return graphs


def _write(graphs, fmt: str, out: str | None) -> None:
    if fmt == "planar_code":
        data = emit_planar_code(graphs)
        if out:
            with open(out, "wb") as fh:
                fh.write(data)
        else:
            sys.stdout.buffer.write(data)
        return
    if fmt == "graph6":
        text = "".join(emit_graph6(G) + "\n" for G in graphs)
    else:
        text = emit_json(graphs) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------------

def cmd_gen(args) -> int:
    fam = args.family
    if fam == "cube":
        graphs = [gen.gen_cube()]
    elif fam == "grid":
        graphs = [gen.gen_cylindrical_grid(args.c, args.k)]
    elif fam == "quadrangulation":
        graphs = [gen.gen_quadrangulation(args.seed, args.n, min_degree3=args.min_degree3)]
    elif fam == "difficult":
        if not args.spec:
            raise UsageError("difficult needs --spec JSON")
        graphs = [gen.gen_difficult(json.loads(args.spec))]
    elif fam == "tree":
        graphs = [gen.gen_tree(args.n, args.seed)]
    elif fam == "wheel":
        graphs = [gen.gen_pseudo_double_wheel(args.k)]
    elif fam == "mixed":
        graphs = [gen.gen_mixed_faces(args.seed, args.steps)]
    elif fam == "dodecahedron":
        graphs = [gen.gen_dodecahedron()]
    else:
        raise UsageError(f"unknown family {fam}")
    _write(graphs, args.to, args.output)
    return EXIT_OK


def cmd_solve(args) -> int:
    status = EXIT_OK
    for i, G in enumerate(_load(args)):
        n = G.n if isinstance(G, PlaneGraph) else len(G)
        if n > args.cap:
            _print({"graph": i, "n": n, "skipped": True})
            continue
        sol = max_induced_kdeg_exact(G, args.k, budget=args.budget)
        _print({"graph": i, "n": n, "k": args.k, "size": sol.size, "optimal": sol.optimal, "kept": sorted(sol.kept)})
    return status


def cmd_construct(args) -> int:
    from ..reducer import ReductionError, construct_2degenerate

    traces = []
    status = EXIT_OK
    for i, G in enumerate(_embedded(_load(args))):
        try:
            sol, trace = construct_2degenerate(G)
        except ReductionError as exc:
            _print({"graph": i, "error": str(exc)})
            if exc.trace is not None:
                traces.append(exc.trace.to_dict())
            status = EXIT_VIOLATION
            continue
        top = trace.ledger[-1]
        _print({"graph": i, "n": G.n, "m": G.m, "size": sol.size, "required": top.required,
                "ledger_ok": trace.ok, "steps": trace.counts()})
        traces.append(trace.to_dict())
        if not trace.ok:
            status = EXIT_VIOLATION
    if args.emit_trace:
        with open(args.emit_trace, "w") as fh:
            json.dump(traces if len(traces) != 1 else traces[0], fh)
    return status


def cmd_layers(args) -> int:
    from ..analysis import layer_profile

    status = EXIT_OK
    for i, G in enumerate(_embedded(_load(args))):
        prof = layer_profile(G, args.face, args.depth)
        _print({"graph": i, **prof.to_dict()})
        if not prof.identities_ok:
            status = EXIT_VIOLATION
    return status


def cmd_discharge(args) -> int:
    import warnings

    from ..analysis import discharge_section2, discharge_section3, threefaces_exact

    status = EXIT_OK
    for i, G in enumerate(_embedded(_load(args))):
        if args.ruleset == 2:
            if args.face is None:
                cands = [f for f in G.faces if f.length in (4, 5) and len(set(f.walk)) == f.length]
                if not cands:
                    raise UsageError("no face of length 4 or 5 to use as the outer cycle")
                face = cands[0]
            else:
                face = G.faces[args.face[0]]
            ledger = discharge_section2(G, face.walk)
        else:
            F = args.face if args.face is not None else list(threefaces_exact(G).faces)
            with warnings.catch_warnings(record=True) as caught:
                warnings.simplefilter("always")
                ledger = discharge_section3(G, F)
            for w in caught:
                print(f"warning: {w.message}", file=sys.stderr)
        out = {"graph": i, "ruleset": args.ruleset, "total": str(ledger.total_final),
               "expected": str(ledger.expected_total), "ok": ledger.ok}
        if args.verbose:
            out["ledger"] = ledger.to_dict()
        else:
            out["notes"] = ledger.notes
        _print(out)
        if not ledger.ok:
            status = EXIT_VIOLATION
    return status


def cmd_threefaces(args) -> int:
    from ..analysis import threefaces_exact

    for i, G in enumerate(_embedded(_load(args))):
        tf = threefaces_exact(G, cap=args.cap)
        _print({"graph": i, "rho3": tf.rho, "faces": list(tf.faces), "optimal": tf.optimal})
    return EXIT_OK


def cmd_census(args) -> int:
    from ..analysis import degree3_census

    for i, G in enumerate(_load(args)):
        _print({"graph": i, "n3": degree3_census(G)})
    return EXIT_OK


def cmd_corpus(args) -> int:
    from .corpus import run_corpus

    with open(args.config) as fh:
        config = json.load(fh)
    if args.seed is not None:
        config["seed"] = args.seed
    report = run_corpus(config)
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(report.to_csv())
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(report.to_json())
    if not args.csv and not args.json:
        sys.stdout.write(report.to_csv())
    print(f"{len(report.rows)} graphs, {len(report.failures)} failed", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_convert(args) -> int:
    graphs = _load(args)
    if args.to != "graph6":
        graphs = _embedded(graphs)
    _write(graphs, args.to, args.output)
    return EXIT_OK


# -- parser -------------------------------------------------------------------------

FORMATS = ("json", "planar_code", "graph6")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="degen2", description="Induced 2-degenerate subgraphs of triangle-free plane graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_input(sp):
        sp.add_argument("input", help="graph file (.json, .pc planar_code, .g6 graph6)")
        sp.add_argument("--format", choices=FORMATS, help="override the format guessed from the extension")
        return sp

    g = sub.add_parser("gen", help="generate a graph")
    g.add_argument("family", choices=["cube", "grid", "quadrangulation", "difficult", "tree", "wheel", "mixed", "dodecahedron"])
    g.add_argument("--c", type=int, default=4)
    g.add_argument("--k", type=int, default=4)
    g.add_argument("--n", type=int, default=12)
    g.add_argument("--steps", type=int, default=20)
    g.add_argument("--spec", help="block tree for 'difficult', as JSON")
    g.add_argument("--min-degree3", action="store_true")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--to", choices=FORMATS, default="json")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    s = with_input(sub.add_parser("solve", help="exact maximum induced k-degenerate subgraph"))
    s.add_argument("--k", type=int, default=2)
    s.add_argument("--cap", type=int, default=128, help="skip graphs with more vertices")
    s.add_argument("--budget", type=int, default=2_000_000)
    s.set_defaults(func=cmd_solve)

    c = with_input(sub.add_parser("construct", help="run the reduction algorithm"))
    c.add_argument("--emit-trace", metavar="PATH")
    c.set_defaults(func=cmd_construct)

    ly = with_input(sub.add_parser("layers", help="layer profile around a face"))
    ly.add_argument("--face", type=int, default=0)
    ly.add_argument("--depth", type=int, default=9)
    ly.set_defaults(func=cmd_layers)

    d = with_input(sub.add_parser("discharge", help="discharging ledger"))
    d.add_argument("--ruleset", type=int, choices=[2, 3], default=3)
    d.add_argument("--face", type=int, nargs="+", help="outer face (ruleset 2) or the face set F (ruleset 3)")
    d.add_argument("-v", "--verbose", action="store_true")
    d.set_defaults(func=cmd_discharge)

    t = with_input(sub.add_parser("threefaces", help="rho_3 and a witness face set"))
    t.add_argument("--cap", type=int, default=500_000)
    t.set_defaults(func=cmd_threefaces)

    ce = with_input(sub.add_parser("census", help="count vertices of degree at most three"))
    ce.set_defaults(func=cmd_census)

    co = sub.add_parser("corpus", help="run a corpus from a JSON config")
    co.add_argument("--config", required=True)
    co.add_argument("--csv")
    co.add_argument("--json")
    co.add_argument("--seed", type=int)
    co.set_defaults(func=cmd_corpus)

    cv = with_input(sub.add_parser("convert", help="convert between formats"))
    cv.add_argument("--to", choices=FORMATS, required=True)
    cv.add_argument("-o", "--output")
    cv.set_defaults(func=cmd_convert)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (FormatError, UsageError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
