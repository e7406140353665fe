"""planar_code, graph6 and JSON readers/writers.

planar_code (binary, as written by plantri)::

    header   b">>planar_code<<"  (or ">>planar_code le<<" / ">>planar_code be<<")
    graph    n, then for each vertex 1..n its neighbours clockwise, then 0

Entries are single bytes.  A graph whose first byte is 0 uses 2-byte entries
(n follows as 2 bytes); byte order comes from the header, little-endian when
the header does not say.  We emit 1-byte entries whenever n < 256.

graph6 lines carry no embedding, so they parse to plain adjacency dicts that
only the embedding-free operations (the exact solver, the oracle) accept.
"""

from __future__ import annotations

import json
from typing import Iterable, Mapping

from ..plane_graph import PlaneGraph

PLANAR_CODE_HEADER = b">>planar_code<<"
_PC_HEADERS = {
    b">>planar_code<<": None,
    b">>planar_code le<<": "little",
    b">>planar_code be<<": "big",
}
GRAPH6_HEADER = ">>graph6<<"


class FormatError(ValueError):
    """Malformed input; ``offset`` is a byte offset or ``(line, column)``."""

    def __init__(self, message: str, offset):
        super().__init__(f"{message} (at {offset})")
        self.offset = offset


# -- planar_code --------------------------------------------------------------

def parse_planar_code(data: bytes) -> list[PlaneGraph]:
    if not data:
        return []
    pos = 0
    order = "little"
    if data.startswith(b">>"):
        end = data.find(b"<<")
        if end < 0:
            raise FormatError("unterminated header", 0)
        head = data[:end + 2]
        if head not in _PC_HEADERS:
            raise FormatError(f"unknown header {head!r}", 0)
        order = _PC_HEADERS[head] or "little"
        pos = end + 2
    graphs = []
    while pos < len(data):
        start = pos
        width = 1
        n = data[pos]
        pos += 1
        if n == 0:
            width = 2
            if pos + 2 > len(data):
                raise FormatError("truncated vertex count", pos)
            n = int.from_bytes(data[pos:pos + 2], order)
            pos += 2

        def read() -> int:
            nonlocal pos
            if pos + width > len(data):
                raise FormatError(f"truncated graph starting at byte {start}", pos)
            x = int.from_bytes(data[pos:pos + width], order)
            pos += width
            return x

        rot: dict[int, list[int]] = {}
        for v in range(n):
            nbrs = []
            while True:
                at = pos
                x = read()
                if x == 0:
                    break
                if x > n:
                    raise FormatError(f"neighbour {x} out of range 1..{n}", at)
                nbrs.append(x - 1)
            rot[v] = nbrs
        try:
            graphs.append(PlaneGraph(rot))
        except ValueError as exc:
            raise FormatError(f"bad embedding: {exc}", start) from exc
    return graphs


def emit_planar_code(graphs: Iterable[PlaneGraph], header: bool = True, byteorder: str = "little") -> bytes:
    graphs = list(graphs)
    out = bytearray()
    wide = any(G.n >= 256 for G in graphs)
    if header:
        out += PLANAR_CODE_HEADER if not wide else (b">>planar_code le<<" if byteorder == "little" else b">>planar_code be<<")
    for G in graphs:
        index = {v: i + 1 for i, v in enumerate(sorted(G.vertices))}
        if G.n < 256:
            out.append(G.n)
            put = out.append
        else:
            out.append(0)
            out += G.n.to_bytes(2, byteorder)

            def put(x: int) -> None:
                out.extend(x.to_bytes(2, byteorder))

        for v in sorted(G.vertices):
            for w in G.rotation[v]:
                put(index[w])
            put(0)
    return bytes(out)


# -- graph6 ----------------------------------------------------------------------

def _graph6_n(line: str, lineno: int) -> tuple[int, int]:
    b = [ord(ch) - 63 for ch in line]
    if any(not 0 <= x < 64 for x in b):
        col = next(i for i, x in enumerate(b) if not 0 <= x < 64)
        raise FormatError(f"invalid graph6 character {line[col]!r}", (lineno, col + 1))
    if not b:
        raise FormatError("empty graph6 record", (lineno, 1))
    if b[0] < 63:
        return b[0], 1
    if len(b) >= 2 and b[1] == 63:
        if len(b) < 8:
            raise FormatError("truncated vertex count", (lineno, len(line)))
        n = 0
        for x in b[2:8]:
            n = (n << 6) | x
        return n, 8
    if len(b) < 4:
        raise FormatError("truncated vertex count", (lineno, len(line)))
    return (b[1] << 12) | (b[2] << 6) | b[3], 4


def parse_graph6(text: str) -> list[dict[int, set[int]]]:
    graphs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith(GRAPH6_HEADER):
            line = line[len(GRAPH6_HEADER):]
        if not line:
            continue
        if line.startswith(":") or line.startswith(">>sparse6"):
            raise FormatError("sparse6 is not supported", (lineno, 1))
        if line.startswith("&"):
            raise FormatError("digraph6 is not supported", (lineno, 1))
        n, skip = _graph6_n(line, lineno)
        need = (n * (n - 1) // 2 + 5) // 6
        body = line[skip:]
        if len(body) < need:
            raise FormatError(f"expected {need} data bytes, got {len(body)}", (lineno, len(line) + 1))
        if len(body) > need:
            raise FormatError("trailing characters", (lineno, skip + need + 1))
        bits = []
        for ch in body:
            x = ord(ch) - 63
            bits.extend((x >> s) & 1 for s in range(5, -1, -1))
        adj: dict[int, set[int]] = {v: set() for v in range(n)}
        k = 0
        for j in range(1, n):
            for i in range(j):
                if bits[k]:
                    adj[i].add(j)
                    adj[j].add(i)
                k += 1
        graphs.append(adj)
    return graphs


def emit_graph6(G: PlaneGraph | Mapping[int, Iterable[int]]) -> str:
    adj = G.adj if isinstance(G, PlaneGraph) else {v: set(ws) for v, ws in G.items()}
    verts = sorted(adj)
    index = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    if n < 63:
        head = [n]
    elif n < 258048:
        head = [63, n >> 12 & 63, n >> 6 & 63, n & 63]
    else:
        head = [63, 63] + [n >> s & 63 for s in range(30, -1, -6)]
    nbr = [{index[w] for w in adj[v]} for v in verts]
    bits = [1 if i in nbr[j] else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = [int("".join(map(str, bits[i:i + 6])), 2) for i in range(0, len(bits), 6)]
    return "".join(chr(x + 63) for x in head + body)


# -- JSON --------------------------------------------------------------------------

def parse_json(text: str) -> list[PlaneGraph]:
    """One graph object or a list of them."""
    data = json.loads(text)
    items = data if isinstance(data, list) else [data]
    return [PlaneGraph.from_dict(d) for d in items]


def emit_json(graphs: Iterable[PlaneGraph]) -> str:
    graphs = list(graphs)
    if len(graphs) == 1:
        return graphs[0].to_json()
    return json.dumps([G.to_dict() for G in graphs])


def read_graphs(path: str, fmt: str | None = None):
    """Load a file; the format is guessed from the extension when not given."""
    if fmt is None:
        if path.endswith((".pc", ".pl", ".planar_code")):
            fmt = "planar_code"
        elif path.endswith((".g6", ".graph6")):
            fmt = "graph6"
        else:
            fmt = "json"
    if fmt == "planar_code":
        with open(path, "rb") as fh:
            return parse_planar_code(fh.read())
    with open(path, encoding="ascii" if fmt == "graph6" else "utf-8") as fh:
        text = fh.read()
    if fmt == "graph6":
        return parse_graph6(text)
    if fmt == "json":
        return parse_json(text)
    raise ValueError(f"unknown format {fmt!r}")
