"""Reading and writing graphs: graph6, DIMACS ``.col``, edge lists and JSON.

Only the JSON format keeps roles, tags, blocks and the construction spec;
the other three carry adjacency alone.
"""

from __future__ import annotations

import json
from pathlib import Path

from .graph import Graph, Role

__all__ = [
    "ParseError",
    "FORMATS",
    "to_graph6",
    "from_graph6",
    "to_dimacs",
    "from_dimacs",
    "to_edge_list",
    "from_edge_list",
    "to_json",
    "from_json",
    "export",
    "parse",
    "guess_format",
    "read_graph",
    "write_graph",
]

FORMATS = ("graph6", "dimacs", "edgelist", "json")


class ParseError(ValueError):
    """Malformed input; ``offset`` is the byte position of the problem."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


# ---------------------------------------------------------------------
# graph6


def _g6_size(n: int) -> bytes:
    if n < 63:
        return bytes([n + 63])
    if n < 258048:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def to_graph6(g: Graph) -> bytes:
    """Standard graph6: upper triangle, column by column, 6 bits per byte."""
    n = g.n
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = bytes(63 + int("".join(map(str, bits[p:p + 6])), 2) for p in range(0, len(bits), 6))
    return _g6_size(n) + body


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    pos = 0
    if data.startswith(b">>graph6<<"):
        pos = 10
    for p in range(pos, len(data)):
        if not 63 <= data[p] <= 126:
            raise ParseError(f"byte {data[p]!r} outside the graph6 range 63..126", p)
    if pos >= len(data):
        raise ParseError("missing graph6 size field", pos)
    if data[pos] != 126:
        n, pos = data[pos] - 63, pos + 1
    elif pos + 1 < len(data) and data[pos + 1] == 126:
        if len(data) < pos + 8:
            raise ParseError("truncated 8-byte graph6 size field", len(data))
        n = 0
        for b in data[pos + 2:pos + 8]:
            n = (n << 6) | (b - 63)
        pos += 8
    else:
        if len(data) < pos + 4:
            raise ParseError("truncated 4-byte graph6 size field", len(data))
        n = 0
        for b in data[pos + 1:pos + 4]:
            n = (n << 6) | (b - 63)
        pos += 4
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {len(body)}", pos + min(len(body), need))
    g = Graph(n)
    k = 0
    bits = [((b - 63) >> s) & 1 for b in body for s in range(5, -1, -1)]
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                g.add_edge(i, j)
            k += 1
    return g


# ---------------------------------------------------------------------
# DIMACS


def to_dimacs(g: Graph, comment: str | None = None) -> bytes:
    lines = []
    if comment:
        lines += [f"c {line}" for line in comment.splitlines()]
    lines.append(f"p edge {g.n} {g.num_edges}")
    lines += [f"e {u + 1} {v + 1}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode()


def _lines(data: bytes):
    offset = 0
    for raw in data.split(b"\n"):
        yield offset, raw.decode("ascii", errors="replace").strip()
        offset += len(raw) + 1


def _int(tok: str, offset: int, what: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"{what} {tok!r} is not an integer", offset) from None


def from_dimacs(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode()
    g = None
    declared = 0
    for off, line in _lines(data):
        if not line or line[0] == "c":
            continue
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise ParseError("second problem line", off)
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError("problem line must read 'p edge N M'", off)
            g = Graph(_int(parts[2], off, "vertex count"))
            declared = _int(parts[3], off, "edge count")
        elif parts[0] == "e":
            if g is None:
                raise ParseError("edge before the problem line", off)
            if len(parts) != 3:
                raise ParseError("edge line must read 'e U V'", off)
            u, v = _int(parts[1], off, "vertex"), _int(parts[2], off, "vertex")
            if not (1 <= u <= g.n and 1 <= v <= g.n) or u == v:
                raise ParseError(f"bad edge {u} {v} for n={g.n}", off)
            g.add_edge(u - 1, v - 1)
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", off)
    if g is None:
        raise ParseError("missing problem line 'p edge N M'", len(data))
    if g.num_edges != declared and declared:
        # some writers count both directions
        if g.num_edges * 2 != declared:
            raise ParseError(f"header declares {declared} edges, found {g.num_edges}", len(data))
    return g


# ---------------------------------------------------------------------
# edge list


def to_edge_list(g: Graph) -> bytes:
    lines = [f"# n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return ("\n".join(lines) + "\n").encode()


def from_edge_list(data: bytes | str) -> Graph:
    """0-based ``u v`` pairs; a ``# n N`` comment fixes the vertex count."""
    if isinstance(data, str):
        data = data.encode()
    n = None
    pairs = []
    for off, line in _lines(data):
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n":
                n = _int(parts[1], off, "vertex count")
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("edge line must hold two vertex ids", off)
        u, v = _int(parts[0], off, "vertex"), _int(parts[1], off, "vertex")
        if u < 0 or v < 0 or u == v:
            raise ParseError(f"bad edge {u} {v}", off)
        pairs.append((u, v, off))
    top = max((max(u, v) for u, v, _ in pairs), default=-1) + 1
    if n is None:
        n = top
    elif top > n:
        bad = next(off for u, v, off in pairs if max(u, v) >= n)
        raise ParseError(f"vertex id beyond declared n={n}", bad)
    g = Graph(n)
    for u, v, _ in pairs:
        g.add_edge(u, v)
    return g


# ---------------------------------------------------------------------
# JSON with roles


def to_json(g: Graph) -> bytes:
    d = {
        "n": g.n,
        "edges": [list(e) for e in g.edges()],
        "roles": [str(r) for r in g.roles],
        "tags": list(g.tags),
    }
    if g.blocks:
        d["blocks"] = {k: g.blocks[k] for k in sorted(g.blocks)}
    if g.spec is not None:
        d["spec"] = g.spec.to_dict()
    if g.critical_order is not None:
        d["criticalOrder"] = g.critical_order
    return (json.dumps(d, separators=(",", ":")) + "\n").encode()


def from_json(data: bytes | str) -> Graph:
    if isinstance(data, bytes):
        data = data.decode()
    try:
        d = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", len(data[:exc.pos].encode())) from None
    if not isinstance(d, dict) or "n" not in d or "edges" not in d:
        raise ParseError("graph JSON needs 'n' and 'edges'", 0)
    n = d["n"]
    if not isinstance(n, int) or n < 0:
        raise ParseError("'n' must be a nonnegative integer", 0)
    g = Graph(n)
    for e in d["edges"]:
        if not (isinstance(e, list) and len(e) == 2 and all(isinstance(x, int) for x in e)):
            raise ParseError(f"bad edge entry {e!r}", 0)
        try:
            g.add_edge(*e)
        except ValueError as exc:
            raise ParseError(str(exc), 0) from None
    if "roles" in d:
        if len(d["roles"]) != n:
            raise ParseError("roles list length differs from n", 0)
        try:
            g.roles = [Role.parse(r) for r in d["roles"]]
        except ValueError as exc:
            raise ParseError(str(exc), 0) from None
    if "tags" in d:
        if len(d["tags"]) != n:
            raise ParseError("tags list length differs from n", 0)
        g.tags = list(d["tags"])
    g.blocks = {k: list(v) for k, v in d.get("blocks", {}).items()}
    if "spec" in d:
        from .constructions import ConstructionSpec

        g.spec = ConstructionSpec.from_dict(d["spec"])
    g.critical_order = d.get("criticalOrder")
    return g


# ---------------------------------------------------------------------
# dispatch

_WRITERS = {"graph6": to_graph6, "dimacs": to_dimacs, "edgelist": to_edge_list, "json": to_json}
_READERS = {"graph6": from_graph6, "dimacs": from_dimacs, "edgelist": from_edge_list, "json": from_json}
_SUFFIX = {".g6": "graph6", ".graph6": "graph6", ".col": "dimacs", ".dimacs": "dimacs", ".edges": "edgelist", ".txt": "edgelist", ".json": "json"}


def export(g: Graph, fmt: str) -> bytes:
    if fmt not in _WRITERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    out = _WRITERS[fmt](g)
    return out if fmt != "graph6" else out + b"\n"


def parse(data: bytes, fmt: str) -> Graph:
    if fmt not in _READERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    return _READERS[fmt](data)


def guess_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    if suffix not in _SUFFIX:
        raise ValueError(f"cannot infer a format from {str(path)!r}; pass one explicitly")
    return _SUFFIX[suffix]


def read_graph(path: str | Path, fmt: str | None = None) -> Graph:
    return parse(Path(path).read_bytes(), fmt or guess_format(path))


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    Path(path).write_bytes(export(g, fmt or guess_format(path)))
