"""Text interchange formats and DOT export.

EMB (one embedding per record)::

    emb <n_darts>
    sigma: p0 p1 ... p_{n-1}

The edge pairing is implicit (dart 2k pairs with 2k+1).  Disk records
carry one extra line ``outer: <dart>`` naming a dart on the outer face.

MGR (abstract multigraph)::

    mgr <n_vertices>
    u v          (one line per edge; loops as "u u")

Both serializers emit the canonical normalized form (darts ascending,
edges sorted), so serialize(parse(text)) == text on normalized input.
"""

from __future__ import annotations

from .disks import DiskQuadrangulation
from .embedding import EmbeddedGraph
from .errors import StructureError
from .multigraph import Multigraph


class FormatError(StructureError):
    def __init__(self, message, line=None, column=None):
        loc = ""
        if line is not None:
            loc = " (line %d%s)" % (line, ", column %d" % column if column else "")
        super().__init__(message + loc)
        self.line = line
        self.column = column


def _tokens(text: str):
    lines = [ln for ln in text.splitlines()]
    return [(i + 1, ln.strip()) for i, ln in enumerate(lines)
            if ln.strip() and not ln.lstrip().startswith("#")]


def parse_emb(text: str):
    """Parse an EMB record; returns an EmbeddedGraph, or a
    DiskQuadrangulation when an ``outer:`` line is present."""
    rows = _tokens(text)
    if not rows:
        raise FormatError("empty EMB input")
    line_no, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "emb":
        raise FormatError("expected 'emb <n_darts>'", line=line_no)
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError("bad dart count %r" % parts[1], line=line_no)
    if len(rows) < 2:
        raise FormatError("missing sigma line", line=line_no)
    line_no, sigma_line = rows[1]
    if not sigma_line.startswith("sigma:"):
        raise FormatError("expected 'sigma: ...'", line=line_no)
    fields = sigma_line[len("sigma:"):].split()
    if len(fields) != n:
        raise FormatError("sigma lists %d darts, header says %d"
                          % (len(fields), n), line=line_no)
    rotation = []
    for col, tok in enumerate(fields):
        try:
            v = int(tok)
        except ValueError:
            raise FormatError("bad dart %r" % tok, line=line_no, column=col + 1)
        if not 0 <= v < n:
            raise FormatError("dart %d out of range 0..%d" % (v, n - 1),
                              line=line_no, column=col + 1)
        rotation.append(v)
    seen = [False] * n
    for col, v in enumerate(rotation):
        if seen[v]:
            raise FormatError("sigma is not a permutation: %d repeated" % v,
                              line=line_no, column=col + 1)
        seen[v] = True
    g = EmbeddedGraph(rotation)
    outer = None
    for line_no, row in rows[2:]:
        if row.startswith("outer:"):
            try:
                outer = int(row[len("outer:"):].strip())
            except ValueError:
                raise FormatError("bad outer dart", line=line_no)
        else:
            raise FormatError("unexpected line %r" % row, line=line_no)
    if outer is None:
        return g
    if not 0 <= outer < n:
        raise FormatError("outer dart %d out of range" % outer)
    return DiskQuadrangulation(g, outer_dart=outer)


def serialize_emb(obj) -> str:
    if isinstance(obj, DiskQuadrangulation):
        g = obj.map
        extra = "outer: %d\n" % obj.outer_dart
    else:
        g = obj
        extra = ""
    sigma = " ".join(str(g.rotation[d]) for d in range(g.n_darts))
    return "emb %d\nsigma: %s\n%s" % (g.n_darts, sigma, extra)


def parse_mgr(text: str) -> Multigraph:
    rows = _tokens(text)
    if not rows:
        raise FormatError("empty MGR input")
    line_no, header = rows[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "mgr":
        raise FormatError("expected 'mgr <n_vertices>'", line=line_no)
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError("bad vertex count %r" % parts[1], line=line_no)
    edges = []
    for line_no, row in rows[1:]:
        parts = row.split()
        if len(parts) != 2:
            raise FormatError("expected 'u v'", line=line_no)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise FormatError("bad endpoint in %r" % row, line=line_no)
        if not (0 <= u < n and 0 <= v < n):
            raise FormatError("endpoint out of range in %r" % row, line=line_no)
        edges.append((u, v))
    return Multigraph(n, edges)


def serialize_mgr(m: Multigraph) -> str:
    lines = ["mgr %d" % m.vertex_count]
    lines.extend("%d %d" % e for e in m.edges)
    return "\n".join(lines) + "\n"


def parse_walk_line(text: str) -> tuple[tuple[int, ...], tuple[str, ...]]:
    """Parse a cabling-walk line of ``e<K><R|S|L>`` tokens."""
    tokens = text.split()
    edges, turns = [], []
    for col, tok in enumerate(tokens):
        if len(tok) < 3 or tok[0] != "e" or tok[-1].upper() not in "RSL":
            raise FormatError("bad walk token %r (want eK[R|S|L])" % tok,
                              line=1, column=col + 1)
        try:
            edges.append(int(tok[1:-1]))
        except ValueError:
            raise FormatError("bad edge id in %r" % tok, line=1, column=col + 1)
        turns.append(tok[-1].upper())
    if not edges:
        raise FormatError("empty walk line")
    return tuple(edges), tuple(turns)


def serialize_walk(edge_ids, turns) -> str:
    return " ".join("e%d%s" % (e, t) for e, t in zip(edge_ids, turns)) + "\n"


def parse_emb_stream(text: str):
    """Parse a concatenation of EMB records (each starting at an 'emb'
    header line)."""
    chunks = []
    current: list[str] = []
    for line in text.splitlines():
        if line.strip().startswith("emb ") and current:
            chunks.append("\n".join(current))
            current = [line]
        else:
            current.append(line)
    if current and any(ln.strip() for ln in current):
        chunks.append("\n".join(current))
    return [parse_emb(chunk) for chunk in chunks]


# -- DOT export ---------------------------------------------------------------


def export_dot(obj, name: str = "g") -> str:
    """Deterministic DOT text; degree-3 vertices are drawn as circles and
    degree-4 vertices as boxes.  Embedded inputs also emit their face
    cycles as a comment block."""
    lines = ["graph %s {" % name]
    if isinstance(obj, DiskQuadrangulation):
        obj = obj.map
    if isinstance(obj, EmbeddedGraph):
        g = obj
        for v in range(g.n_vertices):
            shape = "box" if g.degree(v) == 4 else "circle"
            lines.append('  %d [shape=%s];' % (v, shape))
        for e in range(g.n_edges):
            u, v = g.endpoints(e)
            lines.append("  %d -- %d;" % tuple(sorted((u, v))))
        lines.append("  // faces:")
        for f in range(g.n_faces):
            cyc = " ".join(str(g.vertex_of[d]) for d in g.face_darts[f])
            lines.append("  //   f%d: %s" % (f, cyc))
    elif isinstance(obj, Multigraph):
        degs = obj.degrees()
        for v in range(obj.vertex_count):
            shape = "box" if degs[v] == 4 else "circle"
            lines.append('  %d [shape=%s];' % (v, shape))
        for u, v in obj.edges:
            lines.append("  %d -- %d;" % (u, v))
    else:
        raise StructureError("cannot export %r" % type(obj).__name__)
    lines.append("}")
    return "\n".join(lines) + "\n"
