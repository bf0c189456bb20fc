"""Canonical codes for embedded graphs and small multigraphs.

Embedded code: minimum, over all starting darts (optionally both
orientations), of a breadth-first dart relabeling trace.  Two maps get
the same code exactly when some dart bijection conjugates one rotation
system (or its reflection) into the other.

Multigraph code: minimum adjacency encoding over the labelings produced
by individualization-refinement, so the worst case stays far below n!.
"""

from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass

from .embedding import EmbeddedGraph
from .errors import BudgetError
from .multigraph import Multigraph

MULTIGRAPH_CANON_BOUND = 12


@dataclass(frozen=True, order=True)
class CanonicalCode:
    kind: str
    data: bytes

    def digest(self) -> str:
        """Short stable hex identifier (used in filenames and CLI output)."""
        return hashlib.sha256(self.kind.encode() + b":" + self.data).hexdigest()[:32]

    def __repr__(self) -> str:
        return "CanonicalCode(%s, %s)" % (self.kind, self.digest())


def _trace(next_dart, start: int, n: int) -> tuple[int, ...]:
    """BFS relabeling trace from ``start``: for each dart in discovery
    order, the new labels of its rotation image and its mate."""
    label = {start: 0}
    order = [start]
    out = []
    qi = 0
    while qi < len(order):
        d = order[qi]
        qi += 1
        s = next_dart[d]
        m = d ^ 1
        ls = label.get(s)
        if ls is None:
            ls = len(order)
            label[s] = ls
            order.append(s)
        lm = label.get(m)
        if lm is None:
            lm = len(order)
            label[m] = lm
            order.append(m)
        out.append(ls)
        out.append(lm)
    return tuple(out)


def _component_code(rotation, darts: list[int], include_reflection: bool,
                    starts=None) -> tuple[int, ...]:
    n = len(rotation)
    # reflection inverts the rotation; a face of the mirror consists of
    # the mates of the original face's darts, so rooted starts flip too
    jobs = [(rotation, darts if starts is None else list(starts))]
    if include_reflection:
        inv = [0] * n
        for d in range(n):
            inv[rotation[d]] = d
        jobs.append((inv, darts if starts is None
                     else [s ^ 1 for s in starts]))
    best = None
    for perm, pool in jobs:
        for s in pool:
            t = _trace(perm, s, n)
            if best is None or t < best:
                best = t
    assert best is not None
    return best


def _pack(kind: str, payload) -> CanonicalCode:
    data = struct.pack(">%dI" % len(payload), *payload)
    return CanonicalCode(kind, data)


def canon_embedded(g: EmbeddedGraph, include_reflection: bool = True) -> CanonicalCode:
    """Canonical code of an embedding up to sphere homeomorphism
    (reflection included by default).  Disconnected maps are encoded as
    the sorted tuple of component codes."""
    comps = _dart_components(g)
    parts = []
    for darts in comps:
        parts.append(_component_code(g.rotation, darts, include_reflection))
    parts.sort()
    payload = [len(parts)]
    for p in parts:
        payload.append(len(p))
        payload.extend(p)
    return _pack("embedded", payload)


def canon_embedded_rooted(g: EmbeddedGraph, start_darts,
                          include_reflection: bool = True) -> CanonicalCode:
    """Embedded code with starting darts restricted to ``start_darts``
    (used to mark a face, e.g. a disk's outer face).  ``g`` must be
    connected."""
    trace = _component_code(g.rotation, list(range(g.n_darts)),
                            include_reflection, starts=list(start_darts))
    return _pack("embedded-rooted", [1, len(trace)] + list(trace))


def _dart_components(g: EmbeddedGraph) -> list[list[int]]:
    n = g.n_darts
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        stack = [s]
        seen[s] = True
        comp = []
        while stack:
            d = stack.pop()
            comp.append(d)
            for nb in (g.rotation[d], d ^ 1):
                if not seen[nb]:
                    seen[nb] = True
                    stack.append(nb)
        comps.append(sorted(comp))
    return comps


def embedded_isomorphic(a: EmbeddedGraph, b: EmbeddedGraph,
                        include_reflection: bool = True) -> bool:
    return canon_embedded(a, include_reflection) == canon_embedded(b, include_reflection)


# -- multigraph canonical labeling ---------------------------------------


def _refine(adj, parts):
    """Stable partition refinement by multiplicities into current cells."""
    parts = [list(c) for c in parts]
    changed = True
    while changed:
        changed = False
        for idx, cell in enumerate(parts):
            if len(cell) == 1:
                continue
            sigs: dict[tuple, list[int]] = {}
            for v in cell:
                sig = tuple(sum(adj[v][u] for u in other) for other in parts)
                sigs.setdefault(sig, []).append(v)
            if len(sigs) > 1:
                parts[idx:idx + 1] = [sigs[s] for s in sorted(sigs)]
                changed = True
                break
    return parts


def _leaf_code(adj, order):
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    out = []
    for i in range(n):
        vi = order[i]
        for j in range(i, n):
            out.append(adj[vi][order[j]])
    return tuple(out)


def canon_multigraph(m: Multigraph, bound: int = MULTIGRAPH_CANON_BOUND) -> CanonicalCode:
    """Canonical code of a multigraph up to isomorphism (loops and
    multiplicities respected).  Refuses vertex counts above ``bound``."""
    n = m.vertex_count
    if n > bound:
        raise BudgetError(
            "multigraph canonical labeling limited to %d vertices, got %d" % (bound, n),
            suggestion="raise the bound explicitly if you accept the cost")
    if n == 0:
        return _pack("multigraph", [0])
    adj = m.adjacency()
    deg = m.degrees()
    by_inv: dict[tuple, list[int]] = {}
    for v in range(n):
        by_inv.setdefault((deg[v], adj[v][v]), []).append(v)
    initial = [by_inv[k] for k in sorted(by_inv)]

    best: list = [None]

    def search(parts):
        parts = _refine(adj, parts)
        target = next((i for i, c in enumerate(parts) if len(c) > 1), None)
        if target is None:
            code = _leaf_code(adj, [c[0] for c in parts])
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        cell = parts[target]
        for v in cell:
            rest = [u for u in cell if u != v]
            search(parts[:target] + [[v], rest] + parts[target + 1:])

    search(initial)
    payload = [n, len(m.edges)] + list(best[0])
    return _pack("multigraph", payload)


def multigraph_isomorphic(a: Multigraph, b: Multigraph) -> bool:
    if a.vertex_count != b.vertex_count or len(a.edges) != len(b.edges):
        return False
    return canon_multigraph(a) == canon_multigraph(b)
