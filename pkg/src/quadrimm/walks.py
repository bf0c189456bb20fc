"""Transverse walks: straight-through continuation at degree-4 vertices,
walk decomposition, extraction, reduction, and the two-disks cycle test.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional

from .embedding import EmbeddedGraph, check_degrees_34, validate_cq
from .errors import NotACrossingError, PreconditionError
from .multigraph import Multigraph
from .scratch import MapScratch

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TransverseWalk:
    """A maximal straight walk, stored as the darts traversed in order.

    ``kind`` is ``"path"`` (both ends at degree-3 vertices) or
    ``"closed"`` (a transversal through degree-4 vertices only).
    ``endpoints`` holds the end vertices for paths and is empty for
    closed walks.
    """
    dart_sequence: tuple[int, ...]
    kind: str
    endpoints: tuple[int, ...]

    @property
    def edges(self) -> tuple[int, ...]:
        return tuple(d >> 1 for d in self.dart_sequence)

    def __len__(self) -> int:
        return len(self.dart_sequence)


def straight_exit(g: EmbeddedGraph, d: int) -> int:
    """The departure dart after crossing straight through the vertex that
    dart ``d`` points at: rotation^2 of the mate, the non-consecutive
    continuation at a degree-4 vertex."""
    arrival = d ^ 1
    v = g.vertex_of[arrival]
    if g.degree(v) != 4:
        raise NotACrossingError(
            "dart %d arrives at vertex %d of degree %d" % (d, v, g.degree(v)))
    return g.rotation[g.rotation[arrival]]


def _walk_from(g: EmbeddedGraph, d0: int) -> list[int]:
    """Follow straight exits from d0 until a non-degree-4 vertex."""
    seq = [d0]
    while g.degree(g.vertex_of[seq[-1] ^ 1]) == 4:
        seq.append(straight_exit(g, seq[-1]))
    return seq


def _reverse_darts(seq) -> list[int]:
    return [d ^ 1 for d in reversed(seq)]


def _canonical_closed(g: EmbeddedGraph, seq: list[int]) -> tuple[int, ...]:
    candidates = []
    for s in (seq, _reverse_darts(seq)):
        k = s.index(min(s))
        candidates.append(tuple(s[k:] + s[:k]))
    return min(candidates)


def maximal_transverse_walks(g: EmbeddedGraph) -> list[TransverseWalk]:
    """Decompose the edge set into maximal transverse walks.

    Every edge lies in exactly one walk: complete paths run between
    degree-3 vertices (extended straight through every degree-4 vertex),
    and the remaining edges form closed transversals.
    """
    check_degrees_34(g)
    edge_used = [False] * g.n_edges
    walks = []
    for d0 in range(g.n_darts):
        if g.degree(g.vertex_of[d0]) != 3 or edge_used[d0 >> 1]:
            continue
        seq = _walk_from(g, d0)
        for d in seq:
            edge_used[d >> 1] = True
        a = g.vertex_of[seq[0]]
        b = g.vertex_of[seq[-1] ^ 1]
        if (b, tuple(_reverse_darts(seq))) < (a, tuple(seq)):
            seq = _reverse_darts(seq)
            a, b = b, a
        walks.append(TransverseWalk(tuple(seq), "path", (a, b)))
    for d0 in range(g.n_darts):
        if edge_used[d0 >> 1]:
            continue
        seq = [d0]
        edge_used[d0 >> 1] = True
        cur = straight_exit(g, d0)
        while cur != d0:
            seq.append(cur)
            edge_used[cur >> 1] = True
            cur = straight_exit(g, cur)
        walks.append(TransverseWalk(_canonical_closed(g, seq), "closed", ()))
    walks.sort(key=lambda w: w.dart_sequence)
    return walks


def extraction_with_paths(g: EmbeddedGraph):
    """Extract the cubic multigraph on the degree-3 vertices.

    Returns ``(multigraph, paths, vertex_map)`` where ``paths[i]`` is the
    complete transverse path realizing edge ``i`` and ``vertex_map`` maps
    multigraph vertex ids back to vertices of ``g``.
    """
    check_degrees_34(g)
    cubic = [v for v in range(g.n_vertices) if g.degree(v) == 3]
    if not cubic:
        raise PreconditionError("extraction needs at least one degree-3 vertex")
    index = {v: i for i, v in enumerate(cubic)}
    paths = [w for w in maximal_transverse_walks(g) if w.kind == "path"]
    edges = [(index[w.endpoints[0]], index[w.endpoints[1]]) for w in paths]
    # Multigraph sorts its edge tuple; keep paths aligned with it.
    order = sorted(range(len(edges)), key=lambda i: tuple(sorted(edges[i])))
    paths = [paths[i] for i in order]
    edges = [edges[i] for i in order]
    return Multigraph(len(cubic), edges), paths, tuple(cubic)


def extract(g: EmbeddedGraph) -> Multigraph:
    """The extracted multigraph: one vertex per degree-3 vertex, one edge
    per complete transverse path; closed transversals contribute nothing."""
    m, _, _ = extraction_with_paths(g)
    return m


def reduce_embedding(g: EmbeddedGraph) -> EmbeddedGraph:
    """Delete all closed transversals simultaneously, then smooth every
    resulting degree-2 vertex.  Components consisting entirely of
    transversals vanish and are logged."""
    walks = maximal_transverse_walks(g)
    closed = [w for w in walks if w.kind == "closed"]
    if not closed:
        return g
    scratch = MapScratch.from_graph(g)
    doomed = [d for w in closed for d in w.dart_sequence]
    surgery = scratch.delete_edges_and_clean(doomed)
    out, _ = scratch.freeze()
    lost = g.n_vertices - out.n_vertices
    if surgery.dropped_loop_components or out.n_darts == 0:
        log.info("reduction dropped %d loop component(s)", surgery.dropped_loop_components)
    if lost and not out.is_connected():
        log.info("reduction disconnected the embedding (%d components)",
                 len(out.components()))
    return out


def _multigraph_cycles(m: Multigraph):
    """All simple cycles of a small multigraph as edge-index lists:
    loops, pairs of parallel edges, and longer vertex-simple cycles."""
    edges = m.edges
    by_pair: dict[tuple[int, int], list[int]] = {}
    for i, (u, v) in enumerate(edges):
        by_pair.setdefault((u, v), []).append(i)
    cycles = []
    for (u, v), ids in sorted(by_pair.items()):
        if u == v:
            cycles.extend([i] for i in ids)
        elif len(ids) > 1:
            for a in range(len(ids)):
                for b in range(a + 1, len(ids)):
                    cycles.append([ids[a], ids[b]])
    # vertex-simple cycles of length >= 3, anchored at their minimum vertex
    nbr: dict[int, list[tuple[int, int]]] = {v: [] for v in range(m.vertex_count)}
    for i, (u, v) in enumerate(edges):
        if u != v:
            nbr[u].append((v, i))
            nbr[v].append((u, i))

    def dfs(anchor, path, used_edges):
        v = path[-1]
        for w, eid in nbr[v]:
            if eid in used_edges:
                continue
            if w == anchor and len(path) >= 3:
                if path[1] < path[-1]:  # one direction per cycle
                    cycles.append([e for e in used_edges] + [eid])
                continue
            if w <= anchor or w in path:
                continue
            dfs(anchor, path + [w], used_edges + [eid])

    for anchor in range(m.vertex_count):
        dfs(anchor, [anchor], [])
    return cycles


def all_complete_transverse_cycles(g: EmbeddedGraph):
    """Every cycle of ``g`` that is a concatenation of complete
    transverse paths, as vertex sequences."""
    report = validate_cq(g)
    if not report.passed:
        raise PreconditionError("input is not a cubic quadrangulation: %s"
                                % ", ".join(report.violations))
    m, paths, vmap = extraction_with_paths(g)
    out = []
    for cycle in _multigraph_cycles(m):
        lifted = _lift_cycle(g, m, paths, vmap, cycle)
        if lifted is not None:
            out.append(lifted)
    return out


def has_complete_transverse_cycle(g: EmbeddedGraph) -> Optional[tuple[int, ...]]:
    """A cycle of ``g`` made of complete transverse paths, if one exists.

    Candidate cycles are enumerated in the extracted multigraph (at most
    8 vertices) and each lift is checked for vertex-disjointness in
    ``g``.  Returns the vertex sequence around the cycle, or None.
    """
    report = validate_cq(g)
    if not report.passed:
        raise PreconditionError("input is not a cubic quadrangulation: %s"
                                % ", ".join(report.violations))
    m, paths, vmap = extraction_with_paths(g)
    for cycle in _multigraph_cycles(m):
        lifted = _lift_cycle(g, m, paths, vmap, cycle)
        if lifted is not None:
            return lifted
    return None


def _path_interior_vertices(g: EmbeddedGraph, walk: TransverseWalk) -> list[int]:
    return [g.vertex_of[d] for d in walk.dart_sequence[1:]]


def _lift_cycle(g, m, paths, vmap, cycle_edges):
    """Concatenate the paths of a multigraph cycle; check the result is a
    vertex-simple cycle of g and return its vertex sequence."""
    if len(cycle_edges) == 1:
        walk = paths[cycle_edges[0]]
        u, v = walk.endpoints
        if u != v:
            return None  # not a loop edge; single edge is not a cycle
        seq = [u] + _path_interior_vertices(g, walk)
        return tuple(seq) if len(set(seq)) == len(seq) else None
    # orient the cycle: build junction sequence
    first = m.edges[cycle_edges[0]]
    junctions = [first[0], first[1]]
    for eid in cycle_edges[1:-1]:
        u, v = m.edges[eid]
        junctions.append(v if junctions[-1] == u else u)
    lastu, lastv = m.edges[cycle_edges[-1]]
    if {lastu, lastv} != {junctions[-1], junctions[0]}:
        return None  # enumeration gave a non-closing order (cannot happen)
    if len(set(junctions)) != len(junctions):
        return None
    seq: list[int] = []
    seen: set[int] = set()
    for k, eid in enumerate(cycle_edges):
        walk = paths[eid]
        start = vmap[junctions[k]]
        darts = list(walk.dart_sequence)
        if g.vertex_of[darts[0]] != start:
            darts = [d ^ 1 for d in reversed(darts)]
        if g.vertex_of[darts[0]] != start:
            return None
        step = [g.vertex_of[darts[0]]] + [g.vertex_of[d] for d in darts[1:]]
        for v in step:
            if v in seen:
                return None
            seen.add(v)
            seq.append(v)
    return tuple(seq)
