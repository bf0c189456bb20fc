"""The four construction methods: two-disks, radial, spiral, cable, plus
the decomposition inverse of two-disks."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from .disks import DiskQuadrangulation, validate_disk, unbuffer_disk
from .embedding import EmbeddedGraph, from_vertex_rotations, validate_cq
from .errors import PreconditionError, QuadrimmError, StructureError
from .patch import Patch
from .scratch import MapScratch
from .walks import maximal_transverse_walks

log = logging.getLogger(__name__)


# -- radial -----------------------------------------------------------------


def radial(g: EmbeddedGraph) -> EmbeddedGraph:
    """The radial graph: one vertex per vertex and per face, one edge per
    corner, with the inherited spherical embedding.

    Vertex-vertices keep their degree; face-vertices have degree equal to
    the face length, so the radial of a cubic quadrangulation is again a
    cubic quadrangulation.
    """
    if not g.is_connected():
        raise PreconditionError("radial construction needs a connected map")
    nv = g.n_vertices
    # edge per corner: corner(d) joins vertex_of(d) and face_of(mate(d))
    edges = [(g.vertex_of[d], nv + g.face_of[d ^ 1]) for d in range(g.n_darts)]
    rotations: list[list[tuple[int, int]]] = []
    for v in range(nv):
        rotations.append([(d, 0) for d in g.vertex_darts[v]])
    for f in range(g.n_faces):
        rotations.append([(x ^ 1, 1) for x in reversed(g.face_darts[f])])
    return from_vertex_rotations(edges, rotations)


# -- spiral -----------------------------------------------------------------


@dataclass(frozen=True)
class SpiralInput:
    """A disk, a cyclic boundary labeling, and the arm length.

    The labeling runs v_0..v_{n-1} around the boundary starting at
    ``start`` (a boundary vertex of degree 3) in outer-walk order, or
    against it with ``reverse``; v_{n-1} must have degree 2.
    """
    disk: DiskQuadrangulation
    start: int
    reverse: bool
    l: int

    def labels(self) -> list[int]:
        boundary = list(self.disk.boundary_vertices())
        if self.start not in boundary:
            raise PreconditionError("start vertex %d not on the boundary" % self.start)
        k = boundary.index(self.start)
        seq = boundary[k:] + boundary[:k]
        if self.reverse:
            seq = [seq[0]] + list(reversed(seq[1:]))
        return seq


def check_spiral_input(inp: SpiralInput) -> None:
    disk = inp.disk
    report = validate_disk(disk)
    if not report.passed:
        raise PreconditionError("spiral needs a valid disk: %s" % report.violations)
    labels = inp.labels()
    n = len(labels)
    g = disk.map
    if n < 6 or n % 2 != 0:
        raise PreconditionError("boundary length %d must be even and >= 6" % n)
    if report.b2 == 0 or report.b3 == 0:
        raise PreconditionError("boundary needs both a degree-2 and a degree-3 vertex")
    if g.degree(labels[0]) != 3:
        raise PreconditionError("v_0 must have degree 3")
    if g.degree(labels[n - 1]) != 2:
        raise PreconditionError("v_{n-1} must have degree 2")
    if inp.l < 1:
        raise PreconditionError("l must be positive")
    if inp.l < n // 2:
        for k in (inp.l + 1, inp.l + n // 2, inp.l + n // 2 + 1):
            # index n-1 gains the first spiral edge and indices >= n are
            # new chain vertices; both end up with degree 3 automatically
            if k <= n - 2 and g.degree(labels[k]) != 3:
                raise PreconditionError(
                    "spiral requirement violated: v_%d has degree %d, needs 3"
                    % (k, g.degree(labels[k])))


def spiral(inp: SpiralInput) -> EmbeddedGraph:
    """Wrap an arm of ``l`` quadrangles around the disk boundary, then
    close the sphere with chords; the result is a cubic quadrangulation
    with ``l`` more vertices than the disk."""
    check_spiral_input(inp)
    disk = inp.disk
    labels = inp.labels()
    n = len(labels)
    l = inp.l
    patch = Patch.from_disk(disk.map, disk.outer_face)
    ids: dict[int, int] = {j: labels[j] for j in range(n)}

    def place_cover2_by_path(a, m, b):
        pos = _arc_position(patch, (a, m, b))
        fresh = patch.next_vertex
        if patch.place_cover2(0, pos, ("new",)) is None:
            raise QuadrimmError("spiral step rejected by the map")
        return fresh

    # step I: l new vertices spiraling around the boundary
    for i in range(l):
        ids[n + i] = place_cover2_by_path(ids[n + i - 1] if i else ids[n - 1],
                                          ids[i], ids[i + 1])
    # step II: chords closing the sphere
    for j in range(n // 2 - 2):
        a = ids[l + n - 1 - j]
        m1 = ids[l + n - j] if j else ids[l]
        m2 = ids[l + 1 + j]
        b = ids[l + 2 + j]
        pos = _arc_position(patch, (a, m1, m2, b))
        if patch.place_cover3(0, pos) is None:
            raise QuadrimmError("spiral chord rejected by the map")
    if len(patch.holes) != 1 or len(patch.holes[0]) != 4:
        raise QuadrimmError("spiral did not reduce the boundary to a quadrangle")
    if patch.place_close(0) is None:
        raise QuadrimmError("spiral could not close the final quadrangle")
    g, _ = patch.freeze()
    report = validate_cq(g)
    if not report.passed:
        raise QuadrimmError("spiral produced an invalid embedding: %s" % report.violations)
    return g


def _arc_position(patch: Patch, path: tuple[int, ...]) -> int:
    """Hole position where the boundary walk matches the vertex path, in
    either direction."""
    hole = patch.holes[0]
    L = len(hole)
    for cand in (path, tuple(reversed(path))):
        for p in range(L):
            if all(patch.root[hole[(p + t) % L]] == cand[t] for t in range(len(cand) - 1)) \
                    and patch.head(hole[(p + len(cand) - 2) % L]) == cand[-1]:
                return p
    raise QuadrimmError("vertex path %r not found on the hole" % (path,))


# -- two disks ---------------------------------------------------------------


@dataclass(frozen=True)
class BoundaryBijection:
    """Cyclic-order-preserving boundary identification, serialized as an
    offset and direction relative to the disks' canonical boundary
    orders."""
    offset: int
    reverse: bool = False

    def apply(self, i: int, m: int) -> int:
        return (self.offset - i) % m if self.reverse else (self.offset + i) % m


def two_disks(d1: DiskQuadrangulation, d2: DiskQuadrangulation,
              phi: BoundaryBijection, auto_fix: bool = False) -> EmbeddedGraph:
    """Attach two quadrangulated disks along their boundaries and delete
    the first disk's boundary edges.

    With ``auto_fix``, doubly-buffered inputs are unbuffered and
    boundary-to-boundary transverse paths are removed first, so the
    output has no closed transversal."""
    if auto_fix:
        d1, d2 = _auto_fix_pair(d1, d2)
    b1 = d1.boundary_vertices()
    b2 = d2.boundary_vertices()
    m = len(b1)
    if len(b2) != m:
        raise PreconditionError("boundary lengths differ: %d vs %d" % (m, len(b2)))
    g1, g2 = d1.map, d2.map
    pairs = [(b1[i], b2[phi.apply(i, m)]) for i in range(m)]
    for u, v in pairs:
        if g1.degree(u) == 2 and g2.degree(v) == 2:
            raise PreconditionError(
                "bijection pairs two degree-2 vertices (%d, %d)" % (u, v))

    outer1 = set(d1.map.face_darts[d1.outer_face])
    boundary_edges_1 = {d >> 1 for d in outer1}
    merged_into: dict[int, int] = {u: v for u, v in pairs}

    # vertex ids in the result: all of d2, then d1's interior
    interior1 = [v for v in range(g1.n_vertices) if v not in merged_into]
    new_id_1 = {v: g2.n_vertices + k for k, v in enumerate(interior1)}

    def map1(v: int) -> int:
        return merged_into[v] if v in merged_into else new_id_1[v]

    edges: list[tuple[int, int]] = [g2.endpoints(e) for e in range(g2.n_edges)]
    keep1 = [e for e in range(g1.n_edges) if e not in boundary_edges_1]
    edge_id_1 = {}
    for e in keep1:
        u, v = g1.endpoints(e)
        edge_id_1[e] = len(edges)
        edges.append((map1(u), map1(v)))

    # an orientation-preserving bijection glues the first disk mirrored
    # (the two hemispheres meet with opposite boundary senses); a
    # reversing bijection glues it as-is
    def ends_of_1(v: int) -> list[tuple[int, int]]:
        darts = g1.vertex_darts[v]
        if not phi.reverse:
            darts = tuple(reversed(darts))
        entries = []
        for d in darts:
            e = d >> 1
            if e in boundary_edges_1:
                continue
            entries.append((edge_id_1[e], d & 1))
        return entries

    rotations: list[list[tuple[int, int]]] = []
    outer2 = d2.outer_face
    for v in range(g2.n_vertices):
        order = [(d >> 1, d & 1) for d in g2.vertex_darts[v]]
        if v in set(b2):
            # insert d1's spokes into the gap facing d2's outer face
            u1 = b1[[b2[phi.apply(i, m)] for i in range(m)].index(v)]
            spokes = ends_of_1(u1)
            gap = next(k for k, d in enumerate(g2.vertex_darts[v])
                       if g2.face_of[d ^ 1] == outer2)
            order = order[:gap + 1] + spokes + order[gap + 1:]
        rotations.append(order)
    for v in interior1:
        rotations.append(ends_of_1(v))

    g = from_vertex_rotations(edges, rotations)
    report = validate_cq(g)
    if not report.passed:
        raise QuadrimmError("two-disks produced an invalid embedding: %s"
                            % report.violations)
    if any(w.kind == "closed" for w in maximal_transverse_walks(g)):
        log.warning("two-disks output contains a closed transversal "
                    "(run with auto_fix to avoid this)")
    return g


def _auto_fix_pair(d1, d2):
    from .disks import reduce_disk, _interior_walks

    def strip_b2b(d):
        # reduce only boundary-to-boundary paths; transversals are left to
        # reduce_disk semantics (they cannot merge into the seam anyway)
        return reduce_disk(d)

    r1 = validate_disk(d1)
    r2 = validate_disk(d2)
    if r1.b2 == 0 and r2.b2 == 0:
        d2 = unbuffer_disk(d2)
    walks1, bset1 = _interior_walks(d1)
    if any(w[0] == "path" and w[2][0] in bset1 and w[2][1] in bset1 for w in walks1):
        d1 = strip_b2b(d1)
    walks2, bset2 = _interior_walks(d2)
    if any(w[0] == "path" and w[2][0] in bset2 and w[2][1] in bset2 for w in walks2):
        d2 = strip_b2b(d2)
    if len(d1.boundary_vertices()) != len(d2.boundary_vertices()):
        raise PreconditionError("auto-fix changed the boundary lengths unequally")
    return d1, d2


def split_along_cycle(g: EmbeddedGraph, cycle: tuple[int, ...]):
    """Cut the sphere along a cycle of complete transverse paths.

    Returns ``(disk_a, disk_b, bijection)`` whose two-disks recomposition
    is isomorphic to ``g``.
    """
    m = len(cycle)
    if m < 2:
        raise PreconditionError("cycle too short")
    edge_by_pair = {}
    for e in range(g.n_edges):
        u, v = g.endpoints(e)
        edge_by_pair[(u, v)] = e
        edge_by_pair[(v, u)] = e
    darts = []
    for i in range(m):
        u, v = cycle[i], cycle[(i + 1) % m]
        e = edge_by_pair.get((u, v))
        if e is None:
            raise PreconditionError("cycle step %d-%d is not an edge" % (u, v))
        d = 2 * e if g.vertex_of[2 * e] == u else 2 * e + 1
        darts.append(d)
    cycle_edges = {d >> 1 for d in darts}

    # two-color the faces by flood fill across non-cycle edges
    side = {}
    for seed, label in ((darts[0], 0), (darts[0] ^ 1, 1)):
        stack = [g.face_of[seed]]
        while stack:
            f = stack.pop()
            if f in side:
                continue
            side[f] = label
            for d in g.face_darts[f]:
                if (d >> 1) not in cycle_edges:
                    nf = g.face_of[d ^ 1]
                    if nf not in side:
                        stack.append(nf)
    if len(side) != g.n_faces or set(side.values()) != {0, 1}:
        raise PreconditionError("cycle does not separate the sphere cleanly")

    disks = []
    for label in (0, 1):
        keep = {d for d in range(g.n_darts) if side[g.face_of[d]] == label}
        keep.update(d for d in range(g.n_darts) if (d >> 1) in cycle_edges)
        sub, dart_map = _submap(g, keep)
        outer_old = next(d for d in darts + [x ^ 1 for x in darts]
                         if side[g.face_of[d]] != label)
        disk = DiskQuadrangulation(sub, outer_dart=dart_map[outer_old])
        report = validate_disk(disk)
        if not report.passed:
            raise QuadrimmError("split produced an invalid disk: %s" % report.violations)
        origin = {}
        for od, nd in dart_map.items():
            origin[sub.vertex_of[nd]] = g.vertex_of[od]
        disks.append((disk, origin))

    (da, oa), (db, ob) = disks
    ba = da.boundary_vertices()
    bb = db.boundary_vertices()
    phi = None
    for reverse in (False, True):
        for offset in range(m):
            cand = BoundaryBijection(offset, reverse)
            if all(oa[ba[i]] == ob[bb[cand.apply(i, m)]] for i in range(m)):
                phi = cand
                break
        if phi:
            break
    if phi is None:
        raise QuadrimmError("could not express the seam as offset+direction")
    return da, db, phi


def _submap(g: EmbeddedGraph, keep: set[int]):
    """Restrict the map to a dart subset closed under the edge pairing;
    rotations skip the missing darts."""
    for d in keep:
        if (d ^ 1) not in keep:
            raise StructureError("dart subset not closed under pairing")
    order = sorted(keep)
    pairs = []
    seen = set()
    for d in order:
        if d not in seen:
            seen.add(d)
            seen.add(d ^ 1)
            pairs.append((d, d ^ 1))
    dart_map = {}
    for k, (d, dm) in enumerate(pairs):
        dart_map[d] = 2 * k
        dart_map[dm] = 2 * k + 1
    rotation = [0] * (2 * len(pairs))
    for d in keep:
        nxt = g.rotation[d]
        while nxt not in keep:
            nxt = g.rotation[nxt]
        rotation[dart_map[d]] = dart_map[nxt]
    return EmbeddedGraph(rotation), dart_map


# -- cable -------------------------------------------------------------------


TURN_RIGHT = "R"
TURN_STRAIGHT = "S"
TURN_LEFT = "L"


def classify_turn(g: EmbeddedGraph, entering_dart: int) -> dict[int, str]:
    """After crossing into the quadrangle on ``entering_dart``'s side,
    label its other three boundary edges right / straight / left in face
    order."""
    f = g.face_of[entering_dart]
    orbit = g.face_darts[f]
    if len(orbit) != 4:
        raise PreconditionError("entered face has length %d, not 4" % len(orbit))
    k = orbit.index(entering_dart)
    return {
        orbit[(k + 1) % 4] >> 1: TURN_RIGHT,
        orbit[(k + 2) % 4] >> 1: TURN_STRAIGHT,
        orbit[(k + 3) % 4] >> 1: TURN_LEFT,
    }


@dataclass(frozen=True)
class CablingWalk:
    """A closed dual walk with alternating right/left turns.

    ``edge_sequence`` lists the crossed edges of the host in order;
    ``turns[i]`` labels the step taken inside the face entered after
    crossing ``edge_sequence[i]``.  ``crossing_darts[i]`` is the dart of
    ``edge_sequence[i]`` on the side of that face.
    """
    host: EmbeddedGraph
    edge_sequence: tuple[int, ...]
    turns: tuple[str, ...]
    crossing_darts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.edge_sequence)

    def turn_indices(self):
        i_r = [i for i, t in enumerate(self.turns) if t == TURN_RIGHT]
        i_l = [i for i, t in enumerate(self.turns) if t == TURN_LEFT]
        return i_r, i_l

    def straight_run_set(self) -> set[int]:
        """I: indices strictly between each right turn and the following
        left turn."""
        n = self.length
        out: set[int] = set()
        for r in (i for i, t in enumerate(self.turns) if t == TURN_RIGHT):
            j = (r + 1) % n
            while self.turns[j] == TURN_STRAIGHT:
                out.add(j)
                j = (j + 1) % n
            if self.turns[j] != TURN_LEFT:
                raise PreconditionError("turns do not alternate right/left")
        return out

    def period(self) -> int:
        """|I_R u I|: the extraction period of the cable family."""
        i_r, _ = self.turn_indices()
        return len(set(i_r) | self.straight_run_set())


def build_cabling_walk(g: EmbeddedGraph, edge_ids, turns) -> CablingWalk:
    """Validate an edge sequence + turn labels as a cabling walk.

    Both traversal directions of the first edge are tried; the labels
    must match the geometry exactly, turns must alternate right/left, a
    face met twice must host two turns, and no edge may repeat."""
    edge_ids = tuple(edge_ids)
    turns = tuple(t.upper() for t in turns)
    n = len(edge_ids)
    if n == 0 or len(turns) != n:
        raise PreconditionError("need equally many edges and turn labels")
    if len(set(edge_ids)) != n:
        raise PreconditionError("cabling walk repeats an edge")
    if any(t not in (TURN_RIGHT, TURN_STRAIGHT, TURN_LEFT) for t in turns):
        raise PreconditionError("turn labels must be R, S, or L")
    for start in (2 * edge_ids[0], 2 * edge_ids[0] + 1):
        darts = _trace_walk(g, edge_ids, turns, start)
        if darts is not None:
            walk = CablingWalk(g, edge_ids, turns, tuple(darts))
            _check_alternation(walk)
            _check_face_visits(walk)
            return walk
    raise PreconditionError("edge sequence and turn labels do not close up")


def _trace_walk(g, edge_ids, turns, start_dart):
    n = len(edge_ids)
    darts = []
    cur = start_dart
    for i in range(n):
        if (cur >> 1) != edge_ids[i]:
            return None
        darts.append(cur)
        labels = classify_turn(g, cur)
        nxt_edge = edge_ids[(i + 1) % n]
        if labels.get(nxt_edge) != turns[i]:
            return None
        f = g.face_of[cur]
        orbit = g.face_darts[f]
        k = orbit.index(cur)
        shift = {TURN_RIGHT: 1, TURN_STRAIGHT: 2, TURN_LEFT: 3}[turns[i]]
        cur = orbit[(k + shift) % 4] ^ 1
    return darts if cur == start_dart else None


def _check_alternation(walk: CablingWalk) -> None:
    seq = [t for t in walk.turns if t != TURN_STRAIGHT]
    if not seq:
        return
    if len(seq) % 2 != 0:
        raise PreconditionError("odd number of turns cannot alternate")
    for i in range(len(seq)):
        if seq[i] == seq[(i + 1) % len(seq)]:
            raise PreconditionError("turns do not alternate right/left")
    walk.straight_run_set()  # raises if the R..L pairing is inconsistent


def _check_face_visits(walk: CablingWalk) -> None:
    g = walk.host
    visits: dict[int, list[int]] = {}
    for i, d in enumerate(walk.crossing_darts):
        visits.setdefault(g.face_of[d], []).append(i)
    for f, steps in visits.items():
        if len(steps) > 2:
            raise PreconditionError("walk meets face %d more than twice" % f)
        if len(steps) == 2:
            if any(walk.turns[i] == TURN_STRAIGHT for i in steps):
                raise PreconditionError(
                    "walk meets face %d twice without turning both times" % f)


def cable(g: EmbeddedGraph, walk: CablingWalk, c: int) -> EmbeddedGraph:
    """Thicken the band of faces along a cabling walk by ``c`` strands.

    ``c = 0`` returns the host unchanged.  The extraction of the result
    is periodic in ``c`` with period ``walk.period()``.
    """
    if walk.host is not g and walk.host != g:
        raise PreconditionError("walk belongs to a different host")
    if c < 0:
        raise PreconditionError("strand count must be nonnegative")
    if c == 0:
        return g
    n = walk.length
    i_r, i_l = walk.turn_indices()
    run = walk.straight_run_set()
    in_il = set(i_l) | run          # I u I_L: c-1 points, chain deleted later
    in_ir = set(i_r) | run          # I_R u I: targets prepended with a corner

    # organize the subdivision of each crossed edge
    class Chain:
        __slots__ = ("edge", "u1", "u2", "points", "da")

        def __init__(self, i):
            e = walk.edge_sequence[i]
            d_cross = walk.crossing_darts[i]
            # u1 = left end of the edge relative to the crossing direction;
            # combinatorially: the root of the dart whose face is entered
            self.edge = e
            self.da = d_cross
            self.u1 = g.vertex_of[d_cross]
            self.u2 = g.vertex_of[d_cross ^ 1]
            self.points: list[int] = []

    chains = [Chain(i) for i in range(n)]
    nv = g.n_vertices
    for i, ch in enumerate(chains):
        count = c - 1 if i in in_il else c
        ch.points = [nv + k for k in range(count)]
        nv += count

    edges: list[tuple[int, int]] = []
    rot_entries: dict[int, list] = {v: [] for v in range(nv)}

    def new_edge(u, v):
        edges.append((u, v))
        return len(edges) - 1

    # chain segments along each crossed edge (left to right)
    chain_segments: dict[int, list[int]] = {}
    for i, ch in enumerate(chains):
        stops = [ch.u1] + ch.points + [ch.u2]
        chain_segments[i] = [new_edge(stops[k], stops[k + 1])
                             for k in range(len(stops) - 1)]
    # untouched edges of the host
    walk_edge_index = {e: i for i, e in enumerate(walk.edge_sequence)}
    plain_edge_id: dict[int, int] = {}
    for e in range(g.n_edges):
        if e not in walk_edge_index:
            plain_edge_id[e] = new_edge(*g.endpoints(e))

    # strand edges inside each face f_i, sources on e_i to targets on e_{i+1}
    strand_at: dict[tuple[int, int], list] = {}

    def note_strand(vertex, face, eid, end):
        strand_at.setdefault((vertex, face), []).append((eid, end))

    for i in range(n):
        j = (i + 1) % n
        ch_i, ch_j = chains[i], chains[j]
        face_i = g.face_of[walk.crossing_darts[i]]
        sources = list(ch_i.points) + ([ch_i.u2] if i in in_il else [])
        targets = ([ch_j.u1] if i in in_ir else []) + list(ch_j.points)
        if len(sources) != c or len(targets) != c:
            raise QuadrimmError("strand bookkeeping failed at step %d" % i)
        for s, t in zip(sources, targets):
            eid = new_edge(s, t)
            note_strand(s, face_i, eid, 0)
            note_strand(t, face_i, eid, 1)

    # rotations at original vertices: walk-edge ends become chain-segment
    # ends; corner strands slot into the gap facing their face
    for v in range(g.n_vertices):
        order: list[tuple[int, int]] = []
        for d in g.vertex_darts[v]:
            e = d >> 1
            if e in walk_edge_index:
                i = walk_edge_index[e]
                segs = chain_segments[i]
                if v == chains[i].u1:
                    order.append((segs[0], 0))
                else:
                    order.append((segs[-1], 1))
            else:
                order.append((plain_edge_id[e], d & 1))
            corner_face = g.face_of[d ^ 1]
            items = strand_at.pop((v, corner_face), [])
            if len(items) > 1:
                raise PreconditionError(
                    "two strands share the corner of vertex %d in face %d; "
                    "this walk is not supported" % (v, corner_face))
            order.extend(items)
        rot_entries[v] = order

    # rotations at subdivision points: [left, strand-in-face(da), right,
    # strand-in-face(mate)]
    for i, ch in enumerate(chains):
        segs = chain_segments[i]
        f_a = g.face_of[ch.da]
        f_b = g.face_of[ch.da ^ 1]
        for k, w in enumerate(ch.points):
            left = (segs[k], 1)
            right = (segs[k + 1], 0)
            in_fa = strand_at.pop((w, f_a), [])
            in_fb = strand_at.pop((w, f_b), [])
            if len(in_fa) != 1 or len(in_fb) != 1:
                raise QuadrimmError("point %d lacks a strand on one side" % w)
            rot_entries[w] = [left, in_fa[0], right, in_fb[0]]
    if strand_at:
        raise QuadrimmError("unplaced strand ends remain: %r" % strand_at)

    pre = from_vertex_rotations(edges, [rot_entries[v] for v in range(nv)])

    # step 7: remove the chains of I u I_L edges and smooth the points
    doomed_darts = []
    for i in in_il:
        for eid in chain_segments[i]:
            doomed_darts.append(2 * eid)
    scratch = MapScratch.from_graph(pre)
    scratch.delete_edges_and_clean(doomed_darts)
    out, _ = scratch.freeze()
    report = validate_cq(out)
    if not report.passed:
        raise QuadrimmError("cable produced an invalid embedding: %s"
                            % report.violations)
    return out
