"""Quadrangulated disks: validation, buffering, reduction, enumeration,
and the irreducible classification check.

A disk is a spherical map with one distinguished face (the outer face);
its boundary must be a simple cycle, boundary degrees are 2 or 3,
interior degrees 3 or 4, and all other faces are quadrangles.  Every
valid disk satisfies b2 + i3 = 4.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Optional

from .canon import CanonicalCode, canon_embedded, canon_embedded_rooted
from .embedding import EmbeddedGraph
from .errors import BudgetError, PreconditionError, QuadrimmError
from .patch import Patch
from .scratch import MapScratch

_SHAPE_NAMES = {2: "digon", 3: "triangle", 4: "square"}


class DiskQuadrangulation:
    """An embedded graph with a distinguished outer face."""

    __slots__ = ("map", "outer_dart")

    def __init__(self, map: EmbeddedGraph, outer_dart: int):
        if not (0 <= outer_dart < map.n_darts):
            raise PreconditionError("outer dart %d out of range" % outer_dart)
        self.map = map
        self.outer_dart = min(map.face_darts[map.face_of[outer_dart]])

    @property
    def outer_face(self) -> int:
        return self.map.face_of[self.outer_dart]

    def boundary_vertices(self) -> tuple[int, ...]:
        """Boundary cycle in outer-face walk order."""
        return tuple(self.map.vertex_of[d]
                     for d in self.map.face_darts[self.outer_face])

    def boundary_length(self) -> int:
        return self.map.face_length(self.outer_face)

    def interior_vertices(self) -> tuple[int, ...]:
        on_boundary = set(self.boundary_vertices())
        return tuple(v for v in range(self.map.n_vertices) if v not in on_boundary)

    def degree_profile(self) -> dict[str, int]:
        boundary = self.boundary_vertices()
        bset = set(boundary)
        counts = {"b2": 0, "b3": 0, "i3": 0, "i4": 0, "other": 0}
        for v in range(self.map.n_vertices):
            d = self.map.degree(v)
            if v in bset:
                key = "b2" if d == 2 else ("b3" if d == 3 else "other")
            else:
                key = "i3" if d == 3 else ("i4" if d == 4 else "other")
            counts[key] += 1
        return counts

    def canonical_code(self, include_reflection: bool = True) -> CanonicalCode:
        """Marked code: trace starts restricted to outer-face darts."""
        return canon_embedded_rooted(
            self.map, self.map.face_darts[self.outer_face], include_reflection)

    def unmarked_code(self, include_reflection: bool = True) -> CanonicalCode:
        return canon_embedded(self.map, include_reflection)

    def __repr__(self) -> str:
        return "DiskQuadrangulation(V=%d, boundary=%d)" % (
            self.map.n_vertices, self.boundary_length())


@dataclass
class DiskReport:
    b2: int
    b3: int
    i3: int
    i4: int
    boundary_length: int
    shape: Optional[str]
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations


def validate_disk(disk: DiskQuadrangulation) -> DiskReport:
    g = disk.map
    violations = []
    if not g.is_connected():
        violations.append("disconnected")
    elif g.euler_characteristic() != 2:
        violations.append("euler-characteristic")
    boundary = disk.boundary_vertices()
    if len(set(boundary)) != len(boundary):
        violations.append("boundary-not-simple")
    for f in range(g.n_faces):
        if f != disk.outer_face and g.face_length(f) != 4:
            violations.append("face-length")
            break
    profile = disk.degree_profile()
    if profile["other"]:
        violations.append("vertex-degree")
    if not violations and profile["b2"] + profile["i3"] != 4:
        violations.append("curvature-identity")
    return DiskReport(
        b2=profile["b2"], b3=profile["b3"], i3=profile["i3"], i4=profile["i4"],
        boundary_length=len(boundary),
        shape=_SHAPE_NAMES.get(profile["b2"]),
        violations=violations,
    )


# -- buffering ------------------------------------------------------------


def buffer_disk(disk: DiskQuadrangulation) -> DiskQuadrangulation:
    """Surround the disk with a ring of quadrangles: a new boundary cycle
    of the same length, every old boundary degree raised by one."""
    report = validate_disk(disk)
    if not report.passed:
        raise PreconditionError("cannot buffer invalid disk: %s" % report.violations)
    patch = Patch.from_disk(disk.map, disk.outer_face)
    n = disk.boundary_length()
    ring_first = patch.next_vertex      # x of the first quad
    token = patch.place_cover1(0, 0, ("new",), ("new",))
    if token is None:
        raise QuadrimmError("buffering failed at the first ring quadrangle")
    prev_ring = ring_first
    for _ in range(n - 2):
        pos = patch.hole_position_of_root(0, prev_ring)
        nxt = patch.next_vertex
        if patch.place_cover2(0, pos, ("new",)) is None:
            raise QuadrimmError("buffering failed while extending the ring")
        prev_ring = nxt
    pos = patch.hole_position_of_root(0, prev_ring)
    if patch.place_cover3(0, pos) is None:
        raise QuadrimmError("buffering failed while closing the ring")
    if len(patch.holes) != 1 or len(patch.holes[0]) != n:
        raise QuadrimmError("buffering left an unexpected boundary")
    g, dart_map = patch.freeze()
    ring_hole = patch.holes[0]
    return DiskQuadrangulation(g, outer_dart=dart_map[ring_hole[0]])


def unbuffer_disk(disk: DiskQuadrangulation) -> DiskQuadrangulation:
    """Inverse of :func:`buffer_disk`: delete all boundary vertices and
    their incident edges.  The boundary must carry the ring structure of
    a buffering (checked; the failing vertex is named otherwise)."""
    g = disk.map
    boundary = disk.boundary_vertices()
    bset = set(boundary)
    spokes = {}
    for v in boundary:
        if g.degree(v) != 3:
            raise PreconditionError(
                "not a buffering: boundary vertex %d has degree %d" % (v, g.degree(v)))
        inner = [g.vertex_of[d ^ 1] for d in g.vertex_darts[v]
                 if g.vertex_of[d ^ 1] not in bset]
        if len(inner) != 1:
            raise PreconditionError(
                "not a buffering: boundary vertex %d has %d interior spokes"
                % (v, len(inner)))
        spokes[v] = inner[0]
    ring = [spokes[v] for v in boundary]
    if len(set(ring)) != len(ring):
        dup = next(u for u in ring if ring.count(u) > 1)
        raise PreconditionError(
            "not a buffering: interior vertex %d carries two spokes" % dup)
    ring_edges = {tuple(sorted((ring[i], ring[(i + 1) % len(ring)])))
                  for i in range(len(ring))}
    for e in range(g.n_edges):
        u, v = g.endpoints(e)
        key = tuple(sorted((u, v)))
        if key in ring_edges:
            ring_edges.discard(key)
    if ring_edges:
        raise PreconditionError("not a buffering: inner ring cycle is incomplete")

    doomed = [d for v in boundary for d in g.vertex_darts[v]]
    scratch = MapScratch.from_graph(g)
    scratch.delete_edges_and_clean(doomed, protected=frozenset(scratch.darts()))
    out, dart_map = scratch.freeze()
    # the new outer face contains the ring edge darts that faced the ring quads
    w0, w1 = ring[0], ring[1]
    for e in range(g.n_edges):
        if set(g.endpoints(e)) == {w0, w1}:
            for old in (2 * e, 2 * e + 1):
                other = g.face_darts[g.face_of[old]]
                if any(g.vertex_of[d] in bset for d in other):
                    return DiskQuadrangulation(out, outer_dart=dart_map[old])
    raise QuadrimmError("could not locate the reopened outer face")


# -- reduction ------------------------------------------------------------


def _interior_walks(disk: DiskQuadrangulation):
    """Maximal transverse walks over interior edges: continuation only at
    interior degree-4 vertices; ends at boundary vertices or interior
    degree-3 vertices."""
    g = disk.map
    bset = set(disk.boundary_vertices())
    outer = disk.outer_face
    interior_edge = [g.face_of[2 * e] != outer and g.face_of[2 * e + 1] != outer
                     for e in range(g.n_edges)]

    def is_stop(v):
        return v in bset or g.degree(v) != 4

    used = [False] * g.n_edges
    walks = []
    for d0 in range(g.n_darts):
        e0 = d0 >> 1
        if not interior_edge[e0] or used[e0] or not is_stop(g.vertex_of[d0]):
            continue
        seq = [d0]
        used[e0] = True
        while not is_stop(g.vertex_of[seq[-1] ^ 1]):
            arrival = seq[-1] ^ 1
            nxt = g.rotation[g.rotation[arrival]]
            seq.append(nxt)
            used[nxt >> 1] = True
        a, b = g.vertex_of[seq[0]], g.vertex_of[seq[-1] ^ 1]
        walks.append(("path", tuple(seq), (a, b)))
    for d0 in range(g.n_darts):
        e0 = d0 >> 1
        if not interior_edge[e0] or used[e0]:
            continue
        seq = [d0]
        used[e0] = True
        cur = g.rotation[g.rotation[d0 ^ 1]]
        while cur != d0:
            seq.append(cur)
            used[cur >> 1] = True
            cur = g.rotation[g.rotation[cur ^ 1]]
        walks.append(("closed", tuple(seq), ()))
    return walks, bset


def reduce_disk(disk: DiskQuadrangulation) -> DiskQuadrangulation:
    """Delete closed transversals and boundary-to-boundary transverse
    paths, one at a time, until none remain.

    Deleting a walk smooths the vertices whose degree drops to 2 —
    including the path's boundary endpoints, which merge their two
    boundary edges (pre-existing corners are never touched)."""
    current = disk
    while True:
        walks, bset = _interior_walks(current)
        deletable = [w for w in walks
                     if w[0] == "closed"
                     or (w[2][0] in bset and w[2][1] in bset)]
        if not deletable:
            return current
        deletable.sort(key=lambda w: (w[0] != "closed", w[1]))
        kind, seq, ends = deletable[0]
        g = current.map
        protected = set()
        for v in bset:
            if kind == "path" and v in ends:
                continue
            protected.update(g.vertex_darts[v])
        scratch = MapScratch.from_graph(g)
        scratch.delete_edges_and_clean(list(seq), protected=frozenset(protected))
        out, dart_map = scratch.freeze()
        if out.n_vertices < 4:
            raise QuadrimmError("disk reduction degenerated below a quadrangle")
        outer_old = next(d for d in g.face_darts[current.outer_face] if d in dart_map)
        current = DiskQuadrangulation(out, outer_dart=dart_map[outer_old])


def is_irreducible(disk: DiskQuadrangulation) -> bool:
    walks, bset = _interior_walks(disk)
    return not any(w[0] == "closed" or (w[2][0] in bset and w[2][1] in bset)
                   for w in walks)


# -- exhaustive enumeration ------------------------------------------------

DEFAULT_MAX_BOUNDARY = 12
DEFAULT_MAX_VERTICES = 30


def _fill_branches(patch: Patch, h_idx: int):
    """Candidate placements of a quadrangle over the first edge of the
    given hole, as (method, args) thunks in deterministic order."""
    hole = patch.holes[h_idx]
    L = len(hole)
    out = []
    if L == 4:
        out.append(("close", (h_idx,)))
    for off in (0, -1, -2):
        out.append(("cover3", (h_idx, off)))
    for off in (0, -1):
        out.append(("cover2", (h_idx, off, ("new",))))
        for q in range(L):
            out.append(("cover2", (h_idx, off, ("at", q))))
    for q in range(2, L - 1):
        out.append(("pinch", (h_idx, 0, q)))
    out.append(("cover1", (h_idx, 0, ("new",), ("new",))))
    for q in range(L):
        out.append(("cover1", (h_idx, 0, ("new",), ("at", q))))
        out.append(("cover1", (h_idx, 0, ("at", q), ("new",))))
        for q2 in range(L):
            out.append(("cover1", (h_idx, 0, ("at", q), ("at", q2))))
    return out


_PLACERS = {
    "close": Patch.place_close,
    "cover3": Patch.place_cover3,
    "cover2": Patch.place_cover2,
    "pinch": Patch.place_pinch,
    "cover1": Patch.place_cover1,
}

_NEW_VERTEX_COST = {"close": 0, "cover3": 0, "pinch": 0}


def _placement_new_vertices(kind, args) -> int:
    if kind == "cover2":
        return 1 if args[2][0] == "new" else 0
    if kind == "cover1":
        return sum(1 for s in (args[2], args[3]) if s[0] == "new")
    return _NEW_VERTEX_COST[kind]


def _curvature_potential(patch: Patch) -> int:
    seen = set()
    pot = 0
    for hole in patch.holes:
        for d in hole:
            v = patch.root[d]
            if v in seen:
                continue
            seen.add(v)
            deg = patch.vdeg[v]
            if patch.boundary_flag[v]:
                pot += 1 if deg == 2 else 0
            else:
                pot += 1 if deg <= 3 else 0
    return pot


def _fill_all(patch: Patch, max_vertices: int, curvature_cap: int, emit) -> None:
    """DFS over all quadrangular fillings within the vertex budget.

    ``curvature_cap`` is the exact number of low-degree finals the mode
    allows (4 for disks via b2+i3=4, 8 for spheres via nu3=8); branches
    that overshoot or can no longer reach it are cut.
    """
    if not patch.holes:
        emit(patch)
        return
    h_idx = min(range(len(patch.holes)), key=lambda i: (len(patch.holes[i]), i))
    headroom = max_vertices - patch.n_vertices
    for kind, args in _fill_branches(patch, h_idx):
        if _placement_new_vertices(kind, args) > headroom:
            continue
        token = _PLACERS[kind](patch, *args)
        if token is None:
            continue
        if patch.finalized_low > curvature_cap:
            patch.rollback(token)
            continue
        future = max_vertices - patch.n_vertices
        if patch.finalized_low + _curvature_potential(patch) + future < curvature_cap:
            patch.rollback(token)
            continue
        _fill_all(patch, max_vertices, curvature_cap, emit)
        patch.rollback(token)


def enumerate_disks(max_boundary: int, max_vertices: int,
                    irreducible_only: bool = False,
                    budget: Optional[tuple[int, int]] = None
                    ) -> Iterator[DiskQuadrangulation]:
    """Exhaustive, duplicate-free enumeration of valid simple disks with
    boundary length <= max_boundary and at most max_vertices vertices,
    in deterministic order (boundary length, then canonical code)."""
    cap_b, cap_v = budget if budget is not None else (DEFAULT_MAX_BOUNDARY,
                                                      DEFAULT_MAX_VERTICES)
    if max_boundary % 2 != 0 or max_boundary < 4:
        raise PreconditionError("max_boundary must be even and >= 4")
    if max_boundary > cap_b or max_vertices > cap_v:
        raise BudgetError(
            "disk enumeration budget is boundary<=%d, vertices<=%d" % (cap_b, cap_v),
            suggestion="pass budget=(%d, %d) to accept the cost"
            % (max_boundary, max_vertices))
    for b in range(4, max_boundary + 1, 2):
        if b > max_vertices:
            break
        found: dict[CanonicalCode, DiskQuadrangulation] = {}

        def emit(patch: Patch) -> None:
            g, dart_map = patch.freeze()
            disk = DiskQuadrangulation(g, outer_dart=dart_map[patch.mark_dart])
            report = validate_disk(disk)
            if not report.passed:
                raise QuadrimmError("enumeration emitted an invalid disk: %s"
                                    % report.violations)
            if irreducible_only and not is_irreducible(disk):
                return
            code = disk.canonical_code()
            if code not in found:
                found[code] = disk

        patch = Patch.from_cycle(b, boundary_is_constrained=True)
        _fill_all(patch, max_vertices, 4, emit)
        for code in sorted(found):
            yield found[code]


@dataclass
class ClassificationResult:
    base_codes: list[CanonicalCode]
    base_unmarked_count: int
    buffering_codes: list[CanonicalCode]
    counterexamples: list[DiskQuadrangulation]

    @property
    def passed(self) -> bool:
        return not self.counterexamples


def classify_irreducible(bound: int, max_boundary: int = DEFAULT_MAX_BOUNDARY,
                         budget: Optional[tuple[int, int]] = None
                         ) -> ClassificationResult:
    """Partition the irreducible disks within the bound into the base set
    (b2 >= 1) and bufferings of base-set members; anything in neither
    class is returned as a counterexample candidate."""
    disks = list(enumerate_disks(max_boundary, bound,
                                 irreducible_only=True, budget=budget))
    disks.sort(key=lambda d: d.map.n_vertices)
    base: list[CanonicalCode] = []
    base_unmarked = set()
    buffering: list[CanonicalCode] = []
    known: set[CanonicalCode] = set()
    counterexamples: list[DiskQuadrangulation] = []
    for disk in disks:
        code = disk.canonical_code()
        report = validate_disk(disk)
        if not report.passed:
            counterexamples.append(disk)
            continue
        if report.b2 >= 1:
            base.append(code)
            base_unmarked.add(disk.unmarked_code())
            known.add(code)
            continue
        try:
            inner = unbuffer_disk(disk)
        except PreconditionError:
            counterexamples.append(disk)
            continue
        if inner.canonical_code() in known:
            buffering.append(code)
            known.add(code)
        else:
            counterexamples.append(disk)
    return ClassificationResult(
        base_codes=base,
        base_unmarked_count=len(base_unmarked),
        buffering_codes=buffering,
        counterexamples=counterexamples,
    )
