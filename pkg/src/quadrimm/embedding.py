"""Dart-based combinatorial maps for cellular embeddings.

A map is stored as a single permutation ``rotation`` on the darts
``0..n-1``: the orbits of ``rotation`` are the counterclockwise edge
orders around vertices.  The edge pairing is implicit and fixed as
``d ^ 1`` (dart ``2k`` pairs with ``2k+1``, edge id ``k``), which is also
the on-disk interchange form.  Faces are the orbits of
``rotation o edge_pairing``, i.e. ``d -> rotation[d ^ 1]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .errors import (
    DegenerateSmoothingError,
    DisconnectedError,
    StructureError,
    UnsupportedDegreeError,
)


def _orbits(perm: Sequence[int]) -> list[tuple[int, ...]]:
    """Orbits of a permutation, each starting at its smallest element,
    listed by that smallest element."""
    n = len(perm)
    seen = [False] * n
    out = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = [start]
        seen[start] = True
        d = perm[start]
        while d != start:
            seen[d] = True
            orbit.append(d)
            d = perm[d]
        out.append(tuple(orbit))
    return out


class EmbeddedGraph:
    """Immutable cellular embedding given by a rotation system.

    Darts are ``0..n_darts-1``; the mate of dart ``d`` is ``d ^ 1``.
    Vertex and face ids are the orbit indices in order of the smallest
    dart they contain.
    """

    __slots__ = (
        "rotation",
        "vertex_darts",
        "vertex_of",
        "face_darts",
        "face_of",
    )

    def __init__(self, rotation: Sequence[int]):
        rot = tuple(rotation)
        n = len(rot)
        if n % 2 != 0:
            raise StructureError("dart count must be even, got %d" % n)
        seen = [False] * n
        for d in rot:
            if not isinstance(d, int) or d < 0 or d >= n or seen[d]:
                raise StructureError("rotation is not a permutation of 0..%d" % (n - 1))
            seen[d] = True
        self.rotation = rot
        self.vertex_darts = tuple(_orbits(rot))
        vertex_of = [0] * n
        for v, orbit in enumerate(self.vertex_darts):
            for d in orbit:
                vertex_of[d] = v
        self.vertex_of = tuple(vertex_of)
        face_perm = tuple(rot[d ^ 1] for d in range(n))
        self.face_darts = tuple(_orbits(face_perm))
        face_of = [0] * n
        for f, orbit in enumerate(self.face_darts):
            for d in orbit:
                face_of[d] = f
        self.face_of = tuple(face_of)

    # -- basic quantities ------------------------------------------------

    @property
    def n_darts(self) -> int:
        return len(self.rotation)

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_darts)

    @property
    def n_edges(self) -> int:
        return len(self.rotation) // 2

    @property
    def n_faces(self) -> int:
        return len(self.face_darts)

    def mate(self, d: int) -> int:
        return d ^ 1

    def edge_of(self, d: int) -> int:
        return d >> 1

    def degree(self, v: int) -> int:
        return len(self.vertex_darts[v])

    def face_length(self, f: int) -> int:
        return len(self.face_darts[f])

    def endpoints(self, edge: int) -> tuple[int, int]:
        return (self.vertex_of[2 * edge], self.vertex_of[2 * edge + 1])

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_faces

    def degree_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for orbit in self.vertex_darts:
            counts[len(orbit)] = counts.get(len(orbit), 0) + 1
        return counts

    # -- structure predicates ---------------------------------------------

    def components(self) -> list[list[int]]:
        """Connected components as lists of vertex ids (via dart orbits
        of the group generated by rotation and edge pairing)."""
        n = self.n_darts
        if n == 0:
            return []
        seen = [False] * n
        comps = []
        for start in range(n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            darts = []
            while stack:
                d = stack.pop()
                darts.append(d)
                for nb in (self.rotation[d], d ^ 1):
                    if not seen[nb]:
                        seen[nb] = True
                        stack.append(nb)
            comps.append(sorted({self.vertex_of[d] for d in darts}))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def has_loop(self) -> bool:
        return any(self.vertex_of[2 * e] == self.vertex_of[2 * e + 1]
                   for e in range(self.n_edges))

    def parallel_edges(self) -> list[tuple[int, int]]:
        seen: dict[tuple[int, int], int] = {}
        dupes = []
        for e in range(self.n_edges):
            u, v = self.endpoints(e)
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                dupes.append((seen[key], e))
            else:
                seen[key] = e
        return dupes

    def is_simple(self) -> bool:
        return not self.has_loop() and not self.parallel_edges()

    def neighbors(self, v: int) -> list[int]:
        return [self.vertex_of[d ^ 1] for d in self.vertex_darts[v]]

    # -- equality / hashing -------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, EmbeddedGraph) and self.rotation == other.rotation

    def __hash__(self) -> int:
        return hash(self.rotation)

    def __repr__(self) -> str:
        return "EmbeddedGraph(V=%d, E=%d, F=%d)" % (
            self.n_vertices, self.n_edges, self.n_faces)


def from_vertex_rotations(edges: Sequence[tuple[int, int]],
                          rotations: Sequence[Sequence[tuple[int, int]]]) -> EmbeddedGraph:
    """Build a map from an edge list and per-vertex rotations.

    ``edges[k] = (u, v)`` gives edge ``k`` darts ``2k`` (rooted at ``u``)
    and ``2k+1`` (rooted at ``v``).  ``rotations[w]`` lists the incident
    edge ends of ``w`` in counterclockwise order as ``(edge, end)`` pairs,
    with a loop at ``w`` appearing twice (ends 0 and 1).
    """
    n_darts = 2 * len(edges)
    rotation = [-1] * n_darts
    used = [False] * n_darts
    for w, order in enumerate(rotations):
        darts = []
        for edge, end in order:
            if edge < 0 or edge >= len(edges) or end not in (0, 1):
                raise StructureError("bad rotation entry (%r, %r)" % (edge, end))
            if edges[edge][end] != w:
                raise StructureError(
                    "edge %d end %d is at vertex %d, not %d" % (edge, end, edges[edge][end], w))
            d = 2 * edge + end
            if used[d]:
                raise StructureError("dart %d listed twice" % d)
            used[d] = True
            darts.append(d)
        for i, d in enumerate(darts):
            rotation[d] = darts[(i + 1) % len(darts)]
    if not all(used):
        raise StructureError("some edge ends missing from rotations")
    return EmbeddedGraph(rotation)


def mirror(g: EmbeddedGraph) -> EmbeddedGraph:
    """Reflect the embedding (invert the rotation)."""
    n = g.n_darts
    inv = [0] * n
    for d in range(n):
        inv[g.rotation[d]] = d
    return EmbeddedGraph(inv)


def relabel(g: EmbeddedGraph, edge_perm: Sequence[int],
            flips: Optional[Sequence[bool]] = None) -> EmbeddedGraph:
    """Relabel darts while preserving the implicit pairing: edge ``k``
    becomes edge ``edge_perm[k]``, optionally swapping its two darts."""
    m = g.n_edges
    if sorted(edge_perm) != list(range(m)):
        raise StructureError("edge_perm is not a permutation")
    if flips is None:
        flips = [False] * m
    dart_map = [0] * g.n_darts
    for e in range(m):
        t = 2 * edge_perm[e]
        if flips[e]:
            dart_map[2 * e] = t + 1
            dart_map[2 * e + 1] = t
        else:
            dart_map[2 * e] = t
            dart_map[2 * e + 1] = t + 1
    rot = [0] * g.n_darts
    for d in range(g.n_darts):
        rot[dart_map[d]] = dart_map[g.rotation[d]]
    return EmbeddedGraph(rot)


def faces(g: EmbeddedGraph) -> list[tuple[int, ...]]:
    """The face cycles (orbits of rotation o edge_pairing)."""
    return list(g.face_darts)


def dual(g: EmbeddedGraph) -> EmbeddedGraph:
    """Combinatorial-map dual: same darts, rotation replaced by the face
    permutation.  Applying it twice restores the original rotation."""
    if not g.is_connected():
        raise DisconnectedError("dual requires a connected map")
    return EmbeddedGraph(tuple(g.rotation[d ^ 1] for d in range(g.n_darts)))


@dataclass(frozen=True)
class OddCycleWitness:
    """Odd closed walk found while attempting a 2-coloring."""
    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)


def bipartition(g: EmbeddedGraph):
    """2-color the vertices by BFS parity.

    Returns ``(block_a, block_b)`` as sorted tuples (block_a contains
    vertex 0) or an :class:`OddCycleWitness` if the graph is not
    bipartite.  Raises :class:`DisconnectedError` on disconnected input,
    naming a vertex of a second component.
    """
    comps = g.components()
    if len(comps) > 1:
        raise DisconnectedError(
            "graph is disconnected; vertex %d lies in a second component" % comps[1][0],
            witness_vertex=comps[1][0])
    color = {0: 0}
    parent: dict[int, Optional[int]] = {0: None}
    queue = [0]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for w in g.neighbors(v):
            if w not in color:
                color[w] = 1 - color[v]
                parent[w] = v
                queue.append(w)
            elif color[w] == color[v]:
                # reconstruct an odd cycle through the tree paths of v and w
                av, aw = v, w
                path_v, path_w = [v], [w]
                anc_v = set(path_v)
                while parent[av] is not None:
                    av = parent[av]
                    path_v.append(av)
                    anc_v.add(av)
                while aw not in anc_v:
                    aw = parent[aw]
                    path_w.append(aw)
                cut = path_v.index(aw)
                cycle = path_v[:cut] + [aw] + list(reversed(path_w[:-1]))
                return OddCycleWitness(tuple(cycle))
    block_a = tuple(sorted(v for v in color if color[v] == 0))
    block_b = tuple(sorted(v for v in color if color[v] == 1))
    return (block_a, block_b)


@dataclass
class ValidationReport:
    """Outcome of the cubic-quadrangulation checks.

    ``violations`` is empty exactly when all checks pass; the count and
    identity fields are filled in whenever they are well defined.
    """
    is_spherical: bool
    is_simple: bool
    is_connected: bool
    face_lengths: tuple[int, ...]
    degree_counts: dict[int, int]
    nu3: int
    nu4: int
    bipartition_blocks: Optional[tuple[tuple[int, ...], tuple[int, ...]]]
    block_degree_counts: Optional[dict[str, int]]
    violations: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    @property
    def n_vertices(self) -> int:
        return sum(self.degree_counts.values())

    @property
    def n_faces(self) -> int:
        return len(self.face_lengths)


def validate_cq(g: EmbeddedGraph) -> ValidationReport:
    """Check whether ``g`` is a cubic quadrangulation of the sphere.

    Passing means: connected, simple, Euler characteristic 2, every face
    a quadrangle, every degree 3 or 4.  For passing graphs the report
    also carries the derived identities (eight degree-3 vertices, face
    count 6 + nu4, the bipartition block identity, and the 6/2 split of
    the degree-3 vertices when the vertex count is odd); these are
    asserted, not reported, since no valid input can break them.
    """
    violations = []
    connected = g.is_connected()
    if not connected:
        violations.append("disconnected")
    spherical = connected and g.euler_characteristic() == 2
    if connected and not spherical:
        violations.append("euler-characteristic")
    loops = g.has_loop()
    parallel = bool(g.parallel_edges())
    if loops:
        violations.append("loop")
    if parallel:
        violations.append("parallel-edge")
    face_lengths = tuple(sorted(len(f) for f in g.face_darts))
    if any(l != 4 for l in face_lengths):
        violations.append("face-length")
    degree_counts = g.degree_counts()
    if any(k not in (3, 4) for k in degree_counts):
        violations.append("vertex-degree")
    nu3 = degree_counts.get(3, 0)
    nu4 = degree_counts.get(4, 0)

    blocks = None
    block_counts = None
    if connected:
        split = bipartition(g)
        if isinstance(split, OddCycleWitness):
            violations.append("odd-cycle")
        else:
            blocks = split
            a, b = split
            block_counts = {
                "a3": sum(1 for v in a if g.degree(v) == 3),
                "a4": sum(1 for v in a if g.degree(v) == 4),
                "b3": sum(1 for v in b if g.degree(v) == 3),
                "b4": sum(1 for v in b if g.degree(v) == 4),
            }

    report = ValidationReport(
        is_spherical=spherical,
        is_simple=not (loops or parallel),
        is_connected=connected,
        face_lengths=face_lengths,
        degree_counts=degree_counts,
        nu3=nu3,
        nu4=nu4,
        bipartition_blocks=blocks,
        block_degree_counts=block_counts,
        violations=violations,
    )
    if report.passed:
        _assert_cq_identities(g, report)
    return report


def _assert_cq_identities(g: EmbeddedGraph, report: ValidationReport) -> None:
    # These follow from Euler counting on any valid input; a failure here
    # is a bug in the map machinery, not a property of the input.
    if report.nu3 != 8:
        raise AssertionError("valid quadrangulation with nu3=%d" % report.nu3)
    if g.n_faces != 6 + report.nu4:
        raise AssertionError("face count %d != 6 + nu4" % g.n_faces)
    bc = report.block_degree_counts
    if bc is None:
        raise AssertionError("valid quadrangulation without bipartition")
    if 3 * bc["a3"] + 2 * (bc["a4"] - bc["b4"]) != 12:
        raise AssertionError("block identity failed: %r" % (bc,))
    if bc["a3"] % 2 != 0 or (bc["a4"] - bc["b4"]) % 3 != 0:
        raise AssertionError("block congruences failed: %r" % (bc,))
    if g.n_vertices % 2 == 1 and {bc["a3"], bc["b3"]} != {6, 2}:
        raise AssertionError("odd-order 6/2 split failed: %r" % (bc,))


def smooth_vertex(g: EmbeddedGraph, v: int) -> EmbeddedGraph:
    """Replace a degree-2 vertex and its two edges by a single edge.

    The two darts at ``v`` must belong to distinct edges; a loop at ``v``
    cannot be smoothed (the result would be a vertex-free loop) and
    raises :class:`DegenerateSmoothingError`.
    """
    from .scratch import MapScratch

    if g.degree(v) != 2:
        raise DegenerateSmoothingError("vertex %d has degree %d, not 2" % (v, g.degree(v)))
    d1, d2 = g.vertex_darts[v]
    if (d1 ^ 1) == d2:
        raise DegenerateSmoothingError("vertex %d carries a loop" % v)
    scratch = MapScratch.from_graph(g)
    scratch.smooth(d1, d2)
    out, _ = scratch.freeze()
    return out


def check_degrees_34(g: EmbeddedGraph) -> None:
    bad = [len(o) for o in g.vertex_darts if len(o) not in (3, 4)]
    if bad:
        raise UnsupportedDegreeError("vertex degrees outside {3,4}: %s" % sorted(set(bad)))
