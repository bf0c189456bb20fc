"""Reference embeddings and disks used by tests, docs, and demos."""

from __future__ import annotations

from .disks import DiskQuadrangulation
from .embedding import EmbeddedGraph, from_vertex_rotations
from .multigraph import Multigraph


def cube_map() -> EmbeddedGraph:
    """The cube: the unique 8-vertex cubic quadrangulation."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 0),
             (4, 5), (5, 6), (6, 7), (7, 4),
             (0, 4), (1, 5), (2, 6), (3, 7)]
    rotations = [
        [(0, 0), (8, 0), (3, 1)],   # 0: 1, 4, 3
        [(1, 0), (9, 0), (0, 1)],   # 1: 2, 5, 0
        [(2, 0), (10, 0), (1, 1)],  # 2: 3, 6, 1
        [(3, 0), (11, 0), (2, 1)],  # 3: 0, 7, 2
        [(4, 0), (7, 1), (8, 1)],   # 4: 5, 7, 0
        [(5, 0), (4, 1), (9, 1)],   # 5: 6, 4, 1
        [(10, 1), (6, 0), (5, 1)],  # 6: 2, 7, 5
        [(6, 1), (11, 1), (7, 0)],  # 7: 6, 3, 4
    ]
    return from_vertex_rotations(edges, rotations)


def cube_multigraph() -> Multigraph:
    return Multigraph(8, [(0, 1), (1, 2), (2, 3), (3, 0),
                          (4, 5), (5, 6), (6, 7), (7, 4),
                          (0, 4), (1, 5), (2, 6), (3, 7)])


def two_crossing_map() -> EmbeddedGraph:
    """The unique 10-vertex cubic quadrangulation: two degree-4 hubs, an
    8-cycle rim whose alternate vertices attach to opposite hubs."""
    # ids: hub0=0, rim a,b,c,d = 1..4, rim v1..v4 = 5..8, hub1 = 9
    edges = [
        (0, 1), (0, 2), (0, 3), (0, 4),       # e0..e3 inner spokes
        (1, 5), (5, 2), (2, 6), (6, 3),       # e4..e7 rim
        (3, 7), (7, 4), (4, 8), (8, 1),       # e8..e11 rim
        (9, 5), (9, 6), (9, 7), (9, 8),       # e12..e15 outer spokes
    ]
    rotations = [
        [(0, 0), (1, 0), (2, 0), (3, 0)],     # hub0: a b c d
        [(4, 0), (0, 1), (11, 1)],            # a: v1, hub0, v4
        [(6, 0), (1, 1), (5, 1)],             # b: v2, hub0, v1
        [(8, 0), (2, 1), (7, 1)],             # c: v3, hub0, v2
        [(10, 0), (3, 1), (9, 1)],            # d: v4, hub0, v3
        [(12, 1), (5, 0), (4, 1)],            # v1: hub1, b, a
        [(13, 1), (7, 0), (6, 1)],            # v2: hub1, c, b
        [(14, 1), (9, 0), (8, 1)],            # v3: hub1, d, c
        [(15, 1), (11, 0), (10, 1)],          # v4: hub1, a, d
        [(12, 0), (15, 0), (14, 0), (13, 0)],  # hub1: v1 v4 v3 v2
    ]
    return from_vertex_rotations(edges, rotations)


def two_crossing_extraction() -> Multigraph:
    """Extraction target of :func:`two_crossing_map`: an 8-cycle plus the
    four long chords."""
    ring = [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 0)]
    chords = [(0, 4), (2, 6), (1, 5), (3, 7)]
    return Multigraph(8, ring + chords)


def quadrangle_map() -> EmbeddedGraph:
    """A single 4-cycle on the sphere (two quadrangular faces)."""
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)]
    rotations = [
        [(0, 0), (3, 1)],
        [(1, 0), (0, 1)],
        [(2, 0), (1, 1)],
        [(3, 0), (2, 1)],
    ]
    return from_vertex_rotations(edges, rotations)


def single_edge_map() -> EmbeddedGraph:
    return from_vertex_rotations([(0, 1)], [[(0, 0)], [(0, 1)]])


def triangle_map() -> EmbeddedGraph:
    """An embedded 3-cycle (not bipartite; used as a negative fixture)."""
    edges = [(0, 1), (1, 2), (2, 0)]
    rotations = [
        [(0, 0), (2, 1)],
        [(1, 0), (0, 1)],
        [(2, 0), (1, 1)],
    ]
    return from_vertex_rotations(edges, rotations)


def cube_cabling_walk():
    """A cabling walk on the cube with two right and two left turns and
    extraction period exactly 4 (edges and turn labels refer to
    :func:`cube_map`'s numbering)."""
    from .constructions import build_cabling_walk

    return build_cabling_walk(cube_map(), (0, 1, 5, 6, 11, 8),
                              ("R", "S", "L", "R", "S", "L"))


def no_cycle_quadrangulation() -> EmbeddedGraph:
    """A 40-vertex cubic quadrangulation with no cycle of complete
    transverse paths (so it admits no two-disks decomposition): every
    candidate cycle of the extraction lifts to paths that cross.

    Built by cabling a spiral: 4 strands along a 10-edge walk with three
    right and three left turns on the arm-9 spiral over the triangle
    disk.
    """
    from .constructions import SpiralInput, build_cabling_walk, cable, spiral

    disk = spoke_triangle_disk()
    start = next(v for v in disk.boundary_vertices()
                 if disk.map.degree(v) == 3)
    host = spiral(SpiralInput(disk, start, False, 9))
    walk = build_cabling_walk(host, (0, 8, 9, 12, 22, 26, 23, 14, 11, 4),
                              ("R", "S", "L", "S", "S", "R", "L", "R", "L", "S"))
    return cable(host, walk, 4)


def quad_disk() -> DiskQuadrangulation:
    """The single quadrangle as a disk (the square: b2=4, i3=0)."""
    g = quadrangle_map()
    return DiskQuadrangulation(g, outer_dart=g.face_darts[1][0])


def grid_disk(w: int, h: int) -> DiskQuadrangulation:
    """A w x h rectangle of quadrangles, outer face marked."""
    if w < 1 or h < 1:
        raise ValueError("grid needs positive dimensions")

    def vid(i, j):
        return j * (w + 1) + i

    edges = []
    eid = {}
    for j in range(h + 1):
        for i in range(w):
            eid[("h", i, j)] = len(edges)
            edges.append((vid(i, j), vid(i + 1, j)))
    for j in range(h):
        for i in range(w + 1):
            eid[("v", i, j)] = len(edges)
            edges.append((vid(i, j), vid(i, j + 1)))
    rotations = []
    for j in range(h + 1):
        for i in range(w + 1):
            order = []
            if i < w:
                order.append((eid[("h", i, j)], 0))       # east
            if j < h:
                order.append((eid[("v", i, j)], 0))       # north
            if i > 0:
                order.append((eid[("h", i - 1, j)], 1))   # west
            if j > 0:
                order.append((eid[("v", i, j - 1)], 1))   # south
            rotations.append(order)
    g = from_vertex_rotations(edges, rotations)
    outer = max(range(g.n_faces), key=lambda f: (g.face_length(f), -f))
    return DiskQuadrangulation(g, outer_dart=g.face_darts[outer][0])


def strip_disk(k: int) -> DiskQuadrangulation:
    """A 1 x k strip of quadrangles."""
    return grid_disk(k, 1)


def spoke_triangle_disk() -> DiskQuadrangulation:
    """Three quadrangles around a central degree-3 vertex (the triangle:
    b2=3, i3=1)."""
    # center 0; spoke ends 1,2,3; corners 4,5,6; boundary 1,4,2,5,3,6
    edges = [
        (0, 1), (0, 2), (0, 3),               # e0..e2 spokes
        (1, 4), (4, 2), (2, 5), (5, 3), (3, 6), (6, 1),  # boundary
    ]
    rotations = [
        [(0, 0), (1, 0), (2, 0)],             # center: 1, 2, 3
        [(3, 0), (0, 1), (8, 1)],             # 1: corner4, center, corner6
        [(5, 0), (1, 1), (4, 1)],             # 2: corner5, center, corner4
        [(7, 0), (2, 1), (6, 1)],             # 3: corner6, center, corner5
        [(4, 0), (3, 1)],                     # 4: 2, 1
        [(6, 0), (5, 1)],                     # 5: 3, 2
        [(8, 0), (7, 1)],                     # 6: 1, 3
    ]
    g = from_vertex_rotations(edges, rotations)
    outer = max(range(g.n_faces), key=lambda f: (g.face_length(f), -f))
    return DiskQuadrangulation(g, outer_dart=g.face_darts[outer][0])
