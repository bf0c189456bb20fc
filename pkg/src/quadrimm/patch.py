"""Incremental quadrangular face placement into the holes of a partial map.

A patch is a map under construction whose faces are split into real
faces and *holes*.  Each hole is kept as a genuine face orbit (a dart
cycle), so the rotation system is valid at every step.  Placing a quad
consumes a hole edge (plus up to three more hole edges, chords to hole
vertices, or fresh vertices) and replaces the hole by 0..3 sub-holes.

Enumeration fills the shortest hole at its first edge with every legal
quad; scripted constructions (spiral, buffering) place quads at explicit
positions.  All placements keep the map simple and 2-colored, which is
exactly the search space for cubic quadrangulations and their disks.
"""

from __future__ import annotations

from .embedding import EmbeddedGraph
from .errors import PreconditionError, StructureError

_MISSING = object()


class Patch:
    """Mutable partial quadrangulation with undo support."""

    def __init__(self):
        self.sigma: dict[int, int] = {}
        self.sigma_inv: dict[int, int] = {}
        self.alpha: dict[int, int] = {}
        self.root: dict[int, int] = {}
        self.vdeg: dict[int, int] = {}
        self.color: dict[int, int] = {}
        self.boundary_flag: dict[int, bool] = {}
        self.edge_set: set[tuple[int, int]] = set()
        self.holes: list[tuple[int, ...]] = []
        self.hole_refs: dict[int, int] = {}
        self.next_dart = 0
        self.next_vertex = 0
        self.n_vertices = 0
        self.mark_dart = 0          # a dart on the preserved outer face
        # counters for curvature pruning
        self.finalized_low = 0      # corners (boundary at 2) + interior at 3
        self._journal: list = []

    # -- construction of initial states -----------------------------------

    @classmethod
    def from_cycle(cls, length: int, boundary_is_constrained: bool) -> "Patch":
        """A simple cycle with one face kept real (the outside) and the
        other opened as the hole to fill.

        With ``boundary_is_constrained`` the cycle vertices get the disk
        boundary degree window {2,3}; otherwise {3,4} (sphere mode uses
        the initial quad's own face as the hole complement).
        """
        p = cls()
        for i in range(length):
            p._new_vertex(boundary=boundary_is_constrained, color=i % 2)
        inner = []
        for i in range(length):
            u, v = i, (i + 1) % length
            d, m = p._new_edge(u, v)
            inner.append((d, m))
        # rotations: at vertex v the two darts are (toward next, toward prev)
        for i in range(length):
            d_out = inner[i][0]          # rooted at i, toward i+1
            m_in = inner[(i - 1) % length][1]  # rooted at i, toward i-1
            p.sigma[d_out] = m_in
            p.sigma[m_in] = d_out
            p.sigma_inv[m_in] = d_out
            p.sigma_inv[d_out] = m_in
        # hole orbit: check phi(h_j) = sigma(alpha(h_j)) = h_{j+1}
        hole = [inner[i][0] for i in range(length)]
        if p.sigma[p.alpha[hole[0]]] != hole[1 % length]:
            hole = [inner[i][1] for i in reversed(range(length))]
        p._assert_hole_orbit(hole)
        p.holes.append(tuple(hole))
        for d in hole:
            p.hole_refs[p.root[d]] = 1
        p.mark_dart = p.alpha[hole[0]]
        return p

    @classmethod
    def sphere_seed(cls) -> "Patch":
        """One quadrangle with its far side open: the start state for
        sphere enumeration."""
        return cls.from_cycle(4, boundary_is_constrained=False)

    @classmethod
    def from_disk(cls, g: EmbeddedGraph, outer_face: int) -> "Patch":
        """Adopt a finished map and reopen one face as a hole (used to
        grow constructions such as the spiral outside a disk)."""
        p = cls()
        p.next_dart = g.n_darts
        p.next_vertex = g.n_vertices
        p.n_vertices = g.n_vertices
        for d in range(g.n_darts):
            p.sigma[d] = g.rotation[d]
            p.sigma_inv[g.rotation[d]] = d
            p.alpha[d] = d ^ 1
            p.root[d] = g.vertex_of[d]
        for v in range(g.n_vertices):
            p.vdeg[v] = g.degree(v)
            p.boundary_flag[v] = False
        from .embedding import bipartition, OddCycleWitness
        split = bipartition(g)
        if isinstance(split, OddCycleWitness):
            raise PreconditionError("patch host must be bipartite")
        for v in split[0]:
            p.color[v] = 0
        for v in split[1]:
            p.color[v] = 1
        for e in range(g.n_edges):
            u, v = g.endpoints(e)
            p.edge_set.add((u, v) if u <= v else (v, u))
        hole = list(g.face_darts[outer_face])
        p._assert_hole_orbit(hole)
        p.holes.append(tuple(hole))
        for d in hole:
            v = p.root[d]
            p.hole_refs[v] = p.hole_refs.get(v, 0) + 1
        p.mark_dart = p.alpha[hole[0]]
        return p

    def hole_position_of_root(self, h_idx: int, vertex: int) -> int:
        """Index of the hole dart rooted at ``vertex`` (must be unique)."""
        hole = self.holes[h_idx]
        hits = [i for i, d in enumerate(hole) if self.root[d] == vertex]
        if len(hits) != 1:
            raise StructureError("vertex %d appears %d times on hole %d"
                                 % (vertex, len(hits), h_idx))
        return hits[0]

    # -- journal helpers ---------------------------------------------------

    def checkpoint(self):
        return len(self._journal)

    def rollback(self, mark) -> None:
        while len(self._journal) > mark:
            entry = self._journal.pop()
            kind = entry[0]
            if kind == "dict":
                _, dct, key, old = entry
                if old is _MISSING:
                    del dct[key]
                else:
                    dct[key] = old
            elif kind == "set-del":
                entry[1].discard(entry[2])
            elif kind == "holes":
                _, idx, removed_count, old_items = entry
                self.holes[idx:idx + removed_count] = old_items
            elif kind == "attr":
                setattr(self, entry[1], entry[2])
            else:  # pragma: no cover
                raise StructureError("bad journal entry %r" % (entry,))

    def _set(self, dct, key, value) -> None:
        self._journal.append(("dict", dct, key, dct.get(key, _MISSING)))
        dct[key] = value

    def _del(self, dct, key) -> None:
        self._journal.append(("dict", dct, key, dct[key]))
        del dct[key]

    def _add_edge_key(self, u, v) -> None:
        key = (u, v) if u <= v else (v, u)
        self._journal.append(("set-del", self.edge_set, key))
        self.edge_set.add(key)

    def _set_attr(self, name, value) -> None:
        self._journal.append(("attr", name, getattr(self, name)))
        setattr(self, name, value)

    def _replace_hole(self, idx, new_holes) -> None:
        self._journal.append(("holes", idx, len(new_holes), [self.holes[idx]]))
        self.holes[idx:idx + 1] = [tuple(h) for h in new_holes]

    # -- primitive state changers ------------------------------------------

    def _new_vertex(self, boundary: bool, color: int) -> int:
        v = self.next_vertex
        self._set_attr("next_vertex", v + 1)
        self._set_attr("n_vertices", self.n_vertices + 1)
        self._set(self.vdeg, v, 0)
        self._set(self.color, v, color)
        self._set(self.boundary_flag, v, boundary)
        return v

    def _new_edge(self, u: int, v: int) -> tuple[int, int]:
        d = self.next_dart
        m = d + 1
        self._set_attr("next_dart", d + 2)
        self._set(self.alpha, d, m)
        self._set(self.alpha, m, d)
        self._set(self.root, d, u)
        self._set(self.root, m, v)
        self._set(self.vdeg, u, self.vdeg[u] + 1)
        self._set(self.vdeg, v, self.vdeg[v] + 1)
        self._add_edge_key(u, v)
        return d, m

    def _splice(self, after: int, new: int, before: int) -> None:
        """Insert dart `new` so sigma(after) = new, sigma(new) = before.
        Requires sigma(after) == before currently."""
        assert self.sigma[after] == before
        self._set(self.sigma, after, new)
        self._set(self.sigma, new, before)
        self._set(self.sigma_inv, before, new)
        self._set(self.sigma_inv, new, after)

    def _fresh_rotation_pair(self, d1: int, d2: int) -> None:
        """Rotation 2-cycle for a brand-new degree-2 vertex."""
        self._set(self.sigma, d1, d2)
        self._set(self.sigma, d2, d1)
        self._set(self.sigma_inv, d1, d2)
        self._set(self.sigma_inv, d2, d1)

    def _refs_add(self, v, delta) -> None:
        self._set(self.hole_refs, v, self.hole_refs.get(v, 0) + delta)

    # -- queries -----------------------------------------------------------

    def has_edge(self, u, v) -> bool:
        return ((u, v) if u <= v else (v, u)) in self.edge_set

    def head(self, d: int) -> int:
        return self.root[self.alpha[d]]

    def max_degree_of(self, v: int) -> int:
        return 3 if self.boundary_flag[v] else 4

    def min_degree_of(self, v: int) -> int:
        return 2 if self.boundary_flag[v] else 3

    def _assert_hole_orbit(self, hole) -> None:
        for i, d in enumerate(hole):
            if self.sigma[self.alpha[d]] != hole[(i + 1) % len(hole)]:
                raise StructureError("hole is not a face orbit")

    # -- the five placement families -----------------------------------------

    def _finalize_ok(self, vertices) -> bool:
        """Degree-window check for vertices leaving all holes; updates the
        curvature counter (journaled)."""
        low = 0
        for v in vertices:
            if self.hole_refs.get(v, 0) != 0:
                continue
            d = self.vdeg[v]
            if self.boundary_flag[v]:
                if d not in (2, 3):
                    return False
                if d == 2:
                    low += 1
            else:
                if d not in (3, 4):
                    return False
                if d == 3:
                    low += 1
        if low:
            self._set_attr("finalized_low", self.finalized_low + low)
        return True

    def place_close(self, h_idx: int):
        hole = self.holes[h_idx]
        if len(hole) != 4:
            return None
        mark = self.checkpoint()
        self._replace_hole(h_idx, [])
        verts = [self.root[d] for d in hole]
        for v in verts:
            self._refs_add(v, -1)
        if not self._finalize_ok(verts):
            self.rollback(mark)
            return None
        return mark

    def place_cover3(self, h_idx: int, pos: int):
        hole = self.holes[h_idx]
        L = len(hole)
        if L < 6:
            return None
        p = pos % L
        arc = [hole[p], hole[(p + 1) % L], hole[(p + 2) % L]]
        w_end = self.head(arc[2])
        w_start = self.root[arc[0]]
        if self.has_edge(w_end, w_start):
            return None
        if self.vdeg[w_end] + 1 > self.max_degree_of(w_end):
            return None
        if self.vdeg[w_start] + 1 > self.max_degree_of(w_start):
            return None
        mark = self.checkpoint()
        nd, nm = self._new_edge(w_end, w_start)
        h_after = hole[(p + 3) % L]
        h_before = hole[(p - 1) % L]
        self._splice(self.alpha[arc[2]], nd, h_after)
        self._splice(self.alpha[h_before], nm, hole[p])
        rest = [hole[(p + 3 + i) % L] for i in range(L - 3)]
        self._replace_hole(h_idx, [tuple([nm] + rest)])
        inner = [self.root[arc[1]], self.root[arc[2]]]
        for v in inner:
            self._refs_add(v, -1)
        if not self._finalize_ok(inner):
            self.rollback(mark)
            return None
        return mark

    def place_cover2(self, h_idx: int, pos: int, corner):
        hole = self.holes[h_idx]
        L = len(hole)
        if L < 4 or (L == 4 and corner[0] == "at"):
            return None
        p = pos % L
        arc = [hole[p], hole[(p + 1) % L]]
        w0 = self.root[arc[0]]
        w1 = self.root[arc[1]]
        w2 = self.head(arc[1])
        if self.vdeg[w0] + 1 > self.max_degree_of(w0):
            return None
        if self.vdeg[w2] + 1 > self.max_degree_of(w2):
            return None
        want_color = 1 - self.color[w0]
        if corner[0] == "at":
            q = corner[1] % L
            if q in (p, (p + 1) % L, (p + 2) % L):
                return None
            x = self.root[hole[q]]
            if self.color[x] != want_color:
                return None
            if self.has_edge(w2, x) or self.has_edge(x, w0):
                return None
            if self.vdeg[x] + 2 > self.max_degree_of(x):
                return None
        else:
            x = None
        mark = self.checkpoint()
        if x is None:
            x = self._new_vertex(boundary=False, color=want_color)
        d1, m1 = self._new_edge(w2, x)
        d2, m2 = self._new_edge(x, w0)
        h_after = hole[(p + 2) % L]
        h_before = hole[(p - 1) % L]
        self._splice(self.alpha[arc[1]], d1, h_after)
        self._splice(self.alpha[h_before], m2, hole[p])
        if corner[0] == "new":
            self._fresh_rotation_pair(m1, d2)
            rest = [hole[(p + 2 + i) % L] for i in range(L - 2)]
            self._replace_hole(h_idx, [tuple([m2, m1] + rest)])
            self._refs_add(x, 1)
        else:
            q = corner[1] % L
            h_qprev = hole[(q - 1) % L]
            self._splice(self.alpha[h_qprev], m1, hole[q])
            self._splice(m1, d2, hole[q])
            steps_1 = (q - (p + 2)) % L
            sh1 = [hole[(p + 2 + i) % L] for i in range(steps_1)] + [m1]
            steps_2 = (p - q) % L
            sh2 = [hole[(q + i) % L] for i in range(steps_2)] + [m2]
            self._replace_hole(h_idx, [tuple(sh1), tuple(sh2)])
            self._refs_add(x, 1)
        inner = [w1]
        self._refs_add(w1, -1)
        if not self._finalize_ok(inner):
            self.rollback(mark)
            return None
        return mark

    def place_pinch(self, h_idx: int, pos: int, q: int):
        hole = self.holes[h_idx]
        L = len(hole)
        p = pos % L
        q = q % L
        rel = (q - p) % L
        if rel < 2 or rel > L - 2:
            return None
        w0 = self.root[hole[p]]
        w1 = self.head(hole[p])
        wq = self.root[hole[q]]
        wq1 = self.head(hole[q])
        if self.color[wq] != self.color[w0]:
            return None
        if self.has_edge(w1, wq) or self.has_edge(wq1, w0):
            return None
        for v in (w0, w1, wq, wq1):
            if self.vdeg[v] + 1 > self.max_degree_of(v):
                return None
        mark = self.checkpoint()
        d1, m1 = self._new_edge(w1, wq)
        d2, m2 = self._new_edge(wq1, w0)
        h0 = hole[p]
        hq = hole[q]
        self._splice(self.alpha[h0], d1, hole[(p + 1) % L])
        self._splice(self.alpha[hole[(q - 1) % L]], m1, hq)
        self._splice(self.alpha[hq], d2, hole[(q + 1) % L])
        self._splice(self.alpha[hole[(p - 1) % L]], m2, h0)
        sh1 = [hole[(p + 1 + i) % L] for i in range((q - p - 1) % L)] + [m1]
        sh2 = [hole[(q + 1 + i) % L] for i in range((p - q - 1) % L)] + [m2]
        self._replace_hole(h_idx, [tuple(sh1), tuple(sh2)])
        return mark

    def place_cover1(self, h_idx: int, pos: int, x_spec, y_spec):
        hole = self.holes[h_idx]
        L = len(hole)
        p = pos % L
        w0 = self.root[hole[p]]
        w1 = self.head(hole[p])
        if self.vdeg[w0] + 1 > self.max_degree_of(w0):
            return None
        if self.vdeg[w1] + 1 > self.max_degree_of(w1):
            return None
        cx = self.color[w0]
        cy = self.color[w1]

        def resolve(spec, want_color):
            if spec[0] == "new":
                return None
            q = spec[1] % L
            v = self.root[hole[q]]
            if self.color[v] != want_color:
                return _MISSING
            if self.vdeg[v] + 2 > self.max_degree_of(v):
                return _MISSING
            return v

        x = resolve(x_spec, cx)
        y = resolve(y_spec, cy)
        if x is _MISSING or y is _MISSING:
            return None
        if x_spec[0] == "at" and y_spec[0] == "at":
            qx, qy = x_spec[1] % L, y_spec[1] % L
            a, b, c = (qx - p) % L, (qy - qx) % L, (p - qy) % L
            # x then y strictly ordered along the remaining arc, no crossing
            if a < 2 or b < 1 or c < 1 or a + b + c != L:
                return None
        elif x_spec[0] == "at":
            qx = x_spec[1] % L
            if (qx - p) % L < 2 or qx == p:
                return None
        elif y_spec[0] == "at":
            qy = y_spec[1] % L
            if (qy - p) % L < 2 or qy == p:
                return None
        # edge duplication checks on sides touching existing vertices
        if x is not None and self.has_edge(w1, x):
            return None
        if x is not None and y is not None and self.has_edge(x, y):
            return None
        if y is not None and self.has_edge(y, w0):
            return None
        if x is not None and x == y:
            return None

        mark = self.checkpoint()
        if x is None:
            x = self._new_vertex(boundary=False, color=cx)
        if y is None:
            y = self._new_vertex(boundary=False, color=cy)
        d1, m1 = self._new_edge(w1, x)
        d2, m2 = self._new_edge(x, y)
        d3, m3 = self._new_edge(y, w0)
        self._splice(self.alpha[hole[p]], d1, hole[(p + 1) % L])
        self._splice(self.alpha[hole[(p - 1) % L]], m3, hole[p])
        new_x = x_spec[0] == "new"
        new_y = y_spec[0] == "new"
        if new_x:
            self._fresh_rotation_pair(m1, d2)
        else:
            qx = x_spec[1] % L
            self._splice(self.alpha[hole[(qx - 1) % L]], m1, hole[qx])
            self._splice(m1, d2, hole[qx])
        if new_y:
            self._fresh_rotation_pair(m2, d3)
        else:
            qy = y_spec[1] % L
            self._splice(self.alpha[hole[(qy - 1) % L]], m2, hole[qy])
            self._splice(m2, d3, hole[qy])
        if new_x and new_y:
            rest = [hole[(p + 1 + i) % L] for i in range(L - 1)]
            self._replace_hole(h_idx, [tuple([m3, m2, m1] + rest)])
            self._refs_add(x, 1)
            self._refs_add(y, 1)
        elif (not new_x) and new_y:
            qx = x_spec[1] % L
            sh1 = [hole[(p + 1 + i) % L] for i in range((qx - p - 1) % L)] + [m1]
            sh2 = [m3, m2] + [hole[(qx + i) % L] for i in range((p - qx) % L)]
            self._replace_hole(h_idx, [tuple(sh1), tuple(sh2)])
            self._refs_add(x, 1)
            self._refs_add(y, 1)
        elif new_x and (not new_y):
            qy = y_spec[1] % L
            sh1 = ([hole[(p + 1 + i) % L] for i in range((qy - p - 1) % L)]
                   + [m2, m1])
            sh2 = [m3] + [hole[(qy + i) % L] for i in range((p - qy) % L)]
            self._replace_hole(h_idx, [tuple(sh1), tuple(sh2)])
            self._refs_add(x, 1)
            self._refs_add(y, 1)
        else:
            qx = x_spec[1] % L
            qy = y_spec[1] % L
            sh1 = [hole[(p + 1 + i) % L] for i in range((qx - p - 1) % L)] + [m1]
            sh2 = [hole[(qx + i) % L] for i in range((qy - qx) % L)] + [m2]
            sh3 = [m3] + [hole[(qy + i) % L] for i in range((p - qy) % L)]
            self._replace_hole(h_idx, [tuple(sh1), tuple(sh2), tuple(sh3)])
            self._refs_add(x, 1)
            self._refs_add(y, 1)
        return mark

    # -- output ------------------------------------------------------------

    def freeze(self) -> tuple[EmbeddedGraph, dict[int, int]]:
        """Renumber into implicit-pairing form; returns (graph, dart map)."""
        pairs = []
        seen = set()
        for d in sorted(self.alpha):
            if d in seen:
                continue
            m = self.alpha[d]
            seen.add(d)
            seen.add(m)
            pairs.append((d, m))
        dart_map: dict[int, int] = {}
        for k, (d, m) in enumerate(pairs):
            dart_map[d] = 2 * k
            dart_map[m] = 2 * k + 1
        rotation = [0] * (2 * len(pairs))
        for d, nd in dart_map.items():
            rotation[nd] = dart_map[self.sigma[d]]
        return EmbeddedGraph(rotation), dart_map
