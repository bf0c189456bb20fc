"""Mutable dart-level surgery: edge deletion, smoothing, renumbering.

Unlike :class:`EmbeddedGraph`, a scratch map carries an explicit edge
pairing so that smoothing (which re-pairs darts) is a local operation.
``freeze`` renumbers the surviving darts back into the implicit
``d ^ 1`` pairing, ordering edges by their smallest old dart.
"""

from __future__ import annotations

from dataclasses import dataclass

from .embedding import EmbeddedGraph
from .errors import StructureError


@dataclass
class SurgeryLog:
    """What a deletion/smoothing pass removed beyond the requested edges."""
    dropped_isolated_vertices: int = 0
    dropped_loop_components: int = 0
    smoothed_vertices: int = 0


class MapScratch:
    """Explicit (sigma, alpha) map with dart deletion and smoothing."""

    def __init__(self, sigma: dict[int, int], alpha: dict[int, int]):
        self.sigma = sigma
        self.alpha = alpha
        self.sigma_inv = {v: k for k, v in sigma.items()}

    @classmethod
    def from_graph(cls, g: EmbeddedGraph) -> "MapScratch":
        sigma = {d: g.rotation[d] for d in range(g.n_darts)}
        alpha = {d: d ^ 1 for d in range(g.n_darts)}
        return cls(sigma, alpha)

    # -- queries ---------------------------------------------------------

    def darts(self):
        return self.sigma.keys()

    def vertex_darts_at(self, d: int) -> list[int]:
        orbit = [d]
        cur = self.sigma[d]
        while cur != d:
            orbit.append(cur)
            cur = self.sigma[cur]
        return orbit

    def degree_at(self, d: int) -> int:
        return len(self.vertex_darts_at(d))

    # -- surgery ---------------------------------------------------------

    def _remove_dart_from_rotation(self, d: int) -> None:
        prev = self.sigma_inv[d]
        nxt = self.sigma[d]
        del self.sigma[d]
        del self.sigma_inv[d]
        if prev != d:
            self.sigma[prev] = nxt
            self.sigma_inv[nxt] = prev

    def delete_edge_of(self, d: int) -> None:
        """Delete the edge carrying dart ``d`` (both darts leave)."""
        m = self.alpha[d]
        self._remove_dart_from_rotation(d)
        if m != d:
            self._remove_dart_from_rotation(m)
        del self.alpha[d]
        if m != d:
            del self.alpha[m]

    def smooth(self, d1: int, d2: int) -> None:
        """Smooth the degree-2 vertex whose two darts are d1, d2.

        The darts must pair with darts of two distinct edges; the two
        edges merge into one (the mates of d1 and d2 become partners).
        """
        if self.sigma[d1] != d2 or self.sigma[d2] != d1:
            raise StructureError("darts %d,%d are not a degree-2 vertex" % (d1, d2))
        a = self.alpha[d1]
        b = self.alpha[d2]
        if a == d2 or b == d1:
            raise StructureError("cannot smooth a loop vertex")
        self._remove_dart_from_rotation(d1)
        self._remove_dart_from_rotation(d2)
        del self.alpha[d1]
        del self.alpha[d2]
        self.alpha[a] = b
        self.alpha[b] = a

    def delete_edges_and_clean(self, darts_of_edges, protected=frozenset()) -> SurgeryLog:
        """Delete the given edges, drop emptied vertices, then smooth every
        resulting degree-2 vertex outside ``protected`` (a set of darts:
        vertices owning any protected dart are left alone).

        A component that shrinks to a single degree-2 vertex whose darts
        pair with each other (a vertex-free loop) is dropped entirely and
        counted in the log.
        """
        log = SurgeryLog()
        for d in list(darts_of_edges):
            if d in self.alpha:
                self.delete_edge_of(d)
        # smooth chains; iterate until stable
        changed = True
        while changed:
            changed = False
            for d in list(self.sigma.keys()):
                if d not in self.sigma:
                    continue
                orbit = self.vertex_darts_at(d)
                if len(orbit) != 2:
                    continue
                d1, d2 = orbit
                if any(x in protected for x in orbit):
                    continue
                if self.alpha[d1] == d2:
                    # isolated loop: remove the whole (single-vertex) component
                    self._remove_dart_from_rotation(d1)
                    self._remove_dart_from_rotation(d2)
                    del self.alpha[d1]
                    del self.alpha[d2]
                    log.dropped_loop_components += 1
                else:
                    self.smooth(d1, d2)
                    log.smoothed_vertices += 1
                changed = True
        return log

    # -- output ----------------------------------------------------------

    def freeze(self) -> tuple[EmbeddedGraph, dict[int, int]]:
        """Renumber surviving darts into implicit-pairing form.

        Returns the frozen graph and the old-dart -> new-dart mapping.
        Edges are ordered by their smallest surviving old dart.
        """
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
