"""Abstract multigraphs (loops and parallel edges allowed)."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import StructureError


@dataclass(frozen=True)
class Multigraph:
    """A multigraph on vertices ``0..vertex_count-1``.

    Edges are stored as a sorted tuple of sorted pairs; a loop ``(v, v)``
    contributes 2 to the degree of ``v``.
    """
    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __init__(self, vertex_count: int, edges):
        norm = tuple(sorted(tuple(sorted(e)) for e in edges))
        for u, v in norm:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise StructureError("edge (%d,%d) outside 0..%d" % (u, v, vertex_count - 1))
        object.__setattr__(self, "vertex_count", vertex_count)
        object.__setattr__(self, "edges", norm)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.vertex_count
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree(self, v: int) -> int:
        return self.degrees()[v]

    def is_cubic(self) -> bool:
        return all(d == 3 for d in self.degrees())

    def adjacency(self) -> list[list[int]]:
        """Multiplicity matrix; a loop counts once on the diagonal."""
        adj = [[0] * self.vertex_count for _ in range(self.vertex_count)]
        for u, v in self.edges:
            if u == v:
                adj[u][u] += 1
            else:
                adj[u][v] += 1
                adj[v][u] += 1
        return adj

    def components(self) -> list[list[int]]:
        nbr: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nbr[u].add(v)
            nbr[v].add(u)
        seen = [False] * self.vertex_count
        comps = []
        for s in range(self.vertex_count):
            if seen[s]:
                continue
            stack = [s]
            seen[s] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in nbr[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.vertex_count <= 1 or len(self.components()) == 1

    def disjoint_union(self, other: "Multigraph") -> "Multigraph":
        shift = self.vertex_count
        edges = list(self.edges) + [(u + shift, v + shift) for u, v in other.edges]
        return Multigraph(shift + other.vertex_count, edges)

    def __repr__(self) -> str:
        return "Multigraph(n=%d, m=%d)" % (self.vertex_count, len(self.edges))


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_with_chords(n: int, chords) -> Multigraph:
    edges = [(i, (i + 1) % n) for i in range(n)] + list(chords)
    return Multigraph(n, edges)
