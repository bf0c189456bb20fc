"""Exhaustive generation of cubic quadrangulations, the small-multigraph
census, the corpus, and the coverage report.

Two independent enumeration routes are kept deliberately separate: the
primary embedding-first generator grows rotation systems by quadrangular
face expansion, while the oracle generates abstract bipartite graphs
with the right degree data and filters them through a planarity test.
Their canonical-code sets must agree wherever both run.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

import networkx as nx

from .canon import CanonicalCode, canon_embedded, canon_multigraph
from .disks import _fill_all
from .embedding import EmbeddedGraph, from_vertex_rotations, validate_cq
from .errors import BudgetError, PreconditionError, QuadrimmError
from .multigraph import Multigraph
from .patch import Patch
from .walks import extract

DEFAULT_ENUM_BUDGET = 16
DEFAULT_ORACLE_BUDGET = 12


# -- primary enumeration: face expansion ------------------------------------


def _two_connected(g: EmbeddedGraph) -> bool:
    """No articulation vertex (simple DFS low-link scan)."""
    n = g.n_vertices
    if n < 3:
        return False
    adj = [set() for _ in range(n)]
    for e in range(g.n_edges):
        u, v = g.endpoints(e)
        adj[u].add(v)
        adj[v].add(u)
    visited = [False] * n
    depth = [0] * n
    low = [0] * n
    parent = [-1] * n
    stack = [(0, iter(adj[0]))]
    visited[0] = True
    root_children = 0
    order = [0]
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if not visited[w]:
                visited[w] = True
                depth[w] = depth[v] + 1
                low[w] = depth[w]
                parent[w] = v
                if v == 0:
                    root_children += 1
                stack.append((w, iter(adj[w])))
                order.append(w)
                advanced = True
                break
            elif w != parent[v]:
                low[v] = min(low[v], depth[w])
        if not advanced:
            stack.pop()
            if parent[v] >= 0:
                low[parent[v]] = min(low[parent[v]], low[v])
                if parent[v] != 0 and low[v] >= depth[parent[v]]:
                    return False
    if root_children > 1:
        return False
    return all(visited)


def enumerate_cq_upto(max_n: int, budget: Optional[int] = None
                      ) -> dict[int, list[EmbeddedGraph]]:
    """All cubic quadrangulations with at most ``max_n`` vertices, one
    canonical representative per embedded-isomorphism class (reflection
    included), bucketed by vertex count."""
    cap = budget if budget is not None else DEFAULT_ENUM_BUDGET
    if max_n > cap:
        raise BudgetError("enumeration budget is n<=%d" % cap,
                          suggestion="pass budget=%d to accept the cost" % max_n)
    if max_n < 8:
        return {}
    found: dict[int, dict[CanonicalCode, EmbeddedGraph]] = {}

    def emit(patch: Patch) -> None:
        g, _ = patch.freeze()
        n = g.n_vertices
        report = validate_cq(g)
        if not report.passed:
            raise QuadrimmError("face expansion emitted an invalid map: %s"
                                % report.violations)
        if not _two_connected(g):
            raise QuadrimmError("face expansion emitted a separable map")
        code = canon_embedded(g)
        found.setdefault(n, {}).setdefault(code, g)

    patch = Patch.sphere_seed()
    _fill_all(patch, max_n, 8, emit)
    return {n: [found[n][c] for c in sorted(found[n])]
            for n in sorted(found)}


def enumerate_cq(n: int, budget: Optional[int] = None) -> Iterator[EmbeddedGraph]:
    """Representatives of all n-vertex cubic quadrangulations, in
    canonical-code order."""
    if n < 8:
        raise PreconditionError("cubic quadrangulations need at least 8 vertices")
    buckets = enumerate_cq_upto(n, budget=budget)
    yield from buckets.get(n, [])


# -- oracle enumeration: abstract graphs + planarity filter ------------------


def _block_profiles(n: int):
    """Unordered degree splits (a3, a4 | b3, b4) across the bipartition:
    solutions of 3*a3 + 4*a4 = 12 + 2*nu4."""
    nu4 = n - 8
    out = []
    for a3 in range(9):
        rhs = 12 + 2 * nu4 - 3 * a3
        if rhs < 0 or rhs % 4:
            continue
        a4 = rhs // 4
        if a4 < 0 or a4 > nu4:
            continue
        b3, b4 = 8 - a3, nu4 - a4
        if (a3, a4) <= (b3, b4):
            out.append((a3, a4, b3, b4))
    return out


def _bipartite_matrices(row_degs: list[int], col_degs: list[int]):
    """0/1 matrices with the given row and column sums; rows of equal
    degree are emitted with non-increasing bitmasks to cut symmetry."""
    n_cols = len(col_degs)
    cols = list(range(n_cols))

    def rec(i, col_rem, prev_mask_by_deg, rows):
        if i == len(row_degs):
            if all(r == 0 for r in col_rem):
                yield list(rows)
            return
        need = row_degs[i]
        remaining_rows = len(row_degs) - i
        if any(col_rem[c] > remaining_rows for c in cols):
            return
        for combo in itertools.combinations(cols, need):
            if any(col_rem[c] == 0 for c in combo):
                continue
            mask = 0
            for c in combo:
                mask |= 1 << c
            prev = prev_mask_by_deg.get(need)
            if prev is not None and mask > prev:
                continue
            for c in combo:
                col_rem[c] -= 1
            saved = prev_mask_by_deg.get(need)
            prev_mask_by_deg[need] = mask
            rows.append(combo)
            yield from rec(i + 1, col_rem, prev_mask_by_deg, rows)
            rows.pop()
            if saved is None:
                del prev_mask_by_deg[need]
            else:
                prev_mask_by_deg[need] = saved
            for c in combo:
                col_rem[c] += 1

    yield from rec(0, list(col_degs), {}, [])


def _embedding_from_planar(graph: nx.Graph, emb: "nx.PlanarEmbedding") -> EmbeddedGraph:
    nodes = sorted(graph.nodes())
    index = {v: i for i, v in enumerate(nodes)}
    edges = []
    eid = {}
    for u, v in sorted(tuple(sorted((index[a], index[b]))) for a, b in graph.edges()):
        eid[(u, v)] = len(edges)
        edges.append((u, v))
    data = emb.get_data()
    rotations = []
    for v in nodes:
        order = []
        for w in data[v]:
            u, x = index[v], index[w]
            key = (u, x) if u <= x else (x, u)
            order.append((eid[key], 0 if u <= x else 1))
        rotations.append(order)
    return from_vertex_rotations(edges, rotations)


def enumerate_cq_filtered(n: int, budget: Optional[int] = None
                          ) -> Iterator[EmbeddedGraph]:
    """The graph-first oracle: generate simple connected bipartite graphs
    with nu3 = 8, degrees in {3,4}, 2n-4 edges, and 2-connectivity, then
    keep the planar ones.  Any embedding of such a planar graph is
    automatically a quadrangulation (2E = 4F and bipartite simplicity
    forbid shorter faces), and 3-connectivity makes it unique up to
    reflection."""
    cap = budget if budget is not None else DEFAULT_ORACLE_BUDGET
    if n > cap:
        raise BudgetError("oracle budget is n<=%d" % cap,
                          suggestion="pass budget=%d to accept the cost" % n)
    if n < 8:
        raise PreconditionError("need n >= 8")
    seen: dict[CanonicalCode, EmbeddedGraph] = {}
    for a3, a4, b3, b4 in _block_profiles(n):
        row_degs = [4] * a4 + [3] * a3
        col_degs = [4] * b4 + [3] * b3
        n_rows, n_cols = len(row_degs), len(col_degs)
        for rows in _bipartite_matrices(row_degs, col_degs):
            graph = nx.Graph()
            graph.add_nodes_from(range(n_rows + n_cols))
            for i, combo in enumerate(rows):
                for c in combo:
                    graph.add_edge(i, n_rows + c)
            if not nx.is_connected(graph):
                continue
            planar, emb = nx.check_planarity(graph, counterexample=False)
            if not planar:
                continue
            g = _embedding_from_planar(graph, emb)
            report = validate_cq(g)
            if not report.passed:
                raise QuadrimmError(
                    "planar candidate failed validation: %s" % report.violations)
            if not _two_connected(g):
                continue
            code = canon_embedded(g)
            seen.setdefault(code, g)
    for code in sorted(seen):
        yield seen[code]


# -- census of small cubic multigraphs ---------------------------------------


@dataclass
class CensusResult:
    connected_counts: dict[int, int]
    connected_codes: dict[int, list[CanonicalCode]]
    disconnected_8_count: Optional[int] = None
    disconnected_8_subtotals: Optional[dict[str, int]] = None
    disconnected_8_codes: Optional[list[CanonicalCode]] = None


def _connected_cubic_multigraphs(n: int) -> list[Multigraph]:
    """All connected cubic multigraphs on n labeled-then-deduplicated
    vertices, via symmetry-reduced stub pairing."""
    if n % 2:
        raise PreconditionError("cubic graphs need an even vertex count")
    results: dict[CanonicalCode, Multigraph] = {}
    rem = [3] * n

    def rec(edges, last_partner_of_v, v, touched):
        if rem[v] == 0:
            nxt = v + 1
            while nxt < n and rem[nxt] == 0:
                nxt += 1
            if nxt == n:
                m = Multigraph(n, edges)
                if m.is_connected():
                    results.setdefault(canon_multigraph(m), m)
                return
            rec(edges, -1, nxt, touched)
            return
        # partner candidates: loop at v, any later touched vertex, or the
        # first untouched vertex (untouched ones are interchangeable)
        candidates = []
        if rem[v] >= 2 and last_partner_of_v <= v:
            candidates.append(v)
        first_untouched = None
        for u in range(v + 1, n):
            if u < touched:
                if rem[u] > 0 and u >= last_partner_of_v:
                    candidates.append(u)
            else:
                first_untouched = u
                break
        if first_untouched is not None and first_untouched >= last_partner_of_v:
            candidates.append(first_untouched)
        for u in candidates:
            if u == v:
                rem[v] -= 2
                rec(edges + [(v, v)], v, v, touched)
                rem[v] += 2
            else:
                rem[v] -= 1
                rem[u] -= 1
                rec(edges + [(v, u)], u, v, max(touched, u + 1))
                rem[v] += 1
                rem[u] += 1

    rec([], -1, 0, 1)
    return [results[c] for c in sorted(results)]


def census_connected_cubic_multigraphs(n: int) -> CensusResult:
    """Connected cubic multigraphs (loops allowed) on n vertices,
    n in {2, 4, 6, 8}."""
    if n not in (2, 4, 6, 8):
        raise PreconditionError("census supports n in {2,4,6,8}")
    graphs = _connected_cubic_multigraphs(n)
    codes = [canon_multigraph(m) for m in graphs]
    return CensusResult(connected_counts={n: len(graphs)},
                        connected_codes={n: codes})


def census_disconnected_8() -> CensusResult:
    """Disconnected cubic multigraphs on 8 vertices, composed from the
    connected censuses per partition of 8."""
    pools = {k: _connected_cubic_multigraphs(k) for k in (2, 4, 6)}
    subtotals: dict[str, int] = {}
    codes: list[CanonicalCode] = []

    def compose(partition):
        per_part = [pools[k] for k in partition]
        combos = set()
        for choice in itertools.product(*[range(len(p)) for p in per_part]):
            key = []
            by_size: dict[int, list[int]] = {}
            for k, idx in zip(partition, choice):
                by_size.setdefault(k, []).append(idx)
            for k in sorted(by_size):
                key.append((k, tuple(sorted(by_size[k]))))
            combos.add(tuple(key))
        out = []
        for key in sorted(combos):
            graph = None
            for k, idxs in key:
                for i in idxs:
                    piece = pools[k][i]
                    graph = piece if graph is None else graph.disjoint_union(piece)
            out.append(canon_multigraph(graph))
        return out

    for partition in ((2, 2, 2, 2), (2, 2, 4), (2, 6), (4, 4)):
        got = compose(partition)
        subtotals["+".join(map(str, partition))] = len(got)
        codes.extend(got)
    if len(set(codes)) != len(codes):
        raise QuadrimmError("partition classes overlapped; census is broken")
    return CensusResult(
        connected_counts={},
        connected_codes={},
        disconnected_8_count=len(codes),
        disconnected_8_subtotals=subtotals,
        disconnected_8_codes=sorted(codes),
    )


def census_all_8() -> tuple[list[CanonicalCode], list[CanonicalCode]]:
    """(connected, disconnected) canonical codes of all cubic multigraphs
    on 8 vertices: the 140 coverage targets."""
    connected = census_connected_cubic_multigraphs(8).connected_codes[8]
    disconnected = census_disconnected_8().disconnected_8_codes
    return connected, disconnected


# -- corpus and coverage ------------------------------------------------------


@dataclass
class Corpus:
    """Cubic quadrangulations keyed by embedded code, with an index from
    extraction codes to their witnesses."""
    entries: dict[CanonicalCode, tuple[EmbeddedGraph, str]] = field(default_factory=dict)
    extraction_index: dict[CanonicalCode, set[CanonicalCode]] = field(default_factory=dict)

    def add(self, g: EmbeddedGraph, provenance: str) -> Optional[CanonicalCode]:
        report = validate_cq(g)
        if not report.passed:
            raise PreconditionError("corpus accepts only valid cubic "
                                    "quadrangulations: %s" % report.violations)
        code = canon_embedded(g)
        if code in self.entries:
            return None
        self.entries[code] = (g, provenance)
        mcode = canon_multigraph(extract(g))
        self.extraction_index.setdefault(mcode, set()).add(code)
        return code

    def graphs(self) -> Iterator[tuple[CanonicalCode, EmbeddedGraph, str]]:
        for code in sorted(self.entries):
            g, prov = self.entries[code]
            yield code, g, prov

    def __len__(self) -> int:
        return len(self.entries)


@dataclass
class CoverageReport:
    achieved: dict[CanonicalCode, list[CanonicalCode]]
    missing: list[CanonicalCode]
    extras: list[CanonicalCode]

    @property
    def achieved_count(self) -> int:
        return len(self.achieved)

    @property
    def target_count(self) -> int:
        return len(self.achieved) + len(self.missing)


def coverage_report(corpus: Corpus) -> CoverageReport:
    """Map each of the 140 cubic-multigraph classes on 8 vertices to its
    quadrangulated witnesses in the corpus."""
    connected, disconnected = census_all_8()
    targets = set(connected) | set(disconnected)
    achieved = {}
    for mcode in sorted(targets):
        wits = sorted(corpus.extraction_index.get(mcode, ()))
        if wits:
            achieved[mcode] = wits
    missing = sorted(targets - set(achieved))
    extras = sorted(set(corpus.extraction_index) - targets)
    return CoverageReport(achieved=achieved, missing=missing, extras=extras)


def _radial_closure_task(g: EmbeddedGraph):
    from .constructions import radial
    from .walks import reduce_embedding

    r = radial(g)
    rr = reduce_embedding(radial(r))
    return r, (rr if rr.is_connected() and rr.n_darts else None)


def build_default_corpus(enum_max: int = 12,
                         spiral_arms: int = 21,
                         cable_strands: int = 8,
                         enum_budget: Optional[int] = None,
                         workers: int = 1) -> Corpus:
    """Enumeration up to ``enum_max`` vertices plus construction sweeps
    (radial closure, spirals on the stock disks, cables on the stock
    walk).  The radial closure round fans out over ``workers``."""
    from .catalog import cube_cabling_walk, spoke_triangle_disk
    from .config import parallel_map
    from .constructions import SpiralInput, cable, spiral

    corpus = Corpus()
    buckets = enumerate_cq_upto(enum_max, budget=enum_budget)
    for n in sorted(buckets):
        for g in buckets[n]:
            corpus.add(g, "enumerated-at-%d" % n)
    disk = spoke_triangle_disk()
    start = next(v for v in disk.boundary_vertices() if disk.map.degree(v) == 3)
    for l in range(1, spiral_arms + 1):
        if l == 2:
            continue
        corpus.add(spiral(SpiralInput(disk, start, False, l)), "spiral-l%d" % l)
    walk = cube_cabling_walk()
    host = walk.host
    for c in range(cable_strands + 1):
        corpus.add(cable(host, walk, c), "cable-c%d" % c)
    stock = [(code, g) for code, g, _ in corpus.graphs() if radial_size(g) <= 40]
    results = parallel_map(_radial_closure_task, [g for _, g in stock], workers)
    for (code, _), (r, rr) in zip(stock, results):
        corpus.add(r, "radial-of-%s" % code.digest()[:8])
        if rr is not None:
            corpus.add(rr, "reduced-double-radial-of-%s" % code.digest()[:8])
    return corpus


def radial_size(g: EmbeddedGraph) -> int:
    return g.n_vertices + g.n_faces
