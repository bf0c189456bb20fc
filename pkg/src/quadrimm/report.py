"""Delimited report writers and the matplotlib figure gallery.

Census and coverage reports are tab-separated on the main stream; with a
figure directory they additionally render one PNG per multigraph class
and a coverage summary chart.
"""

from __future__ import annotations

import math
import os

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Arc

from .multigraph import Multigraph


def census_rows(result) -> list[tuple[str, ...]]:
    rows = [("kind", "n", "count")]
    for n in sorted(result.connected_counts):
        rows.append(("connected", str(n), str(result.connected_counts[n])))
    if result.disconnected_8_count is not None:
        for part in sorted(result.disconnected_8_subtotals):
            rows.append(("disconnected-partition-" + part, "8",
                         str(result.disconnected_8_subtotals[part])))
        rows.append(("disconnected-total", "8", str(result.disconnected_8_count)))
    return rows


def coverage_rows(report) -> list[tuple[str, ...]]:
    rows = [("class", "status", "witnesses")]
    for mcode in sorted(report.achieved):
        rows.append((mcode.digest(), "achieved",
                     ";".join(w.digest() for w in report.achieved[mcode])))
    for mcode in report.missing:
        rows.append((mcode.digest(), "missing", ""))
    return rows


def write_tsv(rows, stream) -> None:
    for row in rows:
        stream.write("\t".join(row) + "\n")


# -- figures ------------------------------------------------------------------


def draw_multigraph(m: Multigraph, path: str, title: str = "") -> None:
    """Render a small multigraph: vertices on a circle, parallel edges
    bowed apart, loops as petals."""
    n = max(m.vertex_count, 1)
    pos = [(math.cos(2 * math.pi * k / n + math.pi / 2),
            math.sin(2 * math.pi * k / n + math.pi / 2)) for k in range(n)]
    fig, ax = plt.subplots(figsize=(3.2, 3.2))
    groups: dict[tuple[int, int], int] = {}
    for u, v in m.edges:
        groups[(u, v)] = groups.get((u, v), 0) + 1
    for (u, v), mult in sorted(groups.items()):
        if u == v:
            x, y = pos[u]
            for k in range(mult):
                r = 0.22 + 0.12 * k
                ax.add_patch(Arc((x * (1 + r), y * (1 + r)), r, r * 1.6,
                                 angle=math.degrees(math.atan2(y, x)),
                                 fill=False, lw=1.2))
            continue
        (x1, y1), (x2, y2) = pos[u], pos[v]
        mx, my = (x1 + x2) / 2, (y1 + y2) / 2
        nx_, ny_ = -(y2 - y1), (x2 - x1)
        norm = math.hypot(nx_, ny_) or 1.0
        nx_, ny_ = nx_ / norm, ny_ / norm
        for k in range(mult):
            bend = 0.0 if mult == 1 else (k - (mult - 1) / 2) * 0.25
            cx, cy = mx + nx_ * bend, my + ny_ * bend
            steps = 24
            pts = [((1 - t) ** 2 * x1 + 2 * (1 - t) * t * cx + t ** 2 * x2,
                    (1 - t) ** 2 * y1 + 2 * (1 - t) * t * cy + t ** 2 * y2)
                   for t in (s / steps for s in range(steps + 1))]
            ax.plot([p[0] for p in pts], [p[1] for p in pts], "-", color="0.2", lw=1.2)
    degs = m.degrees()
    for v, (x, y) in enumerate(pos[:m.vertex_count]):
        ax.plot([x], [y], "s" if degs[v] == 4 else "o",
                color="black", markersize=7)
    ax.set_xlim(-1.7, 1.7)
    ax.set_ylim(-1.7, 1.7)
    ax.set_aspect("equal")
    ax.axis("off")
    if title:
        ax.set_title(title, fontsize=8)
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)


def render_census_gallery(graphs, out_dir: str, prefix: str) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    written = []
    for i, (code, m) in enumerate(graphs):
        path = os.path.join(out_dir, "%s_%03d_%s.png" % (prefix, i, code.digest()[:12]))
        draw_multigraph(m, path, title=code.digest()[:12])
        written.append(path)
    return written


def render_coverage_chart(report, out_dir: str) -> str:
    os.makedirs(out_dir, exist_ok=True)
    fig, ax = plt.subplots(figsize=(4.2, 3.0))
    counts = [report.achieved_count, len(report.missing)]
    ax.bar(["achieved", "missing"], counts, color=["0.3", "0.75"])
    for i, c in enumerate(counts):
        ax.text(i, c, str(c), ha="center", va="bottom")
    ax.set_ylabel("multigraph classes")
    ax.set_title("coverage of the %d target classes" % report.target_count)
    path = os.path.join(out_dir, "coverage.png")
    fig.savefig(path, dpi=120, bbox_inches="tight")
    plt.close(fig)
    return path
