"""Spherical quadrangulations with vertex degrees 3 and 4, viewed as
transversal immersions of cubic multigraphs on eight vertices."""

from .canon import CanonicalCode, canon_embedded, canon_multigraph
from .embedding import (
    EmbeddedGraph,
    ValidationReport,
    bipartition,
    dual,
    faces,
    from_vertex_rotations,
    mirror,
    smooth_vertex,
    validate_cq,
)
from .multigraph import Multigraph
from .walks import (
    TransverseWalk,
    extract,
    has_complete_transverse_cycle,
    maximal_transverse_walks,
    reduce_embedding,
    straight_exit,
)

__version__ = "0.1.0"

__all__ = [
    "CanonicalCode",
    "EmbeddedGraph",
    "Multigraph",
    "TransverseWalk",
    "ValidationReport",
    "bipartition",
    "canon_embedded",
    "canon_multigraph",
    "dual",
    "extract",
    "faces",
    "from_vertex_rotations",
    "has_complete_transverse_cycle",
    "maximal_transverse_walks",
    "mirror",
    "reduce_embedding",
    "smooth_vertex",
    "straight_exit",
    "validate_cq",
]
