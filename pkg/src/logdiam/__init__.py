"""Cubic planar graphs with short faces and logarithmic diameter."""

from logdiam.embedded import EmbeddedGraph, EmbeddingError, FaceOrbit, new_graph
from logdiam.construction import GkGraph, VertexLabel, build_gk, expected_counts

__all__ = [
    "EmbeddedGraph",
    "EmbeddingError",
    "FaceOrbit",
    "GkGraph",
    "VertexLabel",
    "build_gk",
    "expected_counts",
    "new_graph",
]
