"""Orientable closed 2-cell embeddings of projective-planar cubic graphs."""
from .embedding import (EmbeddingError, EmbeddingScheme, FacialWalk, NonPlanarError, SurfaceId,
                        euler_characteristic, is_closed_2cell, is_orientable, normalize,
                        planar_embed, representativity, surface_id, trace_faces)
from .graph import Graph, build_graph
from .pipeline import PipelineReport, ocdc, ocze, verify_ocdc
from .surgery import OrientedCDC, orient_ccdc

__all__ = [
    "EmbeddingError", "EmbeddingScheme", "FacialWalk", "Graph", "NonPlanarError", "OrientedCDC",
    "PipelineReport", "SurfaceId", "build_graph", "euler_characteristic", "is_closed_2cell",
    "is_orientable", "normalize", "ocdc", "ocze", "orient_ccdc", "planar_embed", "representativity",
    "surface_id", "trace_faces", "verify_ocdc",
]
