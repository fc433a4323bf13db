"""Balanced, partitionable, shellable and Cohen-Macaulay simplicial complexes."""

from __future__ import annotations

from .coloring import Balance, critical_vertices, is_balanced, is_proper, proper_coloring
from .complex import (
    ComplexError,
    Face,
    RelativeComplex,
    SimplicialComplex,
    VertexLabel,
    euler_characteristic,
    f_from_h,
    f_vector,
    from_facets,
    h_vector,
    relative,
    vertex,
)
from .constructions import TAU, TAU_PRIME, Corpus, build
from .homology import FieldSpec, betti, boundary_matrix, is_cohen_macaulay
from .io import ParseError, format_complex, parse, read, write
from .partition import (
    IntervalPartition,
    decide_partitionable,
    h_from_partition,
    partition_from_shelling,
    shelling_search,
    verify_partition,
    verify_shelling,
)
from .report import verify_paper
from .transform import (
    VertexMap,
    barycentric_subdivision,
    cone,
    glue_copies,
    is_automorphism,
    subdivide_edge,
)

__all__ = [
    "Balance", "critical_vertices", "is_balanced", "is_proper", "proper_coloring",
    "ComplexError", "Face", "RelativeComplex", "SimplicialComplex", "VertexLabel",
    "euler_characteristic", "f_from_h", "f_vector", "from_facets", "h_vector", "relative", "vertex",
    "TAU", "TAU_PRIME", "Corpus", "build",
    "FieldSpec", "betti", "boundary_matrix", "is_cohen_macaulay",
    "ParseError", "format_complex", "parse", "read", "write",
    "IntervalPartition", "decide_partitionable", "h_from_partition", "partition_from_shelling",
    "shelling_search", "verify_partition", "verify_shelling",
    "verify_paper",
    "VertexMap", "barycentric_subdivision", "cone", "glue_copies", "is_automorphism", "subdivide_edge",
]
