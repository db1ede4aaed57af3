"""Gluing calculus, nucleus reduction and census tools for triangulated
3-dimensional pseudomanifolds."""

from .core import (
    BallCertificate,
    BoundaryComplex,
    CornerRef,
    EdgeRef,
    FaceClass,
    FacetRef,
    Pairing,
    Pseudomanifold,
    ball_certificate,
    boundary,
    boundary_link,
    build,
    disjoint_tetrahedra,
    dual_graph,
    euler_characteristic,
    face_classes,
    homology_ranks,
    interior_vertices,
    is_simplicial,
    isomorphic,
    link_strongly_connected,
    signature,
    strongly_connected,
)

__version__ = "0.1.0"
