"""Label-preserving reductions from 3-CNF, with witness checkers and exact oracles."""

from .common import pad_to_width3
from .packing import (
    PackingInstance,
    PackingWitness,
    Rod,
    Token,
    check_packing,
    packing_brute_force,
    packing_from_assignment,
    rod_id,
    to_packing,
    token_id,
)
from .vertex_cover import (
    Vertex,
    VertexCoverInstance,
    check_cover,
    cover_from_assignment,
    literal_label,
    to_vertex_cover,
    triangle_label,
    vc_brute_force,
)

__all__ = [
    "PackingInstance",
    "PackingWitness",
    "Rod",
    "Token",
    "Vertex",
    "VertexCoverInstance",
    "check_cover",
    "check_packing",
    "cover_from_assignment",
    "literal_label",
    "packing_brute_force",
    "packing_from_assignment",
    "pad_to_width3",
    "rod_id",
    "to_packing",
    "to_vertex_cover",
    "token_id",
    "triangle_label",
    "vc_brute_force",
]
