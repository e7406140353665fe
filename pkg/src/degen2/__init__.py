"""Large induced 2-degenerate subgraphs of triangle-free plane graphs."""

from .plane_graph import (
    ContractionWarning,
    EmbeddingError,
    Face,
    PlaneGraph,
    build_from_rotation,
    face_distances,
    face_vertex_distance,
    vertex_distances,
)
from .degeneracy import (
    CoreWitness,
    Solution,
    brute_force_oracle,
    certify_k_degenerate,
    degeneracy,
    max_induced_kdeg_exact,
    verify_solution,
)
from .structure import (
    SpecialVertexError,
    blocks,
    count_difficult,
    cubes_with_few_leaving_edges,
    find_special_vertex,
    is_cube,
    separating_cycles,
)
from .reducer import (
    ReductionError,
    ReductionTrace,
    StepKind,
    bound_value,
    construct_2degenerate,
    difficult_direct,
    lift,
    reduce_once,
)

__version__ = "0.1.0"

__all__ = [
    "ContractionWarning",
    "CoreWitness",
    "EmbeddingError",
    "Face",
    "PlaneGraph",
    "ReductionError",
    "ReductionTrace",
    "Solution",
    "SpecialVertexError",
    "StepKind",
    "blocks",
    "bound_value",
    "brute_force_oracle",
    "build_from_rotation",
    "certify_k_degenerate",
    "construct_2degenerate",
    "count_difficult",
    "cubes_with_few_leaving_edges",
    "degeneracy",
    "difficult_direct",
    "face_distances",
    "face_vertex_distance",
    "find_special_vertex",
    "is_cube",
    "lift",
    "max_induced_kdeg_exact",
    "reduce_once",
    "separating_cycles",
    "vertex_distances",
    "verify_solution",
]
