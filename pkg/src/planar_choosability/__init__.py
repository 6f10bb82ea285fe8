"""Constructive (4,2)-list coloring of planar graphs, with a brute-force oracle."""

from .graph import (
    BlockTree,
    PlaneGraph,
    RootedInstance,
    add_face_apexes,
    block_decomposition,
    boundary_cycle,
    build_plane_graph,
    compute_embedding,
    embed,
    find_chords,
    find_separating_triangle,
    primary_boundary_neighbours,
    rooted,
    split_on_cycle,
)
from .lists import (
    ListAssignment,
    ValidityReport,
    Verdict,
    check_separation,
    check_valid,
    is_good_neighbour,
    normalize_good_neighbour,
    tilde_lists,
    verify_coloring,
)
from .solver import SolveTrace, solve, solve_rooted

__version__ = "0.1.0"

__all__ = [
    "BlockTree",
    "PlaneGraph",
    "RootedInstance",
    "add_face_apexes",
    "block_decomposition",
    "boundary_cycle",
    "build_plane_graph",
    "compute_embedding",
    "embed",
    "find_chords",
    "find_separating_triangle",
    "primary_boundary_neighbours",
    "rooted",
    "split_on_cycle",
    "ListAssignment",
    "ValidityReport",
    "Verdict",
    "check_separation",
    "check_valid",
    "is_good_neighbour",
    "normalize_good_neighbour",
    "tilde_lists",
    "verify_coloring",
    "SolveTrace",
    "solve",
    "solve_rooted",
]
