"""Pasting schemes, their free 2-categories and the simplicial categories built from them."""
from . import cat_kit
from .computad import (
    AtomicArrow,
    TruncSCat,
    atomic_arrows,
    build_cor312_inclusion,
    compose_simplices,
    factor_atomic,
    graph_scat,
    is_subcomputad,
    nerve_f2cat,
    subdivide_edge,
    verify_edge_subdivision,
    verify_hom_pushouts,
    verify_main_theorem_homwise,
)
from .corpus import generate_corpus
from .errors import InvalidScheme, ParseError, PasteLabError
from .hom_poset import coordinatize, cube_points, hom_poset, hom_poset_from_cube, join, meet, pathify
from .path_kit import (
    attach_at_bottom,
    delete_bottom_cell,
    delete_top_cell,
    enumerate_presentations,
    lies_above,
    partition_parallel,
    presentation,
    sub_scheme_between,
    sub_scheme_pq,
)
from .scheme_core import (
    Path,
    PastingScheme,
    PlaneGraph,
    build_theta2,
    load_scheme,
    parse_scheme,
    serialize_graph,
    validate_pasting_scheme,
)

__version__ = "0.1.0"
