"""Finite laboratory for the homomorphism order on graphs."""
from .errors import (
    ExactChromaticUnavailable,
    GraphInputError,
    HomlabError,
    PreconditionError,
    RigidSearchFailed,
    SizeCutoffError,
    Undecided,
)
from .graph import (
    Graph,
    HPartiteGraph,
    OrderedPattern,
    apex_extend,
    build_graph,
    disjoint_sum,
    h_join,
    pendant_triangles,
    tensor_product,
)
from .invariants import chromatic_number, clique_number, graph_invariants, is_isomorphic, odd_girth
from .kernel import BACKEND
from .obstructions import NoHomCertificate, clique_rank, h_rank, no_hom_certificate
from .solver import (
    compare,
    core,
    decide_hom,
    enumerate_homs,
    find_core,
    find_hom,
    is_independent_set,
    is_rigid,
    verify_hom,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ExactChromaticUnavailable",
    "Graph",
    "GraphInputError",
    "HPartiteGraph",
    "HomlabError",
    "NoHomCertificate",
    "OrderedPattern",
    "PreconditionError",
    "RigidSearchFailed",
    "SizeCutoffError",
    "Undecided",
    "apex_extend",
    "build_graph",
    "chromatic_number",
    "clique_number",
    "clique_rank",
    "compare",
    "core",
    "decide_hom",
    "disjoint_sum",
    "enumerate_homs",
    "find_core",
    "find_hom",
    "graph_invariants",
    "h_join",
    "h_rank",
    "is_independent_set",
    "is_isomorphic",
    "is_rigid",
    "no_hom_certificate",
    "odd_girth",
    "pendant_triangles",
    "tensor_product",
    "verify_hom",
]
